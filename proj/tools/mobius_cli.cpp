#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mobius/io.hpp"
#include "mobius/mobius.hpp"

using namespace mobius;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitTheorem = 3;

struct Options {
  std::string poset, module, connection, source, target, presentation, values;
  std::string format = "table";
  std::string at, interval;
  std::size_t jobs = 1;
};

struct TheoremFailure : Error {
  using Error::Error;
};

std::shared_ptr<const Poset> load_poset(const std::string& path) {
  return std::make_shared<const Poset>(io::parse_poset(io::read_json_file(path)));
}

/// Loads --module, checking it against --poset when both are given.
io::ParsedModule load_module(const Options& o) {
  if (o.module.empty()) throw ValidationError("missing input: --module is required");
  Json j = io::read_json_file(o.module);
  std::shared_ptr<const Poset> p;
  if (!o.poset.empty()) {
    p = load_poset(o.poset);
    if (j.contains("poset") && !(io::parse_poset(j.at("poset")) == *p))
      throw ValidationError("module's poset does not match --poset");
  }
  return io::parse_module(j, p);
}

std::size_t element(const Poset& p, const std::string& name) { return p.index(name); }

std::size_t interval_index(const IntervalPoset& ip, const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw ValidationError("--interval expects a,b");
  return ip.index(ip.base().index(spec.substr(0, comma)), ip.base().index(spec.substr(comma + 1)));
}

template <class Cat>
Json object_json(const Cat& cat, const typename Cat::Object& o) {
  return io::object_to_json(cat, o);
}

template <class Cat>
std::string homology_row(const Cat& cat, const std::string& label, const GradedObjects<Cat>& h) {
  std::string row;
  for (std::size_t d = 0; d < h.degrees.size(); ++d) {
    if (cat.is_zero(h.degrees[d])) continue;
    row += (row.empty() ? "" : ", ") + ("H" + std::to_string(d) + "=" + cat.describe(h.degrees[d]));
  }
  return label + ": " + (row.empty() ? "0" : row);
}

template <class Cat>
Json homology_json(const Cat& cat, const std::string& key, const std::string& label, const GradedObjects<Cat>& h) {
  std::size_t top = h.degrees.size();
  while (top > 0 && cat.is_zero(h.degrees[top - 1])) --top;
  Json degrees = Json::array();
  for (std::size_t d = 0; d < top; ++d) degrees.push_back(object_json(cat, h.degrees[d]));
  return Json{{key, label}, {"degrees", degrees}};
}

void emit(const Options& o, const Json& j, const std::vector<std::string>& rows) {
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : rows) std::cout << r << "\n";
  }
}

// ---- commands ----

int cmd_mobius(const Options& o) {
  if (o.poset.empty()) throw ValidationError("missing input: --poset is required");
  auto p = load_poset(o.poset);
  const IncidenceFunction mu = mobius_function(*p);
  Json list = Json::array();
  std::vector<std::string> rows;
  for (const auto& [a, b] : p->intervals()) {
    if (!o.at.empty() && p->name(b) != o.at) continue;
    list.push_back(Json{{"lower", p->name(a)}, {"upper", p->name(b)}, {"mu", mu.at(a, b)}});
    rows.push_back("mu[" + p->name(a) + "," + p->name(b) + "] = " + std::to_string(mu.at(a, b)));
  }
  emit(o, Json{{"mobius", list}}, rows);
  return kExitOk;
}

int cmd_inversion(const Options& o) {
  std::shared_ptr<const Poset> p;
  std::vector<GrothElement> f;
  if (!o.values.empty()) {
    if (o.poset.empty()) throw ValidationError("missing input: --values needs --poset");
    p = load_poset(o.poset);
    f = io::parse_values(io::read_json_file(o.values), *p);
  } else if (!o.module.empty()) {
    io::ParsedModule pm = load_module(o);
    std::visit(
        [&](const auto& m) {
          p = m.poset_ptr();
          f = m.dimension_function();
        },
        pm.module);
  } else {
    throw ValidationError("missing input: inversion needs --values (with --poset) or --module");
  }
  const auto df = mobius_inversion(*p, f);
  std::vector<std::string> rows;
  for (std::size_t a = 0; a < p->size(); ++a) rows.push_back(p->name(a) + ": " + df[a].to_string());
  emit(o, Json{{"inversion", io::values_to_json(df, *p)}}, rows);
  return kExitOk;
}

std::vector<std::size_t> selected_elements(const Poset& p, const std::string& at) {
  std::vector<std::size_t> out;
  if (!at.empty()) {
    out.push_back(element(p, at));
  } else {
    for (std::size_t a = 0; a < p.size(); ++a) out.push_back(a);
  }
  return out;
}

int cmd_homology(const Options& o) {
  io::ParsedModule pm = load_module(o);
  std::visit(
      [&](const auto& m) {
        using Cat = std::decay_t<decltype(m.category())>;
        const auto elems = selected_elements(m.poset(), o.at);
        std::vector<GradedObjects<Cat>> h(elems.size());
        parallel_for(elems.size(), o.jobs, [&](std::size_t i) { h[i] = mobius_homology_at(m, elems[i]); });
        Json list = Json::array();
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < elems.size(); ++i) {
          const std::string& name = m.poset().name(elems[i]);
          list.push_back(homology_json(m.category(), "element", name, h[i]));
          rows.push_back(homology_row(m.category(), name, h[i]));
        }
        emit(o, Json{{"homology", list}}, rows);
      },
      pm.module);
  return kExitOk;
}

int cmd_euler_check(const Options& o) {
  io::ParsedModule pm = load_module(o);
  bool ok = true;
  std::visit(
      [&](const auto& m) {
        const auto elems = selected_elements(m.poset(), o.at);
        std::vector<IdentityCheck> checks(elems.size());
        parallel_for(elems.size(), o.jobs, [&](std::size_t i) { checks[i] = euler_identity_check(m, elems[i]); });
        Json list = Json::array();
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < elems.size(); ++i) {
          const auto& c = checks[i];
          ok = ok && c.equal;
          list.push_back(Json{{"element", m.poset().name(elems[i])},
                              {"inversion", io::groth_to_json(c.lhs)},
                              {"euler", io::groth_to_json(c.rhs)},
                              {"equal", c.equal}});
          rows.push_back(m.poset().name(elems[i]) + ": inversion " + c.lhs.to_string() + ", euler " + c.rhs.to_string() +
                         (c.equal ? "" : "  MISMATCH"));
        }
        IdentityCheck total{};
        if (o.at.empty()) {
          total = total_homology_check(m);
          ok = ok && total.equal;
          rows.push_back("total: inversion " + total.lhs.to_string() + ", euler " + total.rhs.to_string() +
                         (total.equal ? "" : "  MISMATCH"));
        }
        rows.push_back(ok ? "OK" : "FAILED");
        Json j{{"checks", list}, {"ok", ok}};
        if (o.at.empty())
          j["total"] = Json{{"inversion", io::groth_to_json(total.lhs)}, {"euler", io::groth_to_json(total.rhs)}, {"equal", total.equal}};
        emit(o, j, rows);
      },
      pm.module);
  return ok ? kExitOk : kExitTheorem;
}

int cmd_galois_check(const Options& o) {
  if (o.source.empty() || o.target.empty() || o.connection.empty())
    throw ValidationError("missing input: galois-check needs --source, --target and --connection");
  auto p = load_poset(o.source);
  auto q = load_poset(o.target);
  const GaloisConnection c = io::parse_connection(io::read_json_file(o.connection), p, q);
  const GaloisProperties props = check_galois_properties(c);
  const HomotopyReport hom = chain_homotopy_check(c);
  bool ok = props.all() && hom.all();
  std::vector<std::string> rows{
      std::string("adjunction: ok"),
      std::string("properties: ") + (props.all() ? "ok" : "FAILED"),
      std::string("chain homotopies: ") + (hom.all() ? "ok" : "FAILED") + " (" + std::to_string(hom.simplices_checked) +
          " simplices)"};
  Json j{{"adjunction", true}, {"properties", props.all()}, {"homotopies", hom.all()}};
  if (!o.module.empty()) {
    Options mo = o;
    mo.poset = o.source;
    io::ParsedModule pm = load_module(mo);
    std::visit(
        [&](const auto& m) {
          Json list = Json::array();
          for (std::size_t y : selected_elements(*q, o.at)) {
            auto r = rota_check(c, m, y);
            ok = ok && r.equal;
            list.push_back(Json{{"element", q->name(y)},
                                {"pulled_back", homology_json(m.category(), "element", q->name(y), r.lhs)["degrees"]},
                                {"relative", homology_json(m.category(), "element", q->name(y), r.rhs)["degrees"]},
                                {"equal", r.equal}});
            rows.push_back(homology_row(m.category(), q->name(y), r.lhs) + (r.equal ? "" : "  MISMATCH"));
          }
          j["rota"] = list;
        },
        pm.module);
  }
  j["ok"] = ok;
  rows.push_back(ok ? "OK" : "FAILED");
  emit(o, j, rows);
  return ok ? kExitOk : kExitTheorem;
}

template <class Cat>
FreePresentation<Cat> load_presentation(const Options& o, const PosetModule<Cat>& m) {
  if (o.presentation.empty()) return canonical_presentation(m);
  return io::parse_presentation(io::read_json_file(o.presentation), m);
}

int cmd_persistence_diagram(const Options& o) {
  io::ParsedModule pm = load_module(o);
  std::visit(
      [&](const auto& m) {
        const auto pres = load_presentation(o, m);
        const auto bd = birth_death(pres);
        const auto dg = persistence_diagram(bd);
        const IntervalPoset& ip = *bd.intervals;
        Json list = Json::array();
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < ip.size(); ++i) {
          if (dg[i].is_zero()) continue;
          list.push_back(Json{{"interval", ip.poset().name(i)}, {"coordinates", io::groth_to_json(dg[i])}, {"diagonal", ip.diagonal(i)}});
          rows.push_back(ip.poset().name(i) + ": " + dg[i].to_string() + (ip.diagonal(i) ? "  (diagonal)" : ""));
        }
        emit(o, Json{{"diagram", list}}, rows);
      },
      pm.module);
  return kExitOk;
}

int cmd_persistence_homology(const Options& o) {
  io::ParsedModule pm = load_module(o);
  std::visit(
      [&](const auto& m) {
        using Cat = std::decay_t<decltype(m.category())>;
        const auto pres = load_presentation(o, m);
        const auto bd = birth_death(pres);
        const IntervalPoset& ip = *bd.intervals;
        std::vector<std::size_t> which;
        if (!o.interval.empty()) {
          which.push_back(interval_index(ip, o.interval));
        } else {
          for (std::size_t i = 0; i < ip.size(); ++i) which.push_back(i);
        }
        std::vector<GradedObjects<Cat>> h(which.size());
        parallel_for(which.size(), o.jobs, [&](std::size_t k) { h[k] = persistent_homology(bd, which[k]); });
        Json list = Json::array();
        std::vector<std::string> rows;
        for (std::size_t k = 0; k < which.size(); ++k) {
          const std::string& name = ip.poset().name(which[k]);
          list.push_back(homology_json(m.category(), "interval", name, h[k]));
          rows.push_back(homology_row(m.category(), name, h[k]));
        }
        emit(o, Json{{"homology", list}}, rows);
      },
      pm.module);
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moebius inversion and Moebius homology of poset modules"};
  app.require_subcommand(1);
  Options o;

  auto* mob = app.add_subcommand("mobius", "Moebius function of a poset");
  mob->add_option("--poset", o.poset, "poset JSON");
  mob->add_option("--at", o.at, "only intervals ending at this element");
  add_common(mob, o);

  auto* inv = app.add_subcommand("inversion", "Moebius inversion of a value function or a dimension function");
  inv->add_option("--poset", o.poset, "poset JSON");
  inv->add_option("--values", o.values, "values JSON");
  inv->add_option("--module", o.module, "module JSON (uses its dimension function)");
  add_common(inv, o);

  auto* hom = app.add_subcommand("homology", "Moebius homology of a module");
  hom->add_option("--poset", o.poset, "poset JSON");
  hom->add_option("--module", o.module, "module JSON");
  hom->add_option("--at", o.at, "a single element");
  add_common(hom, o);

  auto* eul = app.add_subcommand("euler-check", "compare Moebius inversion with Euler characteristics");
  eul->add_option("--poset", o.poset, "poset JSON");
  eul->add_option("--module", o.module, "module JSON");
  eul->add_option("--at", o.at, "a single element");
  add_common(eul, o);

  auto* gal = app.add_subcommand("galois-check", "validate a Galois connection and its homology identities");
  gal->add_option("--source", o.source, "source poset JSON");
  gal->add_option("--target", o.target, "target poset JSON");
  gal->add_option("--connection", o.connection, "connection JSON");
  gal->add_option("--module", o.module, "module JSON on the source poset");
  gal->add_option("--at", o.at, "a single element of the target");
  add_common(gal, o);

  auto* per = app.add_subcommand("persistence", "birth-death persistence");
  per->require_subcommand(1);
  auto* dia = per->add_subcommand("diagram", "persistence diagram");
  dia->add_option("--poset", o.poset, "poset JSON");
  dia->add_option("--module", o.module, "module JSON");
  dia->add_option("--presentation", o.presentation, "presentation JSON (default: canonical)");
  add_common(dia, o);
  auto* phom = per->add_subcommand("homology", "persistent Moebius homology");
  phom->add_option("--poset", o.poset, "poset JSON");
  phom->add_option("--module", o.module, "module JSON");
  phom->add_option("--presentation", o.presentation, "presentation JSON (default: canonical)");
  phom->add_option("--interval", o.interval, "a single interval a,b");
  add_common(phom, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (mob->parsed()) return cmd_mobius(o);
    if (inv->parsed()) return cmd_inversion(o);
    if (hom->parsed()) return cmd_homology(o);
    if (eul->parsed()) return cmd_euler_check(o);
    if (gal->parsed()) return cmd_galois_check(o);
    if (dia->parsed()) return cmd_persistence_diagram(o);
    if (phom->parsed()) return cmd_persistence_homology(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SizeLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitTheorem;
  }
  return kExitInput;
}
