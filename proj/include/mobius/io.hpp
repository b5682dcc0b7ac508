#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "mobius/errors.hpp"
#include "mobius/finite_abelian.hpp"
#include "mobius/galois.hpp"
#include "mobius/grothendieck.hpp"
#include "mobius/module.hpp"
#include "mobius/persistence.hpp"
#include "mobius/poset.hpp"
#include "mobius/vector_spaces.hpp"

namespace mobius::io {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Json parse_json_text(const std::string& text, const std::string& what = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

inline Integer as_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(where + ": expected an integer");
}

inline std::vector<std::vector<Integer>> as_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a matrix (array of rows)");
  std::vector<std::vector<Integer>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) throw ParseError(where + ": row " + std::to_string(r) + " is not an array");
    rows.emplace_back();
    for (std::size_t c = 0; c < j[r].size(); ++c)
      rows.back().push_back(as_integer(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
  }
  return rows;
}

/// Integers that fit are written as JSON numbers, anything larger as strings.
inline Json integer_json(const Integer& v) {
  if (v >= Integer(std::numeric_limits<std::int64_t>::min()) && v <= Integer(std::numeric_limits<std::int64_t>::max()))
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

}  // namespace detail

// ---- posets ----

inline Poset parse_poset(const Json& j) {
  const Json& el = detail::field(j, "elements", "poset");
  if (!el.is_array()) throw ParseError("poset.elements: expected an array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < el.size(); ++i) names.push_back(detail::as_string(el[i], "poset.elements[" + std::to_string(i) + "]"));
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    const Json& cv = j.at("covers");
    if (!cv.is_array()) throw ParseError("poset.covers: expected an array");
    for (std::size_t i = 0; i < cv.size(); ++i) {
      const std::string where = "poset.covers[" + std::to_string(i) + "]";
      if (!cv[i].is_array() || cv[i].size() != 2) throw ParseError(where + ": expected [lower, upper]");
      covers.emplace_back(detail::as_string(cv[i][0], where), detail::as_string(cv[i][1], where));
    }
  }
  return Poset::from_covers(std::move(names), covers);
}

inline Json poset_to_json(const Poset& p) {
  Json j;
  j["elements"] = p.names();
  Json covers = Json::array();
  for (const auto& [a, b] : p.covers()) covers.push_back({p.name(a), p.name(b)});
  j["covers"] = covers;
  return j;
}

// ---- coefficients ----

struct Coefficients {
  enum class Kind { rational, prime_field, finab } kind = Kind::rational;
  std::uint64_t p = 0;
};

inline Coefficients parse_coefficients(const Json& j) {
  const std::string kind = detail::as_string(detail::field(j, "kind", "coefficients"), "coefficients.kind");
  Coefficients c;
  if (kind == "rational") {
    c.kind = Coefficients::Kind::rational;
  } else if (kind == "prime_field") {
    c.kind = Coefficients::Kind::prime_field;
    const Json& p = detail::field(j, "p", "coefficients");
    if (!p.is_number_unsigned()) throw ParseError("coefficients.p: expected a positive integer");
    c.p = p.get<std::uint64_t>();
    PrimeField check(c.p);
  } else if (kind == "finab") {
    c.kind = Coefficients::Kind::finab;
  } else {
    throw ParseError("coefficients.kind: unknown kind '" + kind + "' (rational, prime_field, finab)");
  }
  return c;
}

inline Json coefficients_to_json(const Coefficients& c) {
  switch (c.kind) {
    case Coefficients::Kind::rational:
      return Json{{"kind", "rational"}};
    case Coefficients::Kind::prime_field:
      return Json{{"kind", "prime_field"}, {"p", c.p}};
    case Coefficients::Kind::finab:
      break;
  }
  return Json{{"kind", "finab"}};
}

// ---- objects and morphisms ----

template <class Field>
typename VectorSpaces<Field>::Object parse_object(const VectorSpaces<Field>& cat, const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw ParseError(where + ": expected a dimension (non-negative integer)");
  return cat.object(j.get<std::size_t>());
}

inline FinAbObject parse_object(const FiniteAbelianGroups& cat, const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of invariant factors");
  std::vector<Integer> f;
  for (const auto& v : j) f.push_back(detail::as_integer(v, where));
  try {
    return cat.object(std::move(f));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

template <class Field>
Json object_to_json(const VectorSpaces<Field>&, const VecObject& o) {
  return Json(o.dim);
}
inline Json object_to_json(const FiniteAbelianGroups&, const FinAbObject& o) {
  Json j = Json::array();
  for (const auto& f : o.factors) j.push_back(detail::integer_json(f));
  return j;
}

template <class Field>
Json matrix_to_json(const VectorSpaces<Field>& cat, const Matrix<typename Field::value_type>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& v = m(r, c);
      if constexpr (std::is_same_v<Field, RationalField>) {
        if (denominator(v) == 1)
          row.push_back(detail::integer_json(numerator(v)));
        else
          row.push_back(v.str());
      } else {
        (void)cat;
        row.push_back(v);
      }
    }
    rows.push_back(row);
  }
  return rows;
}
inline Json matrix_to_json(const FiniteAbelianGroups&, const Matrix<Integer>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(detail::integer_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

/// Rational entries may also be written as strings such as "1/2".
inline std::vector<std::vector<Rational>> as_rational_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a matrix (array of rows)");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) throw ParseError(where + ": row " + std::to_string(r) + " is not an array");
    rows.emplace_back();
    for (const auto& v : j[r]) {
      if (v.is_number_integer()) {
        rows.back().emplace_back(v.get<std::int64_t>());
      } else if (v.is_string()) {
        try {
          rows.back().emplace_back(v.get<std::string>());
        } catch (const std::exception&) {
          throw ParseError(where + ": bad rational entry '" + v.get<std::string>() + "'");
        }
      } else {
        throw ParseError(where + ": expected integer or rational string entries");
      }
    }
  }
  return rows;
}

template <class Cat>
typename Cat::Morphism parse_morphism(const Cat& cat, const typename Cat::Object& s, const typename Cat::Object& t,
                                      const Json& j, const std::string& where) {
  try {
    if constexpr (std::is_same_v<Cat, RationalVectorSpaces>) {
      auto rows = as_rational_matrix(j, where);
      if (rows.size() != t.dim)
        throw ShapeMismatch("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(t.dim));
      Matrix<Rational> m(t.dim, s.dim);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != s.dim) throw ShapeMismatch("row " + std::to_string(r) + " has the wrong length");
        for (std::size_t c = 0; c < s.dim; ++c) m(r, c) = rows[r][c];
      }
      return cat.morphism(s, t, std::move(m));
    } else {
      return cat.morphism_from_integers(s, t, detail::as_matrix(j, where));
    }
  } catch (const ShapeMismatch& e) {
    throw ShapeMismatch(where + ": " + e.what());
  } catch (const ValidationError& e) {
    if (dynamic_cast<const ParseError*>(&e)) throw;
    throw ValidationError(where + ": " + e.what());
  }
}

// ---- modules ----

template <class Cat>
PosetModule<Cat> parse_module_as(const Json& j, std::shared_ptr<const Poset> p, const Cat& cat) {
  const Json& objs = detail::field(j, "objects", "module");
  std::vector<typename Cat::Object> objects(p->size(), cat.zero_object());
  std::vector<bool> seen(p->size(), false);
  if (!objs.is_object()) throw ParseError("module.objects: expected an object keyed by element");
  for (const auto& [name, value] : objs.items()) {
    const std::size_t a = p->index(name);
    objects[a] = parse_object(cat, value, "module.objects." + name);
    seen[a] = true;
  }
  for (std::size_t a = 0; a < p->size(); ++a)
    if (!seen[a]) throw ParseError("module.objects: no object for element '" + p->name(a) + "'");
  typename PosetModule<Cat>::CoverMaps maps;
  const Json empty = Json::object();
  const Json& ms = j.contains("maps") ? j.at("maps") : empty;
  if (!ms.is_object()) throw ParseError("module.maps: expected an object keyed by 'lower|upper'");
  for (const auto& [key, value] : ms.items()) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) throw ParseError("module.maps: key '" + key + "' is not of the form lower|upper");
    const std::size_t a = p->index(key.substr(0, bar)), b = p->index(key.substr(bar + 1));
    if (!p->covers_pair(a, b)) throw ValidationError("module.maps." + key + ": not a cover relation of the poset");
    maps.emplace(std::pair{a, b}, parse_morphism(cat, objects[a], objects[b], value, "module.maps." + key));
  }
  // a cover between zero objects (or into/out of one) may be omitted
  for (const auto& [a, b] : p->covers())
    if (!maps.count({a, b})) {
      if (!cat.is_zero(objects[a]) && !cat.is_zero(objects[b]))
        throw ValidationError("module.maps: missing map for cover " + p->name(a) + "|" + p->name(b));
      maps.emplace(std::pair{a, b}, cat.zero_morphism(objects[a], objects[b]));
    }
  return PosetModule<Cat>(std::move(p), cat, std::move(objects), maps);
}

using AnyModule = std::variant<PosetModule<RationalVectorSpaces>, PosetModule<PrimeFieldVectorSpaces>,
                               PosetModule<FiniteAbelianGroups>>;

struct ParsedModule {
  Coefficients coefficients;
  AnyModule module;
};

inline ParsedModule parse_module(const Json& j, std::shared_ptr<const Poset> poset = nullptr) {
  if (!poset) poset = std::make_shared<const Poset>(parse_poset(detail::field(j, "poset", "module")));
  const Coefficients c = parse_coefficients(detail::field(j, "coefficients", "module"));
  switch (c.kind) {
    case Coefficients::Kind::rational:
      return {c, parse_module_as(j, poset, RationalVectorSpaces{})};
    case Coefficients::Kind::prime_field:
      return {c, parse_module_as(j, poset, PrimeFieldVectorSpaces{PrimeField(c.p)})};
    case Coefficients::Kind::finab:
      break;
  }
  return {c, parse_module_as(j, poset, FiniteAbelianGroups{})};
}

template <class Cat>
Json module_to_json(const PosetModule<Cat>& m, const Coefficients& c) {
  const Poset& p = m.poset();
  const Cat& cat = m.category();
  Json j;
  j["poset"] = poset_to_json(p);
  j["coefficients"] = coefficients_to_json(c);
  Json objs = Json::object();
  for (std::size_t a = 0; a < p.size(); ++a) objs[p.name(a)] = object_to_json(cat, m.at(a));
  j["objects"] = objs;
  Json maps = Json::object();
  for (const auto& [a, b] : p.covers()) maps[p.name(a) + "|" + p.name(b)] = matrix_to_json(cat, m.map(a, b).matrix);
  j["maps"] = maps;
  return j;
}

// ---- connections ----

inline MonotoneMap parse_monotone(const Json& j, std::shared_ptr<const Poset> s, std::shared_ptr<const Poset> t,
                                  const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object mapping element names");
  std::vector<std::size_t> m(s->size(), 0);
  std::vector<bool> seen(s->size(), false);
  for (const auto& [k, v] : j.items()) {
    const std::size_t a = s->index(k);
    m[a] = t->index(detail::as_string(v, where + "." + k));
    seen[a] = true;
  }
  for (std::size_t a = 0; a < s->size(); ++a)
    if (!seen[a]) throw ParseError(where + ": no image for '" + s->name(a) + "'");
  return MonotoneMap(std::move(s), std::move(t), std::move(m));
}

inline GaloisConnection parse_connection(const Json& j, std::shared_ptr<const Poset> p, std::shared_ptr<const Poset> q) {
  MonotoneMap f = parse_monotone(detail::field(j, "f", "connection"), p, q, "connection.f");
  MonotoneMap g = parse_monotone(detail::field(j, "g", "connection"), q, p, "connection.g");
  return GaloisConnection(std::move(f), std::move(g));
}

inline Json monotone_to_json(const MonotoneMap& m) {
  Json j = Json::object();
  for (std::size_t a = 0; a < m.map.size(); ++a) j[m.source->name(a)] = m.target->name(m.map[a]);
  return j;
}

inline Json connection_to_json(const GaloisConnection& c) {
  return Json{{"f", monotone_to_json(c.f)}, {"g", monotone_to_json(c.g)}};
}

// ---- presentations ----

template <class Cat>
FreePresentation<Cat> parse_presentation(const Json& j, const PosetModule<Cat>& m) {
  const Json& gens = detail::field(j, "generators", "presentation");
  if (!gens.is_array()) throw ParseError("presentation.generators: expected an array");
  const Cat& cat = m.category();
  std::vector<typename FreePresentation<Cat>::Generator> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "presentation.generators[" + std::to_string(i) + "]";
    const std::size_t birth = m.poset().index(detail::as_string(detail::field(gens[i], "birth", where), where + ".birth"));
    auto obj = parse_object(cat, detail::field(gens[i], "object", where), where + ".object");
    auto image = parse_morphism(cat, obj, m.at(birth), detail::field(gens[i], "map", where), where + ".map");
    out.push_back({birth, std::move(obj), std::move(image)});
  }
  return FreePresentation<Cat>(m, std::move(out));
}

template <class Cat>
Json presentation_to_json(const FreePresentation<Cat>& pres) {
  const Cat& cat = pres.module().category();
  Json gens = Json::array();
  for (const auto& g : pres.generators())
    gens.push_back(Json{{"birth", pres.module().poset().name(g.birth)},
                        {"object", object_to_json(cat, g.object)},
                        {"map", matrix_to_json(cat, g.image.matrix)}});
  return Json{{"generators", gens}};
}

// ---- value functions ----

/// {"a": 2, "b": {"2": 4, "3": 1}}: integers are dimensions, objects are
/// prime-exponent maps.
inline std::vector<GrothElement> parse_values(const Json& j, const Poset& p) {
  if (!j.is_object()) throw ParseError("values: expected an object keyed by element");
  std::vector<GrothElement> out(p.size());
  std::vector<bool> seen(p.size(), false);
  for (const auto& [name, v] : j.items()) {
    const std::size_t a = p.index(name);
    seen[a] = true;
    if (v.is_number_integer()) {
      out[a] = GrothElement::dimension(v.get<std::int64_t>());
    } else if (v.is_object()) {
      for (const auto& [key, amount] : v.items()) {
        if (!amount.is_number_integer()) throw ParseError("values." + name + "." + key + ": expected an integer");
        std::int64_t k = 0;
        try {
          k = key == "*" ? GrothElement::kDimension : std::stoll(key);
        } catch (const std::exception&) {
          throw ParseError("values." + name + ": bad key '" + key + "'");
        }
        out[a].add(k, amount.get<std::int64_t>());
      }
    } else {
      throw ParseError("values." + name + ": expected an integer or an object");
    }
  }
  for (std::size_t a = 0; a < p.size(); ++a)
    if (!seen[a]) throw ParseError("values: no value for element '" + p.name(a) + "'");
  return out;
}

inline Json groth_to_json(const GrothElement& g) {
  if (g.coords().empty()) return Json(0);
  if (g.coords().size() == 1 && g.coords().begin()->first == GrothElement::kDimension) return Json(g.coords().begin()->second);
  Json j = Json::object();
  for (const auto& [k, v] : g.coords()) j[k == GrothElement::kDimension ? std::string("*") : std::to_string(k)] = v;
  return j;
}

inline Json values_to_json(const std::vector<GrothElement>& v, const Poset& p) {
  Json j = Json::object();
  for (std::size_t a = 0; a < p.size(); ++a) j[p.name(a)] = groth_to_json(v[a]);
  return j;
}

}  // namespace mobius::io
