#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mobius/errors.hpp"
#include "mobius/mobius_homology.hpp"
#include "mobius/module.hpp"
#include "mobius/order_complex.hpp"
#include "mobius/poset.hpp"

namespace mobius {

/// An order-preserving map between finite posets, as an index table.
struct MonotoneMap {
  std::shared_ptr<const Poset> source, target;
  std::vector<std::size_t> map;

  MonotoneMap() = default;
  MonotoneMap(std::shared_ptr<const Poset> s, std::shared_ptr<const Poset> t, std::vector<std::size_t> m)
      : source(std::move(s)), target(std::move(t)), map(std::move(m)) {
    if (map.size() != source->size()) throw ShapeMismatch("monotone map is not total on its source");
    for (auto v : map)
      if (v >= target->size()) throw UnknownElement("monotone map leaves its target poset");
    for (const auto& [a, b] : source->covers())
      if (!target->leq(map[a], map[b]))
        throw MonotonicityError("map is not monotone: " + source->name(a) + " <= " + source->name(b) + " but " +
                                target->name(map[a]) + " is not <= " + target->name(map[b]));
  }

  std::size_t operator()(std::size_t a) const { return map[a]; }

  static MonotoneMap identity(std::shared_ptr<const Poset> p) {
    std::vector<std::size_t> m(p->size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
    return MonotoneMap(p, p, std::move(m));
  }
};

/// A validated adjoint pair f : P -> Q, g : Q -> P with f(a) <= x iff a <= g(x).
struct GaloisConnection {
  MonotoneMap f, g;

  GaloisConnection() = default;
  GaloisConnection(MonotoneMap left, MonotoneMap right) : f(std::move(left)), g(std::move(right)) {
    if (!(*f.source == *g.target) || !(*f.target == *g.source))
      throw ShapeMismatch("the two maps of a Galois connection must run between the same posets");
    const Poset& p = *f.source;
    const Poset& q = *f.target;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t x = 0; x < q.size(); ++x)
        if (q.leq(f(a), x) != p.leq(a, g(x)))
          throw AdjunctionError("not a Galois connection at (" + p.name(a) + ", " + q.name(x) + "): f(a) <= x is " +
                                (q.leq(f(a), x) ? "true" : "false") + " but a <= g(x) is " +
                                (p.leq(a, g(x)) ? "true" : "false"));
  }

  const Poset& source() const { return *f.source; }
  const Poset& target() const { return *f.target; }

  static GaloisConnection identity(std::shared_ptr<const Poset> p) {
    return GaloisConnection(MonotoneMap::identity(p), MonotoneMap::identity(p));
  }
};

/// The five elementary properties of a Galois connection.
struct GaloisProperties {
  bool unit = true;           // a <= g f(a)
  bool counit = true;         // f g(x) <= x
  bool image_fixed = true;    // f(a) = x implies f g(x) = x
  bool surj_iff_inj = true;   // f surjective iff g injective
  bool inj_iff_surj = true;   // f injective iff g surjective
  bool all() const { return unit && counit && image_fixed && surj_iff_inj && inj_iff_surj; }
};

namespace detail {

inline bool injective(const std::vector<std::size_t>& m) {
  std::vector<bool> seen;
  for (auto v : m) {
    if (v >= seen.size()) seen.resize(v + 1, false);
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}
inline bool surjective(const std::vector<std::size_t>& m, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (auto v : m) seen[v] = true;
  for (bool s : seen)
    if (!s) return false;
  return true;
}

}  // namespace detail

inline GaloisProperties check_galois_properties(const GaloisConnection& c) {
  GaloisProperties r;
  const Poset& p = c.source();
  const Poset& q = c.target();
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (!p.leq(a, c.g(c.f(a)))) r.unit = false;
    const std::size_t x = c.f(a);
    if (c.f(c.g(x)) != x) r.image_fixed = false;
  }
  for (std::size_t x = 0; x < q.size(); ++x)
    if (!q.leq(c.f(c.g(x)), x)) r.counit = false;
  r.surj_iff_inj = detail::surjective(c.f.map, q.size()) == detail::injective(c.g.map);
  r.inj_iff_surj = detail::injective(c.f.map) == detail::surjective(c.g.map, p.size());
  return r;
}

/// An integer chain: a finite combination of simplices.
using IntegerChain = std::map<Simplex, std::int64_t>;

namespace detail {

inline void add_term(IntegerChain& c, const Simplex& s, std::int64_t v) {
  if (v == 0) return;
  auto& slot = c[s];
  slot += v;
  if (slot == 0) c.erase(s);
}

inline IntegerChain boundary(const IntegerChain& c) {
  IntegerChain out;
  for (const auto& [s, v] : c)
    for (const auto& [f, sign] : signed_faces(s)) add_term(out, f, sign * v);
  return out;
}

/// Image of a chain under an order-preserving map; degenerate images vanish.
inline IntegerChain push_forward(const IntegerChain& c, const std::vector<std::size_t>& m) {
  IntegerChain out;
  for (const auto& [s, v] : c) {
    Simplex t;
    bool degenerate = false;
    for (auto e : s) {
      const auto y = static_cast<std::uint32_t>(m[e]);
      if (!t.empty() && t.back() == y) {
        degenerate = true;
        break;
      }
      t.push_back(y);
    }
    if (!degenerate) add_term(out, t, v);
  }
  return out;
}

/// The prism operator: sum_i (-1)^i (a_0, ..., a_i, h(a_i), ..., h(a_n)) for
/// h with a <= h(a) (or h(a) <= a with the roles of the halves swapped).
/// Terms with a repeated vertex are degenerate and dropped.
inline IntegerChain prism(const IntegerChain& c, const std::vector<std::size_t>& h, bool h_first) {
  IntegerChain out;
  for (const auto& [s, v] : c) {
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
      Simplex t;
      for (std::size_t k = 0; k <= i; ++k) t.push_back(static_cast<std::uint32_t>(h_first ? h[s[k]] : s[k]));
      for (std::size_t k = i; k < n; ++k) t.push_back(static_cast<std::uint32_t>(h_first ? s[k] : h[s[k]]));
      bool degenerate = false;
      for (std::size_t k = 1; k < t.size(); ++k)
        if (t[k] == t[k - 1]) degenerate = true;
      if (!degenerate) add_term(out, t, (i % 2 == 0 ? 1 : -1) * v);
    }
  }
  return out;
}

inline IntegerChain sum(IntegerChain a, const IntegerChain& b, std::int64_t scale = 1) {
  for (const auto& [s, v] : b) add_term(a, s, scale * v);
  return a;
}

}  // namespace detail

struct HomotopyReport {
  bool phi_ok = true;   // d phi + phi d = Dg Df - id on C(P)
  bool psi_ok = true;   // d psi + psi d = id - Df Dg on C(Q)
  std::size_t simplices_checked = 0;
  bool all() const { return phi_ok && psi_ok; }
};

/// Verifies the two chain homotopies of a Galois connection simplex by
/// simplex on the integer chains of both order complexes.
inline HomotopyReport chain_homotopy_check(const GaloisConnection& c) {
  HomotopyReport r;
  const std::vector<std::size_t>& f = c.f.map;
  const std::vector<std::size_t>& g = c.g.map;
  std::vector<std::size_t> gf(f.size()), fg(g.size());
  for (std::size_t a = 0; a < f.size(); ++a) gf[a] = g[f[a]];
  for (std::size_t x = 0; x < g.size(); ++x) fg[x] = f[g[x]];

  OrderComplex kp(c.source());
  for (std::size_t d = 0; d < kp.dimension_count(); ++d)
    for (const auto& s : kp.simplices(d)) {
      const IntegerChain sigma{{s, 1}};
      const IntegerChain lhs =
          detail::sum(detail::boundary(detail::prism(sigma, gf, false)), detail::prism(detail::boundary(sigma), gf, false));
      const IntegerChain rhs = detail::sum(detail::push_forward(detail::push_forward(sigma, f), g), sigma, -1);
      if (lhs != rhs) r.phi_ok = false;
      ++r.simplices_checked;
    }
  OrderComplex kq(c.target());
  for (std::size_t d = 0; d < kq.dimension_count(); ++d)
    for (const auto& s : kq.simplices(d)) {
      const IntegerChain sigma{{s, 1}};
      const IntegerChain lhs =
          detail::sum(detail::boundary(detail::prism(sigma, fg, true)), detail::prism(detail::boundary(sigma), fg, true));
      const IntegerChain rhs = detail::sum(sigma, detail::push_forward(detail::push_forward(sigma, g), f), -1);
      if (lhs != rhs) r.psi_ok = false;
      ++r.simplices_checked;
    }
  return r;
}

/// Chains of P whose maximum is sent to y by f.
inline Selection chains_over(const Poset& p, const std::vector<std::size_t>& f, std::size_t y) {
  Selection out;
  for (std::size_t b : p.linear_extension()) {
    if (f[b] != y) continue;
    Selection s = chains_with_max(p, b);
    for (std::size_t d = 0; d < s.size(); ++d)
      for (auto& simplex : s[d]) add_to_selection(out, std::move(simplex));
  }
  return out;
}

/// Homology of the order cosheaf of M over {sigma : f(max sigma) = y}.
template <class Cat>
GradedObjects<Cat> rota_rhs(const GaloisConnection& c, const PosetModule<Cat>& m, std::size_t y) {
  if (!(m.poset() == c.source())) throw ValidationError("module is not defined on the connection's source poset");
  return selection_homology(m, chains_over(c.source(), c.f.map, y));
}

template <class Cat>
struct GradedCheck {
  GradedObjects<Cat> lhs, rhs;
  bool equal = false;
};

/// Moebius homology of the pulled-back module M o g at y against rota_rhs.
template <class Cat>
GradedCheck<Cat> rota_check(const GaloisConnection& c, const PosetModule<Cat>& m, std::size_t y) {
  GradedCheck<Cat> r;
  const PosetModule<Cat> pulled = pullback_module(m, c.f.target, c.g.map);
  r.lhs = mobius_homology_at(pulled, y);
  r.rhs = rota_rhs(c, m, y);
  r.equal = r.lhs == r.rhs;
  return r;
}

/// A finite lattice with meet and join tables.
class Lattice {
 public:
  explicit Lattice(std::shared_ptr<const Poset> p) : poset_(std::move(p)) {
    const Poset& q = *poset_;
    const std::size_t n = q.size();
    if (n == 0) throw NotALattice("the empty poset is not a lattice");
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto lo = extreme(a, b, true), hi = extreme(a, b, false);
        if (!lo || !hi) throw NotALattice(q.name(a) + " and " + q.name(b) + " lack a meet or a join");
        meet_[a * n + b] = *lo;
        join_[a * n + b] = *hi;
      }
    distributive_ = true;
    for (std::size_t a = 0; a < n && distributive_; ++a)
      for (std::size_t b = 0; b < n && distributive_; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
            distributive_ = false;
            break;
          }
  }

  const Poset& poset() const { return *poset_; }
  const std::shared_ptr<const Poset>& poset_ptr() const { return poset_; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * poset_->size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * poset_->size() + b]; }
  bool distributive() const { return distributive_; }

 private:
  // greatest lower bound (lower = true) or least upper bound
  std::optional<std::size_t> extreme(std::size_t a, std::size_t b, bool lower) const {
    const Poset& q = *poset_;
    std::vector<std::size_t> bounds;
    for (std::size_t c = 0; c < q.size(); ++c)
      if (lower ? (q.leq(c, a) && q.leq(c, b)) : (q.leq(a, c) && q.leq(b, c))) bounds.push_back(c);
    for (std::size_t c : bounds) {
      bool best = true;
      for (std::size_t d : bounds)
        if (lower ? !q.leq(d, c) : !q.leq(c, d)) {
          best = false;
          break;
        }
      if (best) return c;
    }
    return std::nullopt;
  }

  std::shared_ptr<const Poset> poset_;
  std::vector<std::size_t> meet_, join_;
  bool distributive_ = false;
};

/// The meet-generated sublattice of the elements covered by b, with the
/// Galois connection from the lower set of b onto it.
struct MeetSublattice {
  std::shared_ptr<const Poset> lower;     // P_{<= b}
  std::shared_ptr<const Poset> sub;       // {b} and all meets of elements covered by b
  std::vector<std::size_t> lower_to_base; // positions in the lattice
  std::vector<std::size_t> sub_to_base;
  GaloisConnection connection;            // f : lower -> sub, g : inclusion
};

inline MeetSublattice meet_generated_sublattice(const Lattice& l, std::size_t b) {
  const Poset& p = l.poset();
  MeetSublattice out;
  std::vector<std::size_t> covered = p.lower_covers(b);
  std::vector<bool> in_sub(p.size(), false);
  in_sub[b] = true;
  // close {b} under meets with covered elements
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (!in_sub[x]) continue;
      for (std::size_t c : covered) {
        const std::size_t m = l.meet(x, c);
        if (!in_sub[m]) {
          in_sub[m] = true;
          grew = true;
        }
      }
    }
  }
  for (std::size_t x : p.linear_extension()) {
    if (p.leq(x, b)) out.lower_to_base.push_back(x);
    if (in_sub[x]) out.sub_to_base.push_back(x);
  }
  out.lower = std::make_shared<const Poset>(p.induced(out.lower_to_base));
  out.sub = std::make_shared<const Poset>(p.induced(out.sub_to_base));
  auto position = [](const std::vector<std::size_t>& v, std::size_t x) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == x) return i;
    throw UnknownElement("element outside the sublattice");
  };
  std::vector<std::size_t> f, g;
  for (std::size_t a : out.lower_to_base) {
    std::size_t m = b;
    for (std::size_t c : covered)
      if (p.leq(a, c)) m = l.meet(m, c);
    f.push_back(position(out.sub_to_base, m));
  }
  for (std::size_t x : out.sub_to_base) g.push_back(position(out.lower_to_base, x));
  out.connection = GaloisConnection(MonotoneMap(out.lower, out.sub, std::move(f)), MonotoneMap(out.sub, out.lower, std::move(g)));
  return out;
}

template <class Cat>
struct DepthReport {
  std::size_t covers = 0;
  GradedObjects<Cat> homology;
  bool ok = false;
};

/// On a distributive lattice, Moebius homology at b vanishes above the
/// number of elements b covers.
template <class Cat>
DepthReport<Cat> depth_bound_check(const Lattice& l, const PosetModule<Cat>& m, std::size_t b) {
  if (!l.distributive()) throw NotDistributive("depth bound requires a distributive lattice");
  DepthReport<Cat> r;
  r.covers = l.poset().lower_covers(b).size();
  r.homology = mobius_homology_at(m, b);
  r.ok = r.homology.vanishes_above(r.covers);
  return r;
}

}  // namespace mobius
