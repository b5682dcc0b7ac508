#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mobius/errors.hpp"
#include "mobius/galois.hpp"
#include "mobius/incidence.hpp"
#include "mobius/mobius_homology.hpp"
#include "mobius/module.hpp"
#include "mobius/parallel.hpp"
#include "mobius/poset.hpp"

namespace mobius {

inline constexpr std::size_t kIntervalPosetLimit = 4000;

/// Formal half-open intervals [a, b) with a <= b of a poset with a maximum,
/// ordered by [a, b) <= [c, d) iff a <= c and b <= d.
class IntervalPoset {
 public:
  explicit IntervalPoset(std::shared_ptr<const Poset> base, std::size_t limit = kIntervalPosetLimit)
      : base_(std::move(base)) {
    const Poset& p = *base_;
    auto top = p.maximum();
    if (!top) throw NoMaximum("interval poset needs a maximum element");
    top_ = *top;
    intervals_ = p.intervals();
    if (intervals_.size() > limit)
      throw SizeLimit("interval poset has " + std::to_string(intervals_.size()) + " elements (limit " +
                      std::to_string(limit) + ")");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
      lookup_.emplace(intervals_[i], i);
      names.push_back("[" + p.name(intervals_[i].first) + "," + p.name(intervals_[i].second) + ")");
    }
    poset_ = std::make_shared<const Poset>(Poset::from_relation(std::move(names), [&](std::size_t i, std::size_t j) {
      return p.leq(intervals_[i].first, intervals_[j].first) && p.leq(intervals_[i].second, intervals_[j].second);
    }));
  }

  const Poset& base() const { return *base_; }
  const std::shared_ptr<const Poset>& base_ptr() const { return base_; }
  const Poset& poset() const { return *poset_; }
  const std::shared_ptr<const Poset>& poset_ptr() const { return poset_; }
  std::size_t size() const { return intervals_.size(); }
  std::size_t top() const { return top_; }

  const std::pair<std::size_t, std::size_t>& interval(std::size_t i) const { return intervals_.at(i); }
  std::size_t index(std::size_t a, std::size_t b) const {
    auto it = lookup_.find({a, b});
    if (it == lookup_.end()) throw NotComparable(base_->name(a) + " is not below " + base_->name(b));
    return it->second;
  }
  bool diagonal(std::size_t i) const { return intervals_[i].first == intervals_[i].second; }
  bool infinite(std::size_t i) const { return intervals_[i].second == top_; }

 private:
  std::shared_ptr<const Poset> base_, poset_;
  std::size_t top_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> intervals_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lookup_;
};

/// A free presentation phi : F => M. Generator i is born at `birth` with
/// object X_i and sends X_i into M(birth) through `image`.
template <class Cat>
class FreePresentation {
 public:
  using Object = typename Cat::Object;
  using Morphism = typename Cat::Morphism;
  struct Generator {
    std::size_t birth;
    Object object;
    Morphism image;
  };

  FreePresentation(PosetModule<Cat> m, std::vector<Generator> generators)
      : module_(std::move(m)), generators_(std::move(generators)), free_(make_free()) {
    const Cat& cat = module_.category();
    std::vector<Morphism> images;
    for (const auto& g : generators_) {
      if (!(g.image.source == g.object) || !(g.image.target == module_.at(g.birth)))
        throw ShapeMismatch("generator born at " + module_.poset().name(g.birth) + " has an image of the wrong shape");
      images.push_back(g.image);
    }
    phi_ = free_.extend(module_, images);
    for (std::size_t b = 0; b < module_.poset().size(); ++b)
      if (!cat.is_epi(phi_.components[b]))
        throw ValidationError("presentation is not an epimorphism at " + module_.poset().name(b));
  }

  const PosetModule<Cat>& module() const { return module_; }
  const FreeModule<Cat>& free() const { return free_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const Morphism& phi(std::size_t b) const { return phi_.components[b]; }

 private:
  FreeModule<Cat> make_free() const {
    std::vector<typename FreeModule<Cat>::Generator> gens;
    for (const auto& g : generators_) gens.push_back({g.birth, g.object});
    return FreeModule<Cat>(module_.poset_ptr(), module_.category(), std::move(gens));
  }

  PosetModule<Cat> module_;
  std::vector<Generator> generators_;
  FreeModule<Cat> free_;
  NaturalTransformation<Cat> phi_;
};

/// One generator M(a)^{up a} per element, mapped by the identity.
template <class Cat>
FreePresentation<Cat> canonical_presentation(const PosetModule<Cat>& m) {
  std::vector<typename FreePresentation<Cat>::Generator> gens;
  for (std::size_t a = 0; a < m.poset().size(); ++a)
    if (!m.category().is_zero(m.at(a))) gens.push_back({a, m.at(a), m.category().identity(m.at(a))});
  return FreePresentation<Cat>(m, std::move(gens));
}

/// The canonical presentation with every generator listed twice.
template <class Cat>
FreePresentation<Cat> doubled_presentation(const PosetModule<Cat>& m) {
  std::vector<typename FreePresentation<Cat>::Generator> gens;
  for (int copy = 0; copy < 2; ++copy)
    for (std::size_t a = 0; a < m.poset().size(); ++a)
      if (!m.category().is_zero(m.at(a))) gens.push_back({a, m.at(a), m.category().identity(m.at(a))});
  return FreePresentation<Cat>(m, std::move(gens));
}

/// A module over an interval poset whose objects are subobjects of a
/// module over the base (F(a) or M(a) at [a, b)), with the inclusions kept.
template <class Cat>
struct SubobjectModule {
  std::shared_ptr<const IntervalPoset> intervals;
  PosetModule<Cat> module;
  std::vector<typename Cat::Morphism> inclusion;  // into the ambient object at the birth
};

namespace detail {

/// Assembles the interval module whose cover maps are the maps induced by
/// `ambient` between chosen subobjects.
template <class Cat>
SubobjectModule<Cat> assemble_subobjects(std::shared_ptr<const IntervalPoset> ip, const PosetModule<Cat>& ambient,
                                         std::vector<typename Cat::Kernel> subs) {
  const Cat& cat = ambient.category();
  SubobjectModule<Cat> out;
  out.intervals = ip;
  std::vector<typename Cat::Object> objects;
  for (auto& k : subs) {
    objects.push_back(k.object);
    out.inclusion.push_back(std::move(k.inclusion));
  }
  typename PosetModule<Cat>::CoverMaps maps;
  for (const auto& [i, j] : ip->poset().covers()) {
    const std::size_t a = ip->interval(i).first, c = ip->interval(j).first;
    maps.emplace(std::pair{i, j}, cat.factor_through(out.inclusion[j], cat.compose(ambient.map(a, c), out.inclusion[i])));
  }
  out.module = PosetModule<Cat>(ip->poset_ptr(), cat, std::move(objects), maps);
  return out;
}

}  // namespace detail

/// BD[a, b) = ker(phi(b) o F(a <= b)) inside F(a) for b finite; BD[a, inf) = F(a).
template <class Cat>
SubobjectModule<Cat> birth_death(const FreePresentation<Cat>& pres, std::shared_ptr<const IntervalPoset> ip = nullptr) {
  if (!ip) ip = std::make_shared<const IntervalPoset>(pres.module().poset_ptr());
  const Cat& cat = pres.module().category();
  const PosetModule<Cat>& f = pres.free().module();
  std::vector<typename Cat::Kernel> subs;
  for (std::size_t i = 0; i < ip->size(); ++i) {
    const auto [a, b] = ip->interval(i);
    if (ip->infinite(i))
      subs.push_back({f.at(a), cat.identity(f.at(a))});
    else
      subs.push_back(cat.kernel(cat.compose(pres.phi(b), f.map(a, b))));
  }
  return detail::assemble_subobjects(ip, f, std::move(subs));
}

/// K[a, b) = ker M(a <= b) for b finite, K[a, inf) = M(a).
template <class Cat>
SubobjectModule<Cat> kernel_module(const PosetModule<Cat>& m, std::shared_ptr<const IntervalPoset> ip = nullptr) {
  if (!ip) ip = std::make_shared<const IntervalPoset>(m.poset_ptr());
  const Cat& cat = m.category();
  std::vector<typename Cat::Kernel> subs;
  for (std::size_t i = 0; i < ip->size(); ++i) {
    const auto [a, b] = ip->interval(i);
    if (ip->infinite(i))
      subs.push_back({m.at(a), cat.identity(m.at(a))});
    else
      subs.push_back(cat.kernel(m.map(a, b)));
  }
  return detail::assemble_subobjects(ip, m, std::move(subs));
}

/// D[a, b) = ker phi(a), the relations born at a. This is BD[a, a) except
/// at [inf, inf), where BD takes all of F(inf).
template <class Cat>
SubobjectModule<Cat> diagonal_module(const FreePresentation<Cat>& pres, std::shared_ptr<const IntervalPoset> ip) {
  const Cat& cat = pres.module().category();
  std::vector<typename Cat::Kernel> relations;
  for (std::size_t a = 0; a < ip->base().size(); ++a) relations.push_back(cat.kernel(pres.phi(a)));
  std::vector<typename Cat::Kernel> subs;
  for (std::size_t i = 0; i < ip->size(); ++i) subs.push_back(relations[ip->interval(i).first]);
  return detail::assemble_subobjects(ip, pres.free().module(), std::move(subs));
}

struct ExactnessReport {
  bool composite_zero = true;
  bool injective = true;
  bool surjective = true;
  bool classes_add = true;
  bool all() const { return composite_zero && injective && surjective && classes_add; }
};

/// Checks 0 -> D -> BD -> K_M -> 0 at every interval.
template <class Cat>
ExactnessReport short_exact_sequence_check(const FreePresentation<Cat>& pres, const SubobjectModule<Cat>& d,
                                           const SubobjectModule<Cat>& bd, const SubobjectModule<Cat>& k) {
  const Cat& cat = pres.module().category();
  ExactnessReport r;
  for (std::size_t i = 0; i < bd.intervals->size(); ++i) {
    const std::size_t a = bd.intervals->interval(i).first;
    auto in = cat.factor_through(bd.inclusion[i], d.inclusion[i]);
    auto out = cat.factor_through(k.inclusion[i], cat.compose(pres.phi(a), bd.inclusion[i]));
    if (!cat.is_zero_morphism(cat.compose(out, in))) r.composite_zero = false;
    if (!cat.is_mono(in)) r.injective = false;
    if (!cat.is_epi(out)) r.surjective = false;
    if (!(cat.groth_class(bd.module.at(i)) == cat.groth_class(d.module.at(i)) + cat.groth_class(k.module.at(i))))
      r.classes_add = false;
  }
  return r;
}

/// Checks that BD[a,c) is the intersection of BD[a,d) and BD[b,c) inside
/// BD[b,d) for all a <= b <= c <= d, comparing classes of the pullback.
template <class Cat>
bool pullback_property_check(const FreePresentation<Cat>& pres, const SubobjectModule<Cat>& bd) {
  const Cat& cat = pres.module().category();
  const auto& ip = *bd.intervals;
  const Poset& p = ip.base();
  const PosetModule<Cat>& f = pres.free().module();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      for (std::size_t c = 0; c < p.size(); ++c)
        for (std::size_t e = 0; e < p.size(); ++e) {
          if (!p.leq(a, b) || !p.leq(b, c) || !p.leq(c, e)) continue;
          // inside F(b): the images of BD[a,e) and of BD[b,c)
          const std::size_t ae = ip.index(a, e), bc = ip.index(b, c), ac = ip.index(a, c);
          auto from_ae = cat.compose(f.map(a, b), bd.inclusion[ae]);
          auto from_bc = bd.inclusion[bc];
          // pullback = kernel of [from_ae, -from_bc] : BD[a,e) + BD[b,c) -> F(b)
          std::vector<typename Cat::Object> parts{bd.module.at(ae), bd.module.at(bc)};
          auto sum = cat.direct_sum(parts);
          auto diff = cat.add(cat.compose(from_ae, sum.projections[0]), cat.negate(cat.compose(from_bc, sum.projections[1])));
          if (!(cat.groth_class(cat.kernel(diff).object) == cat.groth_class(bd.module.at(ac)))) return false;
        }
  return true;
}

/// The Moebius inversion of the birth-death dimension function over Int P.
template <class Cat>
std::vector<GrothElement> persistence_diagram(const SubobjectModule<Cat>& bd) {
  return mobius_inversion(bd.intervals->poset(), bd.module.dimension_function());
}

template <class Cat>
GradedObjects<Cat> persistent_homology(const SubobjectModule<Cat>& bd, std::size_t interval) {
  return mobius_homology_at(bd.module, interval);
}

/// Moebius homology of BD phi and of K_M at an off-diagonal interval.
template <class Cat>
GradedCheck<Cat> presentation_independence_check(const SubobjectModule<Cat>& bd, const SubobjectModule<Cat>& k,
                                                 std::size_t interval) {
  if (bd.intervals->diagonal(interval)) throw DiagonalInterval("interval " + bd.intervals->poset().name(interval) + " is on the diagonal");
  GradedCheck<Cat> r;
  r.lhs = mobius_homology_at(bd.module, interval);
  r.rhs = mobius_homology_at(k.module, interval);
  r.equal = r.lhs == r.rhs;
  return r;
}

/// Int f -| Int g between interval posets. Both maps must preserve the maxima.
inline GaloisConnection interval_galois(const GaloisConnection& c, std::shared_ptr<const IntervalPoset> ip,
                                        std::shared_ptr<const IntervalPoset> iq) {
  const auto& f = c.f.map;
  const auto& g = c.g.map;
  if (f[ip->top()] != iq->top() || g[iq->top()] != ip->top())
    throw NoMaximum("the Galois connection must send maximum to maximum in both directions");
  std::vector<std::size_t> int_f, int_g;
  for (std::size_t i = 0; i < ip->size(); ++i) int_f.push_back(iq->index(f[ip->interval(i).first], f[ip->interval(i).second]));
  for (std::size_t j = 0; j < iq->size(); ++j) int_g.push_back(ip->index(g[iq->interval(j).first], g[iq->interval(j).second]));
  return GaloisConnection(MonotoneMap(ip->poset_ptr(), iq->poset_ptr(), std::move(int_f)),
                          MonotoneMap(iq->poset_ptr(), ip->poset_ptr(), std::move(int_g)));
}

/// The connection a -> [a, a), [b, c) -> b between P and Int P.
inline GaloisConnection diagonal_galois(std::shared_ptr<const IntervalPoset> ip) {
  std::vector<std::size_t> f, g;
  for (std::size_t a = 0; a < ip->base().size(); ++a) f.push_back(ip->index(a, a));
  for (std::size_t i = 0; i < ip->size(); ++i) g.push_back(ip->interval(i).first);
  return GaloisConnection(MonotoneMap(ip->base_ptr(), ip->poset_ptr(), std::move(f)),
                          MonotoneMap(ip->poset_ptr(), ip->base_ptr(), std::move(g)));
}

/// The presentation of M o g obtained by restricting phi along g: generator
/// i moves to f(a_i) and maps through M(a_i <= g f(a_i)).
template <class Cat>
FreePresentation<Cat> restrict_presentation(const FreePresentation<Cat>& pres, const GaloisConnection& c) {
  const Cat& cat = pres.module().category();
  PosetModule<Cat> n = pullback_module(pres.module(), c.f.target, c.g.map);
  std::vector<typename FreePresentation<Cat>::Generator> gens;
  for (const auto& g : pres.generators()) {
    const std::size_t x = c.f(g.birth);
    gens.push_back({x, g.object, cat.compose(pres.module().map(g.birth, c.g(x)), g.image)});
  }
  return FreePresentation<Cat>(std::move(n), std::move(gens));
}

/// Moebius homology of BD psi at [x, y) for the restricted presentation psi
/// against the relative homology of BD phi over (Int f)^{-1}([x, y)).
template <class Cat>
GradedCheck<Cat> persistent_galois_check(const FreePresentation<Cat>& pres, const GaloisConnection& c,
                                         std::size_t interval_in_q) {
  auto ip = std::make_shared<const IntervalPoset>(pres.module().poset_ptr());
  auto iq = std::make_shared<const IntervalPoset>(c.f.target);
  const GaloisConnection ic = interval_galois(c, ip, iq);
  const FreePresentation<Cat> psi = restrict_presentation(pres, c);
  GradedCheck<Cat> r;
  r.lhs = mobius_homology_at(birth_death(psi, iq).module, interval_in_q);
  r.rhs = rota_rhs(ic, birth_death(pres, ip).module, interval_in_q);
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace mobius
