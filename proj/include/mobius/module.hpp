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
#include "mobius/grothendieck.hpp"
#include "mobius/poset.hpp"

namespace mobius {

/// A functor from a finite poset to a coefficient category, given by objects
/// and cover maps. Every map M(a <= b) is precomputed along a linear
/// extension, and construction fails unless all cover paths agree.
template <class Cat>
class PosetModule {
 public:
  using Object = typename Cat::Object;
  using Morphism = typename Cat::Morphism;
  using Index = Poset::Index;
  using CoverMaps = std::map<std::pair<Index, Index>, Morphism>;

  PosetModule() = default;

  PosetModule(std::shared_ptr<const Poset> poset, Cat cat, std::vector<Object> objects, const CoverMaps& cover_maps)
      : poset_(std::move(poset)), cat_(std::move(cat)), objects_(std::move(objects)) {
    const Poset& p = *poset_;
    if (objects_.size() != p.size()) throw ShapeMismatch("module needs one object per poset element");
    for (const auto& [cover, m] : cover_maps)
      if (!p.covers_pair(cover.first, cover.second))
        throw ValidationError("map given for " + p.name(cover.first) + "|" + p.name(cover.second) +
                              ", which is not a cover relation");
    const std::size_t n = p.size();
    table_.assign(n * n, -1);
    for (Index b : p.linear_extension()) {
      table_[b * n + b] = push(cat_.identity(objects_[b]));
      for (Index c : p.lower_covers(b)) {
        auto it = cover_maps.find({c, b});
        if (it == cover_maps.end()) throw ValidationError("missing map for cover " + p.name(c) + "|" + p.name(b));
        const Morphism& m = it->second;
        if (!(m.source == objects_[c]) || !(m.target == objects_[b]))
          throw ShapeMismatch("map for cover " + p.name(c) + "|" + p.name(b) + " has the wrong shape");
      }
      for (Index a = 0; a < n; ++a) {
        if (!p.lt(a, b)) continue;
        std::optional<Index> first;
        for (Index c : p.lower_covers(b)) {
          if (!p.leq(a, c)) continue;
          Morphism via = cat_.compose(cover_maps.at({c, b}), map(a, c));
          if (!first) {
            first = c;
            table_[a * n + b] = push(std::move(via));
          } else if (!cat_.equal(via, maps_[table_[a * n + b]])) {
            throw FunctorialityError("cover paths from " + p.name(a) + " to " + p.name(b) + " disagree (through " +
                                     p.name(*first) + " and " + p.name(c) + ")");
          }
        }
      }
    }
  }

  const Poset& poset() const { return *poset_; }
  const std::shared_ptr<const Poset>& poset_ptr() const { return poset_; }
  const Cat& category() const { return cat_; }
  const Object& at(Index a) const { return objects_.at(a); }
  const std::vector<Object>& objects() const { return objects_; }

  /// M(a <= b).
  const Morphism& map(Index a, Index b) const {
    const std::int32_t k = table_.at(a * poset_->size() + b);
    if (k < 0) throw NotComparable(poset_->name(a) + " is not below " + poset_->name(b));
    return maps_[k];
  }

  CoverMaps cover_maps() const {
    CoverMaps out;
    for (const auto& [a, b] : poset_->covers()) out.emplace(std::pair{a, b}, map(a, b));
    return out;
  }

  std::vector<GrothElement> dimension_function() const {
    std::vector<GrothElement> out;
    for (const auto& o : objects_) out.push_back(cat_.groth_class(o));
    return out;
  }

 private:
  std::int32_t push(Morphism m) {
    maps_.push_back(std::move(m));
    return static_cast<std::int32_t>(maps_.size() - 1);
  }

  std::shared_ptr<const Poset> poset_;
  Cat cat_;
  std::vector<Object> objects_;
  std::vector<Morphism> maps_;
  std::vector<std::int32_t> table_;
};

/// A morphism of modules, given by its components.
template <class Cat>
struct NaturalTransformation {
  std::vector<typename Cat::Morphism> components;
};

template <class Cat>
bool is_natural(const PosetModule<Cat>& source, const PosetModule<Cat>& target, const NaturalTransformation<Cat>& t) {
  const Cat& cat = source.category();
  for (const auto& [a, b] : source.poset().covers())
    if (!cat.equal(cat.compose(target.map(a, b), t.components[a]), cat.compose(t.components[b], source.map(a, b))))
      return false;
  return true;
}

template <class Cat>
PosetModule<Cat> constant_module(std::shared_ptr<const Poset> p, const Cat& cat, const typename Cat::Object& x) {
  typename PosetModule<Cat>::CoverMaps maps;
  for (const auto& c : p->covers()) maps.emplace(c, cat.identity(x));
  std::vector<typename Cat::Object> objects(p->size(), x);
  return PosetModule<Cat>(std::move(p), cat, std::move(objects), maps);
}

template <class Cat>
PosetModule<Cat> zero_module(std::shared_ptr<const Poset> p, const Cat& cat) {
  return constant_module(std::move(p), cat, cat.zero_object());
}

/// X on the up-set of a with identity maps, 0 elsewhere.
template <class Cat>
PosetModule<Cat> upset_module(std::shared_ptr<const Poset> p, const Cat& cat, Poset::Index a,
                              const typename Cat::Object& x) {
  std::vector<typename Cat::Object> objects(p->size(), cat.zero_object());
  for (std::size_t b = 0; b < p->size(); ++b)
    if (p->leq(a, b)) objects[b] = x;
  typename PosetModule<Cat>::CoverMaps maps;
  for (const auto& [lo, hi] : p->covers()) maps.emplace(std::pair{lo, hi}, cat.zero_morphism(objects[lo], objects[hi]));
  for (const auto& [lo, hi] : p->covers())
    if (p->leq(a, lo)) maps.at({lo, hi}) = cat.identity(x);
  return PosetModule<Cat>(std::move(p), cat, std::move(objects), maps);
}

/// Pointwise direct sum of modules over the same poset.
template <class Cat>
PosetModule<Cat> direct_sum_modules(const std::vector<PosetModule<Cat>>& parts) {
  if (parts.empty()) throw ValidationError("direct sum of no modules");
  const Cat& cat = parts[0].category();
  const auto& p = parts[0].poset_ptr();
  std::vector<typename Cat::Biproduct> sums;
  std::vector<typename Cat::Object> objects;
  for (std::size_t a = 0; a < p->size(); ++a) {
    std::vector<typename Cat::Object> here;
    for (const auto& m : parts) here.push_back(m.at(a));
    sums.push_back(cat.direct_sum(here));
    objects.push_back(sums.back().sum);
  }
  typename PosetModule<Cat>::CoverMaps maps;
  for (const auto& [a, b] : p->covers()) {
    auto total = cat.zero_morphism(objects[a], objects[b]);
    for (std::size_t i = 0; i < parts.size(); ++i)
      total = cat.add(total,
                      cat.compose(sums[b].injections[i], cat.compose(parts[i].map(a, b), sums[a].projections[i])));
    maps.emplace(std::pair{a, b}, std::move(total));
  }
  return PosetModule<Cat>(p, cat, std::move(objects), maps);
}

/// The pointwise cokernel of a natural transformation source => target.
template <class Cat>
PosetModule<Cat> cokernel_module(const PosetModule<Cat>& target, const NaturalTransformation<Cat>& t) {
  const Cat& cat = target.category();
  const Poset& p = target.poset();
  std::vector<typename Cat::Cokernel> cok;
  std::vector<typename Cat::Object> objects;
  for (std::size_t a = 0; a < p.size(); ++a) {
    cok.push_back(cat.cokernel(t.components[a]));
    objects.push_back(cok.back().object);
  }
  typename PosetModule<Cat>::CoverMaps maps;
  for (const auto& [a, b] : p.covers()) maps.emplace(std::pair{a, b}, cat.induced_map(cok[a], target.map(a, b), cok[b]));
  return PosetModule<Cat>(target.poset_ptr(), cat, std::move(objects), maps);
}

/// M o g for a monotone map g : Q -> P given as an index table.
template <class Cat>
PosetModule<Cat> pullback_module(const PosetModule<Cat>& m, std::shared_ptr<const Poset> q,
                                 const std::vector<std::size_t>& g) {
  std::vector<typename Cat::Object> objects;
  for (std::size_t x = 0; x < q->size(); ++x) objects.push_back(m.at(g[x]));
  typename PosetModule<Cat>::CoverMaps maps;
  for (const auto& [x, y] : q->covers()) maps.emplace(std::pair{x, y}, m.map(g[x], g[y]));
  return PosetModule<Cat>(std::move(q), m.category(), std::move(objects), maps);
}

/// A direct sum of upset modules X_i^{up a_i}, remembering its generators.
template <class Cat>
class FreeModule {
 public:
  using Object = typename Cat::Object;
  using Morphism = typename Cat::Morphism;
  struct Generator {
    Poset::Index birth;
    Object object;
  };

  FreeModule(std::shared_ptr<const Poset> p, Cat cat, std::vector<Generator> generators)
      : generators_(std::move(generators)) {
    std::vector<Object> objects;
    for (std::size_t b = 0; b < p->size(); ++b) {
      std::vector<Object> parts;
      active_.emplace_back();
      for (std::size_t i = 0; i < generators_.size(); ++i)
        if (p->leq(generators_[i].birth, b)) {
          active_.back().push_back(i);
          parts.push_back(generators_[i].object);
        }
      sums_.push_back(cat.direct_sum(parts));
      objects.push_back(sums_.back().sum);
    }
    typename PosetModule<Cat>::CoverMaps maps;
    for (const auto& [a, b] : p->covers()) {
      Morphism total = cat.zero_morphism(objects[a], objects[b]);
      for (std::size_t k = 0; k < active_[a].size(); ++k)
        total = cat.add(total, cat.compose(injection(b, active_[a][k]), sums_[a].projections[k]));
      maps.emplace(std::pair{a, b}, std::move(total));
    }
    module_ = PosetModule<Cat>(std::move(p), std::move(cat), std::move(objects), maps);
  }

  const PosetModule<Cat>& module() const { return module_; }
  const std::vector<Generator>& generators() const { return generators_; }
  /// Generators born at or below b, in generator order.
  const std::vector<std::size_t>& active(Poset::Index b) const { return active_[b]; }

  /// Inclusion of generator i's object into F(b) (requires birth <= b).
  const Morphism& injection(Poset::Index b, std::size_t i) const { return sums_[b].injections[slot(b, i)]; }
  const Morphism& projection(Poset::Index b, std::size_t i) const { return sums_[b].projections[slot(b, i)]; }

  /// The natural transformation F => M sending generator i through g_i,
  /// g_i : X_i -> M(birth_i).
  NaturalTransformation<Cat> extend(const PosetModule<Cat>& target, const std::vector<Morphism>& images) const {
    const Cat& cat = target.category();
    NaturalTransformation<Cat> t;
    for (std::size_t b = 0; b < target.poset().size(); ++b) {
      Morphism total = cat.zero_morphism(module_.at(b), target.at(b));
      for (std::size_t k = 0; k < active_[b].size(); ++k) {
        const std::size_t i = active_[b][k];
        total = cat.add(total, cat.compose(target.map(generators_[i].birth, b),
                                           cat.compose(images[i], sums_[b].projections[k])));
      }
      t.components.push_back(std::move(total));
    }
    return t;
  }

 private:
  std::size_t slot(Poset::Index b, std::size_t i) const {
    const auto& act = active_[b];
    for (std::size_t k = 0; k < act.size(); ++k)
      if (act[k] == i) return k;
    throw NotComparable("generator is not born below this element");
  }

  std::vector<Generator> generators_;
  std::vector<std::vector<std::size_t>> active_;
  std::vector<typename Cat::Biproduct> sums_;
  PosetModule<Cat> module_;
};

/// The interval module X^{up a} / X^{up b}; without b this is X^{up a}.
template <class Cat>
PosetModule<Cat> interval_module(std::shared_ptr<const Poset> p, const Cat& cat, Poset::Index a,
                                 std::optional<Poset::Index> b, const typename Cat::Object& x) {
  PosetModule<Cat> up_a = upset_module(p, cat, a, x);
  if (!b) return up_a;
  if (!p->leq(a, *b)) throw NotComparable(p->name(a) + " is not below " + p->name(*b));
  PosetModule<Cat> up_b = upset_module(p, cat, *b, x);
  NaturalTransformation<Cat> t;
  for (std::size_t c = 0; c < p->size(); ++c)
    t.components.push_back(p->leq(*b, c) ? cat.identity(x) : cat.zero_morphism(up_b.at(c), up_a.at(c)));
  return cokernel_module(up_a, t);
}

}  // namespace mobius
