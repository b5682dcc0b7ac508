#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "mobius/cosheaf.hpp"
#include "mobius/incidence.hpp"
#include "mobius/module.hpp"
#include "mobius/order_complex.hpp"
#include "mobius/parallel.hpp"

namespace mobius {

/// Homology objects by degree. Comparison pads with zero objects, so
/// trailing zeros never matter.
template <class Cat>
struct GradedObjects {
  std::vector<typename Cat::Object> degrees;

  typename Cat::Object at(std::size_t d) const { return d < degrees.size() ? degrees[d] : typename Cat::Object{}; }

  bool operator==(const GradedObjects& o) const {
    const std::size_t n = std::max(degrees.size(), o.degrees.size());
    for (std::size_t d = 0; d < n; ++d)
      if (!(at(d) == o.at(d))) return false;
    return true;
  }

  /// True when every degree above `n` is zero.
  bool vanishes_above(std::size_t n) const {
    for (std::size_t d = n + 1; d < degrees.size(); ++d)
      if (!(degrees[d] == typename Cat::Object{})) return false;
    return true;
  }
  bool is_zero() const { return vanishes_above(0) && at(0) == typename Cat::Object{}; }
};

template <class Cat>
GradedObjects<Cat> selection_homology(const PosetModule<Cat>& m, const Selection& sel) {
  OrderCosheaf<Cat> cs(m);
  return GradedObjects<Cat>{homology(m.category(), chain_complex(cs, sel))};
}

/// Homology of the order cosheaf on the simplices with maximum exactly b.
template <class Cat>
GradedObjects<Cat> mobius_homology_at(const PosetModule<Cat>& m, std::size_t b) {
  return selection_homology(m, chains_with_max(m.poset(), b));
}

template <class Cat>
std::vector<GradedObjects<Cat>> mobius_homology_module(const PosetModule<Cat>& m, std::size_t jobs = 1) {
  std::vector<GradedObjects<Cat>> out(m.poset().size());
  parallel_for(out.size(), jobs, [&](std::size_t b) { out[b] = mobius_homology_at(m, b); });
  return out;
}

template <class Cat>
GrothElement alternating_class(const Cat& cat, const GradedObjects<Cat>& h) {
  return alternating_class(cat, h.degrees);
}

struct IdentityCheck {
  GrothElement lhs, rhs;
  bool equal = false;
};

/// Moebius inversion of the dimension function at b against the
/// alternating class of the Moebius homology at b.
template <class Cat>
IdentityCheck euler_identity_check(const PosetModule<Cat>& m, std::size_t b) {
  IdentityCheck r;
  r.lhs = mobius_inversion(m.poset(), m.dimension_function())[b];
  r.rhs = alternating_class(m.category(), mobius_homology_at(m, b));
  r.equal = r.lhs == r.rhs;
  return r;
}

/// Sum of the Moebius inversion against the Euler characteristic of the
/// homology of the whole order cosheaf.
template <class Cat>
IdentityCheck total_homology_check(const PosetModule<Cat>& m) {
  IdentityCheck r;
  for (const auto& g : mobius_inversion(m.poset(), m.dimension_function())) r.lhs += g;
  OrderComplex k(m.poset());
  r.rhs = alternating_class(m.category(), selection_homology(m, k.all()));
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace mobius
