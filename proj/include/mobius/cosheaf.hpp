#pragma once

#include <cstddef>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mobius/block_complex.hpp"
#include "mobius/grothendieck.hpp"
#include "mobius/module.hpp"
#include "mobius/order_complex.hpp"

namespace mobius {

/// The order cosheaf of a module: a simplex gets M(min), and the coface map
/// from tau to its face sigma is M(min tau <= min sigma).
template <class Cat>
class OrderCosheaf {
 public:
  explicit OrderCosheaf(const PosetModule<Cat>& m) : module_(&m) {}

  const PosetModule<Cat>& module() const { return *module_; }
  const typename Cat::Object& assign(const Simplex& s) const { return module_->at(s.front()); }
  const typename Cat::Morphism& coface_map(const Simplex& tau, const Simplex& sigma) const {
    return module_->map(tau.front(), sigma.front());
  }

 private:
  const PosetModule<Cat>* module_;
};

/// The cosheaf chain complex on a selection of simplices. Faces outside the
/// selection are dropped, which realizes the relative complex C(K)/C(L) when
/// the selection is K \ L.
template <class Cat>
ChainComplexOf<Cat> chain_complex(const OrderCosheaf<Cat>& cs, const Selection& sel) {
  ChainComplexOf<Cat> c;
  std::size_t top = sel.size();
  while (top > 0 && sel[top - 1].empty()) --top;
  c.blocks.resize(top);
  c.boundary.resize(top);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pool;
  auto map_index = [&](std::size_t a, std::size_t b) {
    auto [it, fresh] = pool.try_emplace({a, b}, c.maps.size());
    if (fresh) c.maps.push_back(cs.module().map(a, b));
    return it->second;
  };
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index(top);
  for (std::size_t d = 0; d < top; ++d) {
    for (std::size_t i = 0; i < sel[d].size(); ++i) {
      index[d].emplace(sel[d][i], i);
      c.blocks[d].push_back(cs.assign(sel[d][i]));
    }
  }
  for (std::size_t d = 1; d < top; ++d) {
    auto& bm = c.boundary[d];
    bm.columns.resize(sel[d].size());
    for (std::size_t i = 0; i < sel[d].size(); ++i) {
      const Simplex& s = sel[d][i];
      for (const auto& [face, sign] : signed_faces(s)) {
        auto it = index[d - 1].find(face);
        if (it == index[d - 1].end()) continue;
        bm.columns[i].push_back({it->second, sign, map_index(s.front(), face.front())});
      }
    }
  }
  return c;
}

template <class Cat>
std::vector<typename Cat::Object> homology(const Cat& cat, const ChainComplexOf<Cat>& c) {
  return cat.homology(c);
}

/// Checks d o d = 0 blockwise with the category's own arithmetic.
template <class Cat>
bool boundary_squares_to_zero(const Cat& cat, const ChainComplexOf<Cat>& c) {
  for (std::size_t d = 2; d < c.degrees(); ++d) {
    for (std::size_t col = 0; col < c.boundary[d].columns.size(); ++col) {
      std::map<std::size_t, typename Cat::Morphism> acc;
      for (const auto& e1 : c.boundary[d].columns[col])
        for (const auto& e2 : c.boundary[d - 1].columns[e1.row]) {
          auto m = cat.compose(c.maps[e2.map], c.maps[e1.map]);
          if (e1.sign * e2.sign < 0) m = cat.negate(m);
          auto it = acc.find(e2.row);
          if (it == acc.end())
            acc.emplace(e2.row, std::move(m));
          else
            it->second = cat.add(it->second, m);
        }
      for (const auto& [row, m] : acc)
        if (!cat.is_zero_morphism(m)) return false;
    }
  }
  return true;
}

/// sum_d (-1)^d sum over selected d-simplices of [assign(sigma)].
template <class Cat>
GrothElement euler_characteristic(const OrderCosheaf<Cat>& cs, const Selection& sel) {
  const Cat& cat = cs.module().category();
  GrothElement out;
  for (std::size_t d = 0; d < sel.size(); ++d)
    for (const auto& s : sel[d]) {
      GrothElement g = cat.groth_class(cs.assign(s));
      if (d % 2 == 0)
        out += g;
      else
        out -= g;
    }
  return out;
}

/// sum_d (-1)^d [objects_d].
template <class Cat>
GrothElement alternating_class(const Cat& cat, const std::vector<typename Cat::Object>& graded) {
  GrothElement out;
  for (std::size_t d = 0; d < graded.size(); ++d) {
    GrothElement g = cat.groth_class(graded[d]);
    if (d % 2 == 0)
      out += g;
    else
      out -= g;
  }
  return out;
}

}  // namespace mobius
