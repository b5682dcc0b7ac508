#pragma once

#include <cstddef>
#include <vector>

namespace mobius {

/// A morphism between two direct sums, stored by blocks. Column block j of
/// the source maps into row block `row` through `sign * maps[map]`, where
/// `maps` is the owning complex's shared morphism pool.
struct BlockMatrix {
  struct Entry {
    std::size_t row;
    int sign;
    std::size_t map;
  };
  std::vector<std::vector<Entry>> columns;
};

/// A bounded chain complex of direct sums. blocks[d] lists the summands of
/// C_d; boundary[d] is the block matrix of C_d -> C_{d-1} (boundary[0] is the
/// zero map and is left empty).
template <class Object, class Morphism>
struct ChainComplex {
  std::vector<std::vector<Object>> blocks;
  std::vector<BlockMatrix> boundary;
  std::vector<Morphism> maps;

  std::size_t degrees() const { return blocks.size(); }
};

template <class Cat>
using ChainComplexOf = ChainComplex<typename Cat::Object, typename Cat::Morphism>;

}  // namespace mobius
