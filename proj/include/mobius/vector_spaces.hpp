#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mobius/arithmetic.hpp"
#include "mobius/block_complex.hpp"
#include "mobius/errors.hpp"
#include "mobius/grothendieck.hpp"
#include "mobius/sparse_rank.hpp"

namespace mobius {

struct VecObject {
  std::size_t dim = 0;
  bool operator==(const VecObject&) const = default;
};

/// Reduced row echelon form over a field together with its pivot columns.
template <class Field>
std::pair<Matrix<typename Field::value_type>, std::vector<std::size_t>> rref(const Field& field,
                                                                             Matrix<typename Field::value_type> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && field.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(row, k), m(p, k));
    const auto inv = field.inv(m(row, c));
    for (std::size_t k = 0; k < m.cols(); ++k) m(row, k) = field.mul(m(row, k), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || field.is_zero(m(r, c))) continue;
      const auto f = m(r, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = field.sub(m(r, k), field.mul(f, m(row, k)));
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Null space basis as columns. The basis restricted to the free coordinates
/// is the identity, which makes it canonical for the subspace.
template <class Field>
Matrix<typename Field::value_type> null_space(const Field& field, const Matrix<typename Field::value_type>& m) {
  auto [r, pivots] = rref(field, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<typename Field::value_type> basis(m.cols(), free.size(), field.zero());
  for (std::size_t j = 0; j < free.size(); ++j) {
    basis(free[j], j) = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], j) = field.neg(r(i, free[j]));
  }
  return basis;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

/// The category of finite-dimensional vector spaces over `Field`.
template <class Field>
class VectorSpaces {
 public:
  using Scalar = typename Field::value_type;
  using Object = VecObject;
  struct Morphism {
    Object source, target;
    Matrix<Scalar> matrix;  // target.dim rows x source.dim columns
  };
  struct Kernel {
    Object object;
    Morphism inclusion;
  };
  struct Cokernel {
    Object object;
    Morphism projection;
    Matrix<Scalar> lift;  // section of the projection
  };
  struct Biproduct {
    Object sum;
    std::vector<Morphism> injections, projections;
  };

  static constexpr bool is_vector_backend = true;

  VectorSpaces() = default;
  explicit VectorSpaces(Field field) : field_(std::move(field)) {}

  const Field& field() const { return field_; }
  std::string name() const { return field_.name(); }

  Object object(std::size_t dim) const { return Object{dim}; }
  Object zero_object() const { return Object{}; }
  bool is_zero(const Object& o) const { return o.dim == 0; }

  Morphism morphism(const Object& source, const Object& target, Matrix<Scalar> matrix) const {
    if (matrix.rows() != target.dim || matrix.cols() != source.dim)
      throw ShapeMismatch("matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                          ", expected " + std::to_string(target.dim) + "x" + std::to_string(source.dim));
    return Morphism{source, target, std::move(matrix)};
  }
  Morphism morphism_from_integers(const Object& source, const Object& target,
                                  const std::vector<std::vector<Integer>>& rows) const {
    if (rows.size() != target.dim)
      throw ShapeMismatch("matrix has " + std::to_string(rows.size()) + " rows, expected " +
                          std::to_string(target.dim));
    return morphism(source, target,
                    matrix_from_rows<Scalar>(rows, source.dim, [&](const Integer& v) { return field_.from_integer(v); }));
  }

  Morphism identity(const Object& o) const { return Morphism{o, o, identity_matrix(o.dim, field_.one(), field_.zero())}; }
  Morphism zero_morphism(const Object& s, const Object& t) const {
    return Morphism{s, t, Matrix<Scalar>(t.dim, s.dim, field_.zero())};
  }

  /// g after f.
  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(f.target == g.source)) throw NotComposable("composition of incompatible morphisms");
    return Morphism{f.source, g.target, field_product(field_, g.matrix, f.matrix)};
  }
  Morphism add(const Morphism& a, const Morphism& b) const {
    if (!(a.source == b.source) || !(a.target == b.target)) throw ShapeMismatch("sum of morphisms with different shapes");
    Morphism out = a;
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
      for (std::size_t j = 0; j < a.matrix.cols(); ++j) out.matrix(i, j) = field_.add(a.matrix(i, j), b.matrix(i, j));
    return out;
  }
  Morphism negate(const Morphism& a) const {
    Morphism out = a;
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
      for (std::size_t j = 0; j < a.matrix.cols(); ++j) out.matrix(i, j) = field_.neg(a.matrix(i, j));
    return out;
  }
  bool equal(const Morphism& a, const Morphism& b) const {
    return a.source == b.source && a.target == b.target && a.matrix == b.matrix;
  }
  bool is_zero_morphism(const Morphism& a) const {
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
      for (std::size_t j = 0; j < a.matrix.cols(); ++j)
        if (!field_.is_zero(a.matrix(i, j))) return false;
    return true;
  }

  std::size_t rank(const Morphism& m) const {
    return sparse_rank(field_, m.matrix.rows(), sparse_columns(field_, m.matrix));
  }
  bool is_mono(const Morphism& m) const { return rank(m) == m.source.dim; }
  bool is_epi(const Morphism& m) const { return rank(m) == m.target.dim; }

  Kernel kernel(const Morphism& m) const {
    Matrix<Scalar> basis = null_space(field_, m.matrix);
    Object k{basis.cols()};
    return Kernel{k, Morphism{k, m.source, std::move(basis)}};
  }

  Cokernel cokernel(const Morphism& m) const {
    // rows of the projection span the left null space of m
    Matrix<Scalar> left = null_space(field_, transpose(m.matrix));
    Object q{left.cols()};
    Matrix<Scalar> lift(m.target.dim, q.dim, field_.zero());
    // left has identity on its free coordinates; pick them as the section
    auto [r, pivots] = rref(field_, transpose(m.matrix));
    std::vector<bool> is_pivot(m.target.dim, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t j = 0;
    for (std::size_t c = 0; c < m.target.dim; ++c)
      if (!is_pivot[c]) lift(c, j++) = field_.one();
    return Cokernel{q, Morphism{m.target, q, transpose(left)}, std::move(lift)};
  }

  /// The map between cokernels induced by h : from.target -> to.target.
  Morphism induced_map(const Cokernel& from, const Morphism& h, const Cokernel& to) const {
    Matrix<Scalar> m = field_product(field_, to.projection.matrix, field_product(field_, h.matrix, from.lift));
    return Morphism{from.object, to.object, std::move(m)};
  }

  /// The unique x with mono * x = h; throws when h does not factor.
  Morphism factor_through(const Morphism& mono, const Morphism& h) const {
    if (!(mono.target == h.target)) throw NotComposable("factor_through: targets differ");
    const std::size_t k = mono.source.dim, n = h.source.dim, t = mono.target.dim;
    Matrix<Scalar> aug(t, k + n, field_.zero());
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < k; ++j) aug(i, j) = mono.matrix(i, j);
      for (std::size_t j = 0; j < n; ++j) aug(i, k + j) = h.matrix(i, j);
    }
    auto [r, pivots] = rref(field_, std::move(aug));
    Matrix<Scalar> x(k, n, field_.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (pivots[i] >= k) throw Error("factor_through: morphism does not factor through the monomorphism");
      for (std::size_t j = 0; j < n; ++j) x(pivots[i], j) = r(i, k + j);
    }
    if (pivots.size() != k) throw Error("factor_through: not a monomorphism");
    return Morphism{h.source, mono.source, std::move(x)};
  }

  Biproduct direct_sum(std::span<const Object> parts) const {
    Biproduct b;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.dim;
    b.sum = Object{total};
    std::size_t offset = 0;
    for (const auto& p : parts) {
      Morphism inj = zero_morphism(p, b.sum), proj = zero_morphism(b.sum, p);
      for (std::size_t i = 0; i < p.dim; ++i) {
        inj.matrix(offset + i, i) = field_.one();
        proj.matrix(i, offset + i) = field_.one();
      }
      b.injections.push_back(std::move(inj));
      b.projections.push_back(std::move(proj));
      offset += p.dim;
    }
    return b;
  }

  GrothElement groth_class(const Object& o) const { return GrothElement::dimension(static_cast<std::int64_t>(o.dim)); }

  /// ker g / im f.
  Object homology_at(const Morphism& g, const Morphism& f) const {
    if (!(f.target == g.source)) throw NotComposable("homology_at: target(f) != source(g)");
    if (!is_zero_morphism(compose(g, f))) throw NotAComplex("homology_at: g o f is not zero");
    return Object{g.source.dim - rank(g) - rank(f)};
  }

  /// Homology of a block chain complex, one object per degree.
  std::vector<Object> homology(const ChainComplex<Object, Morphism>& c) const {
    const std::size_t top = c.degrees();
    std::vector<std::size_t> dims(top, 0), ranks(top + 1, 0);
    std::vector<std::vector<std::size_t>> offsets(top);
    for (std::size_t d = 0; d < top; ++d) {
      offsets[d].reserve(c.blocks[d].size());
      for (const auto& o : c.blocks[d]) {
        offsets[d].push_back(dims[d]);
        dims[d] += o.dim;
      }
    }
    for (std::size_t d = 1; d < top; ++d) ranks[d] = boundary_rank(c, d, offsets, dims);
    std::vector<Object> out(top);
    for (std::size_t d = 0; d < top; ++d) out[d] = Object{dims[d] - ranks[d] - ranks[d + 1]};
    return out;
  }

  /// Flattens boundary d of a block complex into scalar sparse columns.
  std::vector<SparseColumn<Scalar>> flatten_boundary(const ChainComplex<Object, Morphism>& c, std::size_t d,
                                                     const std::vector<std::vector<std::size_t>>& offsets) const {
    std::vector<SparseColumn<Scalar>> cols;
    const auto& bm = c.boundary[d];
    for (std::size_t blk = 0; blk < bm.columns.size(); ++blk) {
      const std::size_t width = c.blocks[d][blk].dim;
      for (std::size_t k = 0; k < width; ++k) {
        SparseColumn<Scalar> col;
        for (const auto& e : bm.columns[blk]) {
          const auto& m = c.maps[e.map].matrix;
          const std::size_t base = offsets[d - 1][e.row];
          for (std::size_t r = 0; r < m.rows(); ++r) {
            if (field_.is_zero(m(r, k))) continue;
            col.emplace_back(base + r, e.sign > 0 ? m(r, k) : field_.neg(m(r, k)));
          }
        }
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        merge_duplicates(col);
        cols.push_back(std::move(col));
      }
    }
    return cols;
  }

  std::string describe(const Object& o) const { return std::to_string(o.dim); }

 private:
  std::size_t boundary_rank(const ChainComplex<Object, Morphism>& c, std::size_t d,
                            const std::vector<std::vector<std::size_t>>& offsets,
                            const std::vector<std::size_t>& dims) const {
    return sparse_rank(field_, dims[d - 1], flatten_boundary(c, d, offsets));
  }

  void merge_duplicates(SparseColumn<Scalar>& col) const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (w > 0 && col[w - 1].first == col[i].first) {
        col[w - 1].second = field_.add(col[w - 1].second, col[i].second);
        if (field_.is_zero(col[w - 1].second)) --w;
      } else {
        col[w++] = col[i];
      }
    }
    col.resize(w);
  }

  Field field_;
};

using RationalVectorSpaces = VectorSpaces<RationalField>;
using PrimeFieldVectorSpaces = VectorSpaces<PrimeField>;

}  // namespace mobius
