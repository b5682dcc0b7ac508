#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "mobius/arithmetic.hpp"

namespace mobius {

/// Smith normal form U * A * V = D of an integer matrix, with the inverses of
/// both unimodular transforms tracked alongside.
struct SmithForm {
  Matrix<Integer> U, D, V;
  Matrix<Integer> U_inv, V_inv;
  std::size_t rank = 0;

  /// Diagonal entry i of D (0 past the rank).
  Integer diagonal(std::size_t i) const { return i < std::min(D.rows(), D.cols()) ? D(i, i) : Integer(0); }
};

namespace detail {

struct SmithWork {
  Matrix<Integer>& A;
  Matrix<Integer>& U;
  Matrix<Integer>& U_inv;
  Matrix<Integer>& V;
  Matrix<Integer>& V_inv;

  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < A.cols(); ++k) A(i, k) += c * A(j, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) += c * U(j, k);
    for (std::size_t k = 0; k < U_inv.rows(); ++k) U_inv(k, j) -= c * U_inv(k, i);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < A.cols(); ++k) std::swap(A(i, k), A(j, k));
    for (std::size_t k = 0; k < U.cols(); ++k) std::swap(U(i, k), U(j, k));
    for (std::size_t k = 0; k < U_inv.rows(); ++k) std::swap(U_inv(k, i), U_inv(k, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < A.cols(); ++k) A(i, k) = -A(i, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
    for (std::size_t k = 0; k < U_inv.rows(); ++k) U_inv(k, i) = -U_inv(k, i);
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < A.rows(); ++k) A(k, i) += c * A(k, j);
    for (std::size_t k = 0; k < V.rows(); ++k) V(k, i) += c * V(k, j);
    for (std::size_t k = 0; k < V_inv.cols(); ++k) V_inv(j, k) -= c * V_inv(i, k);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < A.rows(); ++k) std::swap(A(k, i), A(k, j));
    for (std::size_t k = 0; k < V.rows(); ++k) std::swap(V(k, i), V(k, j));
    for (std::size_t k = 0; k < V_inv.cols(); ++k) std::swap(V_inv(i, k), V_inv(j, k));
  }
};

}  // namespace detail

/// Computes the Smith normal form: D is diagonal with non-negative entries
/// d_0 | d_1 | ... | d_{r-1} followed by zeros.
inline SmithForm smith_normal_form(const Matrix<Integer>& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm out;
  out.D = A;
  out.U = identity_matrix<Integer>(m, 1);
  out.U_inv = identity_matrix<Integer>(m, 1);
  out.V = identity_matrix<Integer>(n, 1);
  out.V_inv = identity_matrix<Integer>(n, 1);
  detail::SmithWork w{out.D, out.U, out.U_inv, out.V, out.V_inv};
  Matrix<Integer>& D = out.D;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // pivot: smallest nonzero magnitude in the trailing block
    bool found = false;
    std::size_t pr = t, pc = t;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (!found || abs(D(i, j)) < best)) {
          found = true;
          best = abs(D(i, j));
          pr = i;
          pc = j;
        }
    if (!found) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = D(i, t) / D(t, t);
        w.add_row(i, t, -q);
        if (D(i, t) != 0) {
          w.swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = D(t, j) / D(t, t);
        w.add_col(j, t, -q);
        if (D(t, j) != 0) {
          w.swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility of the trailing block by the pivot
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            w.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (D(t, t) < 0) w.negate_row(t);
  }
  out.rank = t;
  return out;
}

/// A basis (as columns) of the integer kernel {x in Z^n : A x = 0}.
inline Matrix<Integer> integer_kernel(const Matrix<Integer>& A) {
  const SmithForm s = smith_normal_form(A);
  const std::size_t n = A.cols();
  Matrix<Integer> basis(n, n - s.rank);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) basis(i, j - s.rank) = s.V(i, j);
  return basis;
}

/// Solves A x = b over the integers; nullopt when no integral solution exists.
inline std::optional<std::vector<Integer>> solve_integer(const Matrix<Integer>& A, const std::vector<Integer>& b) {
  const SmithForm s = smith_normal_form(A);
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<Integer> y(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) y[i] += s.U(i, k) * b[k];
  std::vector<Integer> z(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (y[i] % s.D(i, i) != 0) return std::nullopt;
      z[i] = y[i] / s.D(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Integer> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) x[i] += s.V(i, k) * z[k];
  return x;
}

}  // namespace mobius
