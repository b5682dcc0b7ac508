#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "mobius/arithmetic.hpp"

namespace mobius {

/// A sparse column: (row, value) pairs sorted by row with no zero values.
template <class T>
using SparseColumn = std::vector<std::pair<std::size_t, T>>;

/// Rank by column reduction over a field. Each column is reduced against the
/// earlier columns owning its lowest (largest-row) entry.
template <class Field>
std::size_t sparse_rank(const Field& field, std::size_t rows, std::vector<SparseColumn<typename Field::value_type>> columns) {
  using T = typename Field::value_type;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(rows, kNone);
  std::size_t rank = 0;
  SparseColumn<T> scratch;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    SparseColumn<T>& col = columns[j];
    while (!col.empty()) {
      const std::size_t low = col.back().first;
      if (owner[low] == kNone) break;
      const SparseColumn<T>& other = columns[owner[low]];
      // other is normalized: its low entry is 1
      const T factor = col.back().second;
      scratch.clear();
      auto a = col.cbegin();
      auto b = other.cbegin();
      while (a != col.cend() || b != other.cend()) {
        if (b == other.cend() || (a != col.cend() && a->first < b->first)) {
          scratch.push_back(*a++);
        } else if (a == col.cend() || b->first < a->first) {
          scratch.emplace_back(b->first, field.neg(field.mul(factor, b->second)));
          ++b;
        } else {
          T v = field.sub(a->second, field.mul(factor, b->second));
          if (!field.is_zero(v)) scratch.emplace_back(a->first, std::move(v));
          ++a;
          ++b;
        }
      }
      col.swap(scratch);
    }
    if (col.empty()) continue;
    const T inv = field.inv(col.back().second);
    for (auto& [r, v] : col) v = field.mul(v, inv);
    owner[col.back().first] = j;
    ++rank;
  }
  return rank;
}

namespace detail {

inline void make_primitive(SparseColumn<Integer>& col) {
  Integer g = 0;
  for (const auto& [r, v] : col) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [r, v] : col) v /= g;
}

}  // namespace detail

/// Fraction-free rank over the rationals: columns are scaled to primitive
/// integer vectors and eliminated by cross multiplication.
inline std::size_t sparse_rank(const RationalField&, std::size_t rows, const std::vector<SparseColumn<Rational>>& columns) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<SparseColumn<Integer>> cols(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Integer den = 1;
    for (const auto& [r, v] : columns[j]) den = lcm(den, denominator(v));
    for (const auto& [r, v] : columns[j]) cols[j].emplace_back(r, numerator(v) * (den / denominator(v)));
    detail::make_primitive(cols[j]);
  }
  std::vector<std::size_t> owner(rows, kNone);
  std::size_t rank = 0;
  SparseColumn<Integer> scratch;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    SparseColumn<Integer>& col = cols[j];
    while (!col.empty()) {
      const std::size_t low = col.back().first;
      if (owner[low] == kNone) break;
      const SparseColumn<Integer>& other = cols[owner[low]];
      const Integer g = gcd(col.back().second, other.back().second);
      const Integer mine = other.back().second / g;   // multiplies col
      const Integer theirs = col.back().second / g;   // multiplies other
      scratch.clear();
      auto a = col.cbegin();
      auto b = other.cbegin();
      while (a != col.cend() || b != other.cend()) {
        if (b == other.cend() || (a != col.cend() && a->first < b->first)) {
          scratch.emplace_back(a->first, a->second * mine);
          ++a;
        } else if (a == col.cend() || b->first < a->first) {
          scratch.emplace_back(b->first, -(b->second * theirs));
          ++b;
        } else {
          Integer v = a->second * mine - b->second * theirs;
          if (v != 0) scratch.emplace_back(a->first, std::move(v));
          ++a;
          ++b;
        }
      }
      col.swap(scratch);
      detail::make_primitive(col);
    }
    if (col.empty()) continue;
    owner[col.back().first] = j;
    ++rank;
  }
  return rank;
}

/// Converts a dense matrix into sparse columns.
template <class Field>
std::vector<SparseColumn<typename Field::value_type>> sparse_columns(const Field& field,
                                                                     const Matrix<typename Field::value_type>& m) {
  std::vector<SparseColumn<typename Field::value_type>> cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!field.is_zero(m(r, c))) cols[c].emplace_back(r, m(r, c));
  return cols;
}

}  // namespace mobius
