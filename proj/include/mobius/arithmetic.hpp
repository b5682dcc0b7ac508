#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mobius/errors.hpp"

namespace mobius {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix. Element arithmetic is supplied by the caller
/// (a field object or plain integer operators), so this is storage only.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> identity_matrix(std::size_t n, const T& one, const T& zero = T{}) {
  Matrix<T> m(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

/// Builds a matrix from nested initializer data (rows of entries).
template <class T, class Convert>
Matrix<T> matrix_from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols, Convert&& convert) {
  Matrix<T> m(rows.size(), cols, convert(Integer(0)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeMismatch("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = convert(rows[r][c]);
  }
  return m;
}

inline Matrix<Integer> integer_product(const Matrix<Integer>& a, const Matrix<Integer>& b) {
  Matrix<Integer> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

/// Non-negative residue of v modulo m (m > 0).
inline Integer mod_floor(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The rationals. Arithmetic delegates to boost's arbitrary precision type.
class RationalField {
 public:
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& v) const { return Rational(v); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error("division by zero in the rationals");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  std::string to_string(const value_type& a) const { return a.str(); }
  std::string name() const { return "rational"; }

  bool operator==(const RationalField&) const = default;
};

/// The prime field F_p for a runtime prime p < 2^31.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  PrimeField() : PrimeField(2) {}
  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw ValidationError("prime_field requires a prime p < 2^31, got " + std::to_string(p));
  }

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& v) const {
    return static_cast<value_type>(mod_floor(v, Integer(p_)).convert_to<std::uint64_t>());
  }
  value_type add(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} + b) % p_);
  }
  value_type sub(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} + p_ - b) % p_);
  }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  bool is_zero(value_type a) const { return a == 0; }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "prime_field(" + std::to_string(p_) + ")"; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

template <class Field>
Matrix<typename Field::value_type> field_product(const Field& field, const Matrix<typename Field::value_type>& a,
                                                 const Matrix<typename Field::value_type>& b) {
  Matrix<typename Field::value_type> out(a.rows(), b.cols(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (field.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = field.add(out(i, j), field.mul(a(i, k), b(k, j)));
    }
  return out;
}

}  // namespace mobius
