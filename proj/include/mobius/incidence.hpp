#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mobius/errors.hpp"
#include "mobius/grothendieck.hpp"
#include "mobius/poset.hpp"

namespace mobius {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in incidence algebra");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in incidence algebra");
  return r;
}

}  // namespace detail

/// An integer function on the closed intervals [a, b] of a poset. Stored
/// densely; entries off the intervals are unused and read as errors.
class IncidenceFunction {
 public:
  IncidenceFunction() = default;
  explicit IncidenceFunction(const Poset& p) : poset_(&p), n_(p.size()), values_(n_ * n_, 0) {}

  std::int64_t at(std::size_t a, std::size_t b) const {
    if (!poset_->leq(a, b)) throw NotComparable(poset_->name(a) + " is not below " + poset_->name(b));
    return values_[a * n_ + b];
  }
  void set(std::size_t a, std::size_t b, std::int64_t v) {
    if (!poset_->leq(a, b)) throw NotComparable(poset_->name(a) + " is not below " + poset_->name(b));
    values_[a * n_ + b] = v;
  }
  const Poset& poset() const { return *poset_; }

  bool operator==(const IncidenceFunction& o) const { return n_ == o.n_ && values_ == o.values_; }

 private:
  const Poset* poset_ = nullptr;
  std::size_t n_ = 0;
  std::vector<std::int64_t> values_;
};

inline IncidenceFunction zeta_function(const Poset& p) {
  IncidenceFunction z(p);
  for (const auto& [a, b] : p.intervals()) z.set(a, b, 1);
  return z;
}

/// The unit of the incidence algebra: 1 on [a, a], 0 elsewhere.
inline IncidenceFunction delta_function(const Poset& p) {
  IncidenceFunction d(p);
  for (std::size_t a = 0; a < p.size(); ++a) d.set(a, a, 1);
  return d;
}

/// mu[a,a] = 1, mu[a,c] = -sum_{a <= b < c} mu[a,b], along a linear extension.
inline IncidenceFunction mobius_function(const Poset& p) {
  IncidenceFunction mu(p);
  const auto& order = p.linear_extension();
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t c : order) {
      if (!p.leq(a, c)) continue;
      if (c == a) {
        mu.set(a, a, 1);
        continue;
      }
      std::int64_t s = 0;
      for (std::size_t b : order) {
        if (b == c) break;
        if (p.leq(a, b) && p.leq(b, c)) s = detail::checked_add(s, mu.at(a, b));
      }
      mu.set(a, c, -s);
    }
  }
  return mu;
}

/// (alpha * beta)[a,c] = sum_{a <= b <= c} alpha[a,b] beta[b,c].
inline IncidenceFunction convolve(const Poset& p, const IncidenceFunction& alpha, const IncidenceFunction& beta) {
  IncidenceFunction out(p);
  for (const auto& [a, c] : p.intervals()) {
    std::int64_t s = 0;
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(a, b) && p.leq(b, c)) s = detail::checked_add(s, detail::checked_mul(alpha.at(a, b), beta.at(b, c)));
    out.set(a, c, s);
  }
  return out;
}

/// The Moebius inversion df(c) = sum_{b <= c} f(b) mu[b,c].
inline std::vector<GrothElement> mobius_inversion(const Poset& p, const std::vector<GrothElement>& f,
                                                  const IncidenceFunction& mu) {
  if (f.size() != p.size()) throw ShapeMismatch("function is not total on the poset");
  std::vector<GrothElement> out(p.size());
  for (std::size_t c = 0; c < p.size(); ++c)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(b, c)) {
        const std::int64_t m = mu.at(b, c);
        if (m != 0) out[c] += m * f[b];
      }
  return out;
}

inline std::vector<GrothElement> mobius_inversion(const Poset& p, const std::vector<GrothElement>& f) {
  return mobius_inversion(p, f, mobius_function(p));
}

/// g(c) = sum_{b <= c} f(b); undoes mobius_inversion.
inline std::vector<GrothElement> down_set_sums(const Poset& p, const std::vector<GrothElement>& f) {
  std::vector<GrothElement> out(p.size());
  for (std::size_t c = 0; c < p.size(); ++c)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(b, c)) out[c] += f[b];
  return out;
}

/// n_d = number of chains a = a_0 < ... < a_d = b.
inline std::vector<std::int64_t> hall_chain_counts(const Poset& p, std::size_t a, std::size_t b) {
  if (!p.leq(a, b)) throw NotComparable(p.name(a) + " is not below " + p.name(b));
  const std::vector<std::size_t> elems = p.interval(a, b);
  // ways[d][x] = chains of length d from a ending at x
  std::vector<std::vector<std::int64_t>> ways{std::vector<std::int64_t>(p.size(), 0)};
  ways[0][a] = 1;
  std::vector<std::int64_t> out{a == b ? 1 : 0};
  for (std::size_t d = 1; d < elems.size(); ++d) {
    std::vector<std::int64_t> next(p.size(), 0);
    bool any = false;
    for (std::size_t x : elems)
      for (std::size_t y : elems)
        if (p.lt(x, y) && ways[d - 1][x] != 0) {
          next[y] = detail::checked_add(next[y], ways[d - 1][x]);
          any = true;
        }
    if (!any) break;
    out.push_back(next[b]);
    ways.push_back(std::move(next));
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace mobius
