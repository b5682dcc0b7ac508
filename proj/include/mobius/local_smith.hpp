#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mobius/arithmetic.hpp"

namespace mobius::local {

using Word = std::int64_t;

/// Z/p^e with p^e < 2^31, so products fit in a Word.
struct Ring {
  Word p;
  int e;
  Word q;

  Ring(Word prime, int exponent) : p(prime), e(exponent), q(1) {
    for (int i = 0; i < e; ++i) q *= p;
  }

  Word reduce(Word x) const {
    x %= q;
    return x < 0 ? x + q : x;
  }
  Word mul(Word a, Word b) const { return a * b % q; }
  Word sub(Word a, Word b) const {
    Word r = a - b;
    return r < 0 ? r + q : r;
  }
  int valuation(Word x) const {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
  Word power(int k) const {
    Word r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
  }
  /// Inverse of a unit, by the extended Euclidean algorithm.
  Word inverse(Word u) const {
    Word r0 = q, r1 = u, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const Word t = r0 / r1;
      std::tie(r0, r1) = std::pair{r1, r0 - t * r1};
      std::tie(s0, s1) = std::pair{s1, s0 - t * s1};
    }
    return reduce(s0);
  }
};

/// P A Q = diag(p^k_0, p^k_1, ...) over Z/p^e. `exponents` lists k_i for
/// the nonzero diagonal entries; P and Q are kept only when asked for.
struct Smith {
  std::vector<int> exponents;
  Matrix<Word> P, Q;
};

inline Smith smith(const Ring& r, Matrix<Word> a, bool want_p, bool want_q) {
  const std::size_t m = a.rows(), n = a.cols();
  Smith s;
  if (want_p) s.P = identity_matrix<Word>(m, 1);
  if (want_q) s.Q = identity_matrix<Word>(n, 1);
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    int best = r.e;
    for (std::size_t j = t; j < n && best > 0; ++j)
      for (std::size_t i = t; i < m; ++i) {
        if (a(i, j) == 0) continue;
        const int v = r.valuation(a(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (pi == m) break;
    if (pi != t) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pi, j), a(t, j));
      if (want_p)
        for (std::size_t j = 0; j < m; ++j) std::swap(s.P(pi, j), s.P(t, j));
    }
    if (pj != t) {
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, pj), a(i, t));
      if (want_q)
        for (std::size_t i = 0; i < n; ++i) std::swap(s.Q(i, pj), s.Q(i, t));
    }
    const Word pk = r.power(best);
    const Word u = r.inverse(a(t, t) / pk);
    for (std::size_t j = t; j < n; ++j) a(t, j) = r.mul(a(t, j), u);
    if (want_p)
      for (std::size_t j = 0; j < m; ++j) s.P(t, j) = r.mul(s.P(t, j), u);
    for (std::size_t i = t + 1; i < m; ++i) {
      if (a(i, t) == 0) continue;
      const Word f = a(i, t) / pk;
      for (std::size_t j = t; j < n; ++j)
        if (a(t, j) != 0) a(i, j) = r.sub(a(i, j), r.mul(f, a(t, j)));
      if (want_p)
        for (std::size_t j = 0; j < m; ++j)
          if (s.P(t, j) != 0) s.P(i, j) = r.sub(s.P(i, j), r.mul(f, s.P(t, j)));
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (a(t, j) == 0) continue;
      const Word f = a(t, j) / pk;
      a(t, j) = 0;
      if (want_q)
        for (std::size_t i = 0; i < n; ++i)
          if (s.Q(i, t) != 0) s.Q(i, j) = r.sub(s.Q(i, j), r.mul(f, s.Q(i, t)));
    }
    s.exponents.push_back(best);
  }
  return s;
}

/// Homology of R^c --F--> (+) R/p^alpha --G--> (+) R/p^beta over R = Z/p^e,
/// returned as the exponents k of its cyclic summands Z/p^k.
inline std::vector<int> homology(const Ring& r, const Matrix<Word>& G, const std::vector<int>& alpha,
                                 const std::vector<int>& beta, const Matrix<Word>& F) {
  const std::size_t n = alpha.size(), m = beta.size();
  // generators of K = { x : G x = 0 in (+) R/p^beta }
  Matrix<Word> kgens;
  if (m == 0) {
    kgens = identity_matrix<Word>(n, 1);
  } else {
    Matrix<Word> a(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = G(i, j);
      a(i, n + i) = r.reduce(r.power(beta[i]));
    }
    const Smith s = smith(r, std::move(a), false, true);
    kgens = Matrix<Word>(n, n + m);
    for (std::size_t j = 0; j < n + m; ++j) {
      const int k = j < s.exponents.size() ? s.exponents[j] : r.e;
      const Word scale = r.power(r.e - k);
      for (std::size_t i = 0; i < n; ++i) kgens(i, j) = r.mul(s.Q(i, j), scale);
    }
  }
  // K = P^{-1} (+) p^d_i R, so K is (+) R/p^(e - d_i) in the coordinates (P v)_i / p^d_i
  const Smith ks = smith(r, kgens, true, false);
  std::vector<int> d(n, r.e);
  for (std::size_t i = 0; i < ks.exponents.size(); ++i) d[i] = ks.exponents[i];
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] < r.e) live.push_back(i);
  // relations: image of F, p^alpha e_i, and p^(e - d_i) in each coordinate
  const std::size_t nr = F.cols() + n + live.size();
  Matrix<Word> rel(live.size(), nr);
  auto add_relation = [&](std::size_t col, const std::vector<Word>& v) {
    for (std::size_t k = 0; k < live.size(); ++k) {
      const std::size_t i = live[k];
      Word acc = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (v[j] != 0) acc = (acc + r.mul(ks.P(i, j), v[j])) % r.q;
      rel(k, col) = acc / r.power(d[i]);
    }
  };
  std::vector<Word> v(n);
  for (std::size_t c = 0; c < F.cols(); ++c) {
    for (std::size_t j = 0; j < n; ++j) v[j] = F(j, c);
    add_relation(c, v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(v.begin(), v.end(), 0);
    v[i] = r.reduce(r.power(alpha[i]));
    add_relation(F.cols() + i, v);
  }
  for (std::size_t k = 0; k < live.size(); ++k) rel(k, F.cols() + n + k) = r.reduce(r.power(r.e - d[live[k]]));
  const Smith hs = smith(r, std::move(rel), false, false);
  std::vector<int> out;
  for (std::size_t k = 0; k < live.size(); ++k) {
    const int x = k < hs.exponents.size() ? hs.exponents[k] : r.e;
    if (x > 0) out.push_back(x);
  }
  return out;
}

/// A complex of modules (+) R/p^k with sparse boundaries, entry values kept
/// reduced modulo the order of their row.
struct SparseComplex {
  std::vector<std::vector<int>> orders;                         // orders[d][i]: exponent of generator i
  std::vector<std::vector<std::map<std::size_t, Word>>> cols;  // cols[d][j]: boundary of generator j of C_d
};

/// Cancels pairs (x, y) with d x = u y + ..., u a unit and x, y of equal
/// order, then computes the homology of what is left degree by degree.
inline std::vector<std::vector<int>> homology(const Ring& r, SparseComplex c) {
  const std::size_t top = c.orders.size();
  std::vector<std::vector<bool>> alive(top);
  std::vector<std::vector<std::set<std::size_t>>> rows(top);  // rows[d][i]: columns of cols[d] hitting row i
  for (std::size_t d = 0; d < top; ++d) {
    alive[d].assign(c.orders[d].size(), true);
    c.cols[d].resize(c.orders[d].size());
    if (d > 0) rows[d].resize(c.orders[d - 1].size());
  }
  for (std::size_t d = 1; d < top; ++d)
    for (std::size_t j = 0; j < c.cols[d].size(); ++j)
      for (const auto& [i, v] : c.cols[d][j]) rows[d][i].insert(j);
  auto reduce_to = [&](Word v, int k) { return v % r.power(k); };

  for (std::size_t d = 1; d < top; ++d) {
    auto& cols = c.cols[d];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!alive[d][j]) continue;
      std::size_t pivot = 0;
      bool found = false;
      for (const auto& [i, v] : cols[j])
        if (v % r.p != 0 && c.orders[d - 1][i] == c.orders[d][j] &&
            (!found || rows[d][i].size() < rows[d][pivot].size())) {
          pivot = i;
          found = true;
        }
      if (!found) continue;
      const Word u_inv = r.inverse(cols[j].at(pivot));
      const std::vector<std::size_t> others(rows[d][pivot].begin(), rows[d][pivot].end());
      for (std::size_t k : others) {
        if (k == j) continue;
        const Word f = r.mul(cols[k].at(pivot), u_inv);
        for (const auto& [row, v] : cols[j]) {
          Word& slot = cols[k][row];
          slot = reduce_to(r.sub(slot, r.mul(f, v)), c.orders[d - 1][row]);
          if (slot == 0) {
            cols[k].erase(row);
            rows[d][row].erase(k);
          } else {
            rows[d][row].insert(k);
          }
        }
      }
      // drop x_j and y_pivot
      for (const auto& [row, v] : cols[j]) rows[d][row].erase(j);
      cols[j].clear();
      alive[d][j] = false;
      alive[d - 1][pivot] = false;
      if (d + 1 < top) {
        for (std::size_t k : rows[d + 1][j]) c.cols[d + 1][k].erase(j);
        rows[d + 1][j].clear();
      }
      if (d - 1 > 0) {
        for (const auto& [row, v] : c.cols[d - 1][pivot]) rows[d - 1][row].erase(pivot);
        c.cols[d - 1][pivot].clear();
      }
    }
  }

  std::vector<std::vector<std::size_t>> keep(top);
  std::vector<std::vector<std::size_t>> position(top);
  for (std::size_t d = 0; d < top; ++d) {
    position[d].assign(alive[d].size(), 0);
    for (std::size_t i = 0; i < alive[d].size(); ++i)
      if (alive[d][i]) {
        position[d][i] = keep[d].size();
        keep[d].push_back(i);
      }
  }
  auto dense = [&](std::size_t d) {
    Matrix<Word> m(keep[d - 1].size(), keep[d].size());
    for (std::size_t j = 0; j < keep[d].size(); ++j)
      for (const auto& [i, v] : c.cols[d][keep[d][j]]) m(position[d - 1][i], j) = v;
    return m;
  };
  std::vector<std::vector<int>> out(top);
  for (std::size_t d = 0; d < top; ++d) {
    if (keep[d].empty()) continue;
    std::vector<int> alpha, beta;
    for (auto i : keep[d]) alpha.push_back(c.orders[d][i]);
    if (d > 0)
      for (auto i : keep[d - 1]) beta.push_back(c.orders[d - 1][i]);
    const Matrix<Word> g = d > 0 ? dense(d) : Matrix<Word>(0, keep[d].size());
    const Matrix<Word> f = d + 1 < top ? dense(d + 1) : Matrix<Word>(keep[d].size(), 0);
    out[d] = homology(r, g, alpha, beta, f);
  }
  return out;
}

}  // namespace mobius::local
