#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mobius/arithmetic.hpp"
#include "mobius/block_complex.hpp"
#include "mobius/errors.hpp"
#include "mobius/grothendieck.hpp"
#include "mobius/local_smith.hpp"
#include "mobius/smith.hpp"

namespace mobius {

/// A finite abelian group Z/d_1 + ... + Z/d_n in invariant factor form.
struct FinAbObject {
  std::vector<Integer> factors;
  bool operator==(const FinAbObject&) const = default;
};

namespace detail {

inline bool is_invariant_chain(const std::vector<Integer>& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 2) return false;
    if (i + 1 < f.size() && f[i + 1] % f[i] != 0) return false;
  }
  return true;
}

inline void reduce_rows(Matrix<Integer>& m, const std::vector<Integer>& mod) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), mod[i]);
}

inline Matrix<Integer> hconcat(const Matrix<Integer>& a, const Matrix<Integer>& b) {
  Matrix<Integer> out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

inline Matrix<Integer> diagonal_matrix(const std::vector<Integer>& d) {
  Matrix<Integer> m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

/// The subgroup lattice L = {x in Z^n : G x in diag(b) Z^k}, stored through a
/// basis B = U^{-1} diag(d) so that B^{-1} v = diag(1/d) U v.
struct KernelLattice {
  Matrix<Integer> U, U_inv;
  std::vector<Integer> d;

  std::size_t rank() const { return d.size(); }

  Matrix<Integer> basis() const {
    Matrix<Integer> b(U_inv.rows(), d.size());
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) b(i, j) = U_inv(i, j) * d[j];
    return b;
  }

  /// Coordinates of lattice vectors (columns of v) in the basis.
  Matrix<Integer> coordinates(const Matrix<Integer>& v) const {
    Matrix<Integer> c = integer_product(U, v);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) {
        if (c(i, j) % d[i] != 0) throw Error("vector outside the kernel lattice");
        c(i, j) /= d[i];
      }
    return c;
  }
};

inline KernelLattice kernel_lattice(const Matrix<Integer>& G, const std::vector<Integer>& b) {
  const std::size_t n = G.cols();
  Matrix<Integer> gens;
  if (G.rows() == 0) {
    gens = identity_matrix<Integer>(n, 1);
  } else {
    Matrix<Integer> full = integer_kernel(hconcat(G, diagonal_matrix(b)));
    gens = Matrix<Integer>(n, full.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < full.cols(); ++j) gens(i, j) = full(i, j);
  }
  SmithForm s = smith_normal_form(gens);
  if (s.rank != n) throw Error("kernel lattice is not of full rank");
  KernelLattice out{std::move(s.U), std::move(s.U_inv), {}};
  for (std::size_t i = 0; i < n; ++i) out.d.push_back(s.D(i, i));
  return out;
}

/// Invariant factors of Z^n / (column span of R), dropping the trivial ones.
inline std::vector<Integer> quotient_factors(const Matrix<Integer>& R) {
  const SmithForm s = smith_normal_form(R);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < R.rows(); ++i) {
    Integer v = s.diagonal(i);
    if (v == 0) throw Error("quotient is infinite");
    if (v != 1) out.push_back(v);
  }
  return out;
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> factorize(const Integer& value) {
  if (value > Integer(std::numeric_limits<std::int64_t>::max()))
    throw ValidationError("invariant factor too large to factor: " + value.str());
  std::int64_t v = value.convert_to<std::int64_t>();
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t p = 2; p * p <= v; ++p) {
    std::int64_t e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (v > 1) out.emplace_back(v, 1);
  return out;
}

/// Merges prime-power summands of several primes into invariant factors.
inline std::vector<Integer> combine_primary(std::vector<std::vector<Integer>> parts) {
  std::size_t len = 0;
  for (auto& part : parts) {
    std::sort(part.begin(), part.end(), std::greater<>());
    len = std::max(len, part.size());
  }
  std::vector<Integer> out(len, 1);
  for (const auto& part : parts)
    for (std::size_t i = 0; i < part.size(); ++i) out[i] *= part[i];
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The category of finite abelian groups. A morphism is an integer matrix
/// acting on generators, each row reduced modulo its target factor.
class FiniteAbelianGroups {
 public:
  using Object = FinAbObject;
  struct Morphism {
    Object source, target;
    Matrix<Integer> matrix;
  };
  struct Kernel {
    Object object;
    Morphism inclusion;
  };
  struct Cokernel {
    Object object;
    Morphism projection;
    Matrix<Integer> lift;  // representatives of the quotient generators
  };
  struct Biproduct {
    Object sum;
    std::vector<Morphism> injections, projections;
  };

  static constexpr bool is_vector_backend = false;

  std::string name() const { return "finab"; }

  Object object(std::vector<Integer> factors) const {
    if (!detail::is_invariant_chain(factors)) {
      std::string s;
      for (const auto& f : factors) s += (s.empty() ? "" : ",") + f.str();
      throw ValidationError("not an invariant factor list (need d_i >= 2, d_i | d_{i+1}): [" + s + "]");
    }
    return Object{std::move(factors)};
  }
  Object zero_object() const { return Object{}; }
  bool is_zero(const Object& o) const { return o.factors.empty(); }

  Morphism morphism(const Object& source, const Object& target, Matrix<Integer> matrix) const {
    if (matrix.rows() != target.factors.size() || matrix.cols() != source.factors.size())
      throw ShapeMismatch("matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                          ", expected " + std::to_string(target.factors.size()) + "x" +
                          std::to_string(source.factors.size()));
    for (std::size_t i = 0; i < matrix.rows(); ++i)
      for (std::size_t j = 0; j < matrix.cols(); ++j)
        if ((source.factors[j] * matrix(i, j)) % target.factors[i] != 0)
          throw ValidationError("morphism is not well defined at entry (" + std::to_string(i) + "," +
                                std::to_string(j) + "): Z/" + source.factors[j].str() + " -> Z/" +
                                target.factors[i].str());
    detail::reduce_rows(matrix, target.factors);
    return Morphism{source, target, std::move(matrix)};
  }
  Morphism morphism_from_integers(const Object& source, const Object& target,
                                  const std::vector<std::vector<Integer>>& rows) const {
    if (rows.size() != target.factors.size())
      throw ShapeMismatch("matrix has " + std::to_string(rows.size()) + " rows, expected " +
                          std::to_string(target.factors.size()));
    return morphism(source, target,
                    matrix_from_rows<Integer>(rows, source.factors.size(), [](const Integer& v) { return v; }));
  }

  Morphism identity(const Object& o) const {
    return Morphism{o, o, identity_matrix<Integer>(o.factors.size(), 1)};
  }
  Morphism zero_morphism(const Object& s, const Object& t) const {
    return Morphism{s, t, Matrix<Integer>(t.factors.size(), s.factors.size())};
  }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(f.target == g.source)) throw NotComposable("composition of incompatible morphisms");
    Matrix<Integer> m = integer_product(g.matrix, f.matrix);
    detail::reduce_rows(m, g.target.factors);
    return Morphism{f.source, g.target, std::move(m)};
  }
  Morphism add(const Morphism& a, const Morphism& b) const {
    if (!(a.source == b.source) || !(a.target == b.target)) throw ShapeMismatch("sum of morphisms with different shapes");
    Morphism out = a;
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
      for (std::size_t j = 0; j < a.matrix.cols(); ++j) out.matrix(i, j) += b.matrix(i, j);
    detail::reduce_rows(out.matrix, out.target.factors);
    return out;
  }
  Morphism negate(const Morphism& a) const {
    Morphism out = a;
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
      for (std::size_t j = 0; j < a.matrix.cols(); ++j) out.matrix(i, j) = -a.matrix(i, j);
    detail::reduce_rows(out.matrix, out.target.factors);
    return out;
  }
  bool equal(const Morphism& a, const Morphism& b) const {
    return a.source == b.source && a.target == b.target && a.matrix == b.matrix;
  }
  bool is_zero_morphism(const Morphism& a) const {
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
      for (std::size_t j = 0; j < a.matrix.cols(); ++j)
        if (a.matrix(i, j) != 0) return false;
    return true;
  }

  std::size_t rank(const Morphism&) const { throw BackendMismatch("rank is only defined for vector space backends"); }

  Kernel kernel(const Morphism& m) const {
    const auto& a = m.source.factors;
    const std::size_t n = a.size();
    if (n == 0) return Kernel{Object{}, zero_morphism(Object{}, m.source)};
    detail::KernelLattice L = detail::kernel_lattice(m.matrix, m.target.factors);
    // the kernel is L / diag(a) Z^n; re-present it in invariant factor form
    const Matrix<Integer> Y = L.coordinates(detail::diagonal_matrix(a));
    const SmithForm s = smith_normal_form(Y);
    const Matrix<Integer> B = L.basis();
    const Matrix<Integer> gens = integer_product(B, s.U_inv);
    Object k;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
      if (s.diagonal(i) != 1) {
        k.factors.push_back(s.diagonal(i));
        kept.push_back(i);
      }
    Matrix<Integer> inc(n, kept.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < kept.size(); ++j) inc(i, j) = gens(i, kept[j]);
    detail::reduce_rows(inc, a);
    return Kernel{k, Morphism{k, m.source, std::move(inc)}};
  }

  Cokernel cokernel(const Morphism& m) const {
    const auto& b = m.target.factors;
    const std::size_t k = b.size();
    const SmithForm s = smith_normal_form(detail::hconcat(m.matrix, detail::diagonal_matrix(b)));
    Object q;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < k; ++i)
      if (s.diagonal(i) != 1) {
        q.factors.push_back(s.diagonal(i));
        kept.push_back(i);
      }
    Matrix<Integer> p(kept.size(), k), lift(k, kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r)
      for (std::size_t c = 0; c < k; ++c) {
        p(r, c) = s.U(kept[r], c);
        lift(c, r) = s.U_inv(c, kept[r]);
      }
    detail::reduce_rows(p, q.factors);
    detail::reduce_rows(lift, b);
    return Cokernel{q, Morphism{m.target, q, std::move(p)}, std::move(lift)};
  }

  Morphism induced_map(const Cokernel& from, const Morphism& h, const Cokernel& to) const {
    Matrix<Integer> m = integer_product(to.projection.matrix, integer_product(h.matrix, from.lift));
    detail::reduce_rows(m, to.object.factors);
    return Morphism{from.object, to.object, std::move(m)};
  }

  Morphism factor_through(const Morphism& mono, const Morphism& h) const {
    if (!(mono.target == h.target)) throw NotComposable("factor_through: targets differ");
    const auto& t = mono.target.factors;
    const std::size_t k = mono.source.factors.size();
    const Matrix<Integer> A = detail::hconcat(mono.matrix, detail::diagonal_matrix(t));
    Matrix<Integer> x(k, h.source.factors.size());
    for (std::size_t j = 0; j < h.source.factors.size(); ++j) {
      std::vector<Integer> rhs(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) rhs[i] = h.matrix(i, j);
      auto sol = solve_integer(A, rhs);
      if (!sol) throw Error("factor_through: morphism does not factor through the monomorphism");
      for (std::size_t i = 0; i < k; ++i) x(i, j) = (*sol)[i];
    }
    detail::reduce_rows(x, mono.source.factors);
    return Morphism{h.source, mono.source, std::move(x)};
  }

  bool is_mono(const Morphism& m) const { return kernel(m).object.factors.empty(); }
  bool is_epi(const Morphism& m) const { return cokernel(m).object.factors.empty(); }

  Biproduct direct_sum(std::span<const Object> parts) const {
    std::vector<Integer> all;
    std::vector<std::size_t> offsets;
    for (const auto& p : parts) {
      offsets.push_back(all.size());
      all.insert(all.end(), p.factors.begin(), p.factors.end());
    }
    const std::size_t N = all.size();
    Matrix<Integer> U = identity_matrix<Integer>(N, 1), U_inv = U;
    std::vector<Integer> diag = all;
    if (!detail::is_invariant_chain(all)) {
      SmithForm s = smith_normal_form(detail::diagonal_matrix(all));
      U = std::move(s.U);
      U_inv = std::move(s.U_inv);
      for (std::size_t i = 0; i < N; ++i) diag[i] = s.D(i, i);
    }
    Biproduct b;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < N; ++i)
      if (diag[i] != 1) {
        b.sum.factors.push_back(diag[i]);
        kept.push_back(i);
      }
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const std::size_t w = parts[j].factors.size();
      Matrix<Integer> inj(kept.size(), w), proj(w, kept.size());
      for (std::size_t r = 0; r < kept.size(); ++r)
        for (std::size_t c = 0; c < w; ++c) {
          inj(r, c) = U(kept[r], offsets[j] + c);
          proj(c, r) = U_inv(offsets[j] + c, kept[r]);
        }
      detail::reduce_rows(inj, b.sum.factors);
      detail::reduce_rows(proj, parts[j].factors);
      b.injections.push_back(Morphism{parts[j], b.sum, std::move(inj)});
      b.projections.push_back(Morphism{b.sum, parts[j], std::move(proj)});
    }
    return b;
  }

  GrothElement groth_class(const Object& o) const {
    GrothElement g;
    for (const auto& f : o.factors)
      for (const auto& [p, e] : detail::factorize(f)) g.add(p, e);
    return g;
  }

  Object homology_at(const Morphism& g, const Morphism& f) const {
    if (!(f.target == g.source)) throw NotComposable("homology_at: target(f) != source(g)");
    if (!is_zero_morphism(compose(g, f))) throw NotAComplex("homology_at: g o f is not zero");
    return Object{raw_homology(g.matrix, g.source.factors, g.target.factors, f.matrix)};
  }

  /// Homology of a block chain complex, one object per degree, computed one
  /// prime at a time over Z/p^e.
  std::vector<Object> homology(const ChainComplex<Object, Morphism>& c) const {
    const std::size_t top = c.degrees();
    std::vector<std::vector<Integer>> rel(top);
    std::vector<std::vector<std::size_t>> offsets(top);
    for (std::size_t d = 0; d < top; ++d)
      for (const auto& o : c.blocks[d]) {
        offsets[d].push_back(rel[d].size());
        rel[d].insert(rel[d].end(), o.factors.begin(), o.factors.end());
      }
    // sparse integer boundaries: columns of (row, value)
    std::vector<std::vector<std::map<std::size_t, Integer>>> bd(top);
    for (std::size_t d = 1; d < top; ++d) {
      bd[d].resize(rel[d].size());
      const auto& bm = c.boundary[d];
      for (std::size_t blk = 0; blk < bm.columns.size(); ++blk)
        for (const auto& e : bm.columns[blk]) {
          const auto& m = c.maps[e.map].matrix;
          for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t k = 0; k < m.cols(); ++k)
              if (m(r, k) != 0) bd[d][offsets[d][blk] + k][offsets[d - 1][e.row] + r] += e.sign * m(r, k);
        }
    }
    std::vector<std::int64_t> primes;
    for (const auto& degree : rel)
      for (const auto& t : degree)
        for (const auto& [p, e] : detail::factorize(t))
          if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    std::vector<std::vector<std::vector<Integer>>> parts(top);
    for (auto p : primes) {
      auto h = primary_complex_homology(p, rel, bd);
      if (!h) return dense_homology(rel, bd);
      for (std::size_t d = 0; d < top; ++d) parts[d].push_back(std::move((*h)[d]));
    }
    std::vector<Object> out(top);
    for (std::size_t d = 0; d < top; ++d) out[d] = Object{detail::combine_primary(parts[d])};
    return out;
  }

  std::string describe(const Object& o) const {
    if (o.factors.empty()) return "0";
    std::string s;
    for (const auto& f : o.factors) s += (s.empty() ? "Z/" : "+Z/") + f.str();
    return s;
  }

 private:
  // ker(G : Z^n/a -> Z^k/b) / im(F) as invariant factors.
  static std::vector<Integer> raw_homology(const Matrix<Integer>& G, const std::vector<Integer>& a,
                                           const std::vector<Integer>& b, const Matrix<Integer>& F) {
    if (a.empty()) return {};
    std::vector<std::int64_t> primes;
    for (const auto& t : a)
      for (const auto& [p, e] : detail::factorize(t))
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::vector<std::vector<Integer>> parts;
    for (auto p : primes) {
      auto part = primary_homology(p, G, a, b, F);
      if (!part) return lattice_homology(G, a, b, F);
      parts.push_back(std::move(*part));
    }
    return detail::combine_primary(parts);
  }

  // The p-primary part over Z/p^e, or nothing when p^e does not fit a word.
  static std::optional<std::vector<Integer>> primary_homology(std::int64_t p, const Matrix<Integer>& G,
                                                              const std::vector<Integer>& a, const std::vector<Integer>& b,
                                                              const Matrix<Integer>& F) {
    auto valuation = [p](const Integer& t) {
      int v = 0;
      Integer x = t;
      while (x % p == 0) {
        x /= p;
        ++v;
      }
      return v;
    };
    std::vector<std::size_t> rows, cols;
    std::vector<int> alpha, beta;
    int e = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (int v = valuation(a[i]); v > 0) {
        cols.push_back(i);
        alpha.push_back(v);
        e = std::max(e, v);
      }
    for (std::size_t j = 0; j < b.size(); ++j)
      if (int v = valuation(b[j]); v > 0) {
        rows.push_back(j);
        beta.push_back(v);
        e = std::max(e, v);
      }
    Integer q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (q >= (Integer(1) << 31)) return std::nullopt;
    const local::Ring r(p, e);
    auto word = [&](const Integer& x) { return static_cast<local::Word>(mod_floor(x, q).convert_to<std::int64_t>()); };
    Matrix<local::Word> g(rows.size(), cols.size()), f(cols.size(), F.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) g(i, j) = word(G(rows[i], cols[j]));
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = 0; j < F.cols(); ++j) f(i, j) = word(F(cols[i], j));
    std::vector<Integer> out;
    for (int k : local::homology(r, g, alpha, beta, f)) {
      Integer t = 1;
      for (int i = 0; i < k; ++i) t *= p;
      out.push_back(t);
    }
    return out;
  }

  using SparseIntegerColumns = std::vector<std::vector<std::map<std::size_t, Integer>>>;

  static int valuation(std::int64_t p, Integer x) {
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }

  // Homology of the p-primary part of a whole complex, or nothing when the
  // exponent is too large for word arithmetic.
  static std::optional<std::vector<std::vector<Integer>>> primary_complex_homology(
      std::int64_t p, const std::vector<std::vector<Integer>>& rel, const SparseIntegerColumns& bd) {
    const std::size_t top = rel.size();
    local::SparseComplex sc;
    sc.orders.resize(top);
    sc.cols.resize(top);
    std::vector<std::vector<std::ptrdiff_t>> index(top);
    int e = 0;
    for (std::size_t d = 0; d < top; ++d)
      for (const auto& t : rel[d]) {
        const int v = valuation(p, t);
        index[d].push_back(v > 0 ? static_cast<std::ptrdiff_t>(sc.orders[d].size()) : -1);
        if (v > 0) sc.orders[d].push_back(v);
        e = std::max(e, v);
      }
    std::vector<std::vector<Integer>> out(top);
    if (e == 0) return out;
    Integer q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (q >= (Integer(1) << 31)) return std::nullopt;
    const local::Ring ring(p, e);
    for (std::size_t d = 1; d < top; ++d) {
      sc.cols[d].resize(sc.orders[d].size());
      for (std::size_t j = 0; j < bd[d].size(); ++j) {
        if (index[d][j] < 0) continue;
        auto& col = sc.cols[d][static_cast<std::size_t>(index[d][j])];
        for (const auto& [i, v] : bd[d][j]) {
          if (index[d - 1][i] < 0) continue;
          const std::size_t row = static_cast<std::size_t>(index[d - 1][i]);
          const Integer w = mod_floor(v, Integer(ring.power(sc.orders[d - 1][row])));
          if (w != 0) col[row] = w.convert_to<local::Word>();
        }
      }
    }
    const auto h = local::homology(ring, std::move(sc));
    for (std::size_t d = 0; d < top; ++d)
      for (int k : h[d]) out[d].push_back(Integer(ring.power(k)));
    return out;
  }

  static std::vector<Object> dense_homology(const std::vector<std::vector<Integer>>& rel, const SparseIntegerColumns& bd) {
    const std::size_t top = rel.size();
    std::vector<Matrix<Integer>> m(top + 1);
    for (std::size_t d = 0; d <= top; ++d) {
      m[d] = Matrix<Integer>(d == 0 ? 0 : rel[d - 1].size(), d == top ? 0 : rel[d].size());
      if (d == 0 || d == top) continue;
      for (std::size_t j = 0; j < bd[d].size(); ++j)
        for (const auto& [i, v] : bd[d][j]) m[d](i, j) = v;
      detail::reduce_rows(m[d], rel[d - 1]);
    }
    std::vector<Object> out(top);
    const std::vector<Integer> empty;
    for (std::size_t d = 0; d < top; ++d) out[d] = Object{raw_homology(m[d], rel[d], d == 0 ? empty : rel[d - 1], m[d + 1])};
    return out;
  }

  static std::vector<Integer> lattice_homology(const Matrix<Integer>& G, const std::vector<Integer>& a,
                                               const std::vector<Integer>& b, const Matrix<Integer>& F) {
    detail::KernelLattice L = detail::kernel_lattice(G, b);
    const Matrix<Integer> rel = detail::hconcat(L.coordinates(F), L.coordinates(detail::diagonal_matrix(a)));
    return detail::quotient_factors(rel);
  }
};

}  // namespace mobius
