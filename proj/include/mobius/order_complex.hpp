#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mobius/errors.hpp"
#include "mobius/poset.hpp"

namespace mobius {

/// A chain a_0 < ... < a_d of poset indices, increasing in the order.
using Simplex = std::vector<std::uint32_t>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = s.size();
    for (auto v : s) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Simplices grouped by dimension: entry d lists the chosen d-simplices.
using Selection = std::vector<std::vector<Simplex>>;

/// Default cap on enumerated simplices; MOBIUS_SIMPLEX_CAP overrides it.
inline std::size_t simplex_cap() {
  if (const char* env = std::getenv("MOBIUS_SIMPLEX_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

/// Codimension-one faces; deleting position j carries sign (-1)^j.
inline std::vector<std::pair<Simplex, int>> signed_faces(const Simplex& s) {
  std::vector<std::pair<Simplex, int>> out;
  if (s.size() < 2) return out;
  for (std::size_t j = 0; j < s.size(); ++j) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (k != j) f.push_back(s[k]);
    out.emplace_back(std::move(f), j % 2 == 0 ? 1 : -1);
  }
  return out;
}

inline void add_to_selection(Selection& sel, Simplex s) {
  const std::size_t d = s.size() - 1;
  if (sel.size() <= d) sel.resize(d + 1);
  sel[d].push_back(std::move(s));
}

inline std::size_t selection_size(const Selection& sel) {
  std::size_t n = 0;
  for (const auto& v : sel) n += v.size();
  return n;
}

/// Chains of P ending exactly at b (all simplices of the order complex with
/// maximum b), grouped by dimension.
inline Selection chains_with_max(const Poset& p, std::size_t b, std::size_t cap = simplex_cap()) {
  Selection sel;
  std::size_t count = 0;
  Simplex rev{static_cast<std::uint32_t>(b)};
  std::function<void()> grow = [&]() {
    if (++count > cap) throw SizeLimit("order complex exceeds " + std::to_string(cap) + " simplices");
    add_to_selection(sel, Simplex(rev.rbegin(), rev.rend()));
    const std::size_t top = rev.back();
    for (std::size_t a = 0; a < p.size(); ++a)
      if (p.lt(a, top)) {
        rev.push_back(static_cast<std::uint32_t>(a));
        grow();
        rev.pop_back();
      }
  };
  grow();
  return sel;
}

/// The order complex of a poset: all chains, indexed per dimension.
class OrderComplex {
 public:
  explicit OrderComplex(const Poset& p, std::size_t cap = simplex_cap()) : poset_(&p) {
    for (std::size_t b : p.linear_extension()) {
      Selection s = chains_with_max(p, b, cap);
      for (auto& layer : s)
        for (auto& simplex : layer) {
          if (++count_ > cap) throw SizeLimit("order complex exceeds " + std::to_string(cap) + " simplices");
          insert(std::move(simplex));
        }
    }
  }

  const Poset& poset() const { return *poset_; }
  std::size_t dimension_count() const { return simplices_.size(); }
  const std::vector<Simplex>& simplices(std::size_t d) const { return simplices_.at(d); }
  std::size_t size() const { return count_; }

  std::ptrdiff_t find(const Simplex& s) const {
    if (s.empty() || s.size() > simplices_.size()) return -1;
    const auto& idx = index_[s.size() - 1];
    auto it = idx.find(s);
    return it == idx.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  }

  /// The simplices satisfying a predicate.
  Selection select(const std::function<bool(const Simplex&)>& pred) const {
    Selection out(simplices_.size());
    for (std::size_t d = 0; d < simplices_.size(); ++d)
      for (const auto& s : simplices_[d])
        if (pred(s)) out[d].push_back(s);
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
  }

  Selection all() const { return simplices_; }

  /// Throws NotRelativePair unless the unselected simplices form a
  /// subcomplex (equivalently, the selection is closed under cofaces).
  void check_relative(const Selection& sel) const {
    std::vector<std::unordered_map<Simplex, bool, SimplexHash>> chosen(simplices_.size());
    for (std::size_t d = 0; d < sel.size(); ++d)
      for (const auto& s : sel[d]) chosen.at(d)[s] = true;
    for (std::size_t d = 1; d < simplices_.size(); ++d)
      for (const auto& s : simplices_[d]) {
        if (chosen[d].count(s)) continue;
        for (const auto& [f, sign] : signed_faces(s))
          if (chosen[d - 1].count(f))
            throw NotRelativePair("selection is not a relative pair: a face of an unselected simplex is selected");
      }
  }

 private:
  void insert(Simplex s) {
    const std::size_t d = s.size() - 1;
    if (simplices_.size() <= d) {
      simplices_.resize(d + 1);
      index_.resize(d + 1);
    }
    index_[d].emplace(s, simplices_[d].size());
    simplices_[d].push_back(std::move(s));
  }

  const Poset* poset_;
  std::size_t count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
};

inline std::function<bool(const Simplex&)> max_leq(const Poset& p, std::size_t b) {
  return [&p, b](const Simplex& s) { return p.leq(s.back(), b); };
}
inline std::function<bool(const Simplex&)> max_lt(const Poset& p, std::size_t b) {
  return [&p, b](const Simplex& s) { return p.lt(s.back(), b); };
}
inline std::function<bool(const Simplex&)> max_eq(std::size_t b) {
  return [b](const Simplex& s) { return s.back() == b; };
}
/// f(max s) <= y for a monotone map given as an index table into Q.
inline std::function<bool(const Simplex&)> f_max_leq(const Poset& q, const std::vector<std::size_t>& f, std::size_t y) {
  return [&q, &f, y](const Simplex& s) { return q.leq(f[s.back()], y); };
}
inline std::function<bool(const Simplex&)> f_max_lt(const Poset& q, const std::vector<std::size_t>& f, std::size_t y) {
  return [&q, &f, y](const Simplex& s) { return q.lt(f[s.back()], y); };
}

}  // namespace mobius
