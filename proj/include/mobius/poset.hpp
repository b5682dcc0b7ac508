#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mobius/errors.hpp"

namespace mobius {

/// A finite poset over named elements. Names map to dense indices in input
/// order; the order relation is kept as a bitset closure next to the covers.
class Poset {
 public:
  using Index = std::size_t;

  Poset() = default;

  /// Builds the poset generated by `relations` (lower, upper). Redundant
  /// pairs are dropped by transitive reduction.
  static Poset from_covers(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& relations) {
    Poset p;
    p.names_ = std::move(elements);
    p.index_names();
    std::vector<std::pair<Index, Index>> edges;
    for (const auto& [lo, hi] : relations) edges.emplace_back(p.index(lo), p.index(hi));
    p.build(edges);
    return p;
  }

  static Poset from_index_relations(std::vector<std::string> elements, const std::vector<std::pair<Index, Index>>& edges) {
    Poset p;
    p.names_ = std::move(elements);
    p.index_names();
    p.build(edges);
    return p;
  }

  /// The poset on `elements` whose order is the given predicate (assumed to
  /// be a partial order; checked for antisymmetry).
  static Poset from_relation(std::vector<std::string> elements, const std::function<bool(Index, Index)>& leq) {
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 0; i < elements.size(); ++i)
      for (Index j = 0; j < elements.size(); ++j)
        if (i != j && leq(i, j)) edges.emplace_back(i, j);
    return from_index_relations(std::move(elements), edges);
  }

  /// A totally ordered poset on the given names, in order.
  static Poset chain(std::vector<std::string> elements) {
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 0; i + 1 < elements.size(); ++i) edges.emplace_back(i, i + 1);
    return from_index_relations(std::move(elements), edges);
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Index i) const { return names_.at(i); }

  Index index(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) throw UnknownElement("unknown element '" + name + "'");
    return it->second;
  }
  bool contains(const std::string& name) const { return lookup_.count(name) != 0; }

  bool leq(Index a, Index b) const { return up_[a][b]; }
  bool lt(Index a, Index b) const { return a != b && up_[a][b]; }
  bool comparable(Index a, Index b) const { return up_[a][b] || up_[b][a]; }

  const boost::dynamic_bitset<>& up_set(Index a) const { return up_[a]; }
  const boost::dynamic_bitset<>& down_set(Index a) const { return down_[a]; }

  /// Cover pairs (lower, upper), sorted.
  const std::vector<std::pair<Index, Index>>& covers() const { return covers_; }
  const std::vector<Index>& upper_covers(Index a) const { return upper_[a]; }
  const std::vector<Index>& lower_covers(Index a) const { return lower_[a]; }
  bool covers_pair(Index lo, Index hi) const {
    return std::find(upper_[lo].begin(), upper_[lo].end(), hi) != upper_[lo].end();
  }

  /// Elements sorted so that a < b implies a comes first; ties by index.
  const std::vector<Index>& linear_extension() const { return order_; }

  std::optional<Index> maximum() const {
    for (Index i = 0; i < size(); ++i)
      if (down_[i].count() == size()) return i;
    return std::nullopt;
  }
  std::optional<Index> minimum() const {
    for (Index i = 0; i < size(); ++i)
      if (up_[i].count() == size()) return i;
    return std::nullopt;
  }

  /// All pairs (a, b) with a <= b, ordered by a then b.
  std::vector<std::pair<Index, Index>> intervals() const {
    std::vector<std::pair<Index, Index>> out;
    for (Index a = 0; a < size(); ++a)
      for (Index b = 0; b < size(); ++b)
        if (leq(a, b)) out.emplace_back(a, b);
    return out;
  }

  /// The elements of the closed interval [a, b].
  std::vector<Index> interval(Index a, Index b) const {
    std::vector<Index> out;
    for (Index c : order_)
      if (leq(a, c) && leq(c, b)) out.push_back(c);
    return out;
  }

  /// The subposet induced on `keep` (listed in the given order).
  Poset induced(const std::vector<Index>& keep) const {
    std::vector<std::string> names;
    for (Index i : keep) names.push_back(names_[i]);
    return from_relation(std::move(names), [&](Index i, Index j) { return leq(keep[i], keep[j]); });
  }

  bool operator==(const Poset& o) const { return names_ == o.names_ && covers_ == o.covers_; }

 private:
  void index_names() {
    lookup_.clear();
    for (Index i = 0; i < names_.size(); ++i)
      if (!lookup_.emplace(names_[i], i).second) throw ValidationError("duplicate element '" + names_[i] + "'");
  }

  void build(const std::vector<std::pair<Index, Index>>& edges) {
    const std::size_t n = names_.size();
    std::vector<std::vector<Index>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& [a, b] : edges) {
      if (a == b) throw CycleError("relation '" + names_[a] + "' <= '" + names_[a] + "' listed as a strict cover");
      out[a].push_back(b);
      ++indeg[b];
    }
    // Kahn's algorithm, smallest available index first
    order_.clear();
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
      Index pick = n;
      for (Index i = 0; i < n; ++i)
        if (!done[i] && indeg[i] == 0) {
          pick = i;
          break;
        }
      if (pick == n) {
        std::string where;
        for (Index i = 0; i < n; ++i)
          if (!done[i]) where += (where.empty() ? "" : ", ") + names_[i];
        throw CycleError("cover relations contain a cycle through {" + where + "}");
      }
      done[pick] = true;
      order_.push_back(pick);
      for (Index b : out[pick]) --indeg[b];
    }
    up_.assign(n, boost::dynamic_bitset<>(n));
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      up_[*it].set(*it);
      for (Index b : out[*it]) up_[*it] |= up_[b];
    }
    down_.assign(n, boost::dynamic_bitset<>(n));
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (up_[a][b]) down_[b].set(a);
    covers_.clear();
    upper_.assign(n, {});
    lower_.assign(n, {});
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        if (a == b || !up_[a][b]) continue;
        // a is covered by b iff nothing lies strictly between
        boost::dynamic_bitset<> between = up_[a] & down_[b];
        if (between.count() == 2) {
          covers_.emplace_back(a, b);
          upper_[a].push_back(b);
          lower_[b].push_back(a);
        }
      }
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> lookup_;
  std::vector<boost::dynamic_bitset<>> up_, down_;
  std::vector<std::pair<Index, Index>> covers_;
  std::vector<std::vector<Index>> upper_, lower_;
  std::vector<Index> order_;
};

}  // namespace mobius
