#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace mobius {

/// An element of the Grothendieck group of a coefficient category: a finitely
/// supported integer vector over a basis of keys. Vector-space backends use
/// the single key kDimension; finite abelian groups use primes as keys.
class GrothElement {
 public:
  using Key = std::int64_t;
  static constexpr Key kDimension = 0;

  GrothElement() = default;

  static GrothElement dimension(std::int64_t d) {
    GrothElement g;
    g.add(kDimension, d);
    return g;
  }

  void add(Key key, std::int64_t amount) {
    if (amount == 0) return;
    auto& v = coords_[key];
    v += amount;
    if (v == 0) coords_.erase(key);
  }

  std::int64_t at(Key key) const {
    auto it = coords_.find(key);
    return it == coords_.end() ? 0 : it->second;
  }

  const std::map<Key, std::int64_t>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  GrothElement& operator+=(const GrothElement& o) {
    for (const auto& [k, v] : o.coords_) add(k, v);
    return *this;
  }
  GrothElement& operator-=(const GrothElement& o) {
    for (const auto& [k, v] : o.coords_) add(k, -v);
    return *this;
  }
  friend GrothElement operator+(GrothElement a, const GrothElement& b) { return a += b; }
  friend GrothElement operator-(GrothElement a, const GrothElement& b) { return a -= b; }
  friend GrothElement operator-(const GrothElement& a) { return GrothElement{} - a; }
  friend GrothElement operator*(std::int64_t s, const GrothElement& a) {
    GrothElement out;
    for (const auto& [k, v] : a.coords_) out.add(k, s * v);
    return out;
  }
  bool operator==(const GrothElement&) const = default;

  /// "3" for pure dimensions, "{2:4, 3:1}" for prime supports, "0" when zero.
  std::string to_string() const {
    if (coords_.empty()) return "0";
    if (coords_.size() == 1 && coords_.begin()->first == kDimension) return std::to_string(coords_.begin()->second);
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [k, v] : coords_) {
      if (!first) os << ", ";
      first = false;
      if (k == kDimension)
        os << '*';
      else
        os << k;
      os << ':' << v;
    }
    os << '}';
    return os.str();
  }

 private:
  std::map<Key, std::int64_t> coords_;
};

}  // namespace mobius
