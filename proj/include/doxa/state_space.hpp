#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "doxa/rational.hpp"

namespace doxa {

// Set of state indices as a bitmask. Spaces are capped at 64 states, far above
// anything the decision procedures are meant for.
struct StateSet {
  std::uint64_t bits = 0;

  static StateSet single(int i) { return StateSet{std::uint64_t{1} << i}; }
  static StateSet full(int n) {
    return StateSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  bool contains(int i) const { return (bits >> i) & 1; }
  void add(int i) { bits |= std::uint64_t{1} << i; }
  void remove(int i) { bits &= ~(std::uint64_t{1} << i); }
  bool empty() const { return bits == 0; }
  int count() const { return __builtin_popcountll(bits); }
  // Lowest state index; set must be non-empty.
  int first() const { return __builtin_ctzll(bits); }

  bool subset_of(StateSet other) const { return (bits & ~other.bits) == 0; }
  bool intersects(StateSet other) const { return (bits & other.bits) != 0; }

  friend StateSet operator|(StateSet a, StateSet b) { return StateSet{a.bits | b.bits}; }
  friend StateSet operator&(StateSet a, StateSet b) { return StateSet{a.bits & b.bits}; }
  StateSet minus(StateSet other) const { return StateSet{bits & ~other.bits}; }
  StateSet& operator|=(StateSet o) { bits |= o.bits; return *this; }
  StateSet& operator&=(StateSet o) { bits &= o.bits; return *this; }
  friend bool operator==(StateSet a, StateSet b) { return a.bits == b.bits; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t rest = bits; rest;) {
      int i = __builtin_ctzll(rest);
      rest &= rest - 1;
      fn(i);
    }
  }
  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }
};

class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index(const std::string& name) const;
  // Throws ParseError mentioning the unknown identifier.
  int require(const std::string& name) const;
  StateSet all() const { return StateSet::full(size()); }

  std::string describe(StateSet set) const;  // "{a,b,c}" in state order

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace doxa
