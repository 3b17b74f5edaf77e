#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace idfnl {

// Subset of a model's states, backed by a bit vector (one 64-bit word up
// to 64 states, more words beyond).
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe)
      : n_(universe), w_((universe + 63) / 64, 0) {}

  static StateSet all(std::size_t universe) {
    StateSet s(universe);
    for (std::size_t i = 0; i < s.w_.size(); ++i) s.w_[i] = ~0ull;
    s.trim();
    return s;
  }

  std::size_t universe() const { return n_; }
  bool test(int i) const { return (w_[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u; }
  void set(int i) { w_[static_cast<std::size_t>(i) / 64] |= 1ull << (i % 64); }
  void reset(int i) { w_[static_cast<std::size_t>(i) / 64] &= ~(1ull << (i % 64)); }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t count() const;

  bool subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  StateSet complement() const {
    StateSet s(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) s.w_[i] = ~w_[i];
    s.trim();
    return s;
  }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  std::vector<int> to_vector() const;

 private:
  void trim() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (1ull << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// One R-triple; (a, b, c) stands for R a b c in argument order.
struct Triple {
  int a;
  int b;
  int c;
  auto operator<=>(const Triple&) const = default;
};

using TernaryRelation = std::set<Triple>;
using StatePairSet = std::set<std::pair<int, int>>;

// Finite model: ordered state set, ternary accessibility relation and a
// valuation. Immutable after construction; atoms absent from the
// valuation denote the empty set.
class Model {
 public:
  Model(std::vector<std::string> states, std::vector<Triple> rel,
        std::map<std::string, std::vector<int>> val);

  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(int i) const { return states_.at(static_cast<std::size_t>(i)); }
  std::optional<int> state_index(std::string_view name) const;

  // Sorted, duplicate-free.
  const std::vector<Triple>& triples() const { return rel_; }
  bool has_triple(int a, int b, int c) const;

  StateSet valuation(const std::string& atom) const;
  const std::map<std::string, StateSet>& valuations() const { return val_; }

 private:
  std::vector<std::string> states_;
  std::map<std::string, int, std::less<>> index_;
  std::vector<Triple> rel_;
  std::map<std::string, StateSet> val_;
};

// Line-based model format (`#` comments, blank lines ignored):
//   states: <id> <id> ...     exactly one, first meaningful line
//   r: <a> <b> <c>            zero or more, duplicates idempotent
//   v <atom>: <id> ...        zero or more, empty list allowed
// All ids must be declared in `states:`.
Model parse_model(std::string_view text);

// Inverse of parse_model, suitable for feeding back into it.
std::string render_model(const Model& m);

}  // namespace idfnl
