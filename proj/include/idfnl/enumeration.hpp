#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "idfnl/formula.hpp"
#include "idfnl/model.hpp"
#include "idfnl/semantics.hpp"

namespace idfnl {

// Bit-packed model for the search inner loop; usable while n <= 64.
// Triple (a,b,c) lives at relation bit (a*n + b)*n + c; atom i's
// denotation is the word val[i].
struct FlatModel {
  int n = 0;
  std::vector<std::uint64_t> rel;  // ceil(n^3 / 64) words
  std::vector<std::uint64_t> val;  // one word per atom

  bool has_triple(int a, int b, int c) const {
    const std::size_t bit =
        (static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)) *
            static_cast<std::size_t>(n) +
        static_cast<std::size_t>(c);
    return (rel[bit / 64] >> (bit % 64)) & 1u;
  }
};

// Named model with states s0..s{n-1}; every atom gets a valuation entry,
// including empty ones.
Model to_model(const FlatModel& fm, const std::vector<std::string>& atoms);
FlatModel to_flat(const Model& m, const std::vector<std::string>& atoms);

// Sequent compiled to a postorder program over FlatModel denotation
// masks. Instances carry their own scratch space: copy per thread.
class CompiledSequent {
 public:
  CompiledSequent(const Sequent& sq, const std::vector<std::string>& atoms);

  // Mask of states where lhs holds and rhs does not.
  std::uint64_t falsifying_states(const FlatModel& fm);

 private:
  enum class Op : std::uint8_t { Atom, Top, Bot, Meet, Join, Fuse, LDiv, RDiv, IterLDiv, IterRDiv };
  struct Instr {
    Op op;
    int src0 = -1;
    int src1 = -1;
    int atom = -1;
  };

  int compile(const Formula& f, const std::vector<std::string>& atoms);
  void ensure_relation(const FlatModel& fm);

  std::vector<Instr> code_;
  int lhs_root_ = -1;
  int rhs_root_ = -1;
  std::vector<std::uint64_t> regs_;
  std::vector<std::uint64_t> rows_;
  // relation cache: decoded once per relation value and shared by the
  // valuation inner loop. For n <= 8 the relational operators run on
  // per-state patterns over state pairs (n^2 bits in one word) instead
  // of iterating triples.
  int cached_n_ = -1;
  std::vector<std::uint64_t> cached_rel_;
  std::vector<std::array<std::uint8_t, 3>> triples_;
  bool patterns_ = false;
  std::vector<std::uint64_t> mid_pattern_;    // [b]: bits a*n+c of triples (a,b,c)
  std::vector<std::uint64_t> first_pattern_;  // [a]: bits b*n+c
  std::vector<std::uint64_t> third_pattern_;  // [c]: bits a*n+b
};

// Canonical candidate stream for one state count. The relation ranges
// over an n^3-bit string counting up; within each relation, valuation
// bits (atom index * n + state) count up. Frame properties force bits on
// (reflexivity) or tie swap-orbits together (commutativity); the free
// choices are packed into counters whose order matches the order of the
// full bit strings, so filtered streams stay canonically sorted.
class CandidateSpace {
 public:
  using RCounter = std::vector<std::uint64_t>;  // little-endian words

  CandidateSpace(int n, int atom_count, const std::set<FrameProperty>& props);

  int states() const { return n_; }
  int r_bits() const { return static_cast<int>(orbits_.size()); }
  int v_bits() const { return v_bits_; }
  std::uint64_t v_total() const { return 1ull << v_bits_; }
  // Total model count when it fits; nullopt for astronomically large spaces.
  std::optional<std::uint64_t> total() const;

  RCounter r_begin() const;
  // Add `steps`; false once the counter leaves the valid range (done).
  bool r_advance(RCounter& rc, std::uint64_t steps = 1) const;
  // Lexicographic counter order; -1, 0, 1.
  static int compare(const RCounter& a, const RCounter& b);

  void decode_rel(const RCounter& rc, FlatModel& fm) const;
  void decode_val(std::uint64_t vc, FlatModel& fm) const;

 private:
  static constexpr std::uint32_t kNoBit = ~0u;
  struct Orbit {
    std::uint32_t b0;
    std::uint32_t b1;  // kNoBit for singletons
  };

  int n_ = 0;
  int atoms_ = 0;
  int v_bits_ = 0;
  std::vector<std::uint64_t> forced_;
  std::vector<Orbit> orbits_;  // counter bit j toggles orbits_[j]
};

// Stream of every n-state model over the given atoms satisfying the
// frame properties, each exactly once, in canonical order.
class ModelEnumerator {
 public:
  ModelEnumerator(int n, std::vector<std::string> atoms, std::set<FrameProperty> props = {});

  std::optional<Model> next();
  std::optional<std::uint64_t> total() const { return space_.total(); }

 private:
  CandidateSpace space_;
  std::vector<std::string> atoms_;
  FlatModel fm_;
  CandidateSpace::RCounter rc_;
  std::uint64_t vc_ = 0;
  bool rel_dirty_ = true;
  bool done_ = false;
};

}  // namespace idfnl
