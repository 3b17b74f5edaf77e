#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "idfnl/formula.hpp"
#include "idfnl/model.hpp"
#include "idfnl/semantics.hpp"

namespace idfnl {

struct SearchConfig {
  int max_states = 3;
  std::set<FrameProperty> frame_properties;
  // Deterministic mode reports the canonically first witness; switching
  // it off lets parallel workers return whichever they find first.
  bool deterministic = true;
  int jobs = 1;
  // Symmetry breaking: only accept candidates falsified at state s0.
  // Complete because witnesses can be relabelled to s0; the result stays
  // deterministic and size-minimal but may be a later candidate than the
  // unpinned search finds. Available only without frame properties.
  bool pin_witness = false;
  // Optional resource limits; hitting one throws search_aborted.
  std::optional<std::uint64_t> candidate_limit;
  std::optional<double> time_limit_seconds;
};

struct RandomConfig {
  int states = 1;
  std::vector<std::string> atoms;
  double triple_probability = 0.0;
  double atom_probability = 0.0;
  std::uint64_t seed = 0;
};

struct Countermodel {
  Model model;
  int witness;  // state index satisfying lhs but not rhs
};
struct ExhaustedTo {
  int max_states;  // no countermodel with at most this many states
};
struct CompleteValid {
  std::uint64_t bound;  // exhaustion reached the finite-model bound
};
using Verdict = std::variant<Countermodel, ExhaustedTo, CompleteValid>;

class search_aborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Searches state counts 1..max_states in increasing order, enumerating
// candidates canonically (relation bit string counting up, valuations
// inside each relation) over the atoms occurring in the sequent, sorted
// by name. In deterministic mode the returned countermodel is the first
// falsifying candidate regardless of jobs, hence size-minimal with the
// first witness state in state order. Sizes beyond the finite-model
// bound are never searched; exhausting up to the bound yields
// CompleteValid.
Verdict find_countermodel(const Sequent& sq, const SearchConfig& cfg);

// Each triple is kept with triple_probability, each (atom, state)
// membership with atom_probability, both drawn from a seeded mt19937_64
// in a fixed order: identical seeds give identical models everywhere.
Model random_model(const RandomConfig& cfg);

struct FmpBound {
  std::size_t closure_size;
  std::optional<std::uint64_t> value;  // 2^closure_size; nullopt if it overflows
};
// 2 to the size of closure({lhs, rhs}): state-count bound past which an
// invalid sequent is guaranteed a countermodel at or below.
FmpBound fmp_bound(const Sequent& sq);

// Verdict once sizes 1..searched are exhausted without a countermodel.
Verdict exhaustion_verdict(std::uint64_t searched, int requested_max, const FmpBound& bound);

// Atoms occurring in the sequent, sorted; the valuation alphabet used by
// find_countermodel.
std::vector<std::string> sequent_atoms(const Sequent& sq);

}  // namespace idfnl
