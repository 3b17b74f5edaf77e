#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "idfnl/formula.hpp"
#include "idfnl/model.hpp"

namespace idfnl {

// Deterministic source for the randomized suites. mt19937_64 output is
// fully specified by the standard, so a seed reproduces everywhere.
class CheckRng {
 public:
  explicit CheckRng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t word() { return g_(); }
  double unit() { return static_cast<double>(g_() >> 11) * (1.0 / 9007199254740992.0); }
  int below(int n) { return static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 g_;
};

// Random formula over the given atoms, depth at most max_depth.
FormulaPtr random_formula(CheckRng& rng, const std::vector<std::string>& atoms, int max_depth);

// Random model with 1..max_states states (uniform), derived from a fresh
// seed drawn off rng.
Model random_test_model(CheckRng& rng, int max_states, const std::vector<std::string>& atoms,
                        double triple_probability, double atom_probability);

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  bool passed() const { return failures == 0; }
};

// Reach fixpoints against the explicit path oracles, on every atom
// denotation plus three random composite denotations per model.
SuiteResult reach_oracle_suite(std::uint64_t seed, int models);

// n-fold division expansions against the exact-length path condition,
// n = 1..4, arguments ranging over atoms.
SuiteResult division_expansion_suite(std::uint64_t seed, int models);

// Axiom validity, per-model rule preservation, and the residuation
// biconditionals, under random instantiations.
SuiteResult rule_soundness_suite(std::uint64_t seed, int models, int instantiations_per_model);

// a\\b coincides with the meet of its unfoldings a\^n b for n up to
// |S|+1, and the mirror image.
SuiteResult unfolding_suite(std::uint64_t seed, int models);

// Extension axioms hold on models whose frame has the matching property.
SuiteResult extension_soundness_suite(std::uint64_t seed, int models);

// All of the above with `iterations` models each.
std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int iterations);

}  // namespace idfnl
