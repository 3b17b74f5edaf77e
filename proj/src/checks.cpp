#include "idfnl/checks.hpp"

#include <array>

#include "idfnl/proofs.hpp"
#include "idfnl/search.hpp"
#include "idfnl/semantics.hpp"

namespace idfnl {

FormulaPtr random_formula(CheckRng& rng, const std::vector<std::string>& atoms, int max_depth) {
  if (max_depth <= 0 || rng.below(4) == 0) {
    const int k = rng.below(static_cast<int>(atoms.size()) + 2);
    if (k < static_cast<int>(atoms.size())) return Formula::atom(atoms[static_cast<std::size_t>(k)]);
    return k == static_cast<int>(atoms.size()) ? Formula::top() : Formula::bot();
  }
  static constexpr std::array<Conn, 7> kBinary = {Conn::Meet, Conn::Join,     Conn::Fuse,
                                                  Conn::LDiv, Conn::RDiv,     Conn::IterLDiv,
                                                  Conn::IterRDiv};
  const Conn c = kBinary[static_cast<std::size_t>(rng.below(7))];
  FormulaPtr l = random_formula(rng, atoms, max_depth - 1);
  FormulaPtr r = random_formula(rng, atoms, max_depth - 1);
  return Formula::make(c, std::move(l), std::move(r));
}

Model random_test_model(CheckRng& rng, int max_states, const std::vector<std::string>& atoms,
                        double triple_probability, double atom_probability) {
  RandomConfig cfg;
  cfg.states = 1 + rng.below(max_states);
  cfg.atoms = atoms;
  cfg.triple_probability = triple_probability;
  cfg.atom_probability = atom_probability;
  cfg.seed = rng.word();
  return random_model(cfg);
}

namespace {

const std::vector<std::string>& suite_atoms() {
  static const std::vector<std::string> atoms = {"p", "q", "r"};
  return atoms;
}

StateSet denotation_of_atom(const Model& m, const std::string& atom) {
  return m.valuation(atom);
}

// Expected states of "every path over xs of length counted by `pairs`
// lands in target".
StateSet states_guarded_by(const Model& m, const StatePairSet& pairs, const StateSet& target) {
  StateSet out = StateSet::all(static_cast<std::size_t>(m.size()));
  for (const auto& [s, t] : pairs)
    if (!target.test(t)) out.reset(s);
  return out;
}

Model with_forced_property(const Model& m, FrameProperty p) {
  std::vector<Triple> rel = m.triples();
  if (p == FrameProperty::Reflexive) {
    for (int s = 0; s < m.size(); ++s) rel.push_back({s, s, s});
  } else {
    for (const Triple& t : m.triples()) rel.push_back({t.b, t.a, t.c});
  }
  std::map<std::string, std::vector<int>> val;
  for (const auto& [atom, set] : m.valuations()) val.emplace(atom, set.to_vector());
  return Model(m.states(), std::move(rel), std::move(val));
}

}  // namespace

SuiteResult reach_oracle_suite(std::uint64_t seed, int models) {
  SuiteResult res{"reach-vs-path-oracle"};
  CheckRng rng(seed);
  const auto& atoms = suite_atoms();
  for (int i = 0; i < models; ++i) {
    const Model m = random_test_model(rng, 5, atoms, 0.3, 0.5);
    const int maxlen = m.size() + 1;
    std::vector<StateSet> sets;
    for (const auto& atom : atoms) sets.push_back(denotation_of_atom(m, atom));
    for (int k = 0; k < 3; ++k) sets.push_back(denotation(m, *random_formula(rng, atoms, 3)));
    for (const StateSet& xs : sets) {
      ++res.cases;
      if (left_reach(m, xs) != left_path_oracle(m, xs, maxlen)) ++res.failures;
      ++res.cases;
      if (right_reach(m, xs) != right_path_oracle(m, xs, maxlen)) ++res.failures;
    }
  }
  return res;
}

SuiteResult division_expansion_suite(std::uint64_t seed, int models) {
  SuiteResult res{"division-expansion-vs-paths"};
  CheckRng rng(seed);
  const auto& atoms = suite_atoms();
  for (int i = 0; i < models; ++i) {
    const Model m = random_test_model(rng, 5, atoms, 0.3, 0.5);
    for (const auto& a : atoms) {
      for (const auto& b : atoms) {
        const FormulaPtr fa = Formula::atom(a);
        const FormulaPtr fb = Formula::atom(b);
        const StateSet da = denotation_of_atom(m, a);
        const StateSet db = denotation_of_atom(m, b);
        for (int n = 1; n <= 4; ++n) {
          ++res.cases;
          if (!(denotation(m, *expand_left_division(fa, fb, n)) ==
                states_guarded_by(m, left_path_oracle_exact(m, da, n), db)))
            ++res.failures;
          ++res.cases;
          if (!(denotation(m, *expand_right_division(fb, fa, n)) ==
                states_guarded_by(m, right_path_oracle_exact(m, da, n), db)))
            ++res.failures;
        }
      }
    }
  }
  return res;
}

SuiteResult rule_soundness_suite(std::uint64_t seed, int models, int instantiations_per_model) {
  SuiteResult res{"axiom-and-rule-soundness"};
  CheckRng rng(seed);
  const auto& atoms = suite_atoms();
  std::vector<SchemaId> base;
  for (const SchemaInfo& info : schema_table())
    if (!info.extension) base.push_back(info.id);

  for (int i = 0; i < models; ++i) {
    const Model m = random_test_model(rng, 4, atoms, 0.3, 0.5);
    for (int j = 0; j < instantiations_per_model; ++j) {
      const SchemaId id = base[static_cast<std::size_t>(rng.below(static_cast<int>(base.size())))];
      const SchemaInfo& info = schema_info(id);
      Bindings b;
      for (char mv : info.metavars) b[mv] = random_formula(rng, atoms, 2);
      const Instantiation inst = instantiate(id, b);
      ++res.cases;
      if (info.arity == 0) {
        if (!sequent_valid(m, inst.conclusion)) ++res.failures;
      } else {
        bool premises_hold = true;
        for (const Sequent& p : inst.premises)
          if (!sequent_valid(m, p)) premises_hold = false;
        if (premises_hold && !sequent_valid(m, inst.conclusion)) ++res.failures;
      }
    }
    // residuation biconditionals
    for (int k = 0; k < 3; ++k) {
      const FormulaPtr a = random_formula(rng, atoms, 2);
      const FormulaPtr b = random_formula(rng, atoms, 2);
      const FormulaPtr c = random_formula(rng, atoms, 2);
      const bool v1 = sequent_valid(m, {Formula::fuse(a, b), c});
      const bool v2 = sequent_valid(m, {b, Formula::ldiv(a, c)});
      const bool v3 = sequent_valid(m, {a, Formula::rdiv(c, b)});
      ++res.cases;
      if (v1 != v2 || v2 != v3) ++res.failures;
    }
  }
  return res;
}

SuiteResult unfolding_suite(std::uint64_t seed, int models) {
  SuiteResult res{"iterative-unfolding"};
  CheckRng rng(seed);
  const auto& atoms = suite_atoms();
  for (int i = 0; i < models; ++i) {
    const Model m = random_test_model(rng, 5, atoms, 0.3, 0.5);
    for (const auto& a : atoms) {
      for (const auto& b : atoms) {
        const FormulaPtr fa = Formula::atom(a);
        const FormulaPtr fb = Formula::atom(b);
        StateSet left_meet = StateSet::all(static_cast<std::size_t>(m.size()));
        StateSet right_meet = StateSet::all(static_cast<std::size_t>(m.size()));
        for (int n = 1; n <= m.size() + 1; ++n) {
          left_meet &= denotation(m, *expand_left_division(fa, fb, n));
          right_meet &= denotation(m, *expand_right_division(fb, fa, n));
        }
        ++res.cases;
        if (!(denotation(m, *Formula::iter_ldiv(fa, fb)) == left_meet)) ++res.failures;
        ++res.cases;
        if (!(denotation(m, *Formula::iter_rdiv(fb, fa)) == right_meet)) ++res.failures;
      }
    }
  }
  return res;
}

SuiteResult extension_soundness_suite(std::uint64_t seed, int models) {
  SuiteResult res{"extension-axioms-on-matching-frames"};
  CheckRng rng(seed);
  const auto& atoms = suite_atoms();
  for (int i = 0; i < models; ++i) {
    const Model base = random_test_model(rng, 4, atoms, 0.3, 0.5);
    const Model reflexive = with_forced_property(base, FrameProperty::Reflexive);
    const Model commutative = with_forced_property(base, FrameProperty::Commutative);
    for (int k = 0; k < 2; ++k) {
      const FormulaPtr a = random_formula(rng, atoms, 2);
      const FormulaPtr b = random_formula(rng, atoms, 2);
      ++res.cases;
      if (!sequent_valid(reflexive, {Formula::meet(a, Formula::ldiv(a, b)), b})) ++res.failures;
      ++res.cases;
      if (!sequent_valid(commutative, {Formula::fuse(a, b), Formula::fuse(b, a)})) ++res.failures;
    }
  }
  return res;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int iterations) {
  return {
      reach_oracle_suite(seed, iterations),
      division_expansion_suite(seed + 1, iterations),
      rule_soundness_suite(seed + 2, iterations, 20),
      unfolding_suite(seed + 3, iterations),
      extension_soundness_suite(seed + 4, iterations),
  };
}

}  // namespace idfnl
