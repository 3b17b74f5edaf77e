#pragma once

#include <string_view>
#include <vector>

#include "idfnl/formula.hpp"
#include "idfnl/model.hpp"

namespace idfnl {

enum class FrameProperty {
  Reflexive,    // R s s s for every s
  Commutative,  // R s t u implies R t s u
};

// The set {s | s satisfies f}. Satisfaction clauses:
//   top: all states; bot: none; meet/join: intersection/union
//   a*b:   some (t,u,s) in R with t in [a], u in [b]
//   a\b:   every (t,s,u) in R with t in [a] has u in [b]
//   b/a:   every (s,t,u) in R with t in [a] has u in [b]
//   a\\b:  every t with (s,t) in left_reach([a]) is in [b]
//   b//a:  every t with (s,t) in right_reach([a]) is in [b]
StateSet denotation(const Model& m, const Formula& f);
inline StateSet denotation(const Model& m, const FormulaPtr& f) { return denotation(m, *f); }

bool satisfies(const Model& m, int state, const Formula& f);
bool satisfies(const Model& m, std::string_view state, const Formula& f);

// Pairs (s,t) connected by a finite nonempty path over xs, consumed on the
// left: least fixpoint of
//   (s,u) in L  if  R x s u for some x in xs,
//               or  (s,y) in L and R x y u for some x in xs.
StatePairSet left_reach(const Model& m, const StateSet& xs);
// Mirror, consumed on the right: base R s x u, step R y x u.
StatePairSet right_reach(const Model& m, const StateSet& xs);

// Reach rows indexed by source state; row s holds the targets of all
// finite nonempty paths from s. Same fixpoint as the pair-set form.
std::vector<StateSet> left_reach_rows(const Model& m, const StateSet& xs);
std::vector<StateSet> right_reach_rows(const Model& m, const StateSet& xs);

// Testing oracles: explicit enumeration of every path over xs of length
// 1..maxlen together with its intermediate-state witnesses. Exponential;
// kept deliberately independent of the fixpoint computation above.
StatePairSet left_path_oracle(const Model& m, const StateSet& xs, int maxlen);
StatePairSet right_path_oracle(const Model& m, const StateSet& xs, int maxlen);
// Same, but only paths of length exactly len.
StatePairSet left_path_oracle_exact(const Model& m, const StateSet& xs, int len);
StatePairSet right_path_oracle_exact(const Model& m, const StateSet& xs, int len);

// Stepwise ternary closure: R^1 = R, R^{n+1} = {(s,t,u) | ex x,y: R s y u
// and R^n x t y}, returned as the union of all R^n. The triple (x,s,u) is
// in the closure exactly when some left path from s to u ends with x.
TernaryRelation left_transitive_closure(const Model& m);
// Mirror: R^{n+1} = {(s,t,u) | ex x,y: R y t u and R^n s x y}; (s,x,u) is
// in it exactly when some right path from s to u ends with x.
TernaryRelation right_transitive_closure(const Model& m);

// {s | all (t,s,u) in left closure with t in [a] have u in [b]}. An
// underapproximation of the a\\b denotation; the containment can be
// strict because the closure only remembers the last path element.
StateSet box_plus_left(const Model& m, const Formula& a, const Formula& b);

// lhs-states are a subset of rhs-states.
bool sequent_valid(const Model& m, const Sequent& sq);

bool frame_has_property(const Model& m, FrameProperty p);

}  // namespace idfnl
