#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idfnl/formula.hpp"

namespace idfnl {

// Axiom and rule schemata of the calculus, plus the two opt-in extension
// axioms (reflexive frames / commutative frames).
enum class SchemaId : int {
  Id,
  Top,
  Bot,
  AndElimL,
  AndElimR,
  OrIntroL,
  OrIntroR,
  Distrib,
  IterLMeet,
  IterRMeet,
  IterLUnfold,
  IterRUnfold,
  IterLFold,
  IterRFold,
  ResLDivIntro,
  ResLDivElim,
  ResRDivIntro,
  ResRDivElim,
  AndIntro,
  OrElim,
  Cut,
  IterLMono,
  IterRMono,
  LoopInvL,
  LoopInvR,
  WeakContraction,
  WeakCommutativity,
};

// Explicit substitution for metavariables A..D; the checker only
// substitutes and compares, it never unifies.
using Bindings = std::map<char, FormulaPtr>;

struct SchemaInfo {
  SchemaId id;
  std::string name;      // file-format name, e.g. "res_ldiv_intro"
  int arity;             // premise count (0 for axioms)
  std::string metavars;  // e.g. "ABC"
  bool extension;
};

const std::vector<SchemaInfo>& schema_table();
const SchemaInfo& schema_info(SchemaId id);
std::optional<SchemaId> schema_by_name(std::string_view name);

struct Instantiation {
  std::vector<Sequent> premises;
  Sequent conclusion;
};

// Simultaneous substitution into the schema. Throws std::invalid_argument
// when the bindings do not cover the schema's metavariables exactly.
Instantiation instantiate(SchemaId id, const Bindings& b);

struct DerivationStep {
  int index = 0;  // 1-based
  Sequent sequent;
  SchemaId schema = SchemaId::Id;
  Bindings bindings;
  std::vector<int> premises;  // indices of earlier steps
};

struct Derivation {
  std::vector<DerivationStep> steps;
};

struct CheckReport {
  bool ok = true;
  std::optional<int> failed_step;
  std::string reason;
};

// Replays every step: the stated sequent must equal the instantiated
// conclusion, and each referenced premise must equal the corresponding
// instantiated premise shape (structural equality throughout). Extension
// schemata are accepted only when listed. Failures are data, not
// exceptions; the report carries the first one.
CheckReport check_derivation(const Derivation& d, const std::set<SchemaId>& extensions = {});

// Line format (`#` comments, blank lines ignored):
//   <index>. <sequent> ; <schema> ; A=<formula> , B=<formula> ; premises: <i>,<j>
// Trailing sections are omitted when empty. Indices start at 1 and
// increase by 1; premises refer to strictly earlier steps.
Derivation parse_derivation(std::string_view text);

}  // namespace idfnl
