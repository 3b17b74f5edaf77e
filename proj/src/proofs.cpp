#include "idfnl/proofs.hpp"

#include <algorithm>
#include <stdexcept>

#include "idfnl/parser.hpp"

namespace idfnl {
namespace {

bool is_metavar(const Formula& f) {
  return f.is_atom() && f.name().size() == 1 && f.name()[0] >= 'A' && f.name()[0] <= 'D';
}

void collect_metavars(const FormulaPtr& f, std::set<char>& out) {
  if (is_metavar(*f)) {
    out.insert(f->name()[0]);
    return;
  }
  if (!f->is_leaf()) {
    collect_metavars(f->left(), out);
    collect_metavars(f->right(), out);
  }
}

FormulaPtr substitute(const FormulaPtr& f, const Bindings& b) {
  if (is_metavar(*f)) return b.at(f->name()[0]);
  if (f->is_leaf()) return f;
  return Formula::make(f->conn(), substitute(f->left(), b), substitute(f->right(), b));
}

struct SchemaDef {
  SchemaInfo info;
  std::vector<Sequent> premises;
  Sequent conclusion;
};

std::vector<SchemaDef> build_table() {
  // Metavariable leaves; the parser never yields uppercase atoms, so
  // these cannot collide with user formulas.
  const FormulaPtr A = Formula::atom("A");
  const FormulaPtr B = Formula::atom("B");
  const FormulaPtr C = Formula::atom("C");
  const FormulaPtr D = Formula::atom("D");
  using F = Formula;
  auto sq = [](FormulaPtr l, FormulaPtr r) { return Sequent{std::move(l), std::move(r)}; };

  std::vector<SchemaDef> t;
  auto add = [&t](SchemaId id, const char* name, bool ext, std::vector<Sequent> prem, Sequent concl) {
    std::set<char> mv;
    for (const Sequent& s : prem) {
      collect_metavars(s.lhs, mv);
      collect_metavars(s.rhs, mv);
    }
    collect_metavars(concl.lhs, mv);
    collect_metavars(concl.rhs, mv);
    SchemaInfo info{id, name, static_cast<int>(prem.size()), std::string(mv.begin(), mv.end()), ext};
    t.push_back({std::move(info), std::move(prem), std::move(concl)});
  };

  // lattice axioms
  add(SchemaId::Id, "id", false, {}, sq(A, A));
  add(SchemaId::Top, "top", false, {}, sq(A, F::top()));
  add(SchemaId::Bot, "bot", false, {}, sq(F::bot(), A));
  add(SchemaId::AndElimL, "and_elim_l", false, {}, sq(F::meet(A, B), A));
  add(SchemaId::AndElimR, "and_elim_r", false, {}, sq(F::meet(A, B), B));
  add(SchemaId::OrIntroL, "or_intro_l", false, {}, sq(A, F::join(A, B)));
  add(SchemaId::OrIntroR, "or_intro_r", false, {}, sq(B, F::join(A, B)));
  add(SchemaId::Distrib, "distrib", false, {},
      sq(F::meet(A, F::join(B, C)), F::join(F::meet(A, B), F::meet(A, C))));
  // iteration axioms
  add(SchemaId::IterLMeet, "iter_l_meet", false, {},
      sq(F::meet(F::iter_ldiv(A, B), F::iter_ldiv(A, C)), F::iter_ldiv(A, F::meet(B, C))));
  add(SchemaId::IterRMeet, "iter_r_meet", false, {},
      sq(F::meet(F::iter_rdiv(B, A), F::iter_rdiv(C, A)), F::iter_rdiv(F::meet(B, C), A)));
  add(SchemaId::IterLUnfold, "iter_l_unfold", false, {},
      sq(F::iter_ldiv(A, B), F::meet(F::ldiv(A, B), F::ldiv(A, F::iter_ldiv(A, B)))));
  add(SchemaId::IterRUnfold, "iter_r_unfold", false, {},
      sq(F::iter_rdiv(B, A), F::meet(F::rdiv(B, A), F::rdiv(F::iter_rdiv(B, A), A))));
  add(SchemaId::IterLFold, "iter_l_fold", false, {},
      sq(F::meet(F::ldiv(A, B), F::ldiv(A, F::iter_ldiv(A, B))), F::iter_ldiv(A, B)));
  add(SchemaId::IterRFold, "iter_r_fold", false, {},
      sq(F::meet(F::rdiv(F::iter_rdiv(B, A), A), F::rdiv(B, A)), F::iter_rdiv(B, A)));
  // residuation rules
  add(SchemaId::ResLDivIntro, "res_ldiv_intro", false, {sq(F::fuse(A, B), C)}, sq(B, F::ldiv(A, C)));
  add(SchemaId::ResLDivElim, "res_ldiv_elim", false, {sq(B, F::ldiv(A, C))}, sq(F::fuse(A, B), C));
  add(SchemaId::ResRDivIntro, "res_rdiv_intro", false, {sq(F::fuse(A, B), C)}, sq(A, F::rdiv(C, B)));
  add(SchemaId::ResRDivElim, "res_rdiv_elim", false, {sq(A, F::rdiv(C, B))}, sq(F::fuse(A, B), C));
  // lattice rules
  add(SchemaId::AndIntro, "and_intro", false, {sq(A, B), sq(A, C)}, sq(A, F::meet(B, C)));
  add(SchemaId::OrElim, "or_elim", false, {sq(A, C), sq(B, C)}, sq(F::join(A, B), C));
  add(SchemaId::Cut, "cut", false, {sq(A, B), sq(B, C)}, sq(A, C));
  // iteration rules
  add(SchemaId::IterLMono, "iter_l_mono", false, {sq(A, B), sq(C, D)},
      sq(F::iter_ldiv(B, C), F::iter_ldiv(A, D)));
  add(SchemaId::IterRMono, "iter_r_mono", false, {sq(A, B), sq(C, D)},
      sq(F::iter_rdiv(C, B), F::iter_rdiv(D, A)));
  add(SchemaId::LoopInvL, "loop_inv_l", false, {sq(A, F::ldiv(B, A))}, sq(A, F::iter_ldiv(B, A)));
  add(SchemaId::LoopInvR, "loop_inv_r", false, {sq(A, F::rdiv(A, B))}, sq(A, F::iter_rdiv(A, B)));
  // extensions
  add(SchemaId::WeakContraction, "weak_contraction", true, {}, sq(F::meet(A, F::ldiv(A, B)), B));
  add(SchemaId::WeakCommutativity, "weak_commutativity", true, {}, sq(F::fuse(A, B), F::fuse(B, A)));
  return t;
}

const std::vector<SchemaDef>& defs() {
  static const std::vector<SchemaDef> table = build_table();
  return table;
}

const SchemaDef& def_of(SchemaId id) {
  for (const SchemaDef& d : defs())
    if (d.info.id == id) return d;
  throw std::logic_error("unknown schema id");
}

}  // namespace

const std::vector<SchemaInfo>& schema_table() {
  static const std::vector<SchemaInfo> infos = [] {
    std::vector<SchemaInfo> out;
    for (const SchemaDef& d : defs()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

const SchemaInfo& schema_info(SchemaId id) { return def_of(id).info; }

std::optional<SchemaId> schema_by_name(std::string_view name) {
  for (const SchemaDef& d : defs())
    if (d.info.name == name) return d.info.id;
  return std::nullopt;
}

namespace {

// "" on success, message otherwise.
std::string binding_coverage_error(const SchemaDef& d, const Bindings& b) {
  for (char mv : d.info.metavars)
    if (!b.count(mv)) return std::string("missing binding for metavariable ") + mv;
  for (const auto& [mv, f] : b) {
    (void)f;
    if (d.info.metavars.find(mv) == std::string::npos)
      return std::string("binding for metavariable ") + mv + " not used by schema '" + d.info.name + "'";
  }
  return "";
}

Instantiation instantiate_def(const SchemaDef& d, const Bindings& b) {
  Instantiation out;
  out.premises.reserve(d.premises.size());
  for (const Sequent& p : d.premises)
    out.premises.push_back({substitute(p.lhs, b), substitute(p.rhs, b)});
  out.conclusion = {substitute(d.conclusion.lhs, b), substitute(d.conclusion.rhs, b)};
  return out;
}

}  // namespace

Instantiation instantiate(SchemaId id, const Bindings& b) {
  const SchemaDef& d = def_of(id);
  if (auto err = binding_coverage_error(d, b); !err.empty()) throw std::invalid_argument(err);
  return instantiate_def(d, b);
}

CheckReport check_derivation(const Derivation& d, const std::set<SchemaId>& extensions) {
  std::map<int, const DerivationStep*> by_index;
  int prev_index = 0;
  for (const DerivationStep& step : d.steps) {
    auto fail = [&](std::string reason) {
      return CheckReport{false, step.index, std::move(reason)};
    };
    if (step.index <= prev_index) return fail("step indices must be strictly increasing");
    prev_index = step.index;

    const SchemaDef& schema = def_of(step.schema);
    if (schema.info.extension && !extensions.count(step.schema))
      return fail("extension schema '" + schema.info.name + "' is not enabled");
    if (auto err = binding_coverage_error(schema, step.bindings); !err.empty())
      return fail(err);
    if (static_cast<int>(step.premises.size()) != schema.info.arity)
      return fail("schema '" + schema.info.name + "' expects " + std::to_string(schema.info.arity) +
                  " premise(s), got " + std::to_string(step.premises.size()));

    const Instantiation inst = instantiate_def(schema, step.bindings);
    if (!(inst.conclusion == step.sequent))
      return fail("conclusion mismatch: schema gives '" + render_sequent(inst.conclusion) +
                  "', step states '" + render_sequent(step.sequent) + "'");
    for (std::size_t k = 0; k < step.premises.size(); ++k) {
      auto it = by_index.find(step.premises[k]);
      if (it == by_index.end())
        return fail("premise index " + std::to_string(step.premises[k]) +
                    " does not refer to an earlier step");
      if (!(it->second->sequent == inst.premises[k]))
        return fail("premise " + std::to_string(k + 1) + " mismatch: schema needs '" +
                    render_sequent(inst.premises[k]) + "', step " + std::to_string(step.premises[k]) +
                    " states '" + render_sequent(it->second->sequent) + "'");
    }
    by_index.emplace(step.index, &step);
  }
  return CheckReport{};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto fail = [&](const std::string& msg) -> parse_error { return parse_error(msg, line_no, 1); };

    DerivationStep step;
    const std::size_t dot = line.find('.');
    if (dot == std::string_view::npos) throw fail("expected '<index>.'");
    const std::string_view index_text = trim(line.substr(0, dot));
    if (index_text.empty() ||
        index_text.find_first_not_of("0123456789") != std::string_view::npos)
      throw fail("bad step index '" + std::string(index_text) + "'");
    step.index = std::stoi(std::string(index_text));
    const int expected = static_cast<int>(out.steps.size()) + 1;
    if (step.index != expected)
      throw fail("step indices must start at 1 and increase by 1 (expected " +
                 std::to_string(expected) + ", got " + std::to_string(step.index) + ")");

    const auto sections = split(line.substr(dot + 1), ';');
    if (sections.size() < 2) throw fail("expected '<sequent> ; <schema>'");
    if (sections.size() > 4) throw fail("too many ';' sections");

    try {
      step.sequent = parse_sequent(sections[0]);
    } catch (const parse_error& e) {
      throw fail(std::string("in sequent: ") + e.what());
    }

    const std::string schema_name{trim(sections[1])};
    const auto schema = schema_by_name(schema_name);
    if (!schema) throw fail("unknown schema '" + schema_name + "'");
    step.schema = *schema;

    bool saw_premises = false;
    for (std::size_t si = 2; si < sections.size(); ++si) {
      std::string_view section = trim(sections[si]);
      if (section.rfind("premises:", 0) == 0) {
        if (saw_premises) throw fail("duplicate 'premises:' section");
        saw_premises = true;
        for (std::string_view item : split(section.substr(9), ',')) {
          item = trim(item);
          if (item.empty()) continue;
          if (item.find_first_not_of("0123456789") != std::string_view::npos)
            throw fail("bad premise index '" + std::string(item) + "'");
          const int premise = std::stoi(std::string(item));
          if (premise < 1 || premise >= step.index)
            throw fail("premise " + std::to_string(premise) +
                       " must refer to an earlier step");
          step.premises.push_back(premise);
        }
        continue;
      }
      if (saw_premises) throw fail("bindings must come before 'premises:'");
      if (section.empty()) continue;
      for (std::string_view item : split(section, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw fail("expected '<Metavar>=<formula>' binding");
        const std::string_view mv = trim(item.substr(0, eq));
        if (mv.size() != 1 || mv[0] < 'A' || mv[0] > 'D')
          throw fail("bad metavariable '" + std::string(mv) + "' (expected A..D)");
        if (step.bindings.count(mv[0]))
          throw fail(std::string("duplicate binding for metavariable ") + mv[0]);
        try {
          step.bindings[mv[0]] = parse_formula(item.substr(eq + 1));
        } catch (const parse_error& e) {
          throw fail(std::string("in binding ") + mv[0] + ": " + e.what());
        }
      }
    }

    const SchemaInfo& info = schema_info(step.schema);
    if (static_cast<int>(step.premises.size()) != info.arity)
      throw fail("schema '" + info.name + "' expects " + std::to_string(info.arity) +
                 " premise(s), got " + std::to_string(step.premises.size()));

    out.steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace idfnl
