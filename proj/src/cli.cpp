#include "idfnl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "idfnl/checks.hpp"
#include "idfnl/parser.hpp"
#include "idfnl/proofs.hpp"
#include "idfnl/search.hpp"
#include "idfnl/semantics.hpp"

namespace idfnl {
namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAbort = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct EvalArgs {
  std::string model_path;
  std::string formula;
  std::string state;
};

int do_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const Model m = parse_model(read_file(a.model_path));
  const FormulaPtr f = parse_formula(a.formula);
  if (!a.state.empty()) {
    const auto idx = m.state_index(a.state);
    if (!idx) {
      err << "error: unknown state '" << a.state << "'\n";
      return kExitUsage;
    }
    const bool sat = satisfies(m, *idx, *f);
    out << (sat ? "true" : "false") << '\n';
    return sat ? kExitHolds : kExitFails;
  }
  const auto members = denotation(m, *f).to_vector();
  for (std::size_t i = 0; i < members.size(); ++i)
    out << (i ? " " : "") << m.state_name(members[i]);
  out << '\n';
  return kExitHolds;
}

struct ValidArgs {
  std::string sequent;
  int max_states = 3;
  std::vector<std::string> frames;
  int jobs = 1;
  bool pin_witness = false;
  double timeout = -1.0;
  std::uint64_t limit = 0;
};

int do_valid(const ValidArgs& a, std::ostream& out, std::ostream&) {
  const Sequent sq = parse_sequent(a.sequent);
  SearchConfig cfg;
  cfg.max_states = a.max_states;
  cfg.jobs = a.jobs;
  cfg.pin_witness = a.pin_witness;
  for (const auto& f : a.frames)
    cfg.frame_properties.insert(f == "reflexive" ? FrameProperty::Reflexive
                                                 : FrameProperty::Commutative);
  if (a.timeout >= 0.0) cfg.time_limit_seconds = a.timeout;
  if (a.limit > 0) cfg.candidate_limit = a.limit;

  const Verdict verdict = find_countermodel(sq, cfg);
  if (const auto* cm = std::get_if<Countermodel>(&verdict)) {
    // Everything except the two comment lines is a parseable model file,
    // so the output can be fed straight back into `eval`.
    out << "# countermodel with " << cm->model.size() << " state(s)\n";
    out << render_model(cm->model);
    out << "# witness: " << cm->model.state_name(cm->witness) << '\n';
    return kExitFails;
  }
  if (const auto* ex = std::get_if<ExhaustedTo>(&verdict)) {
    out << "no countermodel with at most " << ex->max_states << " state(s)\n";
    return kExitHolds;
  }
  out << "valid (search exhausted the finite-model bound "
      << std::get<CompleteValid>(verdict).bound << ")\n";
  return kExitHolds;
}

struct CheckProofArgs {
  std::string path;
  std::vector<std::string> extensions;
};

int do_check_proof(const CheckProofArgs& a, std::ostream& out, std::ostream&) {
  const Derivation d = parse_derivation(read_file(a.path));
  std::set<SchemaId> extensions;
  for (const auto& name : a.extensions) extensions.insert(*schema_by_name(name));
  const CheckReport report = check_derivation(d, extensions);
  if (report.ok) {
    out << "OK\n";
    return kExitHolds;
  }
  out << "step " << *report.failed_step << ": " << report.reason << '\n';
  return kExitFails;
}

struct ClosureArgs {
  std::vector<std::string> formulas;
  std::string sequent;
};

int do_closure(const ClosureArgs& a, std::ostream& out, std::ostream& err) {
  FormulaSet fs;
  if (!a.sequent.empty()) {
    const Sequent sq = parse_sequent(a.sequent);
    fs.insert(sq.lhs);
    fs.insert(sq.rhs);
  }
  for (const auto& text : a.formulas) fs.insert(parse_formula(text));
  if (fs.empty()) {
    err << "error: closure needs a formula or --sequent\n";
    return kExitUsage;
  }
  std::vector<std::string> lines;
  for (const auto& f : closure(fs)) lines.push_back(render_formula(f));
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) out << line << '\n';
  if (!a.sequent.empty()) {
    const FmpBound bound = fmp_bound(parse_sequent(a.sequent));
    if (bound.value)
      out << "bound: " << *bound.value << '\n';
    else
      out << "bound: 2^" << bound.closure_size << " (exceeds 64-bit range)\n";
  }
  return kExitHolds;
}

struct SelftestArgs {
  std::uint64_t seed = 0;
  int iterations = 100;
};

int do_selftest(const SelftestArgs& a, std::ostream& out, std::ostream&) {
  bool all_passed = true;
  for (const SuiteResult& r : run_all_suites(a.seed, a.iterations)) {
    out << r.name << ": " << r.cases << " case(s), " << r.failures << " failure(s)\n";
    if (!r.passed()) all_passed = false;
  }
  out << (all_passed ? "all suites passed" : "FAILURES") << '\n';
  return all_passed ? kExitHolds : kExitFails;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for the distributive non-associative Lambek calculus with iterative division"};
  app.name("idfnl");
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula in a model file");
  eval_cmd->add_option("model", eval_args.model_path, "model file")->required();
  eval_cmd->add_option("formula", eval_args.formula, "formula text")->required();
  eval_cmd->add_option("--state", eval_args.state, "check one state instead of printing the denotation");

  ValidArgs valid_args;
  auto* valid_cmd = app.add_subcommand("valid", "Search for a countermodel to a sequent");
  valid_cmd->add_option("sequent", valid_args.sequent, "sequent text, e.g. \"p & q |- p\"")->required();
  valid_cmd->add_option("--max-states", valid_args.max_states, "largest model size to try")
      ->check(CLI::PositiveNumber);
  valid_cmd->add_option("--frame", valid_args.frames, "frame condition (repeatable)")
      ->check(CLI::IsMember({"reflexive", "commutative"}));
  valid_cmd->add_option("--jobs", valid_args.jobs, "worker threads")->check(CLI::PositiveNumber);
  valid_cmd->add_flag("--pin-witness", valid_args.pin_witness,
                      "symmetry breaking: only report countermodels witnessed at s0 "
                      "(not combinable with --frame)");
  valid_cmd->add_option("--timeout", valid_args.timeout, "abort after this many seconds");
  valid_cmd->add_option("--limit", valid_args.limit, "abort after this many candidate models");

  CheckProofArgs proof_args;
  auto* proof_cmd = app.add_subcommand("check-proof", "Check a derivation file");
  proof_cmd->add_option("file", proof_args.path, "derivation file")->required();
  proof_cmd->add_option("--ext", proof_args.extensions, "enable an extension axiom (repeatable)")
      ->check(CLI::IsMember({"weak_contraction", "weak_commutativity"}));

  ClosureArgs closure_args;
  auto* closure_cmd = app.add_subcommand("closure", "Print the closure of formulas");
  closure_cmd->add_option("formula", closure_args.formulas, "formula text (repeatable)");
  closure_cmd->add_option("--sequent", closure_args.sequent,
                          "closure of a sequent's sides, with the finite-model bound");

  std::string fmt_text;
  auto* fmt_cmd = app.add_subcommand("fmt", "Re-print a formula canonically");
  fmt_cmd->add_option("formula", fmt_text, "formula text")->required();

  SelftestArgs selftest_args;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the randomized soundness and oracle suites");
  selftest_cmd->add_option("--seed", selftest_args.seed, "rng seed");
  selftest_cmd->add_option("--iterations", selftest_args.iterations, "models per suite")
      ->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  argv.push_back("idfnl");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitHolds : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) return do_eval(eval_args, out, err);
    if (valid_cmd->parsed()) return do_valid(valid_args, out, err);
    if (proof_cmd->parsed()) return do_check_proof(proof_args, out, err);
    if (closure_cmd->parsed()) return do_closure(closure_args, out, err);
    if (fmt_cmd->parsed()) {
      out << render_formula(parse_formula(fmt_text)) << '\n';
      return kExitHolds;
    }
    if (selftest_cmd->parsed()) return do_selftest(selftest_args, out, err);
  } catch (const search_aborted& e) {
    err << "error: " << e.what() << '\n';
    return kExitAbort;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace idfnl
