#include "doctest.h"

#include <set>

#include "idfnl/checks.hpp"
#include "idfnl/enumeration.hpp"
#include "idfnl/parser.hpp"
#include "idfnl/proofs.hpp"
#include "idfnl/search.hpp"
#include "idfnl/semantics.hpp"

using namespace idfnl;

namespace {

bool verifies(const Countermodel& cm, const Sequent& sq) {
  return satisfies(cm.model, cm.witness, *sq.lhs) && !satisfies(cm.model, cm.witness, *sq.rhs);
}

Countermodel expect_countermodel(const Verdict& v) {
  REQUIRE(std::holds_alternative<Countermodel>(v));
  return std::get<Countermodel>(v);
}

}  // namespace

TEST_SUITE_BEGIN("search");

TEST_CASE("enumerate_models counts and uniqueness") {
  SUBCASE("one state, one atom") {
    ModelEnumerator en(1, {"p"});
    CHECK(en.total() == 4);
    std::set<std::string> seen;
    while (auto m = en.next()) seen.insert(render_model(*m));
    CHECK(seen.size() == 4);
  }
  SUBCASE("one state, reflexive") {
    ModelEnumerator en(1, {}, {FrameProperty::Reflexive});
    CHECK(en.total() == 1);
    auto m = en.next();
    REQUIRE(m.has_value());
    CHECK(m->has_triple(0, 0, 0));
    CHECK_FALSE(en.next().has_value());
  }
  SUBCASE("two states, no atoms") {
    ModelEnumerator en(2, {});
    CHECK(en.total() == 256);
    int count = 0;
    while (en.next()) ++count;
    CHECK(count == 256);
  }
}

TEST_CASE("enumeration respects frame properties and canonical order") {
  SUBCASE("reflexive models of size 2") {
    ModelEnumerator en(2, {}, {FrameProperty::Reflexive});
    CHECK(en.total() == 64);  // 8 triple bits, 2 forced
    int count = 0;
    while (auto m = en.next()) {
      CHECK(frame_has_property(*m, FrameProperty::Reflexive));
      ++count;
    }
    CHECK(count == 64);
  }
  SUBCASE("commutative models of size 2") {
    ModelEnumerator en(2, {}, {FrameProperty::Commutative});
    CHECK(en.total() == 64);  // 4 swap-fixed bits + 2 orbits of 2
    int count = 0;
    std::uint64_t previous_rel = 0;
    bool first = true;
    while (auto m = en.next()) {
      CHECK(frame_has_property(*m, FrameProperty::Commutative));
      std::uint64_t rel = 0;
      for (const Triple& t : m->triples()) rel |= 1ull << ((t.a * 2 + t.b) * 2 + t.c);
      if (!first) CHECK(rel > previous_rel);
      first = false;
      previous_rel = rel;
      ++count;
    }
    CHECK(count == 64);
  }
  SUBCASE("first relation is empty, valuations count up inside it") {
    ModelEnumerator en(1, {"p", "q"});
    auto m0 = en.next();
    REQUIRE(m0);
    CHECK(m0->triples().empty());
    CHECK(m0->valuation("p").none());
    auto m1 = en.next();
    REQUIRE(m1);
    CHECK(m1->triples().empty());
    CHECK(m1->valuation("p").count() == 1);
    CHECK(m1->valuation("q").none());
  }
}

TEST_CASE("compiled evaluation agrees with the reference semantics") {
  CheckRng rng(0xF1A7);
  const std::vector<std::string> atoms = {"p", "q", "r"};
  for (int i = 0; i < 200; ++i) {
    const Model m = random_test_model(rng, 5, atoms, 0.35, 0.5);
    const Sequent sq{random_formula(rng, atoms, 3), random_formula(rng, atoms, 3)};
    CompiledSequent compiled(sq, atoms);
    const std::uint64_t bad = compiled.falsifying_states(to_flat(m, atoms));
    const StateSet lhs = denotation(m, *sq.lhs);
    const StateSet rhs = denotation(m, *sq.rhs);
    for (int s = 0; s < m.size(); ++s) {
      const bool expected = lhs.test(s) && !rhs.test(s);
      CHECK(((bad >> s) & 1u) == (expected ? 1u : 0u));
    }
  }
}

TEST_CASE("flat round trip") {
  CheckRng rng(0xF2);
  const std::vector<std::string> atoms = {"p", "q"};
  for (int i = 0; i < 30; ++i) {
    const Model m = random_test_model(rng, 6, atoms, 0.4, 0.5);
    const Model back = to_model(to_flat(m, atoms), atoms);
    CHECK(back.triples() == m.triples());
    CHECK(back.valuation("p") == m.valuation("p"));
  }
}

TEST_CASE("vacuous division countermodel at one state") {
  const Sequent sq = parse_sequent("p & (p \\ q) |- q");
  SearchConfig cfg;
  cfg.max_states = 2;
  const auto& cm = expect_countermodel(find_countermodel(sq, cfg));
  CHECK(cm.model.size() == 1);
  CHECK(cm.model.triples().empty());
  CHECK(cm.model.valuation("p") == StateSet::all(1));
  CHECK(cm.model.valuation("q").none());
  CHECK(cm.witness == 0);
  CHECK(verifies(cm, sq));
}

TEST_CASE("fixed regression: the success axiom fails on plain frames") {
  const Model m = parse_model("states: t s u\nr: t s u\nv p: t\nv q: u");
  const FormulaPtr lhs = parse_formula("p \\ q");
  const FormulaPtr rhs = parse_formula("p \\ (p & q)");
  CHECK(satisfies(m, "s", *lhs));
  CHECK_FALSE(satisfies(m, "s", *rhs));

  const Sequent sq = parse_sequent("p \\ q |- p \\ (p & q)");
  SearchConfig cfg;
  cfg.max_states = 4;
  const auto& cm = expect_countermodel(find_countermodel(sq, cfg));
  CHECK(verifies(cm, sq));
  CHECK(cm.model.size() == 2);
}

TEST_CASE("fixed regression: fusion does not commute") {
  const Model m = parse_model("states: a b c\nr: a b c\nv p: a\nv q: b");
  CHECK(satisfies(m, "c", *parse_formula("p * q")));
  CHECK_FALSE(satisfies(m, "c", *parse_formula("q * p")));

  const Sequent sq = parse_sequent("p * q |- q * p");
  SearchConfig cfg;
  cfg.max_states = 4;
  const auto& cm = expect_countermodel(find_countermodel(sq, cfg));
  CHECK(verifies(cm, sq));
  CHECK(cm.model.size() == 2);
}

TEST_CASE("join does not distribute into iterative division") {
  const Sequent sq = parse_sequent("(p \\\\ r) & (q \\\\ r) |- (p | q) \\\\ r");
  SearchConfig cfg;
  cfg.max_states = 4;
  const auto& cm = expect_countermodel(find_countermodel(sq, cfg));
  CHECK(verifies(cm, sq));
  CHECK(cm.model.size() == 2);

  const Sequent mirror = parse_sequent("(r // p) & (r // q) |- r // (p | q)");
  const auto& cm2 = expect_countermodel(find_countermodel(mirror, cfg));
  CHECK(verifies(cm2, mirror));
  CHECK(cm2.model.size() == 2);
}

TEST_CASE("found countermodels are size-minimal") {
  SearchConfig cfg;
  cfg.max_states = 4;
  for (const char* text : {"p * q |- q * p", "p \\ q |- p \\ (p & q)",
                           "(p \\\\ r) & (q \\\\ r) |- (p | q) \\\\ r"}) {
    const Sequent sq = parse_sequent(text);
    const auto& cm = expect_countermodel(find_countermodel(sq, cfg));
    SearchConfig below;
    below.max_states = cm.model.size() - 1;
    REQUIRE(below.max_states >= 1);
    CHECK(std::holds_alternative<ExhaustedTo>(find_countermodel(sq, below)));
  }
}

TEST_CASE("axiom instances survive exhaustive screening at two states") {
  for (const SchemaInfo& info : schema_table()) {
    if (info.extension || info.arity != 0) continue;
    Bindings b;
    const char* names[] = {"p", "q", "r", "s_"};
    int i = 0;
    for (char mv : info.metavars) b[mv] = Formula::atom(names[i++]);
    const Sequent sq = instantiate(info.id, b).conclusion;
    CAPTURE(info.name);
    SearchConfig cfg;
    cfg.max_states = 2;
    CHECK(std::holds_alternative<ExhaustedTo>(find_countermodel(sq, cfg)));
  }
}

TEST_CASE("frame filters screen out the extension countermodels") {
  SearchConfig reflexive;
  reflexive.max_states = 2;
  reflexive.frame_properties = {FrameProperty::Reflexive};
  const Verdict v1 = find_countermodel(parse_sequent("p & (p \\ q) |- q"), reflexive);
  CHECK(std::holds_alternative<ExhaustedTo>(v1));

  SearchConfig commutative;
  commutative.max_states = 2;
  commutative.frame_properties = {FrameProperty::Commutative};
  const Verdict v2 = find_countermodel(parse_sequent("p * q |- q * p"), commutative);
  CHECK(std::holds_alternative<ExhaustedTo>(v2));

  // countermodels under a filter still satisfy the filter
  SearchConfig refl4 = reflexive;
  refl4.max_states = 3;
  const Sequent sq = parse_sequent("p |- q");
  const auto& cm = expect_countermodel(find_countermodel(sq, refl4));
  CHECK(frame_has_property(cm.model, FrameProperty::Reflexive));
  CHECK(verifies(cm, sq));
}

TEST_CASE("parallel search returns the same verdict and witness") {
  // invalid sequents stop early, the valid one exhausts sizes 1 and 2
  const std::pair<const char*, int> inputs[] = {
      {"p * q |- q * p", 3},
      {"(p \\\\ r) & (q \\\\ r) |- (p | q) \\\\ r", 3},
      {"p & q |- p", 2},
  };
  for (const auto& [text, max_states] : inputs) {
    const Sequent sq = parse_sequent(text);
    SearchConfig serial;
    serial.max_states = max_states;
    SearchConfig parallel = serial;
    parallel.jobs = 8;
    const Verdict vs = find_countermodel(sq, serial);
    const Verdict vp = find_countermodel(sq, parallel);
    REQUIRE(vs.index() == vp.index());
    if (const auto* cs = std::get_if<Countermodel>(&vs)) {
      const auto& cp = std::get<Countermodel>(vp);
      CHECK(render_model(cs->model) == render_model(cp.model));
      CHECK(cs->witness == cp.witness);
    }
  }
}

TEST_CASE("random_model determinism and edge probabilities") {
  RandomConfig cfg;
  cfg.states = 3;
  cfg.atoms = {"p", "q"};
  cfg.triple_probability = 0.5;
  cfg.atom_probability = 0.5;
  cfg.seed = 42;
  const Model a = random_model(cfg);
  const Model b = random_model(cfg);
  CHECK(render_model(a) == render_model(b));

  cfg.seed = 43;
  CHECK(render_model(random_model(cfg)) != render_model(a));

  RandomConfig none = cfg;
  none.triple_probability = 0.0;
  CHECK(random_model(none).triples().empty());

  RandomConfig all = cfg;
  all.atom_probability = 1.0;
  const Model full = random_model(all);
  CHECK(full.valuation("p") == StateSet::all(3));
  CHECK(full.valuation("q") == StateSet::all(3));

  RandomConfig bad = cfg;
  bad.triple_probability = 1.5;
  CHECK_THROWS_AS(random_model(bad), std::invalid_argument);
  bad = cfg;
  bad.states = 0;
  CHECK_THROWS_AS(random_model(bad), std::invalid_argument);
}

TEST_CASE("random_model output is pinned across platforms") {
  RandomConfig cfg;
  cfg.states = 3;
  cfg.atoms = {"p", "q"};
  cfg.triple_probability = 0.5;
  cfg.atom_probability = 0.5;
  cfg.seed = 42;
  CHECK(render_model(random_model(cfg)) ==
        "states: s0 s1 s2\n"
        "r: s0 s1 s0\nr: s0 s1 s2\nr: s0 s2 s1\nr: s0 s2 s2\n"
        "r: s1 s0 s0\nr: s1 s0 s1\nr: s1 s2 s2\n"
        "r: s2 s0 s0\nr: s2 s0 s1\nr: s2 s1 s0\nr: s2 s1 s1\nr: s2 s1 s2\n"
        "r: s2 s2 s0\nr: s2 s2 s1\n"
        "v p: s0 s2\nv q: s1\n");
}

TEST_CASE("combined frame properties compose") {
  ModelEnumerator en(2, {}, {FrameProperty::Reflexive, FrameProperty::Commutative});
  CHECK(en.total() == 16);  // 2 forced diagonal bits, 2 singletons, 2 swap orbits
  int count = 0;
  while (auto m = en.next()) {
    CHECK(frame_has_property(*m, FrameProperty::Reflexive));
    CHECK(frame_has_property(*m, FrameProperty::Commutative));
    ++count;
  }
  CHECK(count == 16);
}

TEST_CASE("fmp_bound") {
  CHECK(fmp_bound(parse_sequent("p |- q")).closure_size == 4);
  CHECK(fmp_bound(parse_sequent("p |- q")).value == 16);
  CHECK(fmp_bound(parse_sequent("top |- top")).value == 4);
  CHECK(fmp_bound(parse_sequent("p \\\\ q |- p \\ q")).closure_size == 6);
  CHECK(fmp_bound(parse_sequent("p \\\\ q |- p \\ q")).value == 64);

  // 32 distinct atoms joined pairwise: 63 subformulas + top + bot > 63
  std::string big = "a0";
  for (int i = 1; i < 32; ++i) big += " | a" + std::to_string(i);
  const FmpBound bound = fmp_bound(parse_sequent(big + " |- a0"));
  CHECK(bound.closure_size == 65);
  CHECK_FALSE(bound.value.has_value());
}

TEST_CASE("exhaustion verdicts") {
  const FmpBound tiny{2, 4};
  CHECK(std::holds_alternative<CompleteValid>(exhaustion_verdict(4, 10, tiny)));
  CHECK(std::get<CompleteValid>(exhaustion_verdict(4, 10, tiny)).bound == 4);
  CHECK(std::holds_alternative<ExhaustedTo>(exhaustion_verdict(3, 3, FmpBound{6, 64})));
  CHECK(std::get<ExhaustedTo>(exhaustion_verdict(3, 3, FmpBound{6, 64})).max_states == 3);
  CHECK(std::holds_alternative<ExhaustedTo>(exhaustion_verdict(5, 5, FmpBound{65, std::nullopt})));
}

TEST_CASE("witness pinning stays sound, minimal and deterministic") {
  SearchConfig pinned;
  pinned.max_states = 4;
  pinned.pin_witness = true;
  for (const char* text : {"p * q |- q * p", "p & (p \\ q) |- q",
                           "(p \\\\ r) & (q \\\\ r) |- (p | q) \\\\ r"}) {
    const Sequent sq = parse_sequent(text);
    const Countermodel cm = expect_countermodel(find_countermodel(sq, pinned));
    CHECK(cm.witness == 0);
    CHECK(verifies(cm, sq));
    SearchConfig plain;
    plain.max_states = 4;
    CHECK(expect_countermodel(find_countermodel(sq, plain)).model.size() == cm.model.size());
    SearchConfig pinned_jobs = pinned;
    pinned_jobs.jobs = 4;
    const Countermodel again = expect_countermodel(find_countermodel(sq, pinned_jobs));
    CHECK(render_model(again.model) == render_model(cm.model));
  }
  // valid sequents are still exhausted correctly
  SearchConfig small = pinned;
  small.max_states = 2;
  CHECK(std::holds_alternative<ExhaustedTo>(find_countermodel(parse_sequent("p & q |- p"), small)));
  // not combinable with frame properties
  SearchConfig bad = pinned;
  bad.frame_properties = {FrameProperty::Reflexive};
  CHECK_THROWS_AS(find_countermodel(parse_sequent("p |- q"), bad), std::invalid_argument);
}

TEST_CASE("resource limits abort the search") {
  SearchConfig cfg;
  cfg.max_states = 3;
  cfg.candidate_limit = 1;
  CHECK_THROWS_AS(find_countermodel(parse_sequent("p & q |- p"), cfg), search_aborted);

  SearchConfig timed;
  timed.max_states = 3;
  timed.time_limit_seconds = 0.0;
  CHECK_THROWS_AS(find_countermodel(parse_sequent("p & q |- p"), timed), search_aborted);
}

TEST_CASE("sequent_atoms is sorted and duplicate-free") {
  const auto atoms = sequent_atoms(parse_sequent("q * p |- p & zz"));
  CHECK(atoms == std::vector<std::string>{"p", "q", "zz"});
}

TEST_SUITE_END();
