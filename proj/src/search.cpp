#include "idfnl/search.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <random>
#include <thread>

#include "idfnl/enumeration.hpp"

namespace idfnl {

std::vector<std::string> sequent_atoms(const Sequent& sq) {
  std::set<std::string> names;
  collect_atoms(*sq.lhs, names);
  collect_atoms(*sq.rhs, names);
  return {names.begin(), names.end()};
}

FmpBound fmp_bound(const Sequent& sq) {
  FormulaSet fs;
  fs.insert(sq.lhs);
  fs.insert(sq.rhs);
  const std::size_t k = closure(fs).size();
  if (k > 63) return {k, std::nullopt};
  return {k, 1ull << k};
}

Verdict exhaustion_verdict(std::uint64_t searched, int requested_max, const FmpBound& bound) {
  if (bound.value && searched >= *bound.value) return CompleteValid{*bound.value};
  return ExhaustedTo{requested_max};
}

namespace {

using Clock = std::chrono::steady_clock;

struct Limiter {
  std::optional<std::uint64_t> max_candidates;
  std::optional<Clock::time_point> deadline;
  std::atomic<std::uint64_t> used{0};
  std::atomic<bool> aborted{false};

  explicit Limiter(const SearchConfig& cfg) : max_candidates(cfg.candidate_limit) {
    if (cfg.time_limit_seconds)
      deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(*cfg.time_limit_seconds));
  }

  void charge(std::uint64_t k) {
    if (aborted.load(std::memory_order_relaxed)) return;
    if (max_candidates && used.fetch_add(k, std::memory_order_relaxed) + k > *max_candidates)
      aborted.store(true, std::memory_order_relaxed);
    if (deadline && Clock::now() > *deadline) aborted.store(true, std::memory_order_relaxed);
  }
};

struct Position {
  CandidateSpace::RCounter r;
  std::uint64_t v = 0;
};

int compare(const Position& a, const Position& b) {
  const int c = CandidateSpace::compare(a.r, b.r);
  if (c != 0) return c;
  if (a.v != b.v) return a.v < b.v ? -1 : 1;
  return 0;
}

struct SizeScan {
  const CandidateSpace& space;
  const CompiledSequent& prototype;
  bool deterministic;
  bool pin_witness;
  Limiter& limiter;

  std::mutex mu;
  CandidateSpace::RCounter next_r;
  bool claims_done = false;
  std::optional<Position> best;
  FlatModel best_model;
  int best_witness = -1;
  std::atomic<bool> stop_all{false};

  // R values handed out per claim; the valuation loop inside each R
  // amortizes the lock.
  static constexpr std::uint64_t kChunk = 256;

  SizeScan(const CandidateSpace& s, const CompiledSequent& p, bool det, bool pin, Limiter& lim)
      : space(s), prototype(p), deterministic(det), pin_witness(pin), limiter(lim),
        next_r(s.r_begin()) {}

  void worker() {
    CompiledSequent compiled = prototype;  // private scratch space
    FlatModel fm;
    CandidateSpace::RCounter rc;
    const std::uint64_t v_total = space.v_total();
    std::uint64_t charge_backlog = 0;

    for (;;) {
      {
        std::lock_guard<std::mutex> lock(mu);
        if (claims_done) break;
        rc = next_r;
        if (!space.r_advance(next_r, kChunk)) claims_done = true;
        // A chunk starting after the best falsifier cannot improve it.
        if (best && CandidateSpace::compare(rc, best->r) > 0) break;
      }
      if (stop_all.load(std::memory_order_relaxed) || limiter.aborted.load(std::memory_order_relaxed)) break;

      bool rc_valid = true;
      for (std::uint64_t i = 0; i < kChunk && rc_valid; ++i) {
        space.decode_rel(rc, fm);
        bool found_here = false;
        for (std::uint64_t v = 0; v < v_total; ++v) {
          space.decode_val(v, fm);
          std::uint64_t bad = compiled.falsifying_states(fm);
          if (pin_witness) bad &= 1u;
          ++charge_backlog;
          if ((charge_backlog & 4095) == 0) {
            limiter.charge(4096);
            charge_backlog = 0;
            if (limiter.aborted.load(std::memory_order_relaxed)) return;
            if (stop_all.load(std::memory_order_relaxed)) return;
          }
          if (bad) {
            const int witness = std::countr_zero(bad);
            std::lock_guard<std::mutex> lock(mu);
            const Position pos{rc, v};
            if (!best || compare(pos, *best) < 0) {
              best = pos;
              best_model = fm;
              best_witness = witness;
            }
            if (!deterministic) stop_all.store(true, std::memory_order_relaxed);
            found_here = true;
            break;  // later valuations of this relation sit after pos
          }
        }
        if (found_here) break;  // later relations in the chunk sit after pos
        {
          std::lock_guard<std::mutex> lock(mu);
          if (best && CandidateSpace::compare(rc, best->r) >= 0) break;
        }
        rc_valid = space.r_advance(rc);
      }
      limiter.charge(charge_backlog);
      charge_backlog = 0;
      if (limiter.aborted.load(std::memory_order_relaxed)) break;
    }
  }
};

std::optional<Countermodel> scan_size(const Sequent& sq, int n,
                                      const std::vector<std::string>& atoms,
                                      const SearchConfig& cfg, Limiter& limiter) {
  const CandidateSpace space(n, static_cast<int>(atoms.size()), cfg.frame_properties);
  const CompiledSequent prototype(sq, atoms);
  SizeScan scan(space, prototype, cfg.deterministic, cfg.pin_witness, limiter);

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    scan.worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) threads.emplace_back([&scan] { scan.worker(); });
    for (auto& t : threads) t.join();
  }
  if (limiter.aborted.load()) return std::nullopt;
  if (!scan.best) return std::nullopt;
  return Countermodel{to_model(scan.best_model, atoms), scan.best_witness};
}

}  // namespace

Verdict find_countermodel(const Sequent& sq, const SearchConfig& cfg) {
  if (cfg.max_states < 1) throw std::invalid_argument("find_countermodel: max_states must be >= 1");
  if (cfg.max_states > 64)
    throw std::invalid_argument("find_countermodel: enumeration supports at most 64 states");
  if (cfg.pin_witness && !cfg.frame_properties.empty())
    throw std::invalid_argument("find_countermodel: witness pinning requires no frame properties");
  const auto atoms = sequent_atoms(sq);
  const FmpBound bound = fmp_bound(sq);
  std::uint64_t effective_max = static_cast<std::uint64_t>(cfg.max_states);
  if (bound.value && *bound.value < effective_max) effective_max = *bound.value;

  Limiter limiter(cfg);
  limiter.charge(0);  // a zero time budget aborts before any scan
  if (limiter.aborted.load()) throw search_aborted("countermodel search aborted: time limit reached");

  for (std::uint64_t n = 1; n <= effective_max; ++n) {
    auto found = scan_size(sq, static_cast<int>(n), atoms, cfg, limiter);
    if (limiter.aborted.load()) throw search_aborted("countermodel search aborted: resource limit reached");
    if (found) return std::move(*found);
  }
  return exhaustion_verdict(effective_max, cfg.max_states, bound);
}

Model random_model(const RandomConfig& cfg) {
  if (cfg.states < 1) throw std::invalid_argument("random_model: states must be >= 1");
  auto check_prob = [](double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random_model: probability out of [0,1]");
  };
  check_prob(cfg.triple_probability);
  check_prob(cfg.atom_probability);

  std::mt19937_64 rng(cfg.seed);
  // Fixed mapping of raw engine words to [0,1); std::*_distribution is
  // implementation-defined, which would break cross-platform seeds.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0); };

  const int n = cfg.states;
  std::vector<std::string> states;
  states.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));

  std::vector<Triple> rel;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (unit() < cfg.triple_probability) rel.push_back({a, b, c});

  std::map<std::string, std::vector<int>> val;
  for (const auto& atom : cfg.atoms) {
    auto& members = val[atom];
    for (int s = 0; s < n; ++s)
      if (unit() < cfg.atom_probability) members.push_back(s);
  }
  return Model(std::move(states), std::move(rel), std::move(val));
}

}  // namespace idfnl
