#include "idfnl/semantics.hpp"

#include <stdexcept>

namespace idfnl {
namespace {

// Binary step relation underlying the reach fixpoints, as rows:
// left:  step[s] has u when R x s u for some x in xs;
// right: step[s] has u when R s x u for some x in xs.
std::vector<StateSet> step_rows(const Model& m, const StateSet& xs, bool left) {
  const int n = m.size();
  std::vector<StateSet> step(static_cast<std::size_t>(n), StateSet(static_cast<std::size_t>(n)));
  for (const Triple& t : m.triples()) {
    if (left) {
      if (xs.test(t.a)) step[static_cast<std::size_t>(t.b)].set(t.c);
    } else {
      if (xs.test(t.b)) step[static_cast<std::size_t>(t.a)].set(t.c);
    }
  }
  return step;
}

// Transitive closure of the step rows; converges because rows only grow.
void close_rows(std::vector<StateSet>& rows) {
  const int n = static_cast<int>(rows.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      StateSet next = rows[static_cast<std::size_t>(s)];
      for (int y = 0; y < n; ++y)
        if (rows[static_cast<std::size_t>(s)].test(y)) next |= rows[static_cast<std::size_t>(y)];
      if (!(next == rows[static_cast<std::size_t>(s)])) {
        rows[static_cast<std::size_t>(s)] = std::move(next);
        changed = true;
      }
    }
  }
}

StatePairSet rows_to_pairs(const std::vector<StateSet>& rows) {
  StatePairSet out;
  for (int s = 0; s < static_cast<int>(rows.size()); ++s)
    for (int t : rows[static_cast<std::size_t>(s)].to_vector()) out.emplace(s, t);
  return out;
}

}  // namespace

std::vector<StateSet> left_reach_rows(const Model& m, const StateSet& xs) {
  auto rows = step_rows(m, xs, true);
  close_rows(rows);
  return rows;
}

std::vector<StateSet> right_reach_rows(const Model& m, const StateSet& xs) {
  auto rows = step_rows(m, xs, false);
  close_rows(rows);
  return rows;
}

StatePairSet left_reach(const Model& m, const StateSet& xs) {
  return rows_to_pairs(left_reach_rows(m, xs));
}

StatePairSet right_reach(const Model& m, const StateSet& xs) {
  return rows_to_pairs(right_reach_rows(m, xs));
}

namespace {

// Triple successors keyed by (consumed state, chain state), so the
// depth-first walk below follows the defining chain R x1 s y1,
// R x2 y1 y2, ... without rescanning the triple list.
struct PathIndex {
  int n;
  std::vector<int> consumable;          // members of xs
  std::vector<std::vector<int>> succ;   // succ[x * n + current]

  PathIndex(const Model& m, const StateSet& xs, bool left) : n(m.size()) {
    succ.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    consumable = xs.to_vector();
    for (const Triple& t : m.triples()) {
      const int consumed = left ? t.a : t.b;
      const int chain = left ? t.b : t.a;
      if (xs.test(consumed)) succ[static_cast<std::size_t>(consumed) * n + chain].push_back(t.c);
    }
  }
};

// Explicit depth-first enumeration of paths and their intermediate
// states. Every recursion node of depth >= 1 is one (path, witnesses)
// pair; `current` plays y_depth, and becomes the endpoint t when the
// path stops here. Hits are collected in a row of endpoint bits.
void path_dfs(const PathIndex& index, StateSet& row, int current, int depth, int maxlen,
              int exact_len) {
  if (depth >= 1 && (exact_len == 0 || depth == exact_len)) row.set(current);
  if (depth == maxlen) return;
  for (int x : index.consumable)
    for (int next : index.succ[static_cast<std::size_t>(x) * index.n + current])
      path_dfs(index, row, next, depth + 1, maxlen, exact_len);
}

StatePairSet path_oracle(const Model& m, const StateSet& xs, bool left, int maxlen, int exact_len) {
  if (maxlen < 1) throw std::invalid_argument("path oracle: maxlen must be >= 1");
  const PathIndex index(m, xs, left);
  StatePairSet out;
  for (int s = 0; s < m.size(); ++s) {
    StateSet row(static_cast<std::size_t>(m.size()));
    path_dfs(index, row, s, 0, maxlen, exact_len);
    for (int t : row.to_vector()) out.emplace(s, t);
  }
  return out;
}

}  // namespace

StatePairSet left_path_oracle(const Model& m, const StateSet& xs, int maxlen) {
  return path_oracle(m, xs, true, maxlen, 0);
}

StatePairSet right_path_oracle(const Model& m, const StateSet& xs, int maxlen) {
  return path_oracle(m, xs, false, maxlen, 0);
}

StatePairSet left_path_oracle_exact(const Model& m, const StateSet& xs, int len) {
  return path_oracle(m, xs, true, len, len);
}

StatePairSet right_path_oracle_exact(const Model& m, const StateSet& xs, int len) {
  return path_oracle(m, xs, false, len, len);
}

StateSet denotation(const Model& m, const Formula& f) {
  const int n = m.size();
  const auto un = static_cast<std::size_t>(n);
  switch (f.conn()) {
    case Conn::Atom:
      return m.valuation(f.name());
    case Conn::Top:
      return StateSet::all(un);
    case Conn::Bot:
      return StateSet(un);
    case Conn::Meet: {
      StateSet out = denotation(m, *f.left());
      out &= denotation(m, *f.right());
      return out;
    }
    case Conn::Join: {
      StateSet out = denotation(m, *f.left());
      out |= denotation(m, *f.right());
      return out;
    }
    case Conn::Fuse: {
      const StateSet a = denotation(m, *f.left());
      const StateSet b = denotation(m, *f.right());
      StateSet out(un);
      for (const Triple& t : m.triples())
        if (a.test(t.a) && b.test(t.b)) out.set(t.c);
      return out;
    }
    case Conn::LDiv: {
      const StateSet a = denotation(m, *f.left());
      const StateSet b = denotation(m, *f.right());
      StateSet out = StateSet::all(un);
      for (const Triple& t : m.triples())
        if (a.test(t.a) && !b.test(t.c)) out.reset(t.b);
      return out;
    }
    case Conn::RDiv: {
      // f.left() / f.right(): right() is the divisor.
      const StateSet a = denotation(m, *f.right());
      const StateSet b = denotation(m, *f.left());
      StateSet out = StateSet::all(un);
      for (const Triple& t : m.triples())
        if (a.test(t.b) && !b.test(t.c)) out.reset(t.a);
      return out;
    }
    case Conn::IterLDiv:
    case Conn::IterRDiv: {
      const bool is_left = f.conn() == Conn::IterLDiv;
      const StateSet a = denotation(m, is_left ? *f.left() : *f.right());
      const StateSet b = denotation(m, is_left ? *f.right() : *f.left());
      const auto rows = is_left ? left_reach_rows(m, a) : right_reach_rows(m, a);
      StateSet out(un);
      for (int s = 0; s < n; ++s)
        if (rows[static_cast<std::size_t>(s)].subset_of(b)) out.set(s);
      return out;
    }
  }
  throw std::logic_error("denotation: unreachable");
}

bool satisfies(const Model& m, int state, const Formula& f) {
  if (state < 0 || state >= m.size()) throw std::out_of_range("satisfies: state index out of range");
  return denotation(m, f).test(state);
}

bool satisfies(const Model& m, std::string_view state, const Formula& f) {
  auto idx = m.state_index(state);
  if (!idx) throw std::out_of_range("satisfies: unknown state '" + std::string(state) + "'");
  return satisfies(m, *idx, f);
}

namespace {

TernaryRelation stepwise_closure(const Model& m, bool left) {
  // Iterate X_{n+1} = F(X_n) until a relation value repeats; finitely
  // many relations exist, and the sequence is deterministic, so the
  // union of the values seen is the full union over all n.
  TernaryRelation current(m.triples().begin(), m.triples().end());
  TernaryRelation result = current;
  std::set<TernaryRelation> seen{current};
  for (;;) {
    TernaryRelation next;
    for (const Triple& r : m.triples()) {
      for (const Triple& x : current) {
        if (left) {
          // new (s,t,u) from R s y u with X x t y
          if (x.c == r.b) next.insert({r.a, x.b, r.c});
        } else {
          // new (s,t,u) from R y t u with X s x y
          if (x.c == r.a) next.insert({x.a, r.b, r.c});
        }
      }
    }
    if (!seen.insert(next).second) break;
    result.insert(next.begin(), next.end());
    current = std::move(next);
  }
  return result;
}

}  // namespace

TernaryRelation left_transitive_closure(const Model& m) { return stepwise_closure(m, true); }

TernaryRelation right_transitive_closure(const Model& m) { return stepwise_closure(m, false); }

StateSet box_plus_left(const Model& m, const Formula& a, const Formula& b) {
  const StateSet da = denotation(m, a);
  const StateSet db = denotation(m, b);
  StateSet out = StateSet::all(static_cast<std::size_t>(m.size()));
  for (const Triple& t : left_transitive_closure(m))
    if (da.test(t.a) && !db.test(t.c)) out.reset(t.b);
  return out;
}

bool sequent_valid(const Model& m, const Sequent& sq) {
  return denotation(m, *sq.lhs).subset_of(denotation(m, *sq.rhs));
}

bool frame_has_property(const Model& m, FrameProperty p) {
  switch (p) {
    case FrameProperty::Reflexive:
      for (int s = 0; s < m.size(); ++s)
        if (!m.has_triple(s, s, s)) return false;
      return true;
    case FrameProperty::Commutative:
      for (const Triple& t : m.triples())
        if (!m.has_triple(t.b, t.a, t.c)) return false;
      return true;
  }
  throw std::logic_error("frame_has_property: unreachable");
}

}  // namespace idfnl
