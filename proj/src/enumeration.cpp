#include "idfnl/enumeration.hpp"

#include <array>
#include <algorithm>
#include <bit>
#include <stdexcept>

namespace idfnl {
namespace {

std::uint64_t full_mask(int n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

void set_bit(std::vector<std::uint64_t>& words, std::size_t bit) {
  words[bit / 64] |= 1ull << (bit % 64);
}

}  // namespace

Model to_model(const FlatModel& fm, const std::vector<std::string>& atoms) {
  const int n = fm.n;
  std::vector<std::string> states;
  states.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  std::vector<Triple> rel;
  for (std::size_t w = 0; w < fm.rel.size(); ++w) {
    std::uint64_t word = fm.rel[w];
    while (word) {
      const int b = std::countr_zero(word);
      word &= word - 1;
      const std::size_t bit = w * 64 + static_cast<std::size_t>(b);
      const int c = static_cast<int>(bit % static_cast<std::size_t>(n));
      const int ab = static_cast<int>(bit / static_cast<std::size_t>(n));
      rel.push_back({ab / n, ab % n, c});
    }
  }
  std::map<std::string, std::vector<int>> val;
  for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
    auto& members = val[atoms[ai]];
    for (int s = 0; s < n; ++s)
      if ((fm.val[ai] >> s) & 1u) members.push_back(s);
  }
  return Model(std::move(states), std::move(rel), std::move(val));
}

FlatModel to_flat(const Model& m, const std::vector<std::string>& atoms) {
  const int n = m.size();
  if (n > 64) throw std::invalid_argument("to_flat: more than 64 states");
  FlatModel fm;
  fm.n = n;
  const std::size_t rel_bits = static_cast<std::size_t>(n) * n * n;
  fm.rel.assign((rel_bits + 63) / 64, 0);
  for (const Triple& t : m.triples())
    set_bit(fm.rel, (static_cast<std::size_t>(t.a) * n + t.b) * n + t.c);
  fm.val.assign(atoms.size(), 0);
  for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
    const StateSet set = m.valuation(atoms[ai]);
    for (int s = 0; s < n; ++s)
      if (set.test(s)) fm.val[ai] |= 1ull << s;
  }
  return fm;
}

CompiledSequent::CompiledSequent(const Sequent& sq, const std::vector<std::string>& atoms) {
  lhs_root_ = compile(*sq.lhs, atoms);
  rhs_root_ = compile(*sq.rhs, atoms);
}

int CompiledSequent::compile(const Formula& f, const std::vector<std::string>& atoms) {
  Instr ins;
  switch (f.conn()) {
    case Conn::Atom: {
      ins.op = Op::Atom;
      auto it = std::find(atoms.begin(), atoms.end(), f.name());
      ins.atom = it == atoms.end() ? -1 : static_cast<int>(it - atoms.begin());
      break;
    }
    case Conn::Top: ins.op = Op::Top; break;
    case Conn::Bot: ins.op = Op::Bot; break;
    default: {
      switch (f.conn()) {
        case Conn::Meet: ins.op = Op::Meet; break;
        case Conn::Join: ins.op = Op::Join; break;
        case Conn::Fuse: ins.op = Op::Fuse; break;
        case Conn::LDiv: ins.op = Op::LDiv; break;
        case Conn::RDiv: ins.op = Op::RDiv; break;
        case Conn::IterLDiv: ins.op = Op::IterLDiv; break;
        default: ins.op = Op::IterRDiv; break;
      }
      ins.src0 = compile(*f.left(), atoms);
      ins.src1 = compile(*f.right(), atoms);
      break;
    }
  }
  code_.push_back(ins);
  return static_cast<int>(code_.size()) - 1;
}

void CompiledSequent::ensure_relation(const FlatModel& fm) {
  if (cached_n_ == fm.n && cached_rel_ == fm.rel) return;
  cached_n_ = fm.n;
  cached_rel_ = fm.rel;
  triples_.clear();
  const std::size_t n = static_cast<std::size_t>(fm.n);
  patterns_ = fm.n <= 8;
  if (patterns_) {
    mid_pattern_.assign(n, 0);
    first_pattern_.assign(n, 0);
    third_pattern_.assign(n, 0);
  }
  for (std::size_t w = 0; w < fm.rel.size(); ++w) {
    std::uint64_t word = fm.rel[w];
    while (word) {
      const int bit_in_word = std::countr_zero(word);
      word &= word - 1;
      const std::size_t bit = w * 64 + static_cast<std::size_t>(bit_in_word);
      const std::size_t c = bit % n;
      const std::size_t ab = bit / n;
      const std::size_t a = ab / n, b = ab % n;
      triples_.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                          static_cast<std::uint8_t>(c)});
      if (patterns_) {
        mid_pattern_[b] |= 1ull << (a * n + c);
        first_pattern_[a] |= 1ull << (b * n + c);
        third_pattern_[c] |= 1ull << (a * n + b);
      }
    }
  }
}

std::uint64_t CompiledSequent::falsifying_states(const FlatModel& fm) {
  const int n = fm.n;
  ensure_relation(fm);
  const std::uint64_t full = full_mask(n);
  regs_.resize(code_.size());

  auto for_rel = [&](auto&& fn) {
    for (const auto& t : triples_) fn(t[0], t[1], t[2]);
  };

  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& ins = code_[i];
    switch (ins.op) {
      case Op::Atom:
        regs_[i] = ins.atom >= 0 && ins.atom < static_cast<int>(fm.val.size()) ? fm.val[static_cast<std::size_t>(ins.atom)] : 0;
        break;
      case Op::Top: regs_[i] = full; break;
      case Op::Bot: regs_[i] = 0; break;
      case Op::Meet: regs_[i] = regs_[static_cast<std::size_t>(ins.src0)] & regs_[static_cast<std::size_t>(ins.src1)]; break;
      case Op::Join: regs_[i] = regs_[static_cast<std::size_t>(ins.src0)] | regs_[static_cast<std::size_t>(ins.src1)]; break;
      case Op::Fuse: {
        const std::uint64_t a = regs_[static_cast<std::size_t>(ins.src0)];
        const std::uint64_t b = regs_[static_cast<std::size_t>(ins.src1)];
        std::uint64_t out = 0;
        if (patterns_) {
          std::uint64_t good = 0, members = a;
          while (members) {
            const int x = std::countr_zero(members);
            members &= members - 1;
            good |= b << (x * n);
          }
          for (int z = 0; z < n; ++z)
            if (third_pattern_[static_cast<std::size_t>(z)] & good) out |= 1ull << z;
        } else {
          for_rel([&](int x, int y, int z) {
            if (((a >> x) & 1u) && ((b >> y) & 1u)) out |= 1ull << z;
          });
        }
        regs_[i] = out;
        break;
      }
      case Op::LDiv: {
        const std::uint64_t a = regs_[static_cast<std::size_t>(ins.src0)];
        const std::uint64_t b = regs_[static_cast<std::size_t>(ins.src1)];
        std::uint64_t out = full;
        if (patterns_) {
          const std::uint64_t outside = ~b & full;
          std::uint64_t bad = 0, members = a;
          while (members) {
            const int x = std::countr_zero(members);
            members &= members - 1;
            bad |= outside << (x * n);
          }
          for (int y = 0; y < n; ++y)
            if (mid_pattern_[static_cast<std::size_t>(y)] & bad) out &= ~(1ull << y);
        } else {
          for_rel([&](int x, int y, int z) {
            if (((a >> x) & 1u) && !((b >> z) & 1u)) out &= ~(1ull << y);
          });
        }
        regs_[i] = out;
        break;
      }
      case Op::RDiv: {
        const std::uint64_t b = regs_[static_cast<std::size_t>(ins.src0)];  // dividend
        const std::uint64_t a = regs_[static_cast<std::size_t>(ins.src1)];  // divisor
        std::uint64_t out = full;
        if (patterns_) {
          const std::uint64_t outside = ~b & full;
          std::uint64_t bad = 0, members = a;
          while (members) {
            const int y = std::countr_zero(members);
            members &= members - 1;
            bad |= outside << (y * n);
          }
          for (int x = 0; x < n; ++x)
            if (first_pattern_[static_cast<std::size_t>(x)] & bad) out &= ~(1ull << x);
        } else {
          for_rel([&](int x, int y, int z) {
            if (((a >> y) & 1u) && !((b >> z) & 1u)) out &= ~(1ull << x);
          });
        }
        regs_[i] = out;
        break;
      }
      case Op::IterLDiv:
      case Op::IterRDiv: {
        const bool left = ins.op == Op::IterLDiv;
        const std::uint64_t a = regs_[static_cast<std::size_t>(left ? ins.src0 : ins.src1)];
        const std::uint64_t b = regs_[static_cast<std::size_t>(left ? ins.src1 : ins.src0)];
        rows_.assign(static_cast<std::size_t>(n), 0);
        for_rel([&](int x, int y, int z) {
          if (left) {
            if ((a >> x) & 1u) rows_[static_cast<std::size_t>(y)] |= 1ull << z;
          } else {
            if ((a >> y) & 1u) rows_[static_cast<std::size_t>(x)] |= 1ull << z;
          }
        });
        bool changed = true;
        while (changed) {
          changed = false;
          for (int s = 0; s < n; ++s) {
            const std::uint64_t row = rows_[static_cast<std::size_t>(s)];
            std::uint64_t next = row;
            std::uint64_t members = row;
            while (members) {
              const int y = std::countr_zero(members);
              members &= members - 1;
              next |= rows_[static_cast<std::size_t>(y)];
            }
            if (next != row) {
              rows_[static_cast<std::size_t>(s)] = next;
              changed = true;
            }
          }
        }
        std::uint64_t out = 0;
        for (int s = 0; s < n; ++s)
          if ((rows_[static_cast<std::size_t>(s)] & ~b & full) == 0) out |= 1ull << s;
        regs_[i] = out;
        break;
      }
    }
    // the rhs program follows the lhs one; an empty lhs cannot be falsified
    if (static_cast<int>(i) == lhs_root_ && regs_[i] == 0) return 0;
  }
  return regs_[static_cast<std::size_t>(lhs_root_)] & ~regs_[static_cast<std::size_t>(rhs_root_)] & full;
}

CandidateSpace::CandidateSpace(int n, int atom_count, const std::set<FrameProperty>& props) {
  if (n < 1) throw std::invalid_argument("candidate space: at least one state");
  if (n > 64) throw std::invalid_argument("candidate space: at most 64 states");
  n_ = n;
  atoms_ = atom_count;
  v_bits_ = n * atom_count;
  if (v_bits_ > 62) throw std::invalid_argument("candidate space: valuation space too large");

  const std::size_t rel_bits = static_cast<std::size_t>(n) * n * n;
  forced_.assign((rel_bits + 63) / 64, 0);
  const bool reflexive = props.count(FrameProperty::Reflexive) > 0;
  const bool commutative = props.count(FrameProperty::Commutative) > 0;

  std::vector<char> used(rel_bits, 0);
  if (reflexive) {
    for (int s = 0; s < n; ++s) {
      const std::size_t bit = (static_cast<std::size_t>(s) * n + s) * n + s;
      set_bit(forced_, bit);
      used[bit] = 1;
    }
  }
  // Remaining positions become free orbits; under commutativity the bits
  // of (a,b,c) and (b,a,c) are tied together. Orbits are sorted by their
  // highest bit so that counting the orbit counter up counts the full
  // relation bit string up.
  std::vector<Orbit> orbits;
  for (std::size_t bit = 0; bit < rel_bits; ++bit) {
    if (used[bit]) continue;
    used[bit] = 1;
    Orbit o{static_cast<std::uint32_t>(bit), kNoBit};
    if (commutative) {
      const int c = static_cast<int>(bit % static_cast<std::size_t>(n));
      const int ab = static_cast<int>(bit / static_cast<std::size_t>(n));
      const int a = ab / n, b = ab % n;
      if (a != b) {
        const std::size_t swapped = (static_cast<std::size_t>(b) * n + a) * n + c;
        if (!used[swapped]) {
          used[swapped] = 1;
          o.b1 = static_cast<std::uint32_t>(swapped);
        }
      }
    }
    orbits.push_back(o);
  }
  std::sort(orbits.begin(), orbits.end(), [](const Orbit& x, const Orbit& y) {
    const std::uint32_t mx = x.b1 == kNoBit ? x.b0 : std::max(x.b0, x.b1);
    const std::uint32_t my = y.b1 == kNoBit ? y.b0 : std::max(y.b0, y.b1);
    return mx < my;
  });
  orbits_ = std::move(orbits);
}

std::optional<std::uint64_t> CandidateSpace::total() const {
  const int bits = r_bits() + v_bits_;
  if (bits > 62) return std::nullopt;
  return 1ull << bits;
}

CandidateSpace::RCounter CandidateSpace::r_begin() const {
  return RCounter(std::max<std::size_t>(1, (orbits_.size() + 63) / 64), 0);
}

bool CandidateSpace::r_advance(RCounter& rc, std::uint64_t steps) const {
  std::uint64_t carry = steps;
  for (std::size_t i = 0; i < rc.size() && carry; ++i) {
    const std::uint64_t before = rc[i];
    rc[i] = before + carry;
    carry = rc[i] < before ? 1 : 0;  // carry out of a word is at most 1
  }
  if (carry) return false;
  const int bits = r_bits();
  if (bits == 0) {
    for (std::uint64_t w : rc)
      if (w) return false;
    return true;
  }
  const std::size_t top_word = static_cast<std::size_t>(bits - 1) / 64;
  for (std::size_t i = top_word + 1; i < rc.size(); ++i)
    if (rc[i]) return false;
  const int used_in_top = bits - static_cast<int>(top_word) * 64;
  if (used_in_top < 64 && (rc[top_word] >> used_in_top)) return false;
  return true;
}

int CandidateSpace::compare(const RCounter& a, const RCounter& b) {
  for (std::size_t i = std::max(a.size(), b.size()); i-- > 0;) {
    const std::uint64_t wa = i < a.size() ? a[i] : 0;
    const std::uint64_t wb = i < b.size() ? b[i] : 0;
    if (wa != wb) return wa < wb ? -1 : 1;
  }
  return 0;
}

void CandidateSpace::decode_rel(const RCounter& rc, FlatModel& fm) const {
  fm.n = n_;
  fm.rel.assign(forced_.begin(), forced_.end());
  for (std::size_t w = 0; w < rc.size(); ++w) {
    std::uint64_t word = rc[w];
    while (word) {
      const int b = std::countr_zero(word);
      word &= word - 1;
      const Orbit& o = orbits_[w * 64 + static_cast<std::size_t>(b)];
      set_bit(fm.rel, o.b0);
      if (o.b1 != kNoBit) set_bit(fm.rel, o.b1);
    }
  }
}

void CandidateSpace::decode_val(std::uint64_t vc, FlatModel& fm) const {
  fm.val.resize(static_cast<std::size_t>(atoms_));
  const std::uint64_t mask = full_mask(n_);
  for (int ai = 0; ai < atoms_; ++ai)
    fm.val[static_cast<std::size_t>(ai)] = (vc >> (ai * n_)) & mask;
}

ModelEnumerator::ModelEnumerator(int n, std::vector<std::string> atoms,
                                 std::set<FrameProperty> props)
    : space_(n, static_cast<int>(atoms.size()), props),
      atoms_(std::move(atoms)),
      rc_(space_.r_begin()) {}

std::optional<Model> ModelEnumerator::next() {
  if (done_) return std::nullopt;
  if (rel_dirty_) {
    space_.decode_rel(rc_, fm_);
    rel_dirty_ = false;
  }
  space_.decode_val(vc_, fm_);
  Model out = to_model(fm_, atoms_);
  ++vc_;
  if (vc_ == space_.v_total()) {
    vc_ = 0;
    rel_dirty_ = true;
    if (!space_.r_advance(rc_)) done_ = true;
  }
  return out;
}

}  // namespace idfnl
