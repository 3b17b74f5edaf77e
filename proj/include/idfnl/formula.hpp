#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace idfnl {

// Connectives of the workbench language: atoms, lattice bounds and
// operations, fusion, the two divisions and their iterative variants.
enum class Conn : std::uint8_t {
  Atom,
  Top,
  Bot,
  Meet,      // &
  Join,      // |
  Fuse,      // *
  LDiv,      // \   (left argument divides)
  RDiv,      // /
  IterLDiv,  // \\  (division along all finite nonempty left paths)
  IterRDiv,  // //
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Structural equality is the only equality; the
// calculus is bracket-sensitive, so no normalization happens anywhere.
class Formula {
 public:
  Conn conn() const { return conn_; }
  bool is_atom() const { return conn_ == Conn::Atom; }
  bool is_leaf() const {
    return conn_ == Conn::Atom || conn_ == Conn::Top || conn_ == Conn::Bot;
  }
  // Atom name; valid only for atoms.
  const std::string& name() const { return name_; }
  // Children; valid only for binary connectives.
  const FormulaPtr& left() const { return left_; }
  const FormulaPtr& right() const { return right_; }

  static FormulaPtr atom(std::string name);
  static const FormulaPtr& top();
  static const FormulaPtr& bot();
  static FormulaPtr make(Conn c, FormulaPtr l, FormulaPtr r);
  static FormulaPtr meet(FormulaPtr l, FormulaPtr r);
  static FormulaPtr join(FormulaPtr l, FormulaPtr r);
  static FormulaPtr fuse(FormulaPtr l, FormulaPtr r);
  static FormulaPtr ldiv(FormulaPtr l, FormulaPtr r);
  static FormulaPtr rdiv(FormulaPtr l, FormulaPtr r);
  static FormulaPtr iter_ldiv(FormulaPtr l, FormulaPtr r);
  static FormulaPtr iter_rdiv(FormulaPtr l, FormulaPtr r);

 private:
  Formula(Conn c, std::string name, FormulaPtr l, FormulaPtr r)
      : conn_(c), name_(std::move(name)), left_(std::move(l)), right_(std::move(r)) {}

  Conn conn_;
  std::string name_;
  FormulaPtr left_;
  FormulaPtr right_;
};

// Total structural order (connective, then atom name, then children).
int compare(const Formula& a, const Formula& b);
bool operator==(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return compare(*a, *b) < 0;
  }
};

// Finite formula set under structural equality.
using FormulaSet = std::set<FormulaPtr, FormulaLess>;

struct Sequent {
  FormulaPtr lhs;
  FormulaPtr rhs;
};
bool operator==(const Sequent& a, const Sequent& b);

// Concrete-syntax printer; minimal parenthesization, reparses to an equal
// tree. The five product/division operators are non-associative and share
// one level, so any of them appearing as a child of another is bracketed.
std::string render_formula(const Formula& f);
inline std::string render_formula(const FormulaPtr& f) { return render_formula(*f); }
std::string render_sequent(const Sequent& sq);

// All subtrees of f, including f itself.
FormulaSet subformulas(const FormulaPtr& f);

// Smallest superset of fs that contains top and bot, is closed under
// subformulas, and contains a\b for every a\\b and b/a for every b//a.
FormulaSet closure(const FormulaSet& fs);

// n-fold divisions: a\^1 b = a\b, a\^{n+1} b = a\(a\^n b);
// b/^1 a = b/a, b/^{n+1} a = (b/^n a)/a. Requires n >= 1.
FormulaPtr expand_left_division(const FormulaPtr& a, const FormulaPtr& b, int n);
FormulaPtr expand_right_division(const FormulaPtr& b, const FormulaPtr& a, int n);

void collect_atoms(const Formula& f, std::set<std::string>& out);
std::size_t node_count(const Formula& f);

}  // namespace idfnl
