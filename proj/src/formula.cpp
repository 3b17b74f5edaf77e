#include "idfnl/formula.hpp"

#include <stdexcept>
#include <vector>

namespace idfnl {

FormulaPtr Formula::atom(std::string name) {
  return FormulaPtr(new Formula(Conn::Atom, std::move(name), nullptr, nullptr));
}

const FormulaPtr& Formula::top() {
  static const FormulaPtr t(new Formula(Conn::Top, "", nullptr, nullptr));
  return t;
}

const FormulaPtr& Formula::bot() {
  static const FormulaPtr b(new Formula(Conn::Bot, "", nullptr, nullptr));
  return b;
}

FormulaPtr Formula::make(Conn c, FormulaPtr l, FormulaPtr r) {
  if (c == Conn::Atom || c == Conn::Top || c == Conn::Bot)
    throw std::invalid_argument("Formula::make: not a binary connective");
  if (!l || !r) throw std::invalid_argument("Formula::make: null child");
  return FormulaPtr(new Formula(c, "", std::move(l), std::move(r)));
}

FormulaPtr Formula::meet(FormulaPtr l, FormulaPtr r) { return make(Conn::Meet, std::move(l), std::move(r)); }
FormulaPtr Formula::join(FormulaPtr l, FormulaPtr r) { return make(Conn::Join, std::move(l), std::move(r)); }
FormulaPtr Formula::fuse(FormulaPtr l, FormulaPtr r) { return make(Conn::Fuse, std::move(l), std::move(r)); }
FormulaPtr Formula::ldiv(FormulaPtr l, FormulaPtr r) { return make(Conn::LDiv, std::move(l), std::move(r)); }
FormulaPtr Formula::rdiv(FormulaPtr l, FormulaPtr r) { return make(Conn::RDiv, std::move(l), std::move(r)); }
FormulaPtr Formula::iter_ldiv(FormulaPtr l, FormulaPtr r) { return make(Conn::IterLDiv, std::move(l), std::move(r)); }
FormulaPtr Formula::iter_rdiv(FormulaPtr l, FormulaPtr r) { return make(Conn::IterRDiv, std::move(l), std::move(r)); }

int compare(const Formula& a, const Formula& b) {
  if (&a == &b) return 0;
  if (a.conn() != b.conn())
    return static_cast<int>(a.conn()) < static_cast<int>(b.conn()) ? -1 : 1;
  switch (a.conn()) {
    case Conn::Atom:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Conn::Top:
    case Conn::Bot:
      return 0;
    default: {
      int c = compare(*a.left(), *b.left());
      if (c != 0) return c;
      return compare(*a.right(), *b.right());
    }
  }
}

bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

bool operator==(const Sequent& a, const Sequent& b) {
  return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
}

namespace {

// Grammar levels, loosest to tightest: join(0) < meet(1) < binop(2) < unit(3).
int level(Conn c) {
  switch (c) {
    case Conn::Join: return 0;
    case Conn::Meet: return 1;
    case Conn::Fuse:
    case Conn::LDiv:
    case Conn::RDiv:
    case Conn::IterLDiv:
    case Conn::IterRDiv: return 2;
    default: return 3;
  }
}

const char* op_text(Conn c) {
  switch (c) {
    case Conn::Meet: return "&";
    case Conn::Join: return "|";
    case Conn::Fuse: return "*";
    case Conn::LDiv: return "\\";
    case Conn::RDiv: return "/";
    case Conn::IterLDiv: return "\\\\";
    case Conn::IterRDiv: return "//";
    default: return "";
  }
}

// min_level: the loosest construct admissible at this position without
// parentheses. & and | parse left-associatively, so their right child
// needs one level more; binop children must be units.
void render(const Formula& f, int min_level, std::string& out) {
  const int lv = level(f.conn());
  const bool parens = lv < min_level;
  if (parens) out += '(';
  switch (f.conn()) {
    case Conn::Atom: out += f.name(); break;
    case Conn::Top: out += "top"; break;
    case Conn::Bot: out += "bot"; break;
    case Conn::Join:
    case Conn::Meet:
      render(*f.left(), lv, out);
      out += ' ';
      out += op_text(f.conn());
      out += ' ';
      render(*f.right(), lv + 1, out);
      break;
    default:  // the five non-associative operators
      render(*f.left(), 3, out);
      out += ' ';
      out += op_text(f.conn());
      out += ' ';
      render(*f.right(), 3, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::string render_sequent(const Sequent& sq) {
  return render_formula(*sq.lhs) + " |- " + render_formula(*sq.rhs);
}

FormulaSet subformulas(const FormulaPtr& f) {
  FormulaSet out;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    FormulaPtr cur = stack.back();
    stack.pop_back();
    if (!out.insert(cur).second) continue;
    if (!cur->is_leaf()) {
      stack.push_back(cur->left());
      stack.push_back(cur->right());
    }
  }
  return out;
}

FormulaSet closure(const FormulaSet& fs) {
  FormulaSet out;
  std::vector<FormulaPtr> work(fs.begin(), fs.end());
  work.push_back(Formula::top());
  work.push_back(Formula::bot());
  while (!work.empty()) {
    FormulaPtr cur = work.back();
    work.pop_back();
    if (!out.insert(cur).second) continue;
    if (!cur->is_leaf()) {
      work.push_back(cur->left());
      work.push_back(cur->right());
    }
    if (cur->conn() == Conn::IterLDiv)
      work.push_back(Formula::ldiv(cur->left(), cur->right()));
    else if (cur->conn() == Conn::IterRDiv)
      work.push_back(Formula::rdiv(cur->left(), cur->right()));
  }
  return out;
}

FormulaPtr expand_left_division(const FormulaPtr& a, const FormulaPtr& b, int n) {
  if (n < 1) throw std::invalid_argument("expand_left_division: n must be >= 1");
  FormulaPtr out = Formula::ldiv(a, b);
  for (int i = 1; i < n; ++i) out = Formula::ldiv(a, out);
  return out;
}

FormulaPtr expand_right_division(const FormulaPtr& b, const FormulaPtr& a, int n) {
  if (n < 1) throw std::invalid_argument("expand_right_division: n must be >= 1");
  FormulaPtr out = Formula::rdiv(b, a);
  for (int i = 1; i < n; ++i) out = Formula::rdiv(out, a);
  return out;
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    out.insert(f.name());
  } else if (!f.is_leaf()) {
    collect_atoms(*f.left(), out);
    collect_atoms(*f.right(), out);
  }
}

std::size_t node_count(const Formula& f) {
  if (f.is_leaf()) return 1;
  return 1 + node_count(*f.left()) + node_count(*f.right());
}

}  // namespace idfnl
