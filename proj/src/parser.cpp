#include "idfnl/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace idfnl {
namespace {

enum class Tok {
  Ident,
  Top,
  Bot,
  Amp,
  Bar,
  Star,
  Backslash,
  DblBackslash,
  Slash,
  DblSlash,
  LParen,
  RParen,
  Turnstile,  // |-
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "atom";
    case Tok::Top: return "'top'";
    case Tok::Bot: return "'bot'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Star: return "'*'";
    case Tok::Backslash: return "'\\'";
    case Tok::DblBackslash: return "'\\\\'";
    case Tok::Slash: return "'/'";
    case Tok::DblSlash: return "'//'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Turnstile: return "'|-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool is_ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

// Single-pass tokenizer; `\\`, `//` and `|-` are taken greedily before
// their one-character prefixes.
std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const int start_col = col;
    auto two = [&](char second) { return i + 1 < text.size() && text[i + 1] == second; };
    switch (c) {
      case '&': push(Tok::Amp, "&", start_col); ++i; ++col; continue;
      case '*': push(Tok::Star, "*", start_col); ++i; ++col; continue;
      case '(': push(Tok::LParen, "(", start_col); ++i; ++col; continue;
      case ')': push(Tok::RParen, ")", start_col); ++i; ++col; continue;
      case '|':
        if (two('-')) {
          push(Tok::Turnstile, "|-", start_col);
          i += 2;
          col += 2;
        } else {
          push(Tok::Bar, "|", start_col);
          ++i;
          ++col;
        }
        continue;
      case '\\':
        if (two('\\')) {
          push(Tok::DblBackslash, "\\\\", start_col);
          i += 2;
          col += 2;
        } else {
          push(Tok::Backslash, "\\", start_col);
          ++i;
          ++col;
        }
        continue;
      case '/':
        if (two('/')) {
          push(Tok::DblSlash, "//", start_col);
          i += 2;
          col += 2;
        } else {
          push(Tok::Slash, "/", start_col);
          ++i;
          ++col;
        }
        continue;
      default: break;
    }
    if (is_ident_start(c)) {
      std::string ident(1, c);
      ++i;
      ++col;
      while (i < text.size() && is_ident_char(text[i])) {
        ident += text[i];
        ++i;
        ++col;
      }
      if (ident == "top")
        push(Tok::Top, ident, start_col);
      else if (ident == "bot")
        push(Tok::Bot, ident, start_col);
      else
        push(Tok::Ident, ident, start_col);
      continue;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", line, start_col);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::optional<Conn> binop_conn(Tok t) {
  switch (t) {
    case Tok::Star: return Conn::Fuse;
    case Tok::Backslash: return Conn::LDiv;
    case Tok::Slash: return Conn::RDiv;
    case Tok::DblBackslash: return Conn::IterLDiv;
    case Tok::DblSlash: return Conn::IterRDiv;
    default: return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr formula() { return join(); }

  const Token& peek() const { return toks_[pos_]; }

  Token expect(Tok k) {
    if (peek().kind != k)
      fail(std::string("expected ") + describe(k) + ", found " + describe(peek().kind));
    return toks_[pos_++];
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, peek().line, peek().col);
  }

 private:
  FormulaPtr join() {
    FormulaPtr f = meet();
    while (peek().kind == Tok::Bar) {
      ++pos_;
      f = Formula::join(std::move(f), meet());
    }
    return f;
  }

  FormulaPtr meet() {
    FormulaPtr f = binop();
    while (peek().kind == Tok::Amp) {
      ++pos_;
      f = Formula::meet(std::move(f), binop());
    }
    return f;
  }

  FormulaPtr binop() {
    FormulaPtr f = unit();
    auto conn = binop_conn(peek().kind);
    if (!conn) return f;
    ++pos_;
    f = Formula::make(*conn, std::move(f), unit());
    if (binop_conn(peek().kind))
      fail(std::string("chained ") + describe(peek().kind) +
           ": the non-associative operators require parentheses");
    return f;
  }

  FormulaPtr unit() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: ++pos_; return Formula::atom(t.text);
      case Tok::Top: ++pos_; return Formula::top();
      case Tok::Bot: ++pos_; return Formula::bot();
      case Tok::LParen: {
        ++pos_;
        FormulaPtr f = join();
        expect(Tok::RParen);
        return f;
      }
      default:
        fail(std::string("expected a formula, found ") + describe(t.kind));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p(lex(text));
  FormulaPtr f = p.formula();
  if (p.peek().kind != Tok::End)
    p.fail(std::string("unexpected ") + describe(p.peek().kind) + " after formula");
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(lex(text));
  FormulaPtr lhs = p.formula();
  p.expect(Tok::Turnstile);
  FormulaPtr rhs = p.formula();
  if (p.peek().kind != Tok::End) {
    if (p.peek().kind == Tok::Turnstile)
      p.fail("a sequent has exactly one '|-'");
    p.fail(std::string("unexpected ") + describe(p.peek().kind) + " after sequent");
  }
  return Sequent{std::move(lhs), std::move(rhs)};
}

}  // namespace idfnl
