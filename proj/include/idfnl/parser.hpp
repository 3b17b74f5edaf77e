#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "idfnl/formula.hpp"

namespace idfnl {

// Parse failure carrying the 1-based line/column of the offending token.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Grammar (whitespace insignificant, `#` comments to end of line):
//   formula := join ;
//   join    := meet { "|" meet } ;
//   meet    := binop { "&" binop } ;
//   binop   := unit [ ("*" | "\\" | "//" | "\" | "/") unit ] ;
//   unit    := atom | "top" | "bot" | "(" formula ")" ;
// Atoms are [a-z][a-z0-9_]*. The five binop operators share one precedence
// level and are non-associative: chains need explicit parentheses.
FormulaPtr parse_formula(std::string_view text);

// `<formula> |- <formula>`, exactly one separator.
Sequent parse_sequent(std::string_view text);

}  // namespace idfnl
