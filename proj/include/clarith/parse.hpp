#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clarith/formula.hpp"

namespace clarith {

struct ParseError : std::runtime_error {
  int line;
  int column;
  std::vector<std::string> expected;

  ParseError(std::string msg, int line_, int column_,
             std::vector<std::string> expected_ = {});
};

// Formula grammar (ASCII):
//   term := "0" | ident | term "'" | term "+" term | term "*" term
//         | term "#0" | term "#1" | "|" term "|" | "exp" "(" term ")"
//   atom := term "=" term | term "<=" term
//   fmla := atom | "~" fmla | fmla "/\" fmla | fmla "\/" fmla | fmla "->" fmla
//         | "all" ident "." fmla | "ex" ident "." fmla
//         | fmla "chand" fmla | fmla "chor" fmla
//         | "chall" ident "." fmla | "chex" ident "." fmla
// Precedence: ' #0 #1 > * > + ; ~ > /\ > chand > \/ > chor > -> (right
// assoc); quantifiers extend maximally to the right. Parentheses group both
// terms and formulas. Rebinding a variable along one branch is rejected.
FormulaPtr parse_formula(const std::string& text);

TermPtr parse_term(const std::string& text);

}  // namespace clarith
