#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace clarith {

// Minimal s-expressions: atoms and lists. Strings are quoted with \" escapes.
struct SExpr {
  enum class Kind { Atom, String, List };
  Kind kind;
  std::string text;
  std::vector<SExpr> items;

  bool is_atom(const std::string& s) const { return kind == Kind::Atom && text == s; }
  const SExpr& at(size_t i) const;
  // First child list whose head atom equals `head`, if any.
  const SExpr* find(const std::string& head) const;
  std::string to_string() const;
};

struct SExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SExpr parse_sexpr(const std::string& text);
std::vector<SExpr> parse_sexpr_list(const std::string& text);

}  // namespace clarith
