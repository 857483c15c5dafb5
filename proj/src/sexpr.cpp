#include "clarith/sexpr.hpp"

#include <cctype>

namespace clarith {

const SExpr& SExpr::at(size_t i) const {
  if (kind != Kind::List || i >= items.size())
    throw SExprError("missing item " + std::to_string(i) + " in " + to_string());
  return items[i];
}

const SExpr* SExpr::find(const std::string& head) const {
  if (kind != Kind::List) return nullptr;
  for (auto& it : items)
    if (it.kind == Kind::List && !it.items.empty() && it.items[0].is_atom(head))
      return &it;
  return nullptr;
}

std::string SExpr::to_string() const {
  switch (kind) {
    case Kind::Atom: return text;
    case Kind::String: {
      std::string out = "\"";
      for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
    default: {
      std::string out = "(";
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ' ';
        out += items[i].to_string();
      }
      return out + ")";
    }
  }
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip() {
    for (;;) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
        continue;
      }
      break;
    }
  }

  SExpr parse() {
    skip();
    if (i >= s.size()) throw SExprError("unexpected end of input");
    char c = s[i];
    if (c == '(') {
      ++i;
      SExpr e{SExpr::Kind::List, "", {}};
      for (;;) {
        skip();
        if (i >= s.size()) throw SExprError("unterminated list");
        if (s[i] == ')') {
          ++i;
          return e;
        }
        e.items.push_back(parse());
      }
    }
    if (c == ')') throw SExprError("unexpected ')'");
    if (c == '"') {
      ++i;
      SExpr e{SExpr::Kind::String, "", {}};
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size() &&
            (s[i + 1] == '"' || s[i + 1] == '\\'))
          ++i;
        e.text += s[i++];
      }
      if (i >= s.size()) throw SExprError("unterminated string");
      ++i;
      return e;
    }
    SExpr e{SExpr::Kind::Atom, "", {}};
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
           s[i] != '(' && s[i] != ')' && s[i] != '"' && s[i] != ';')
      e.text += s[i++];
    return e;
  }
};

}  // namespace

SExpr parse_sexpr(const std::string& text) {
  Cursor c{text};
  SExpr e = c.parse();
  c.skip();
  if (c.i != text.size()) throw SExprError("trailing input after s-expression");
  return e;
}

std::vector<SExpr> parse_sexpr_list(const std::string& text) {
  Cursor c{text};
  std::vector<SExpr> out;
  for (;;) {
    c.skip();
    if (c.i >= text.size()) break;
    out.push_back(c.parse());
  }
  return out;
}

}  // namespace clarith
