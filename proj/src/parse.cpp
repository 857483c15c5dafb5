#include "clarith/parse.hpp"

#include <cctype>
#include <optional>

namespace clarith {

ParseError::ParseError(std::string msg, int line_, int column_,
                       std::vector<std::string> expected_)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) +
                         ": " + msg),
      line(line_),
      column(column_),
      expected(std::move(expected_)) {}

namespace {

struct Token {
  enum class Kind {
    Zero, Ident, Prime, Plus, Star, Bit0, Bit1, Bar, LParen, RParen,
    Eq, Leq, Not, And, Or, Imp, Dot, KwAll, KwEx, KwChand, KwChor,
    KwChall, KwChex, KwExp, End
  };
  Kind kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string text, int l, int c) {
    out.push_back({k, std::move(text), l, c});
  };
  while (i < s.size()) {
    char c = s[i];
    int tl = line, tc = col;
    auto adv = [&](size_t n) {
      for (size_t j = 0; j < n; ++j) {
        if (s[i + j] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == ';') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    if (c == '0') { push(Token::Kind::Zero, "0", tl, tc); adv(1); continue; }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string w = s.substr(i, j - i);
      Token::Kind k = Token::Kind::Ident;
      if (w == "all") k = Token::Kind::KwAll;
      else if (w == "ex") k = Token::Kind::KwEx;
      else if (w == "chand") k = Token::Kind::KwChand;
      else if (w == "chor") k = Token::Kind::KwChor;
      else if (w == "chall") k = Token::Kind::KwChall;
      else if (w == "chex") k = Token::Kind::KwChex;
      else if (w == "exp") k = Token::Kind::KwExp;
      push(k, w, tl, tc);
      adv(j - i);
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "#0") { push(Token::Kind::Bit0, two, tl, tc); adv(2); continue; }
    if (two == "#1") { push(Token::Kind::Bit1, two, tl, tc); adv(2); continue; }
    if (two == "<=") { push(Token::Kind::Leq, two, tl, tc); adv(2); continue; }
    if (two == "/\\") { push(Token::Kind::And, two, tl, tc); adv(2); continue; }
    if (two == "\\/") { push(Token::Kind::Or, two, tl, tc); adv(2); continue; }
    if (two == "->") { push(Token::Kind::Imp, two, tl, tc); adv(2); continue; }
    switch (c) {
      case '\'': push(Token::Kind::Prime, "'", tl, tc); adv(1); continue;
      case '+': push(Token::Kind::Plus, "+", tl, tc); adv(1); continue;
      case '*': push(Token::Kind::Star, "*", tl, tc); adv(1); continue;
      case '|': push(Token::Kind::Bar, "|", tl, tc); adv(1); continue;
      case '(': push(Token::Kind::LParen, "(", tl, tc); adv(1); continue;
      case ')': push(Token::Kind::RParen, ")", tl, tc); adv(1); continue;
      case '=': push(Token::Kind::Eq, "=", tl, tc); adv(1); continue;
      case '~': push(Token::Kind::Not, "~", tl, tc); adv(1); continue;
      case '.': push(Token::Kind::Dot, ".", tl, tc); adv(1); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  FormulaPtr formula() {
    FormulaPtr f = fmla(0);
    expect(Token::Kind::End, "end of input");
    return f;
  }

  TermPtr term() {
    TermPtr t = term_expr(0);
    expect(Token::Kind::End, "end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::string> bound_;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected = {}) {
    const Token& t = peek();
    throw ParseError("expected " + what + (t.text.empty() ? "" : ", found '" + t.text + "'"),
                     t.line, t.col, std::move(expected));
  }

  void expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail(what, {what});
    take();
  }

  // fmla precedence: -> 1 (right), chor 2, \/ 3, chand 4, /\ 5.
  FormulaPtr fmla(int min_prec) {
    FormulaPtr lhs = funary();
    for (;;) {
      Token::Kind k = peek().kind;
      int p;
      bool right = false;
      Formula::Kind op;
      if (k == Token::Kind::Imp) { p = 1; right = true; op = Formula::Kind::Imp; }
      else if (k == Token::Kind::KwChor) { p = 2; op = Formula::Kind::ChOr; }
      else if (k == Token::Kind::Or) { p = 3; op = Formula::Kind::Or; }
      else if (k == Token::Kind::KwChand) { p = 4; op = Formula::Kind::ChAnd; }
      else if (k == Token::Kind::And) { p = 5; op = Formula::Kind::And; }
      else break;
      if (p < min_prec) break;
      take();
      FormulaPtr rhs = fmla(right ? p : p + 1);
      switch (op) {
        case Formula::Kind::Imp: lhs = Formula::imp(lhs, rhs); break;
        case Formula::Kind::ChOr: lhs = Formula::chor(lhs, rhs); break;
        case Formula::Kind::Or: lhs = Formula::lor(lhs, rhs); break;
        case Formula::Kind::ChAnd: lhs = Formula::chand(lhs, rhs); break;
        default: lhs = Formula::land(lhs, rhs); break;
      }
    }
    return lhs;
  }

  FormulaPtr funary() {
    switch (peek().kind) {
      case Token::Kind::Not:
        take();
        return Formula::lnot(funary());
      case Token::Kind::KwAll: return quantifier(Formula::Kind::ForAll);
      case Token::Kind::KwEx: return quantifier(Formula::Kind::Exists);
      case Token::Kind::KwChall: return quantifier(Formula::Kind::ChAll);
      case Token::Kind::KwChex: return quantifier(Formula::Kind::ChEx);
      default: return primary();
    }
  }

  FormulaPtr quantifier(Formula::Kind k) {
    take();
    if (peek().kind != Token::Kind::Ident) fail("variable name", {"ident"});
    Token v = take();
    for (auto& b : bound_)
      if (b == v.text)
        throw ParseError("variable '" + v.text + "' is already bound on this branch",
                         v.line, v.col);
    expect(Token::Kind::Dot, "'.'");
    bound_.push_back(v.text);
    FormulaPtr body = fmla(0);  // quantifiers extend maximally right
    bound_.pop_back();
    switch (k) {
      case Formula::Kind::ForAll: return Formula::forall(v.text, body);
      case Formula::Kind::Exists: return Formula::exists(v.text, body);
      case Formula::Kind::ChAll: return Formula::chall(v.text, body);
      default: return Formula::chex(v.text, body);
    }
  }

  FormulaPtr primary() {
    if (peek().kind == Token::Kind::LParen) {
      // Could open a formula or a term; try the formula reading first.
      size_t save = pos_;
      size_t bsave = bound_.size();
      try {
        take();
        FormulaPtr f = fmla(0);
        expect(Token::Kind::RParen, "')'");
        return f;
      } catch (const ParseError&) {
        pos_ = save;
        bound_.resize(bsave);
      }
    }
    return atom();
  }

  FormulaPtr atom() {
    TermPtr l = term_expr(0);
    if (peek().kind == Token::Kind::Eq) {
      take();
      return Formula::eq(l, term_expr(0));
    }
    if (peek().kind == Token::Kind::Leq) {
      take();
      return Formula::leq(l, term_expr(0));
    }
    fail("'=' or '<='", {"=", "<="});
  }

  // term precedence: + 1, * 2, postfix ' #0 #1 3.
  TermPtr term_expr(int min_prec) {
    TermPtr lhs = term_postfix();
    for (;;) {
      Token::Kind k = peek().kind;
      int p;
      if (k == Token::Kind::Plus) p = 1;
      else if (k == Token::Kind::Star) p = 2;
      else break;
      if (p < min_prec) break;
      take();
      TermPtr rhs = term_expr(p + 1);
      lhs = (p == 1) ? Term::plus(lhs, rhs) : Term::times(lhs, rhs);
    }
    return lhs;
  }

  TermPtr term_postfix() {
    TermPtr t = term_primary();
    for (;;) {
      switch (peek().kind) {
        case Token::Kind::Prime: take(); t = Term::succ(t); break;
        case Token::Kind::Bit0: take(); t = Term::append_bit(t, 0); break;
        case Token::Kind::Bit1: take(); t = Term::append_bit(t, 1); break;
        default: return t;
      }
    }
  }

  TermPtr term_primary() {
    switch (peek().kind) {
      case Token::Kind::Zero: take(); return Term::zero();
      case Token::Kind::Ident: return Term::var(take().text);
      case Token::Kind::Bar: {
        take();
        TermPtr t = term_expr(0);
        expect(Token::Kind::Bar, "'|'");
        return Term::len(t);
      }
      case Token::Kind::KwExp: {
        take();
        expect(Token::Kind::LParen, "'('");
        TermPtr t = term_expr(0);
        expect(Token::Kind::RParen, "')'");
        return Term::exp(t);
      }
      case Token::Kind::LParen: {
        take();
        TermPtr t = term_expr(0);
        expect(Token::Kind::RParen, "')'");
        return t;
      }
      default:
        fail("a term", {"0", "ident", "|", "exp", "("});
    }
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  return Parser(text).formula();
}

TermPtr parse_term(const std::string& text) {
  return Parser(text).term();
}

}  // namespace clarith
