#include "clarith/term.hpp"

#include <vector>

namespace clarith {

namespace {
TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }
}  // namespace

TermPtr Term::zero() { return mk({Kind::Zero, "", nullptr, nullptr, 0}); }
TermPtr Term::var(std::string n) { return mk({Kind::Var, std::move(n), nullptr, nullptr, 0}); }
TermPtr Term::succ(TermPtr t) { return mk({Kind::Succ, "", std::move(t), nullptr, 0}); }
TermPtr Term::plus(TermPtr l, TermPtr r) { return mk({Kind::Plus, "", std::move(l), std::move(r), 0}); }
TermPtr Term::times(TermPtr l, TermPtr r) { return mk({Kind::Times, "", std::move(l), std::move(r), 0}); }
TermPtr Term::append_bit(TermPtr t, int bit) { return mk({Kind::AppendBit, "", std::move(t), nullptr, bit}); }
TermPtr Term::len(TermPtr t) { return mk({Kind::Len, "", std::move(t), nullptr, 0}); }
TermPtr Term::exp(TermPtr t) { return mk({Kind::Exp, "", std::move(t), nullptr, 0}); }

bool term_equal(const TermPtr& s, const TermPtr& t) {
  if (s == t) return true;
  if (!s || !t) return false;
  if (s->kind != t->kind || s->name != t->name || s->bit != t->bit) return false;
  return term_equal(s->a, t->a) && term_equal(s->b, t->b);
}

TermPtr term_of_value(const Nat& v) {
  if (v == 0) return Term::zero();
  std::vector<int> bits;
  for (Nat n = v; n > 0; n >>= 1) bits.push_back(static_cast<int>(n & 1));
  TermPtr t = Term::zero();
  // Most significant bit first; the leading AppendBit(0,1) spells "0#1".
  for (auto it = bits.rbegin(); it != bits.rend(); ++it)
    t = Term::append_bit(t, *it);
  return t;
}

void collect_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) out.insert(t->name);
  collect_vars(t->a, out);
  collect_vars(t->b, out);
}

TermPtr term_substitute(const TermPtr& t, const std::string& x, const TermPtr& to) {
  if (!t) return t;
  if (t->kind == Term::Kind::Var) return t->name == x ? to : t;
  if (!t->a) return t;
  Term copy = *t;
  copy.a = term_substitute(t->a, x, to);
  copy.b = term_substitute(t->b, x, to);
  return std::make_shared<const Term>(std::move(copy));
}

Nat term_value(const TermPtr& t, const std::map<std::string, Nat>& env,
               const EvalLimits& lim) {
  switch (t->kind) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end())
        throw std::out_of_range("unbound variable: " + t->name);
      return it->second;
    }
    case Term::Kind::Succ: return term_value(t->a, env, lim) + 1;
    case Term::Kind::Plus: return term_value(t->a, env, lim) + term_value(t->b, env, lim);
    case Term::Kind::Times: return term_value(t->a, env, lim) * term_value(t->b, env, lim);
    case Term::Kind::AppendBit: return term_value(t->a, env, lim) * 2 + t->bit;
    case Term::Kind::Len: return nat_size(term_value(t->a, env, lim));
    case Term::Kind::Exp: {
      Nat e = term_value(t->a, env, lim);
      if (e > lim.exp_bits)
        throw ResourceCapError("exp(" + e.str() + ") exceeds the resource ceiling");
      return Nat(1) << static_cast<unsigned long>(e);
    }
  }
  throw std::logic_error("unreachable term kind");
}

namespace {

// Precedence: atoms > ' #0 #1 > * > +.
int prec(Term::Kind k) {
  switch (k) {
    case Term::Kind::Plus: return 1;
    case Term::Kind::Times: return 2;
    case Term::Kind::Succ:
    case Term::Kind::AppendBit: return 3;
    default: return 4;
  }
}

void print(const TermPtr& t, int parent, std::string& out) {
  int p = prec(t->kind);
  bool paren = p < parent;
  if (paren) out += '(';
  switch (t->kind) {
    case Term::Kind::Zero: out += '0'; break;
    case Term::Kind::Var: out += t->name; break;
    case Term::Kind::Succ:
      print(t->a, p, out);
      out += '\'';
      break;
    case Term::Kind::Plus:
      print(t->a, p, out);
      out += " + ";
      print(t->b, p + 1, out);
      break;
    case Term::Kind::Times:
      print(t->a, p, out);
      out += " * ";
      print(t->b, p + 1, out);
      break;
    case Term::Kind::AppendBit:
      print(t->a, p, out);
      out += t->bit ? "#1" : "#0";
      break;
    case Term::Kind::Len:
      out += '|';
      print(t->a, 0, out);
      out += '|';
      break;
    case Term::Kind::Exp:
      out += "exp(";
      print(t->a, 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string term_to_string(const TermPtr& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

}  // namespace clarith
