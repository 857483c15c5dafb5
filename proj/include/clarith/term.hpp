#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "clarith/bignum.hpp"

namespace clarith {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Terms of the clarithmetic language. Len (the size pseudoterm |t|) and Exp
// (2^t) have fixed semantics rather than being PA abbreviations, so that
// atoms stay decidable. AppendBit(t,b) is the binary notation t0/t1,
// denoting 2t+b.
struct Term {
  enum class Kind { Zero, Var, Succ, Plus, Times, AppendBit, Len, Exp };

  Kind kind;
  std::string name;  // Var
  TermPtr a, b;
  int bit = 0;  // AppendBit

  static TermPtr zero();
  static TermPtr var(std::string n);
  static TermPtr succ(TermPtr t);
  static TermPtr plus(TermPtr l, TermPtr r);
  static TermPtr times(TermPtr l, TermPtr r);
  static TermPtr append_bit(TermPtr t, int bit);
  static TermPtr len(TermPtr t);
  static TermPtr exp(TermPtr t);
};

bool term_equal(const TermPtr& s, const TermPtr& t);

// Canonical numeral: Zero, or an AppendBit chain spelling the binary digits.
TermPtr term_of_value(const Nat& v);

void collect_vars(const TermPtr& t, std::set<std::string>& out);

TermPtr term_substitute(const TermPtr& t, const std::string& x, const TermPtr& to);

struct EvalLimits {
  // Largest exponent Exp may be applied to (result has exp_bits bits).
  unsigned long exp_bits = 1u << 20;
};

struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact value over the naturals; throws std::out_of_range on free variables
// not bound by env, ResourceCapError when Exp exceeds limits.
Nat term_value(const TermPtr& t, const std::map<std::string, Nat>& env,
               const EvalLimits& lim = {});

std::string term_to_string(const TermPtr& t);

}  // namespace clarith
