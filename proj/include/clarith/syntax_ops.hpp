#pragma once

#include <optional>
#include <string>

#include "clarith/formula.hpp"

namespace clarith {

// Number of labmoves in the longest legal run of the induced game.
long depth(const FormulaPtr& f);

// Resolve every surface choice occurrence in favor of its non-owner:
// ChAnd/ChAll become the true constant, ChOr/ChEx the false constant.
// The result is elementary; the operation is idempotent.
FormulaPtr elementarize(const FormulaPtr& f);

// A sizebound |x| <= tau. Polynomial: tau is a (0,',+,*)-combination of
// sizes |y_i| of variables other than x. Exponential: tau is such a
// combination of raw variables other than x, with no Len inside.
struct Sizebound {
  enum class Kind { Polynomial, Exponential };
  std::string bounded_var;
  TermPtr bound_term;
  Kind kind;
};

struct WrongKindError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Recognize Atom(Leq(Len(x), tau)) as a sizebound for x of either kind
// (polynomial preferred when the term is constant and valid for both).
std::optional<Sizebound> match_sizebound(const FormulaPtr& guard,
                                         const std::string& x);

// The sizebound guarding a ChAll/ChEx node under the requested kind:
// body shape S -> H for ChAll, S /\ H for ChEx.
std::optional<Sizebound> guarded_sizebound(const FormulaPtr& choice_node,
                                           Sizebound::Kind kind);

// Relaxation S -> S': replace each |y_i| in the bound term by y_i.
Sizebound relax_sizebound(const Sizebound& s);

struct FormulaClass {
  bool elementary = false;
  bool polynomially_bounded = false;
  bool exponentially_bounded = false;
  long depth = 0;
};

// Boundedness flags: exponentially_bounded iff every ChAll body has shape
// S(x) -> H and every ChEx body has shape S(x) /\ H with S an exponential
// sizebound for x; polynomially_bounded with polynomial sizebounds.
FormulaClass classify(const FormulaPtr& f);

struct NotPolyBoundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotClosedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relaxation F -> F': every chall z (S -> G) becomes
// chall z (S' -> (S -> G)) and every chex z (S /\ G) becomes
// chex z (S' /\ (S /\ G)), simultaneously at all sizebound-guarded
// choice quantifiers. Requires classify(f).polynomially_bounded.
FormulaPtr exp_relax_formula(const FormulaPtr& f);

// Replace every politeral occurrence L (an atom, or a negated atom, in
// negation normal form position) by L \/ l_sentence.
FormulaPtr overline(const FormulaPtr& f, const FormulaPtr& l_sentence);

}  // namespace clarith
