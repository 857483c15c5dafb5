#pragma once

#include <memory>
#include <string>
#include <vector>

#include "clarith/syntax_ops.hpp"

namespace clarith {

struct ArityMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A tree over 0, variables, ', +, *, EXP; represents an elementary
// recursive function of its variables under the standard meaning.
// Without EXP it is an explicit polynomial.
struct ElemTreeTerm {
  enum class Kind { Zero, Var, Succ, Plus, Times, Exp };
  Kind kind;
  std::string name;
  std::shared_ptr<const ElemTreeTerm> a, b;

  using Ptr = std::shared_ptr<const ElemTreeTerm>;
  static Ptr zero();
  static Ptr var(std::string n);
  static Ptr succ(Ptr t);
  static Ptr plus(Ptr l, Ptr r);
  static Ptr times(Ptr l, Ptr r);
  static Ptr exp(Ptr t);
  static Ptr constant(unsigned long n);
};

using ElemPtr = ElemTreeTerm::Ptr;

bool contains_exp(const ElemPtr& t);
std::vector<std::string> tree_term_vars(const ElemPtr& t);  // sorted
Nat tree_term_value(const ElemPtr& t, const std::vector<Nat>& args,
                    const EvalLimits& lim = {});
std::string tree_term_to_string(const ElemPtr& t);
ElemPtr parse_tree_term(const std::string& text);  // term grammar, Len rejected

// One definition of a primitive recursive construction, forms (I)-(V).
struct PRDef {
  enum class Form { Succ, Zero, Proj, Comp, Rec };
  std::string name;
  int arity = 0;
  Form form;
  int proj_index = 0;               // Proj: 1-based i of n
  std::string g;                    // Comp outer / Rec base
  std::vector<std::string> h;       // Comp inner list / Rec step (h[0])
};

// An ordered sequence of definitions; the last named function is the one
// constructed. Referenced symbols must be defined earlier and distinct.
struct PRConstruction {
  std::vector<PRDef> defs;
  std::string main;
};

struct PRDiagnostic {
  enum class Code { DuplicateSymbol, ForwardReference, ArityMismatch, UnknownMain };
  Code code;
  std::string def_name;
  std::string message;
};

std::vector<PRDiagnostic> validate_pr(const PRConstruction& c);

struct PREvalLimits {
  Nat value_cap = Nat(1) << 4096;  // intermediate value ceiling
  unsigned long call_cap = 50'000'000;
};

Nat pr_value(const PRConstruction& c, const std::vector<Nat>& args,
             const PREvalLimits& lim = {});
int pr_arity(const PRConstruction& c);

// File format: one definition per line,
//   def <name>/<arity> = succ | zero/<n> | proj/<n>/<i>
//                      | comp <g> <h1> ... <hm> | rec <g> <h>
// and a final line `main <name>`. Lines may be separated by ';'.
PRConstruction parse_pr(const std::string& text);
std::string pr_to_string(const PRConstruction& c);

// The bound algebra: explicit polynomials, elementary recursive tree-terms
// and primitive recursive constructions, all evaluated exactly.
struct ExplicitFunction {
  enum class Kind { Poly, Elem, PR };
  Kind kind;
  ElemPtr tree;       // Poly/Elem
  PRConstruction pr;  // PR

  static ExplicitFunction poly(ElemPtr t);
  static ExplicitFunction elem(ElemPtr t);
  static ExplicitFunction prf(PRConstruction c);
  static ExplicitFunction identity();

  int arity() const;
};

Nat eval(const ExplicitFunction& f, const std::vector<Nat>& args,
         const PREvalLimits& lim = {});
std::string explicit_to_string(const ExplicitFunction& f);

// Graph-sequence format <tau_f1, ..., tau_fk>: each entry defines f_i
// by a term over 0,',+,*,EXP, the variables, and earlier f_j.
struct GraphEntry {
  std::string name;
  TermPtr graph;  // may mention earlier names as 0-ary... see parse notes
};

struct IllFormedGraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph sequences are written "f1(x) = <term>; f2(x) = <term>; ..." where
// later entries may apply earlier names to one argument.
struct GraphSequence {
  struct Entry {
    std::string name;
    std::string var;
    ElemPtr body;  // Var nodes may carry earlier entry names as calls
  };
  std::vector<Entry> entries;
};

GraphSequence parse_graph_sequence(const std::string& text);

// Inline every f_i into its later uses, producing the unary elementary
// recursive tree-term over 0, ', +, *, EXP alone.
ElemPtr to_tree_term(const GraphSequence& seq);

// phi^m, the m-fold composition, represented as a primitive recursive
// construction (iteration is primitive recursion on the counter).
ExplicitFunction iterate(const ExplicitFunction& f, const Nat& m);

// L = s * phi(eta_l) * (2d*eta_l + 2d + 1) * q^phi(eta_l) * q^(2d*eta_l+2d+1)
Nat quiescence_bound(const Nat& s, const Nat& q, const Nat& d, const Nat& eta_of_l,
                     const ExplicitFunction& phi);

// d * (2^l + 1) * phi(eta(l))
Nat bound_cla6(const Nat& d, const Nat& l, const ExplicitFunction& phi,
               const ExplicitFunction& eta);

// 2^l * d * phi^(2^l * d)(l)
Nat bound_cla7(const Nat& d, const Nat& l, const ExplicitFunction& phi,
               const PREvalLimits& lim = {});

// mu_slope * phi(l) + mu_offset; the mu constants are calibrated against
// the instrumented space composer (see tools/mu_calibrate).
extern const unsigned long kMuSlope;
extern const unsigned long kMuOffset;
Nat bound_cla5_space(const ExplicitFunction& phi, const Nat& l,
                     unsigned long mu_slope = kMuSlope,
                     unsigned long mu_offset = kMuOffset);

// Pointwise sum of two unary explicit functions, in the coarser kind.
ExplicitFunction ef_sum(const ExplicitFunction& a, const ExplicitFunction& b);
// outer(inner(w)) for unary functions.
ExplicitFunction ef_compose(const ExplicitFunction& outer, const ExplicitFunction& inner);
// slope * f(w) + offset, keeping f's kind.
ExplicitFunction ef_affine(unsigned long slope, const ExplicitFunction& f,
                           unsigned long offset);
// The parallel composer's elementary time bound
// d * (EXP(w) + 1) * phi(eta(w)), as a tree-term.
ExplicitFunction cla6_bound_function(const Nat& d, const ExplicitFunction& phi,
                                     const ExplicitFunction& eta);
// The parallel composer's primitive recursive time bound
// 2^w * d * phi^(2^w * d)(w), as a PR construction.
ExplicitFunction cla7_bound_function(const Nat& d, const ExplicitFunction& phi);

struct NotBoundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Move-size ceiling eta(l) for a bounded formula: each sizebound is
// evaluated with free variables at l (Polynomial mode: their sizes;
// Exponential mode: their values, taken as 2^l) and with already-bounded
// choice variables at their own ceilings; the result is the maximum
// ceiling plus a slack of 4 for Left/Right moves.
Nat eta_bound(const FormulaPtr& f, const Nat& l, Sizebound::Kind mode);

// Symbolic eta as a tree-term in one variable w, built by the same
// ceiling recursion; evaluating it at l agrees with eta_bound.
ElemPtr eta_term(const FormulaPtr& f, Sizebound::Kind mode);

}  // namespace clarith
