#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "clarith/term.hpp"

namespace clarith {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Formulas of PA extended with the choice connectives/quantifiers.
// ChAnd/ChOr are the choice conjunction and disjunction, ChAll/ChEx the
// choice quantifiers; the classical operators carry no moves.
struct Formula {
  enum class Kind {
    Eq, Leq,            // atoms
    Not, And, Or, Imp,  // classical connectives
    ForAll, Exists,     // classical quantifiers
    ChAnd, ChOr,        // choice connectives
    ChAll, ChEx         // choice quantifiers
  };

  Kind kind;
  TermPtr tl, tr;   // atoms
  FormulaPtr l, r;  // connectives; quantifier body in l
  std::string var;  // quantifiers

  static FormulaPtr eq(TermPtr l, TermPtr r);
  static FormulaPtr leq(TermPtr l, TermPtr r);
  static FormulaPtr lnot(FormulaPtr f);
  static FormulaPtr land(FormulaPtr l, FormulaPtr r);
  static FormulaPtr lor(FormulaPtr l, FormulaPtr r);
  static FormulaPtr imp(FormulaPtr l, FormulaPtr r);
  static FormulaPtr forall(std::string x, FormulaPtr body);
  static FormulaPtr exists(std::string x, FormulaPtr body);
  static FormulaPtr chand(FormulaPtr l, FormulaPtr r);
  static FormulaPtr chor(FormulaPtr l, FormulaPtr r);
  static FormulaPtr chall(std::string x, FormulaPtr body);
  static FormulaPtr chex(std::string x, FormulaPtr body);

  // 0 = 0 and 0 = 0' stand in for the logical constants.
  static FormulaPtr truth_constant(bool value);

  bool is_atom() const { return kind == Kind::Eq || kind == Kind::Leq; }
  bool is_choice() const {
    return kind == Kind::ChAnd || kind == Kind::ChOr || kind == Kind::ChAll ||
           kind == Kind::ChEx;
  }
  bool is_quantifier() const {
    return kind == Kind::ForAll || kind == Kind::Exists || kind == Kind::ChAll ||
           kind == Kind::ChEx;
  }
};

bool formula_equal(const FormulaPtr& f, const FormulaPtr& g);
bool alpha_equal(const FormulaPtr& f, const FormulaPtr& g);

std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> all_vars(const FormulaPtr& f);

bool is_elementary(const FormulaPtr& f);

// True when some choice operator occurs in the scope of a classical
// quantifier; such formulas parse but the game engine rejects them.
bool has_choice_under_classical_quantifier(const FormulaPtr& f);

// Capture-avoiding substitution of t for free occurrences of x.
FormulaPtr substitute(const FormulaPtr& f, const std::string& x, const TermPtr& t);

// ChAll-closure over the free variables, in lexicographic order.
FormulaPtr choice_closure(const FormulaPtr& f);

std::string formula_to_string(const FormulaPtr& f);

}  // namespace clarith
