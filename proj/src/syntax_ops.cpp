#include "clarith/syntax_ops.hpp"

#include <algorithm>

namespace clarith {

using K = Formula::Kind;

long depth(const FormulaPtr& f) {
  switch (f->kind) {
    case K::Eq:
    case K::Leq: return 0;
    case K::Not:
    case K::ForAll:
    case K::Exists: return depth(f->l);
    case K::And:
    case K::Or:
    case K::Imp: return depth(f->l) + depth(f->r);
    case K::ChAnd:
    case K::ChOr: return 1 + std::max(depth(f->l), depth(f->r));
    case K::ChAll:
    case K::ChEx: return 1 + depth(f->l);
  }
  return 0;
}

FormulaPtr elementarize(const FormulaPtr& f) {
  switch (f->kind) {
    case K::ChAnd:
    case K::ChAll: return Formula::truth_constant(true);
    case K::ChOr:
    case K::ChEx: return Formula::truth_constant(false);
    case K::Eq:
    case K::Leq: return f;
    case K::Not: return Formula::lnot(elementarize(f->l));
    case K::And: return Formula::land(elementarize(f->l), elementarize(f->r));
    case K::Or: return Formula::lor(elementarize(f->l), elementarize(f->r));
    case K::Imp: return Formula::imp(elementarize(f->l), elementarize(f->r));
    case K::ForAll: return Formula::forall(f->var, elementarize(f->l));
    case K::Exists: return Formula::exists(f->var, elementarize(f->l));
  }
  return f;
}

namespace {

// tau must be a (0,',+,*)-combination of the allowed argument atoms:
// Len(y) with y != x for polynomial bounds, bare y != x for exponential.
bool valid_bound_term(const TermPtr& t, const std::string& x, bool exponential) {
  switch (t->kind) {
    case Term::Kind::Zero: return true;
    case Term::Kind::Succ: return valid_bound_term(t->a, x, exponential);
    case Term::Kind::Plus:
    case Term::Kind::Times:
      return valid_bound_term(t->a, x, exponential) &&
             valid_bound_term(t->b, x, exponential);
    case Term::Kind::Var: return exponential && t->name != x;
    case Term::Kind::Len:
      return !exponential && t->a->kind == Term::Kind::Var && t->a->name != x;
    default: return false;
  }
}

}  // namespace

std::optional<Sizebound> match_sizebound(const FormulaPtr& guard,
                                         const std::string& x) {
  if (guard->kind != K::Leq) return std::nullopt;
  if (guard->tl->kind != Term::Kind::Len || guard->tl->a->kind != Term::Kind::Var ||
      guard->tl->a->name != x)
    return std::nullopt;
  if (valid_bound_term(guard->tr, x, false))
    return Sizebound{x, guard->tr, Sizebound::Kind::Polynomial};
  if (valid_bound_term(guard->tr, x, true))
    return Sizebound{x, guard->tr, Sizebound::Kind::Exponential};
  return std::nullopt;
}

namespace {

TermPtr strip_len(const TermPtr& t) {
  if (t->kind == Term::Kind::Len) return t->a;
  if (!t->a) return t;
  Term copy = *t;
  copy.a = strip_len(t->a);
  if (t->b) copy.b = strip_len(t->b);
  return std::make_shared<const Term>(std::move(copy));
}

}  // namespace

Sizebound relax_sizebound(const Sizebound& s) {
  if (s.kind != Sizebound::Kind::Polynomial)
    throw WrongKindError("sizebound for " + s.bounded_var + " is already exponential");
  return Sizebound{s.bounded_var, strip_len(s.bound_term), Sizebound::Kind::Exponential};
}

namespace {

// The body of a bounded ChAll must be S -> H, of a bounded ChEx S /\ H.
// A constant bound term is a sizebound of either kind.
std::optional<Sizebound> quantifier_sizebound(const FormulaPtr& f, bool exponential) {
  K guard_shape = f->kind == K::ChAll ? K::Imp : K::And;
  if (f->l->kind != guard_shape) return std::nullopt;
  const FormulaPtr& guard = f->l->l;
  if (guard->kind != K::Leq || guard->tl->kind != Term::Kind::Len ||
      guard->tl->a->kind != Term::Kind::Var || guard->tl->a->name != f->var)
    return std::nullopt;
  if (!valid_bound_term(guard->tr, f->var, exponential)) return std::nullopt;
  return Sizebound{f->var, guard->tr,
                   exponential ? Sizebound::Kind::Exponential
                               : Sizebound::Kind::Polynomial};
}

}  // namespace

std::optional<Sizebound> guarded_sizebound(const FormulaPtr& choice_node,
                                           Sizebound::Kind kind) {
  return quantifier_sizebound(choice_node, kind == Sizebound::Kind::Exponential);
}

namespace {

bool bounded_rec(const FormulaPtr& f, bool exponential) {
  if (!f) return true;
  if (f->kind == K::ChAll || f->kind == K::ChEx) {
    if (!quantifier_sizebound(f, exponential)) return false;
    return bounded_rec(f->l, exponential);
  }
  return bounded_rec(f->l, exponential) && bounded_rec(f->r, exponential);
}

}  // namespace

FormulaClass classify(const FormulaPtr& f) {
  FormulaClass c;
  c.elementary = is_elementary(f);
  c.depth = depth(f);
  c.polynomially_bounded = bounded_rec(f, false);
  c.exponentially_bounded = bounded_rec(f, true);
  return c;
}

namespace {

FormulaPtr relax_rec(const FormulaPtr& f) {
  if (!f) return f;
  if (f->kind == K::ChAll || f->kind == K::ChEx) {
    auto sb = quantifier_sizebound(f, false);
    FormulaPtr guard = f->l->l;
    FormulaPtr body = relax_rec(f->l->r);
    Sizebound relaxed = relax_sizebound(*sb);
    FormulaPtr guard2 = Formula::leq(Term::len(Term::var(f->var)), relaxed.bound_term);
    if (f->kind == K::ChAll)
      return Formula::chall(f->var, Formula::imp(guard2, Formula::imp(guard, body)));
    return Formula::chex(f->var, Formula::land(guard2, Formula::land(guard, body)));
  }
  if (f->is_atom()) return f;
  Formula copy = *f;
  copy.l = relax_rec(f->l);
  if (f->r) copy.r = relax_rec(f->r);
  return std::make_shared<const Formula>(std::move(copy));
}

}  // namespace

FormulaPtr exp_relax_formula(const FormulaPtr& f) {
  if (!classify(f).polynomially_bounded)
    throw NotPolyBoundedError("formula is not polynomially bounded: " +
                              formula_to_string(f));
  return relax_rec(f);
}

namespace {

FormulaPtr overline_rec(const FormulaPtr& f, const FormulaPtr& l) {
  switch (f->kind) {
    case K::Eq:
    case K::Leq: return Formula::lor(f, l);
    case K::Not:
      if (f->l->is_atom()) return Formula::lor(f, l);  // negated politeral
      return Formula::lnot(overline_rec(f->l, l));
    case K::And: return Formula::land(overline_rec(f->l, l), overline_rec(f->r, l));
    case K::Or: return Formula::lor(overline_rec(f->l, l), overline_rec(f->r, l));
    case K::Imp: return Formula::imp(overline_rec(f->l, l), overline_rec(f->r, l));
    case K::ForAll: return Formula::forall(f->var, overline_rec(f->l, l));
    case K::Exists: return Formula::exists(f->var, overline_rec(f->l, l));
    case K::ChAnd: return Formula::chand(overline_rec(f->l, l), overline_rec(f->r, l));
    case K::ChOr: return Formula::chor(overline_rec(f->l, l), overline_rec(f->r, l));
    case K::ChAll: return Formula::chall(f->var, overline_rec(f->l, l));
    case K::ChEx: return Formula::chex(f->var, overline_rec(f->l, l));
  }
  return f;
}

}  // namespace

FormulaPtr overline(const FormulaPtr& f, const FormulaPtr& l_sentence) {
  if (!free_vars(l_sentence).empty())
    throw NotClosedError("the inserted sentence has free variables");
  return overline_rec(f, l_sentence);
}

}  // namespace clarith
