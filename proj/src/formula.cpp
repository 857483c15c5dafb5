#include "clarith/formula.hpp"

#include <map>

namespace clarith {

namespace {
FormulaPtr mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
using K = Formula::Kind;
}  // namespace

FormulaPtr Formula::eq(TermPtr l, TermPtr r) { return mk({K::Eq, std::move(l), std::move(r), nullptr, nullptr, ""}); }
FormulaPtr Formula::leq(TermPtr l, TermPtr r) { return mk({K::Leq, std::move(l), std::move(r), nullptr, nullptr, ""}); }
FormulaPtr Formula::lnot(FormulaPtr f) { return mk({K::Not, nullptr, nullptr, std::move(f), nullptr, ""}); }
FormulaPtr Formula::land(FormulaPtr l, FormulaPtr r) { return mk({K::And, nullptr, nullptr, std::move(l), std::move(r), ""}); }
FormulaPtr Formula::lor(FormulaPtr l, FormulaPtr r) { return mk({K::Or, nullptr, nullptr, std::move(l), std::move(r), ""}); }
FormulaPtr Formula::imp(FormulaPtr l, FormulaPtr r) { return mk({K::Imp, nullptr, nullptr, std::move(l), std::move(r), ""}); }
FormulaPtr Formula::forall(std::string x, FormulaPtr body) { return mk({K::ForAll, nullptr, nullptr, std::move(body), nullptr, std::move(x)}); }
FormulaPtr Formula::exists(std::string x, FormulaPtr body) { return mk({K::Exists, nullptr, nullptr, std::move(body), nullptr, std::move(x)}); }
FormulaPtr Formula::chand(FormulaPtr l, FormulaPtr r) { return mk({K::ChAnd, nullptr, nullptr, std::move(l), std::move(r), ""}); }
FormulaPtr Formula::chor(FormulaPtr l, FormulaPtr r) { return mk({K::ChOr, nullptr, nullptr, std::move(l), std::move(r), ""}); }
FormulaPtr Formula::chall(std::string x, FormulaPtr body) { return mk({K::ChAll, nullptr, nullptr, std::move(body), nullptr, std::move(x)}); }
FormulaPtr Formula::chex(std::string x, FormulaPtr body) { return mk({K::ChEx, nullptr, nullptr, std::move(body), nullptr, std::move(x)}); }

FormulaPtr Formula::truth_constant(bool value) {
  auto z = Term::zero();
  return value ? eq(z, z) : eq(z, Term::succ(z));
}

bool formula_equal(const FormulaPtr& f, const FormulaPtr& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  if (f->kind != g->kind || f->var != g->var) return false;
  return term_equal(f->tl, g->tl) && term_equal(f->tr, g->tr) &&
         formula_equal(f->l, g->l) && formula_equal(f->r, g->r);
}

namespace {

bool alpha_eq(const FormulaPtr& f, const FormulaPtr& g,
              std::map<std::string, std::string>& fg,
              std::map<std::string, std::string>& gf) {
  if (!f || !g) return !f && !g;
  if (f->kind != g->kind) return false;
  if (f->is_atom()) {
    // Terms contain only free occurrences of quantified vars; rename via maps.
    auto rename = [](const TermPtr& t, const std::map<std::string, std::string>& m,
                     auto&& self) -> TermPtr {
      if (!t) return t;
      if (t->kind == Term::Kind::Var) {
        auto it = m.find(t->name);
        return it == m.end() ? t : Term::var(it->second);
      }
      if (!t->a) return t;
      Term copy = *t;
      copy.a = self(t->a, m, self);
      copy.b = self(t->b, m, self);
      return std::make_shared<const Term>(std::move(copy));
    };
    return term_equal(rename(f->tl, fg, rename), g->tl) &&
           term_equal(rename(f->tr, fg, rename), g->tr);
  }
  if (f->is_quantifier()) {
    auto save_fg = fg, save_gf = gf;
    fg[f->var] = g->var;
    gf[g->var] = f->var;
    bool ok = alpha_eq(f->l, g->l, fg, gf) && gf[g->var] == f->var && fg[f->var] == g->var;
    fg = save_fg;
    gf = save_gf;
    return ok;
  }
  return alpha_eq(f->l, g->l, fg, gf) && alpha_eq(f->r, g->r, fg, gf);
}

}  // namespace

bool alpha_equal(const FormulaPtr& f, const FormulaPtr& g) {
  std::map<std::string, std::string> fg, gf;
  return alpha_eq(f, g, fg, gf);
}

namespace {

void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  if (!f) return;
  if (f->is_atom()) {
    std::set<std::string> vs;
    collect_vars(f->tl, vs);
    collect_vars(f->tr, vs);
    for (auto& v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f->is_quantifier()) {
    bool inserted = bound.insert(f->var).second;
    free_vars_rec(f->l, bound, out);
    if (inserted) bound.erase(f->var);
    return;
  }
  free_vars_rec(f->l, bound, out);
  free_vars_rec(f->r, bound, out);
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const FormulaPtr& f) {
  if (!f) return {};
  std::set<std::string> out;
  if (f->is_atom()) {
    collect_vars(f->tl, out);
    collect_vars(f->tr, out);
    return out;
  }
  if (f->is_quantifier()) out.insert(f->var);
  for (auto& v : all_vars(f->l)) out.insert(v);
  for (auto& v : all_vars(f->r)) out.insert(v);
  return out;
}

bool is_elementary(const FormulaPtr& f) {
  if (!f) return true;
  if (f->is_choice()) return false;
  return is_elementary(f->l) && is_elementary(f->r);
}

bool has_choice_under_classical_quantifier(const FormulaPtr& f) {
  if (!f) return false;
  if (f->kind == Formula::Kind::ForAll || f->kind == Formula::Kind::Exists)
    return !is_elementary(f->l);
  return has_choice_under_classical_quantifier(f->l) ||
         has_choice_under_classical_quantifier(f->r);
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

FormulaPtr subst_rec(const FormulaPtr& f, const std::string& x, const TermPtr& t,
                     const std::set<std::string>& t_vars) {
  if (!f) return f;
  if (f->is_atom()) {
    Formula copy = *f;
    copy.tl = term_substitute(f->tl, x, t);
    copy.tr = term_substitute(f->tr, x, t);
    return std::make_shared<const Formula>(std::move(copy));
  }
  if (f->is_quantifier()) {
    if (f->var == x) return f;  // x not free below
    if (t_vars.count(f->var)) {
      // Rename the binder to avoid capturing a variable of t.
      std::set<std::string> avoid = t_vars;
      for (auto& v : all_vars(f->l)) avoid.insert(v);
      avoid.insert(x);
      std::string nv = fresh_name(f->var, avoid);
      FormulaPtr body = subst_rec(f->l, f->var, Term::var(nv), {nv});
      Formula copy = *f;
      copy.var = nv;
      copy.l = subst_rec(body, x, t, t_vars);
      return std::make_shared<const Formula>(std::move(copy));
    }
    Formula copy = *f;
    copy.l = subst_rec(f->l, x, t, t_vars);
    return std::make_shared<const Formula>(std::move(copy));
  }
  Formula copy = *f;
  copy.l = subst_rec(f->l, x, t, t_vars);
  copy.r = subst_rec(f->r, x, t, t_vars);
  return std::make_shared<const Formula>(std::move(copy));
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& x, const TermPtr& t) {
  std::set<std::string> tv;
  collect_vars(t, tv);
  return subst_rec(f, x, t, tv);
}

FormulaPtr choice_closure(const FormulaPtr& f) {
  auto fv = free_vars(f);  // std::set iterates in lexicographic order
  FormulaPtr out = f;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it)
    out = Formula::chall(*it, out);
  return out;
}

namespace {

// -> is level 1 (right-assoc), chor 2, \/ 3, chand 4, /\ 5, ~ 6.
int fprec(Formula::Kind k) {
  switch (k) {
    case K::Imp: return 1;
    case K::ChOr: return 2;
    case K::Or: return 3;
    case K::ChAnd: return 4;
    case K::And: return 5;
    case K::Not: return 6;
    default: return 7;
  }
}

void fprint(const FormulaPtr& f, int parent, std::string& out) {
  int p = fprec(f->kind);
  bool paren = p < parent;
  if (f->is_quantifier()) paren = parent > 0;
  if (paren) out += '(';
  switch (f->kind) {
    case K::Eq:
      out += term_to_string(f->tl) + " = " + term_to_string(f->tr);
      break;
    case K::Leq:
      out += term_to_string(f->tl) + " <= " + term_to_string(f->tr);
      break;
    case K::Not:
      out += '~';
      fprint(f->l, p, out);
      break;
    case K::And:
      fprint(f->l, p, out);
      out += " /\\ ";
      fprint(f->r, p + 1, out);
      break;
    case K::Or:
      fprint(f->l, p, out);
      out += " \\/ ";
      fprint(f->r, p + 1, out);
      break;
    case K::Imp:
      fprint(f->l, p + 1, out);
      out += " -> ";
      fprint(f->r, p, out);
      break;
    case K::ChAnd:
      fprint(f->l, p, out);
      out += " chand ";
      fprint(f->r, p + 1, out);
      break;
    case K::ChOr:
      fprint(f->l, p, out);
      out += " chor ";
      fprint(f->r, p + 1, out);
      break;
    case K::ForAll:
      out += "all " + f->var + ". ";
      fprint(f->l, 0, out);
      break;
    case K::Exists:
      out += "ex " + f->var + ". ";
      fprint(f->l, 0, out);
      break;
    case K::ChAll:
      out += "chall " + f->var + ". ";
      fprint(f->l, 0, out);
      break;
    case K::ChEx:
      out += "chex " + f->var + ". ";
      fprint(f->l, 0, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string formula_to_string(const FormulaPtr& f) {
  std::string out;
  fprint(f, 0, out);
  return out;
}

}  // namespace clarith
