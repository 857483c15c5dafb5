#include "clarith/proof.hpp"

#include <algorithm>
#include <map>

#include "clarith/parse.hpp"

namespace clarith {

std::string system_name(System s) {
  switch (s) {
    case System::CLA5: return "CLA5";
    case System::CLA6: return "CLA6";
    default: return "CLA7";
  }
}

System system_from_name(const std::string& s) {
  std::string up = s;
  std::transform(up.begin(), up.end(), up.begin(), ::toupper);
  if (up == "CLA5") return System::CLA5;
  if (up == "CLA6") return System::CLA6;
  if (up == "CLA7") return System::CLA7;
  throw std::invalid_argument("unknown system: " + s);
}

const ProofNode* Proof::node(const std::string& id) const {
  for (auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::string diagnostic_to_string(const Diagnostic& d) {
  return d.node + ": " + d.code + ": " + d.message;
}

namespace {

AxiomId axiom_id_of(int k) {
  switch (k) {
    case 1: return AxiomId::Peano1;
    case 2: return AxiomId::Peano2;
    case 3: return AxiomId::Peano3;
    case 4: return AxiomId::Peano4;
    case 5: return AxiomId::Peano5;
    case 6: return AxiomId::Peano6;
    case 7: return AxiomId::Peano7;
    case 8: return AxiomId::Axiom8;
    case 9: return AxiomId::Axiom9;
    default: throw UnknownAxiomError("axiom index out of range: " + std::to_string(k));
  }
}

// Elementary induction instances: (F(0) /\ all x (F(x) -> F(x'))) -> all x F(x).
bool peano7_instance(const FormulaPtr& f) {
  using K = Formula::Kind;
  if (f->kind != K::Imp || f->r->kind != K::ForAll) return false;
  const std::string& x = f->r->var;
  FormulaPtr body = f->r->l;
  if (!is_elementary(body)) return false;
  if (f->l->kind != K::And) return false;
  FormulaPtr base = f->l->l, step = f->l->r;
  if (!alpha_equal(base, substitute(body, x, Term::zero()))) return false;
  if (step->kind != K::ForAll || step->l->kind != K::Imp) return false;
  const std::string& y = step->var;
  FormulaPtr fx = substitute(body, x, Term::var(y));
  FormulaPtr fsx = substitute(body, x, Term::succ(Term::var(y)));
  return alpha_equal(step->l->l, fx) && alpha_equal(step->l->r, fsx);
}

// Recover the induction formula F from the step premise's conclusion: peel
// the closure challs down to the implication whose left side is F(x).
FormulaPtr induction_formula(const FormulaPtr& step_concl) {
  FormulaPtr cur = step_concl;
  while (cur && cur->kind == Formula::Kind::ChAll) cur = cur->l;
  if (!cur || cur->kind != Formula::Kind::Imp) return nullptr;
  return cur->l;
}

}  // namespace

std::vector<Diagnostic> check_proof(const Proof& p) {
  std::vector<Diagnostic> out;
  auto err = [&](const std::string& node, const std::string& code,
                 const std::string& msg) {
    out.push_back({Diagnostic::Severity::Error, node, code, msg});
  };
  auto warn = [&](const std::string& node, const std::string& code,
                  const std::string& msg) {
    out.push_back({Diagnostic::Severity::Warning, node, code, msg});
  };

  std::map<std::string, const ProofNode*> seen;
  for (auto& n : p.nodes) {
    if (seen.count(n.id)) {
      err(n.id, "DuplicateNode", "node id defined twice");
      continue;
    }
    if (!n.conclusion) {
      if (n.rule == ProofNode::Rule::Axiom) {
        try {
          axiom_id_of(n.axiom);
          err(n.id, "MissingConclusion", "axiom 7 instances need a conclusion");
        } catch (const UnknownAxiomError& e) {
          err(n.id, "UnknownAxiom", e.what());
        }
      } else {
        err(n.id, "MissingConclusion", "node has no conclusion");
      }
      seen[n.id] = &n;
      continue;
    }
    if (!free_vars(n.conclusion).empty())
      err(n.id, "OpenConclusion", "conclusion has free variables");

    switch (n.rule) {
      case ProofNode::Rule::Axiom: {
        try {
          AxiomId id = axiom_id_of(n.axiom);
          if (id == AxiomId::Peano7) {
            if (!peano7_instance(n.conclusion))
              err(n.id, "UnknownAxiom",
                  "conclusion is not an elementary induction instance");
          } else {
            FormulaPtr want = axiom_formula(id);
            if (!alpha_equal(n.conclusion, want))
              err(n.id, "UnknownAxiom",
                  "conclusion does not match axiom " + std::to_string(n.axiom));
          }
          if (id == AxiomId::Axiom9)
            warn(n.id, "DeprecatedAxiom",
                 "axiom 9 is redundant here; it is provable from axiom 8");
        } catch (const UnknownAxiomError& e) {
          err(n.id, "UnknownAxiom", e.what());
        }
        break;
      }
      case ProofNode::Rule::LC: {
        for (auto& prem : n.premises)
          if (!seen.count(prem))
            err(n.id, "DanglingRef", "premise " + prem + " is not defined earlier");
        try {
          typecheck_script(n.script, n.premises.size());
        } catch (const ScriptTypeError& e) {
          err(n.id, "ScriptTypeError", e.what());
        }
        break;
      }
      case ProofNode::Rule::Induction: {
        auto bit = seen.find(n.basis_id);
        auto sit = seen.find(n.step_id);
        if (bit == seen.end() || sit == seen.end()) {
          err(n.id, "DanglingRef", "induction premises must be defined earlier");
          break;
        }
        FormulaPtr f = induction_formula(sit->second->conclusion);
        if (!f) {
          err(n.id, "MalformedInduction",
              "step conclusion is not a closure of an implication");
          break;
        }
        FormulaPtr fs = substitute(f, n.var, Term::succ(Term::var(n.var)));
        if (!alpha_equal(sit->second->conclusion,
                         choice_closure(Formula::imp(f, fs)))) {
          err(n.id, "MalformedInduction",
              "step conclusion is not the closure of F(x) -> F(x')");
          break;
        }
        if (!alpha_equal(bit->second->conclusion,
                         choice_closure(substitute(f, n.var, Term::zero())))) {
          err(n.id, "MalformedInduction",
              "basis conclusion is not the closure of F(0)");
          break;
        }
        if (!alpha_equal(n.conclusion, choice_closure(f))) {
          err(n.id, "MalformedInduction",
              "conclusion is not the closure of F(x)");
          break;
        }
        FormulaClass cls = classify(f);
        if (p.system == System::CLA5 && !cls.polynomially_bounded)
          err(n.id, "SideConditionViolation",
              "CLA5-Induction requires a polynomially bounded formula");
        if (p.system == System::CLA6 && !cls.exponentially_bounded)
          err(n.id, "SideConditionViolation",
              "CLA6-Induction requires an exponentially bounded formula");
        break;
      }
    }
    seen[n.id] = &n;
  }
  if (!seen.count(p.root))
    out.push_back({Diagnostic::Severity::Error, p.root, "DanglingRef",
                   "root node is not defined"});
  return out;
}

bool check_ok(const std::vector<Diagnostic>& ds) {
  return std::none_of(ds.begin(), ds.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  });
}

// ---------------------------------------------------------------------------
// Extraction

namespace {

struct Extractor {
  const Proof& p;
  std::map<std::string, std::shared_ptr<const ComposedStrategy>> memo;

  std::shared_ptr<const ComposedStrategy> get(const std::string& id) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const ProofNode* n = p.node(id);
    if (!n) throw CheckFailedError("node " + id + " missing");
    auto out = std::make_shared<ComposedStrategy>(build(*n));
    memo[id] = out;
    return out;
  }

  BoundObject::Kind kind() const {
    return p.system == System::CLA5 ? BoundObject::Kind::Space
                                    : BoundObject::Kind::Time;
  }

  ComposedStrategy build(const ProofNode& n) {
    switch (n.rule) {
      case ProofNode::Rule::Axiom: {
        ComposedStrategy c;
        c.composer = "axiom";
        c.formula = n.conclusion;
        c.strategy = axiom_strategy(axiom_id_of(n.axiom));
        if (!c.strategy.game) c.strategy.game = n.conclusion;  // peano7
        c.bound = {kind(), c.strategy.declared_bound->fn};
        c.bound.kind = kind();
        c.strategy.declared_bound = c.bound;
        return c;
      }
      case ProofNode::Rule::LC: {
        ComposedStrategy c;
        c.composer = "script";
        c.formula = n.conclusion;
        std::vector<Strategy> prems;
        ExplicitFunction sum = ExplicitFunction::poly(parse_tree_term("w"));
        for (auto& id : n.premises) {
          auto prem = get(id);
          c.premises.push_back(prem);
          prems.push_back(prem->strategy);
          sum = ef_sum(sum, prem->bound.fn);
        }
        c.strategy = script_strategy(n.script, n.conclusion, std::move(prems),
                                     "lc:" + n.id);
        c.bound = {kind(), ef_affine(1, sum, 8)};
        c.strategy.declared_bound = c.bound;
        return c;
      }
      default: {
        auto basis = get(n.basis_id);
        auto step = get(n.step_id);
        FormulaPtr f = induction_formula(p.node(n.step_id)->conclusion);
        ComposedStrategy c =
            p.system == System::CLA5
                ? induction_space(basis->strategy, step->strategy, f, n.var)
                : induction_parallel(basis->strategy, step->strategy, f, n.var,
                                     p.system == System::CLA6
                                         ? ParallelMode::CLA6
                                         : ParallelMode::CLA7);
        c.premises = {basis, step};
        c.bound.kind = kind();
        c.strategy.declared_bound = c.bound;
        return c;
      }
    }
  }
};

}  // namespace

ExtractedSolution extract(const Proof& p) {
  auto ds = check_proof(p);
  if (!check_ok(ds)) {
    std::string msg = "proof does not check:";
    for (auto& d : ds) msg += "\n  " + diagnostic_to_string(d);
    throw CheckFailedError(msg);
  }
  Extractor ex{p, {}};
  auto root = ex.get(p.root);
  return {root, root->bound.fn, root->bound.kind};
}

// ---------------------------------------------------------------------------
// File format

namespace {

SExpr atom(std::string s) { return SExpr{SExpr::Kind::Atom, std::move(s), {}}; }
SExpr str(std::string s) { return SExpr{SExpr::Kind::String, std::move(s), {}}; }
SExpr list(std::vector<SExpr> items) {
  return SExpr{SExpr::Kind::List, "", std::move(items)};
}

}  // namespace

Proof parse_proof(const std::string& text) {
  SExpr e = parse_sexpr(text);
  if (e.kind != SExpr::Kind::List || e.items.empty() || !e.at(0).is_atom("proof"))
    throw SExprError("expected (proof ...)");
  Proof p;
  bool have_system = false;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& it = e.at(i);
    if (it.kind != SExpr::Kind::List || it.items.empty())
      throw SExprError("expected a (system ...), (node ...) or (root ...) form");
    const std::string& head = it.at(0).text;
    if (head == "system") {
      p.system = system_from_name(it.at(1).text);
      have_system = true;
    } else if (head == "root") {
      p.root = it.at(1).text;
    } else if (head == "node") {
      ProofNode n;
      n.id = it.at(1).text;
      const SExpr& body = it.at(2);
      const std::string& rule = body.at(0).text;
      if (rule == "axiom") {
        n.rule = ProofNode::Rule::Axiom;
        n.axiom = std::stoi(body.at(1).text);
        if (const SExpr* c = body.find("concl"))
          n.conclusion = parse_formula(c->at(1).text);
        else if (n.axiom >= 1 && n.axiom <= 9 && n.axiom != 7)
          n.conclusion = axiom_formula(axiom_id_of(n.axiom));
      } else if (rule == "lc") {
        n.rule = ProofNode::Rule::LC;
        const SExpr* c = body.find("concl");
        if (!c) throw SExprError("lc node needs (concl ...)");
        n.conclusion = parse_formula(c->at(1).text);
        if (const SExpr* prem = body.find("prem"))
          for (size_t j = 1; j < prem->items.size(); ++j)
            n.premises.push_back(prem->at(j).text);
        if (const SExpr* sc = body.find("script")) {
          std::vector<SExpr> instrs(sc->items.begin() + 1, sc->items.end());
          n.script = parse_script(instrs);
        }
      } else if (rule == "ind") {
        n.rule = ProofNode::Rule::Induction;
        const SExpr* v = body.find("system-var");
        const SExpr* b = body.find("basis");
        const SExpr* s = body.find("step");
        const SExpr* c = body.find("concl");
        if (!v || !b || !s || !c)
          throw SExprError("ind node needs system-var, basis, step, concl");
        n.var = v->at(1).text;
        n.basis_id = b->at(1).text;
        n.step_id = s->at(1).text;
        n.conclusion = parse_formula(c->at(1).text);
      } else {
        throw SExprError("unknown rule: " + rule);
      }
      p.nodes.push_back(std::move(n));
    } else {
      throw SExprError("unknown proof form: " + head);
    }
  }
  if (!have_system) throw SExprError("proof has no (system ...)");
  return p;
}

std::string proof_to_string(const Proof& p) {
  std::vector<SExpr> items{atom("proof"),
                           list({atom("system"), atom(system_name(p.system))})};
  for (auto& n : p.nodes) {
    SExpr body{SExpr::Kind::List, "", {}};
    switch (n.rule) {
      case ProofNode::Rule::Axiom:
        body.items = {atom("axiom"), atom(std::to_string(n.axiom))};
        if (n.axiom == 7)
          body.items.push_back(
              list({atom("concl"), str(formula_to_string(n.conclusion))}));
        break;
      case ProofNode::Rule::LC: {
        std::vector<SExpr> prem{atom("prem")};
        for (auto& id : n.premises) prem.push_back(atom(id));
        std::vector<SExpr> script{atom("script")};
        for (auto& s : script_to_sexprs(n.script)) script.push_back(s);
        body.items = {atom("lc"),
                      list({atom("concl"), str(formula_to_string(n.conclusion))}),
                      list(std::move(prem)), list(std::move(script))};
        break;
      }
      default:
        body.items = {atom("ind"), list({atom("system-var"), atom(n.var)}),
                      list({atom("basis"), atom(n.basis_id)}),
                      list({atom("step"), atom(n.step_id)}),
                      list({atom("concl"), str(formula_to_string(n.conclusion))})};
        break;
    }
    items.push_back(list({atom("node"), atom(n.id), std::move(body)}));
  }
  items.push_back(list({atom("root"), atom(p.root)}));
  std::string out = "(proof " + items[1].to_string() + "\n";
  for (size_t i = 2; i + 1 < items.size(); ++i) out += "  " + items[i].to_string() + "\n";
  out += "  " + items.back().to_string() + ")\n";
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial-to-exponential proof transformation

Proof transform_cla5_to_cla6(const Proof& p) {
  if (p.system != System::CLA5)
    throw std::invalid_argument("transform expects a CLA5 proof");
  Proof out;
  out.system = System::CLA6;
  out.root = p.root;
  auto relay_script = []() {
    Instr use;
    use.op = Instr::Op::Use;
    use.premise = 0;
    use.syncs.push_back({Address{}, Address{}});
    Script s;
    s.instrs.push_back(use);
    return s;
  };
  for (auto& n : p.nodes) {
    if (n.rule != ProofNode::Rule::Induction) {
      out.nodes.push_back(n);
      continue;
    }
    const ProofNode* step = p.node(n.step_id);
    FormulaPtr f = induction_formula(step->conclusion);
    FormulaPtr f2 = exp_relax_formula(f);
    FormulaPtr f2s = substitute(f2, n.var, Term::succ(Term::var(n.var)));

    ProofNode bb;
    bb.id = n.id + "_relax_basis";
    bb.rule = ProofNode::Rule::LC;
    bb.conclusion = choice_closure(substitute(f2, n.var, Term::zero()));
    bb.premises = {n.basis_id};
    bb.script = relay_script();
    out.nodes.push_back(std::move(bb));

    ProofNode sb;
    sb.id = n.id + "_relax_step";
    sb.rule = ProofNode::Rule::LC;
    sb.conclusion = choice_closure(Formula::imp(f2, f2s));
    sb.premises = {n.step_id};
    sb.script = relay_script();
    out.nodes.push_back(std::move(sb));

    ProofNode ind;
    ind.id = n.id + "_relax_ind";
    ind.rule = ProofNode::Rule::Induction;
    ind.conclusion = choice_closure(f2);
    ind.var = n.var;
    ind.basis_id = n.id + "_relax_basis";
    ind.step_id = n.id + "_relax_step";
    out.nodes.push_back(std::move(ind));

    ProofNode back;
    back.id = n.id;
    back.rule = ProofNode::Rule::LC;
    back.conclusion = n.conclusion;
    back.premises = {n.id + "_relax_ind"};
    back.script = relay_script();
    out.nodes.push_back(std::move(back));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialized solutions

std::string solution_to_string(const Proof& p, const ExtractedSolution& s) {
  std::string out = "(solution\n";
  out += "  (system " + system_name(p.system) + ")\n";
  out += "  (concl " + str(formula_to_string(s.strategy->formula)).to_string() + ")\n";
  out += "  (bound " +
         std::string(s.bound_kind == BoundObject::Kind::Space ? "space" : "time") +
         " " + str(explicit_to_string(s.bound)).to_string() + ")\n";
  out += proof_to_string(p);
  out += ")\n";
  return out;
}

Proof solution_proof(const std::string& text) {
  SExpr e = parse_sexpr(text);
  if (e.kind == SExpr::Kind::List && !e.items.empty() && e.at(0).is_atom("proof"))
    return parse_proof(text);
  if (e.kind != SExpr::Kind::List || e.items.empty() || !e.at(0).is_atom("solution"))
    throw SExprError("expected (solution ...) or (proof ...)");
  for (auto& it : e.items)
    if (it.kind == SExpr::Kind::List && !it.items.empty() && it.at(0).is_atom("proof"))
      return parse_proof(it.to_string());
  throw SExprError("solution file carries no proof");
}

}  // namespace clarith
