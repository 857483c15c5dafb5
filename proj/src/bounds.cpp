#include "clarith/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "clarith/parse.hpp"

namespace clarith {

namespace {
ElemPtr mk(ElemTreeTerm t) { return std::make_shared<const ElemTreeTerm>(std::move(t)); }
using EK = ElemTreeTerm::Kind;
}  // namespace

ElemPtr ElemTreeTerm::zero() { return mk({EK::Zero, "", nullptr, nullptr}); }
ElemPtr ElemTreeTerm::var(std::string n) { return mk({EK::Var, std::move(n), nullptr, nullptr}); }
ElemPtr ElemTreeTerm::succ(Ptr t) { return mk({EK::Succ, "", std::move(t), nullptr}); }
ElemPtr ElemTreeTerm::plus(Ptr l, Ptr r) { return mk({EK::Plus, "", std::move(l), std::move(r)}); }
ElemPtr ElemTreeTerm::times(Ptr l, Ptr r) { return mk({EK::Times, "", std::move(l), std::move(r)}); }
ElemPtr ElemTreeTerm::exp(Ptr t) { return mk({EK::Exp, "", std::move(t), nullptr}); }

ElemPtr ElemTreeTerm::constant(unsigned long n) {
  ElemPtr t = zero();
  for (unsigned long i = 0; i < n; ++i) t = succ(t);
  return t;
}

bool contains_exp(const ElemPtr& t) {
  if (!t) return false;
  if (t->kind == EK::Exp) return true;
  return contains_exp(t->a) || contains_exp(t->b);
}

namespace {
void vars_rec(const ElemPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == EK::Var) out.insert(t->name);
  vars_rec(t->a, out);
  vars_rec(t->b, out);
}
}  // namespace

std::vector<std::string> tree_term_vars(const ElemPtr& t) {
  std::set<std::string> s;
  vars_rec(t, s);
  return {s.begin(), s.end()};
}

namespace {

Nat tt_value(const ElemPtr& t, const std::map<std::string, Nat>& env,
             const EvalLimits& lim) {
  switch (t->kind) {
    case EK::Zero: return 0;
    case EK::Var: return env.at(t->name);
    case EK::Succ: return tt_value(t->a, env, lim) + 1;
    case EK::Plus: return tt_value(t->a, env, lim) + tt_value(t->b, env, lim);
    case EK::Times: return tt_value(t->a, env, lim) * tt_value(t->b, env, lim);
    case EK::Exp: {
      Nat e = tt_value(t->a, env, lim);
      if (e > lim.exp_bits)
        throw ResourceCapError("EXP(" + e.str() + ") exceeds the resource ceiling");
      return Nat(1) << static_cast<unsigned long>(e);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Nat tree_term_value(const ElemPtr& t, const std::vector<Nat>& args,
                    const EvalLimits& lim) {
  auto vars = tree_term_vars(t);
  if (vars.size() != args.size())
    throw ArityMismatchError("tree-term expects " + std::to_string(vars.size()) +
                             " arguments, got " + std::to_string(args.size()));
  std::map<std::string, Nat> env;
  for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = args[i];
  return tt_value(t, env, lim);
}

namespace {

int tprec(EK k) {
  switch (k) {
    case EK::Plus: return 1;
    case EK::Times: return 2;
    case EK::Succ: return 3;
    default: return 4;
  }
}

void tt_print(const ElemPtr& t, int parent, std::string& out) {
  int p = tprec(t->kind);
  bool paren = p < parent;
  if (paren) out += '(';
  switch (t->kind) {
    case EK::Zero: out += '0'; break;
    case EK::Var: out += t->name; break;
    case EK::Succ: tt_print(t->a, p, out); out += '\''; break;
    case EK::Plus: tt_print(t->a, p, out); out += " + "; tt_print(t->b, p + 1, out); break;
    case EK::Times: tt_print(t->a, p, out); out += " * "; tt_print(t->b, p + 1, out); break;
    case EK::Exp: out += "exp("; tt_print(t->a, 0, out); out += ')'; break;
  }
  if (paren) out += ')';
}

ElemPtr from_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Zero: return ElemTreeTerm::zero();
    case Term::Kind::Var: return ElemTreeTerm::var(t->name);
    case Term::Kind::Succ: return ElemTreeTerm::succ(from_term(t->a));
    case Term::Kind::Plus: return ElemTreeTerm::plus(from_term(t->a), from_term(t->b));
    case Term::Kind::Times: return ElemTreeTerm::times(from_term(t->a), from_term(t->b));
    case Term::Kind::Exp: return ElemTreeTerm::exp(from_term(t->a));
    default:
      throw std::invalid_argument("tree-terms admit only 0, variables, ', +, *, exp");
  }
}

}  // namespace

std::string tree_term_to_string(const ElemPtr& t) {
  std::string out;
  tt_print(t, 0, out);
  return out;
}

ElemPtr parse_tree_term(const std::string& text) {
  return from_term(parse_term(text));
}

// ---------------------------------------------------------------------------
// Primitive recursive constructions

std::vector<PRDiagnostic> validate_pr(const PRConstruction& c) {
  std::vector<PRDiagnostic> out;
  std::map<std::string, int> arity;  // defined so far
  auto lookup = [&](const PRDef& d, const std::string& ref) -> int {
    auto it = arity.find(ref);
    if (it == arity.end()) {
      out.push_back({PRDiagnostic::Code::ForwardReference, d.name,
                     d.name + " references " + ref + " which is not defined earlier"});
      return -1;
    }
    return it->second;
  };
  for (auto& d : c.defs) {
    if (arity.count(d.name)) {
      out.push_back({PRDiagnostic::Code::DuplicateSymbol, d.name,
                     "symbol " + d.name + " defined twice"});
      continue;
    }
    switch (d.form) {
      case PRDef::Form::Succ:
        if (d.arity != 1)
          out.push_back({PRDiagnostic::Code::ArityMismatch, d.name,
                         "successor definitions are unary"});
        break;
      case PRDef::Form::Zero:
        if (d.arity < 0)
          out.push_back({PRDiagnostic::Code::ArityMismatch, d.name, "bad arity"});
        break;
      case PRDef::Form::Proj:
        if (d.proj_index < 1 || d.proj_index > d.arity)
          out.push_back({PRDiagnostic::Code::ArityMismatch, d.name,
                         "projection index out of range"});
        break;
      case PRDef::Form::Comp: {
        int ga = lookup(d, d.g);
        if (ga >= 0 && ga != static_cast<int>(d.h.size()))
          out.push_back({PRDiagnostic::Code::ArityMismatch, d.name,
                         "outer function arity differs from the inner count"});
        for (auto& hi : d.h) {
          int ha = lookup(d, hi);
          if (ha >= 0 && ha != d.arity)
            out.push_back({PRDiagnostic::Code::ArityMismatch, d.name,
                           "inner function " + hi + " arity differs from " + d.name});
        }
        break;
      }
      case PRDef::Form::Rec: {
        if (d.arity < 1) {
          out.push_back({PRDiagnostic::Code::ArityMismatch, d.name,
                         "recursion needs a first argument"});
          break;
        }
        int ga = lookup(d, d.g);
        if (ga >= 0 && ga != d.arity - 1)
          out.push_back({PRDiagnostic::Code::ArityMismatch, d.name,
                         "base case must have arity " + std::to_string(d.arity - 1)});
        int ha = lookup(d, d.h[0]);
        if (ha >= 0 && ha != d.arity + 1)
          out.push_back({PRDiagnostic::Code::ArityMismatch, d.name,
                         "step case must have arity " + std::to_string(d.arity + 1)});
        break;
      }
    }
    arity[d.name] = d.arity;
  }
  if (!arity.count(c.main))
    out.push_back({PRDiagnostic::Code::UnknownMain, c.main,
                   "main symbol " + c.main + " is not defined"});
  return out;
}

namespace {

struct PREvalCtx {
  const std::map<std::string, const PRDef*>& defs;
  const PREvalLimits& lim;
  unsigned long calls = 0;

  Nat call(const std::string& f, const std::vector<Nat>& args) {
    if (++calls > lim.call_cap)
      throw ResourceCapError("primitive recursive evaluation exceeded the call ceiling");
    const PRDef& d = *defs.at(f);
    if (static_cast<int>(args.size()) != d.arity)
      throw ArityMismatchError(f + " expects " + std::to_string(d.arity) + " arguments");
    Nat result;
    switch (d.form) {
      case PRDef::Form::Succ: result = args[0] + 1; break;
      case PRDef::Form::Zero: result = 0; break;
      case PRDef::Form::Proj: result = args[d.proj_index - 1]; break;
      case PRDef::Form::Comp: {
        std::vector<Nat> inner;
        inner.reserve(d.h.size());
        for (auto& hi : d.h) inner.push_back(call(hi, args));
        result = call(d.g, inner);
        break;
      }
      case PRDef::Form::Rec: {
        std::vector<Nat> rest(args.begin() + 1, args.end());
        Nat acc = call(d.g, rest);
        for (Nat r = 0; r < args[0]; ++r) {
          std::vector<Nat> step;
          step.reserve(args.size() + 1);
          step.push_back(r);
          step.push_back(acc);
          step.insert(step.end(), rest.begin(), rest.end());
          acc = call(d.h[0], step);
          if (acc > lim.value_cap)
            throw ResourceCapError("primitive recursive value exceeded the ceiling");
        }
        result = acc;
        break;
      }
    }
    if (result > lim.value_cap)
      throw ResourceCapError("primitive recursive value exceeded the ceiling");
    return result;
  }
};

std::map<std::string, const PRDef*> def_index(const PRConstruction& c) {
  std::map<std::string, const PRDef*> out;
  for (auto& d : c.defs) out[d.name] = &d;
  return out;
}

}  // namespace

Nat pr_value(const PRConstruction& c, const std::vector<Nat>& args,
             const PREvalLimits& lim) {
  auto idx = def_index(c);
  PREvalCtx ctx{idx, lim};
  return ctx.call(c.main, args);
}

int pr_arity(const PRConstruction& c) {
  for (auto& d : c.defs)
    if (d.name == c.main) return d.arity;
  throw std::invalid_argument("main symbol not defined");
}

PRConstruction parse_pr(const std::string& text) {
  PRConstruction c;
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), ';', '\n');
  std::stringstream ss(norm);
  std::string line;
  auto split_slash = [](const std::string& w) {
    std::vector<std::string> parts;
    std::stringstream ps(w);
    std::string p;
    while (std::getline(ps, p, '/')) parts.push_back(p);
    return parts;
  };
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "main") {
      ls >> c.main;
      continue;
    }
    if (kw != "def") throw std::invalid_argument("expected 'def' or 'main': " + line);
    std::string head, eq, form;
    ls >> head >> eq >> form;
    if (eq != "=") throw std::invalid_argument("expected '=': " + line);
    auto hp = split_slash(head);
    if (hp.size() != 2) throw std::invalid_argument("expected <name>/<arity>: " + line);
    PRDef d;
    d.name = hp[0];
    d.arity = std::stoi(hp[1]);
    auto fp = split_slash(form);
    if (fp[0] == "succ") {
      d.form = PRDef::Form::Succ;
    } else if (fp[0] == "zero") {
      d.form = PRDef::Form::Zero;
    } else if (fp[0] == "proj") {
      d.form = PRDef::Form::Proj;
      if (fp.size() != 3) throw std::invalid_argument("expected proj/<n>/<i>: " + line);
      d.arity = std::stoi(fp[1]);
      d.proj_index = std::stoi(fp[2]);
    } else if (fp[0] == "comp") {
      d.form = PRDef::Form::Comp;
      ls >> d.g;
      std::string h;
      while (ls >> h) d.h.push_back(h);
    } else if (fp[0] == "rec") {
      d.form = PRDef::Form::Rec;
      std::string g, h;
      ls >> g >> h;
      d.g = g;
      d.h = {h};
    } else {
      throw std::invalid_argument("unknown definition form: " + form);
    }
    if (fp[0] == "zero" && fp.size() == 2) d.arity = std::stoi(fp[1]);
    c.defs.push_back(std::move(d));
  }
  return c;
}

std::string pr_to_string(const PRConstruction& c) {
  std::string out;
  for (auto& d : c.defs) {
    out += "def " + d.name + "/" + std::to_string(d.arity) + " = ";
    switch (d.form) {
      case PRDef::Form::Succ: out += "succ"; break;
      case PRDef::Form::Zero: out += "zero/" + std::to_string(d.arity); break;
      case PRDef::Form::Proj:
        out += "proj/" + std::to_string(d.arity) + "/" + std::to_string(d.proj_index);
        break;
      case PRDef::Form::Comp:
        out += "comp " + d.g;
        for (auto& h : d.h) out += " " + h;
        break;
      case PRDef::Form::Rec: out += "rec " + d.g + " " + d.h[0]; break;
    }
    out += "\n";
  }
  out += "main " + c.main + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// ExplicitFunction

ExplicitFunction ExplicitFunction::poly(ElemPtr t) {
  if (contains_exp(t))
    throw std::invalid_argument("explicit polynomial may not contain exp");
  return {Kind::Poly, std::move(t), {}};
}
ExplicitFunction ExplicitFunction::elem(ElemPtr t) { return {Kind::Elem, std::move(t), {}}; }
ExplicitFunction ExplicitFunction::prf(PRConstruction c) { return {Kind::PR, nullptr, std::move(c)}; }
ExplicitFunction ExplicitFunction::identity() { return poly(ElemTreeTerm::var("w")); }

int ExplicitFunction::arity() const {
  if (kind == Kind::PR) return pr_arity(pr);
  return static_cast<int>(tree_term_vars(tree).size());
}

Nat eval(const ExplicitFunction& f, const std::vector<Nat>& args,
         const PREvalLimits& lim) {
  if (f.kind == ExplicitFunction::Kind::PR) return pr_value(f.pr, args, lim);
  EvalLimits el;
  return tree_term_value(f.tree, args, el);
}

std::string explicit_to_string(const ExplicitFunction& f) {
  switch (f.kind) {
    case ExplicitFunction::Kind::Poly: return tree_term_to_string(f.tree);
    case ExplicitFunction::Kind::Elem: return tree_term_to_string(f.tree);
    default: {
      std::string s = pr_to_string(f.pr);
      std::replace(s.begin(), s.end(), '\n', ';');
      if (!s.empty() && s.back() == ';') s.pop_back();
      return s;
    }
  }
}

// ---------------------------------------------------------------------------
// Graph sequences and tau-bullet

namespace {

struct GraphTok {
  std::string text;
  int pos;
};

std::vector<GraphTok> graph_lex(const std::string& s) {
  std::vector<GraphTok> out;
  size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({s.substr(i, j - i), static_cast<int>(i)});
      i = j;
      continue;
    }
    out.push_back({std::string(1, ch), static_cast<int>(i)});
    ++i;
  }
  out.push_back({"", static_cast<int>(s.size())});
  return out;
}

// Terms over 0,',+,*, exp(...), the entry's variable, and earlier entries
// applied to one argument; inlining happens during the parse.
struct GraphParser {
  std::vector<GraphTok> toks;
  size_t pos = 0;
  const std::map<std::string, ElemPtr>& defined;
  std::map<std::string, std::string> var_alias;  // entry var -> "w"

  ElemPtr expr(int min_prec) {
    ElemPtr lhs = postfix();
    for (;;) {
      std::string t = toks[pos].text;
      int p = t == "+" ? 1 : t == "*" ? 2 : 0;
      if (!p || p < min_prec) break;
      ++pos;
      ElemPtr rhs = expr(p + 1);
      lhs = p == 1 ? ElemTreeTerm::plus(lhs, rhs) : ElemTreeTerm::times(lhs, rhs);
    }
    return lhs;
  }

  ElemPtr postfix() {
    ElemPtr t = primary();
    while (toks[pos].text == "'") {
      ++pos;
      t = ElemTreeTerm::succ(t);
    }
    return t;
  }

  ElemPtr primary() {
    std::string t = toks[pos].text;
    if (t == "0") { ++pos; return ElemTreeTerm::zero(); }
    if (t == "(") {
      ++pos;
      ElemPtr e = expr(0);
      expect(")");
      return e;
    }
    if (t.empty()) throw IllFormedGraphError("unexpected end of graph term");
    ++pos;
    if (toks[pos].text == "(") {
      ++pos;
      ElemPtr arg = expr(0);
      expect(")");
      if (t == "exp") return ElemTreeTerm::exp(arg);
      auto it = defined.find(t);
      if (it == defined.end())
        throw IllFormedGraphError("graph references undefined function " + t);
      return substitute_var(it->second, arg);
    }
    auto alias = var_alias.find(t);
    if (alias == var_alias.end())
      throw IllFormedGraphError("unknown variable " + t + " in graph term");
    return ElemTreeTerm::var(alias->second);
  }

  void expect(const std::string& s) {
    if (toks[pos].text != s)
      throw IllFormedGraphError("expected '" + s + "' in graph term");
    ++pos;
  }

  static ElemPtr substitute_var(const ElemPtr& t, const ElemPtr& arg) {
    if (!t) return t;
    if (t->kind == EK::Var) return arg;
    ElemTreeTerm copy = *t;
    copy.a = substitute_var(t->a, arg);
    copy.b = substitute_var(t->b, arg);
    return std::make_shared<const ElemTreeTerm>(std::move(copy));
  }
};

}  // namespace

GraphSequence parse_graph_sequence(const std::string& text) {
  GraphSequence seq;
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), ';', '\n');
  std::stringstream ss(norm);
  std::string line;
  std::map<std::string, ElemPtr> defined;
  while (std::getline(ss, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto lp = line.find('('), rp = line.find(')'), eq = line.find('=');
    if (lp == std::string::npos || rp == std::string::npos || eq == std::string::npos ||
        !(lp < rp && rp < eq))
      throw IllFormedGraphError("expected '<name>(<var>) = <term>': " + line);
    GraphSequence::Entry e;
    e.name = line.substr(0, lp);
    e.var = line.substr(lp + 1, rp - lp - 1);
    auto strip = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    strip(e.name);
    strip(e.var);
    if (defined.count(e.name))
      throw IllFormedGraphError("graph symbol " + e.name + " defined twice");
    GraphParser p{graph_lex(line.substr(eq + 1)), 0, defined, {{e.var, "w"}}};
    e.body = p.expr(0);
    if (!p.toks[p.pos].text.empty())
      throw IllFormedGraphError("trailing input in graph term: " + line);
    defined[e.name] = e.body;
    seq.entries.push_back(std::move(e));
  }
  if (seq.entries.empty()) throw IllFormedGraphError("empty graph sequence");
  return seq;
}

ElemPtr to_tree_term(const GraphSequence& seq) {
  // Entries are inlined as they parse; the last entry is the whole term.
  return seq.entries.back().body;
}

// ---------------------------------------------------------------------------
// Iteration and the displayed bounds

namespace {

// Compile a unary tree-term into PR definitions, returning the symbol that
// computes it. Fresh names use the given prefix.
struct PRBuilder {
  PRConstruction& c;
  int counter = 0;

  std::string fresh(const std::string& hint) {
    return hint + "_" + std::to_string(counter++);
  }
  void def(PRDef d) { c.defs.push_back(std::move(d)); }

  void prelude() {
    // add(x,y), mul(x,y), one(x)=1, exp2(x)=2^x
    def({"s1", 1, PRDef::Form::Succ, 0, "", {}});
    def({"p11", 1, PRDef::Form::Proj, 1, "", {}});
    def({"p21", 2, PRDef::Form::Proj, 1, "", {}});
    def({"p22", 2, PRDef::Form::Proj, 2, "", {}});
    def({"p32", 3, PRDef::Form::Proj, 2, "", {}});
    def({"p33", 3, PRDef::Form::Proj, 3, "", {}});
    def({"addh", 3, PRDef::Form::Comp, 0, "s1", {"p32"}});
    def({"add", 2, PRDef::Form::Rec, 0, "p11", {"addh"}});
    def({"z1", 1, PRDef::Form::Zero, 0, "", {}});
    def({"mulh", 3, PRDef::Form::Comp, 0, "add", {"p32", "p33"}});
    def({"mul", 2, PRDef::Form::Rec, 0, "z1", {"mulh"}});
    def({"z0", 0, PRDef::Form::Zero, 0, "", {}});
    def({"one0", 0, PRDef::Form::Comp, 0, "s1", {"z0"}});
    def({"dblh", 2, PRDef::Form::Comp, 0, "add", {"p22", "p22"}});
    def({"exp2", 1, PRDef::Form::Rec, 0, "one0", {"dblh"}});
    def({"one1", 1, PRDef::Form::Comp, 0, "s1", {"z1"}});
    def({"dbl1", 1, PRDef::Form::Comp, 0, "add", {"p11", "p11"}});
  }

  // Unary symbol computing the constant n.
  std::string constant(const Nat& n) {
    if (n == 0) return "z1";
    if (n == 1) return "one1";
    // binary expansion over dbl1 and s1
    std::vector<int> bits;
    for (Nat v = n; v > 0; v >>= 1) bits.push_back(static_cast<int>(v & 1));
    std::string cur = "one1";
    for (auto it = bits.rbegin() + 1; it != bits.rend(); ++it) {
      std::string d = fresh("c");
      def({d, 1, PRDef::Form::Comp, 0, "dbl1", {cur}});
      cur = d;
      if (*it) {
        std::string s = fresh("c");
        def({s, 1, PRDef::Form::Comp, 0, "s1", {cur}});
        cur = s;
      }
    }
    return cur;
  }

  std::string compile(const ElemPtr& t) {
    switch (t->kind) {
      case EK::Zero: return "z1";
      case EK::Var: return "p11";
      case EK::Succ: {
        std::string inner = compile(t->a);
        std::string n = fresh("f");
        def({n, 1, PRDef::Form::Comp, 0, "s1", {inner}});
        return n;
      }
      case EK::Plus:
      case EK::Times: {
        std::string a = compile(t->a), b = compile(t->b);
        std::string n = fresh("f");
        def({n, 1, PRDef::Form::Comp, 0, t->kind == EK::Plus ? "add" : "mul", {a, b}});
        return n;
      }
      case EK::Exp: {
        std::string inner = compile(t->a);
        std::string n = fresh("f");
        def({n, 1, PRDef::Form::Comp, 0, "exp2", {inner}});
        return n;
      }
    }
    throw std::logic_error("unreachable");
  }
};

// Inline a whole PR construction with a fresh name prefix; returns the new
// main symbol.
std::string splice(PRConstruction& into, const PRConstruction& from,
                   const std::string& prefix) {
  std::map<std::string, std::string> rename;
  for (auto& d : from.defs) {
    PRDef nd = d;
    nd.name = prefix + d.name;
    rename[d.name] = nd.name;
    if (!nd.g.empty()) nd.g = rename.at(nd.g);
    for (auto& h : nd.h) h = rename.at(h);
    into.defs.push_back(std::move(nd));
  }
  return rename.at(from.main);
}

}  // namespace

ExplicitFunction iterate(const ExplicitFunction& f, const Nat& m) {
  if (f.arity() != 1)
    throw ArityMismatchError("iterate needs a unary function");
  PRConstruction c;
  PRBuilder b{c};
  b.prelude();
  std::string fn;
  if (f.kind == ExplicitFunction::Kind::PR)
    fn = splice(c, f.pr, "u_");
  else
    fn = b.compile(f.tree);
  // it(0, x) = x;  it(m', x) = f(it(m, x))
  b.def({"ith", 3, PRDef::Form::Comp, 0, fn, {"p32"}});
  b.def({"it", 2, PRDef::Form::Rec, 0, "p11", {"ith"}});
  std::string cm = b.constant(m);
  b.def({"itm", 1, PRDef::Form::Comp, 0, "it", {cm, "p11"}});
  c.main = "itm";
  return ExplicitFunction::prf(std::move(c));
}

namespace {

ElemPtr tree_compose(const ElemPtr& outer, const ElemPtr& inner) {
  if (!outer) return outer;
  if (outer->kind == EK::Var) return inner;
  ElemTreeTerm copy = *outer;
  copy.a = tree_compose(outer->a, inner);
  copy.b = tree_compose(outer->b, inner);
  return std::make_shared<const ElemTreeTerm>(std::move(copy));
}

// Splice both operands into one construction and wire them through `op`.
ExplicitFunction pr_binary(const std::string& op, const ExplicitFunction& a,
                           const ExplicitFunction& b) {
  PRConstruction c;
  PRBuilder builder{c};
  builder.prelude();
  std::string fa = a.kind == ExplicitFunction::Kind::PR ? splice(c, a.pr, "a_")
                                                        : builder.compile(a.tree);
  std::string fb = b.kind == ExplicitFunction::Kind::PR ? splice(c, b.pr, "b_")
                                                        : builder.compile(b.tree);
  builder.def({"res", 1, PRDef::Form::Comp, 0, op, {fa, fb}});
  c.main = "res";
  return ExplicitFunction::prf(std::move(c));
}

}  // namespace

ExplicitFunction ef_sum(const ExplicitFunction& a, const ExplicitFunction& b) {
  if (a.arity() != 1 || b.arity() != 1)
    throw ArityMismatchError("ef_sum needs unary functions");
  if (a.kind != ExplicitFunction::Kind::PR && b.kind != ExplicitFunction::Kind::PR) {
    ElemPtr ta = tree_compose(a.tree, ElemTreeTerm::var("w"));
    ElemPtr tb = tree_compose(b.tree, ElemTreeTerm::var("w"));
    ElemPtr sum = ElemTreeTerm::plus(ta, tb);
    return contains_exp(sum) ? ExplicitFunction::elem(sum) : ExplicitFunction::poly(sum);
  }
  return pr_binary("add", a, b);
}

ExplicitFunction ef_compose(const ExplicitFunction& outer, const ExplicitFunction& inner) {
  if (outer.arity() != 1 || inner.arity() != 1)
    throw ArityMismatchError("ef_compose needs unary functions");
  if (outer.kind != ExplicitFunction::Kind::PR &&
      inner.kind != ExplicitFunction::Kind::PR) {
    ElemPtr t = tree_compose(outer.tree, inner.tree);
    return contains_exp(t) ? ExplicitFunction::elem(t) : ExplicitFunction::poly(t);
  }
  PRConstruction c;
  PRBuilder builder{c};
  builder.prelude();
  std::string fo = outer.kind == ExplicitFunction::Kind::PR
                       ? splice(c, outer.pr, "o_")
                       : builder.compile(outer.tree);
  std::string fi = inner.kind == ExplicitFunction::Kind::PR
                       ? splice(c, inner.pr, "i_")
                       : builder.compile(inner.tree);
  builder.def({"res", 1, PRDef::Form::Comp, 0, fo, {fi}});
  c.main = "res";
  return ExplicitFunction::prf(std::move(c));
}

ExplicitFunction ef_affine(unsigned long slope, const ExplicitFunction& f,
                           unsigned long offset) {
  if (f.kind != ExplicitFunction::Kind::PR) {
    ElemPtr t = slope == 1
                    ? f.tree
                    : ElemTreeTerm::times(ElemTreeTerm::constant(slope), f.tree);
    if (offset != 0) t = ElemTreeTerm::plus(t, ElemTreeTerm::constant(offset));
    return contains_exp(t) ? ExplicitFunction::elem(t) : ExplicitFunction::poly(t);
  }
  PRConstruction c;
  PRBuilder builder{c};
  builder.prelude();
  std::string ff = splice(c, f.pr, "f_");
  std::string s = builder.constant(slope);
  std::string o = builder.constant(offset);
  builder.def({"m1", 1, PRDef::Form::Comp, 0, "mul", {s, ff}});
  builder.def({"res", 1, PRDef::Form::Comp, 0, "add", {"m1", o}});
  c.main = "res";
  return ExplicitFunction::prf(std::move(c));
}

ExplicitFunction cla6_bound_function(const Nat& d, const ExplicitFunction& phi,
                                     const ExplicitFunction& eta) {
  if (phi.kind == ExplicitFunction::Kind::PR || eta.kind == ExplicitFunction::Kind::PR)
    throw std::invalid_argument("cla6 bound expects tree-term phi and eta");
  ElemPtr w = ElemTreeTerm::var("w");
  ElemPtr dfac = ElemTreeTerm::constant(static_cast<unsigned long>(d));
  ElemPtr pow = ElemTreeTerm::plus(ElemTreeTerm::exp(w), ElemTreeTerm::constant(1));
  ElemPtr body = tree_compose(phi.tree, tree_compose(eta.tree, w));
  return ExplicitFunction::elem(
      ElemTreeTerm::times(ElemTreeTerm::times(dfac, pow), body));
}

ExplicitFunction cla7_bound_function(const Nat& d, const ExplicitFunction& phi) {
  PRConstruction c;
  PRBuilder builder{c};
  builder.prelude();
  std::string f = phi.kind == ExplicitFunction::Kind::PR ? splice(c, phi.pr, "p_")
                                                         : builder.compile(phi.tree);
  // m(w) = 2^w * d; result = m(w) * it(m(w), w)
  std::string cd = builder.constant(d);
  builder.def({"mw", 1, PRDef::Form::Comp, 0, "mul", {"exp2", cd}});
  builder.def({"ith", 3, PRDef::Form::Comp, 0, f, {"p32"}});
  builder.def({"it", 2, PRDef::Form::Rec, 0, "p11", {"ith"}});
  builder.def({"itw", 1, PRDef::Form::Comp, 0, "it", {"mw", "p11"}});
  builder.def({"res", 1, PRDef::Form::Comp, 0, "mul", {"mw", "itw"}});
  c.main = "res";
  return ExplicitFunction::prf(std::move(c));
}

Nat quiescence_bound(const Nat& s, const Nat& q, const Nat& d, const Nat& eta_of_l,
                     const ExplicitFunction& phi) {
  Nat w = eval(phi, {eta_of_l});
  Nat r = 2 * d * eta_of_l + 2 * d + 1;
  return s * w * r * nat_pow(q, w) * nat_pow(q, r);
}

Nat bound_cla6(const Nat& d, const Nat& l, const ExplicitFunction& phi,
               const ExplicitFunction& eta) {
  Nat p2 = nat_pow(2, l);
  return d * (p2 + 1) * eval(phi, {eval(eta, {l})});
}

Nat bound_cla7(const Nat& d, const Nat& l, const ExplicitFunction& phi,
               const PREvalLimits& lim) {
  // 2^l * d * phi^(2^l * d)(l); the iteration is applied directly rather
  // than through the PR representation of iterate().
  Nat m = nat_pow(2, l) * d;
  Nat acc = l;
  for (Nat i = 0; i < m; ++i) {
    acc = eval(phi, {acc}, lim);
    if (acc > lim.value_cap)
      throw ResourceCapError("cla7 bound exceeded the value ceiling");
  }
  return m * acc;
}

const unsigned long kMuSlope = 4;
const unsigned long kMuOffset = 16;

Nat bound_cla5_space(const ExplicitFunction& phi, const Nat& l,
                     unsigned long mu_slope, unsigned long mu_offset) {
  return Nat(mu_slope) * eval(phi, {l}) + mu_offset;
}

// ---------------------------------------------------------------------------
// eta

namespace {

constexpr unsigned long kMoveSlack = 4;  // covers Left/Right and framing

// Numeric and symbolic ceilings share the traversal; Num carries values,
// Sym carries tree-terms in the variable w.
struct EtaCtx {
  Sizebound::Kind mode;
  Nat l;
  std::map<std::string, Nat> ceil_num;
  std::map<std::string, ElemPtr> ceil_sym;
  std::vector<Nat> cands_num;
  std::vector<ElemPtr> cands_sym;
};

Nat eval_bound_num(const TermPtr& t, EtaCtx& c) {
  switch (t->kind) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::Succ: return eval_bound_num(t->a, c) + 1;
    case Term::Kind::Plus: return eval_bound_num(t->a, c) + eval_bound_num(t->b, c);
    case Term::Kind::Times: return eval_bound_num(t->a, c) * eval_bound_num(t->b, c);
    case Term::Kind::Len: {
      auto it = c.ceil_num.find(t->a->name);
      return it != c.ceil_num.end() ? it->second : c.l;
    }
    case Term::Kind::Var: {
      auto it = c.ceil_num.find(t->name);
      return it != c.ceil_num.end() ? it->second : nat_pow(2, c.l);
    }
    default:
      throw NotBoundedError("unexpected operator in a sizebound term");
  }
}

ElemPtr eval_bound_sym(const TermPtr& t, EtaCtx& c) {
  switch (t->kind) {
    case Term::Kind::Zero: return ElemTreeTerm::zero();
    case Term::Kind::Succ: return ElemTreeTerm::succ(eval_bound_sym(t->a, c));
    case Term::Kind::Plus:
      return ElemTreeTerm::plus(eval_bound_sym(t->a, c), eval_bound_sym(t->b, c));
    case Term::Kind::Times:
      return ElemTreeTerm::times(eval_bound_sym(t->a, c), eval_bound_sym(t->b, c));
    case Term::Kind::Len: {
      auto it = c.ceil_sym.find(t->a->name);
      return it != c.ceil_sym.end() ? it->second : ElemTreeTerm::var("w");
    }
    case Term::Kind::Var: {
      auto it = c.ceil_sym.find(t->name);
      return it != c.ceil_sym.end() ? it->second
                                    : ElemTreeTerm::exp(ElemTreeTerm::var("w"));
    }
    default:
      throw NotBoundedError("unexpected operator in a sizebound term");
  }
}

void eta_rec(const FormulaPtr& f, EtaCtx& c) {
  if (!f || f->is_atom()) return;
  if (f->kind == Formula::Kind::ChAll || f->kind == Formula::Kind::ChEx) {
    auto sb = guarded_sizebound(f, c.mode);
    if (!sb)
      throw NotBoundedError("choice quantifier guard is not a sizebound of the requested kind");
    Nat n = eval_bound_num(sb->bound_term, c);
    ElemPtr s = eval_bound_sym(sb->bound_term, c);
    c.cands_num.push_back(n);
    c.cands_sym.push_back(s);
    auto saved_n = c.ceil_num;
    auto saved_s = c.ceil_sym;
    c.ceil_num[f->var] = n;
    c.ceil_sym[f->var] = s;
    eta_rec(f->l->r, c);
    c.ceil_num = saved_n;
    c.ceil_sym = saved_s;
    return;
  }
  eta_rec(f->l, c);
  eta_rec(f->r, c);
}

EtaCtx run_eta(const FormulaPtr& f, const Nat& l, Sizebound::Kind mode) {
  EtaCtx c;
  c.mode = mode;
  c.l = l;
  eta_rec(f, c);
  return c;
}

}  // namespace

Nat eta_bound(const FormulaPtr& f, const Nat& l, Sizebound::Kind mode) {
  EtaCtx c = run_eta(f, l, mode);
  Nat best = 0;
  for (auto& n : c.cands_num) best = std::max(best, n);
  return best + kMoveSlack;
}

ElemPtr eta_term(const FormulaPtr& f, Sizebound::Kind mode) {
  EtaCtx c = run_eta(f, 2, mode);
  if (c.cands_sym.empty()) return ElemTreeTerm::constant(kMoveSlack);
  // Pick the candidate that dominates the others on a small grid; if none
  // does, sum the incomparable ones.
  auto value_at = [](const ElemPtr& t, unsigned long w) {
    auto vars = tree_term_vars(t);
    std::vector<Nat> args(vars.size(), Nat(w));
    EvalLimits lim;
    lim.exp_bits = 64;
    return tree_term_value(t, args, lim);
  };
  const std::vector<unsigned long> grid = {0, 1, 2, 3, 5, 8, 12};
  size_t best = 0;
  for (size_t i = 1; i < c.cands_sym.size(); ++i)
    if (value_at(c.cands_sym[i], 12) > value_at(c.cands_sym[best], 12)) best = i;
  auto dominates = [&](size_t i, size_t j) {
    for (auto w : grid)
      if (value_at(c.cands_sym[i], w) < value_at(c.cands_sym[j], w)) return false;
    return true;
  };
  ElemPtr out = c.cands_sym[best];
  for (size_t i = 0; i < c.cands_sym.size(); ++i)
    if (i != best && !dominates(best, i)) out = ElemTreeTerm::plus(out, c.cands_sym[i]);
  return ElemTreeTerm::plus(out, ElemTreeTerm::constant(kMoveSlack));
}

}  // namespace clarith
