#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "clarith/parse.hpp"
#include "clarith/proof.hpp"
#include "clarith/verify.hpp"

namespace py = pybind11;
using namespace clarith;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Nat to_nat(const py::int_& v) { return Nat(py::repr(v).cast<std::string>()); }
py::int_ from_nat(const Nat& v) {
  py::object builtins = py::module_::import("builtins");
  return builtins.attr("int")(v.str());
}

std::vector<Nat> to_nats(const std::vector<py::int_>& xs) {
  std::vector<Nat> out;
  for (auto& x : xs) out.push_back(to_nat(x));
  return out;
}

py::dict classify_dict(const FormulaPtr& f) {
  FormulaClass c = classify(f);
  py::dict d;
  d["elementary"] = c.elementary;
  d["polynomially_bounded"] = c.polynomially_bounded;
  d["exponentially_bounded"] = c.exponentially_bounded;
  d["depth"] = c.depth;
  return d;
}

py::dict play_solution(const std::string& path,
                       const std::vector<std::string>& env_moves) {
  Proof p = solution_proof(slurp(path));
  ExtractedSolution sol = extract(p);
  std::vector<Move> moves;
  for (auto& s : env_moves) {
    auto sp = s.find(' ');
    Address a = address_from_string(s.substr(0, sp));
    std::string payload = s.substr(sp + 1);
    if (payload == "L")
      moves.push_back(Move::left(a));
    else if (payload == "R")
      moves.push_back(Move::right(a));
    else
      moves.push_back(Move::constant_move(a, Nat(payload)));
  }
  DrivenPlay r = drive_line(sol.strategy->strategy, moves, Nat(1) << 20);
  py::list run;
  for (auto& lm : r.run)
    run.append(std::string(1, player_char(lm.player)) + " " +
               move_to_string(lm.move));
  py::dict out;
  out["run"] = run;
  out["legal"] = r.verdict.legal;
  out["undetermined"] = r.verdict.undetermined;
  out["winner"] = r.verdict.winner
                      ? std::string(1, player_char(*r.verdict.winner))
                      : std::string("none");
  return out;
}

}  // namespace

PYBIND11_MODULE(_clarith, m) {
  m.doc() = "clarithmetic toolchain: formulas, games, proofs and extracted "
            "strategies for CLA5/CLA6/CLA7";

  py::register_exception<ParseError>(m, "FormulaParseError");
  py::register_exception<ResourceCapError>(m, "ResourceCap");

  m.def("parse", [](const std::string& s) {
    return formula_to_string(parse_formula(s));
  }, "Parse a formula and return its canonical form");

  m.def("classify", [](const std::string& s) {
    return classify_dict(parse_formula(s));
  });

  m.def("depth", [](const std::string& s) { return depth(parse_formula(s)); });

  m.def("elementarize", [](const std::string& s) {
    return formula_to_string(elementarize(parse_formula(s)));
  });

  m.def("choice_closure", [](const std::string& s) {
    return formula_to_string(choice_closure(parse_formula(s)));
  });

  m.def("exp_relax", [](const std::string& s) {
    return formula_to_string(exp_relax_formula(parse_formula(s)));
  });

  m.def("overline", [](const std::string& s, const std::string& l) {
    return formula_to_string(overline(parse_formula(s), parse_formula(l)));
  });

  m.def("eval_elementary", [](const std::string& s, long cap) {
    switch (eval_elementary(parse_formula(s), cap)) {
      case Truth::True: return "true";
      case Truth::False: return "false";
      default: return "unknown";
    }
  }, py::arg("formula"), py::arg("cap") = 64);

  m.def("game_tree_winner", [](const std::string& s, long cap, long ecap) {
    return std::string(1, player_char(game_tree_winner(parse_formula(s), cap, ecap)));
  }, py::arg("formula"), py::arg("const_cap") = 4, py::arg("eval_cap") = 64);

  m.def("tree_eval", [](const std::string& t, const std::vector<py::int_>& args) {
    return from_nat(tree_term_value(parse_tree_term(t), to_nats(args)));
  });

  m.def("pr_eval", [](const std::string& text, const std::vector<py::int_>& args) {
    return from_nat(pr_value(parse_pr(text), to_nats(args)));
  });

  m.def("pr_validate", [](const std::string& text) {
    py::list out;
    for (auto& d : validate_pr(parse_pr(text))) out.append(d.message);
    return out;
  });

  m.def("eta_bound", [](const std::string& f, long l, const std::string& mode) {
    auto kind = mode == "exp" ? Sizebound::Kind::Exponential
                              : Sizebound::Kind::Polynomial;
    return from_nat(eta_bound(parse_formula(f), l, kind));
  }, py::arg("formula"), py::arg("l"), py::arg("mode") = "poly");

  m.def("quiescence_bound",
        [](long s, long q, long d, long eta_l, const std::string& phi) {
          auto fn = phi.empty() ? ExplicitFunction::identity()
                                : ExplicitFunction::poly(parse_tree_term(phi));
          return from_nat(quiescence_bound(s, q, d, eta_l, fn));
        },
        py::arg("s"), py::arg("q"), py::arg("d"), py::arg("eta_l"),
        py::arg("phi") = "");

  m.def("check_proof_file", [](const std::string& path) {
    Proof p = parse_proof(slurp(path));
    py::list diags;
    auto ds = check_proof(p);
    for (auto& d : ds) diags.append(diagnostic_to_string(d));
    py::dict out;
    out["ok"] = check_ok(ds);
    out["diagnostics"] = diags;
    out["system"] = system_name(p.system);
    return out;
  });

  m.def("extract_file", [](const std::string& path) {
    Proof p = parse_proof(slurp(path));
    ExtractedSolution sol = extract(p);
    py::dict out;
    out["conclusion"] = formula_to_string(sol.strategy->formula);
    out["bound"] = explicit_to_string(sol.bound);
    out["bound_kind"] =
        sol.bound_kind == BoundObject::Kind::Space ? "space" : "time";
    return out;
  });

  m.def("play", &play_solution, py::arg("path"), py::arg("env_moves"),
        "Drive an extracted strategy against scripted environment moves");

  m.def("library_names", [] {
    std::vector<std::string> out;
    for (auto& [name, p] : library()) out.push_back(name);
    return out;
  });
}
