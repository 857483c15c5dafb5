#pragma once

#include "clarith/compose.hpp"

namespace clarith {

enum class System { CLA5, CLA6, CLA7 };

std::string system_name(System s);
System system_from_name(const std::string& s);

struct ProofNode {
  enum class Rule { Axiom, LC, Induction };
  std::string id;
  Rule rule;
  FormulaPtr conclusion;  // closed; for Axiom nodes derived from the schema
  // Axiom
  int axiom = 0;  // 1..9
  // LC
  std::vector<std::string> premises;
  Script script;
  // Induction
  std::string var;
  std::string basis_id, step_id;
};

struct Proof {
  System system;
  std::vector<ProofNode> nodes;  // in file order
  std::string root;

  const ProofNode* node(const std::string& id) const;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string node;
  std::string code;     // SideConditionViolation, MalformedInduction, ...
  std::string message;
};

std::string diagnostic_to_string(const Diagnostic& d);

// DAG shape, axiom instances, induction premise/conclusion shapes, the
// per-system boundedness side condition, and script typechecks.
std::vector<Diagnostic> check_proof(const Proof& p);
bool check_ok(const std::vector<Diagnostic>& ds);  // warnings allowed

struct ExtractedSolution {
  std::shared_ptr<const ComposedStrategy> strategy;
  ExplicitFunction bound;
  BoundObject::Kind bound_kind;  // Space for CLA5, Time for CLA6/CLA7
};

struct CheckFailedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bottom-up over the DAG: axioms to axiom strategies, LC nodes to script
// strategies over their premise strategies, induction nodes to the space
// composer (CLA5) or the parallel composer (CLA6/CLA7); memoized per node.
ExtractedSolution extract(const Proof& p);

// Proof file format:
//   (proof (system CLA5|CLA6|CLA7)
//     (node <id> (axiom <k>))
//     (node <id> (axiom 7 (concl "<formula>")))
//     (node <id> (lc (concl "<formula>") (prem <id>*) (script <instr>*)))
//     (node <id> (ind (system-var <x>) (basis <id>) (step <id>)
//                     (concl "<formula>")))
//     (root <id>))
Proof parse_proof(const std::string& text);
std::string proof_to_string(const Proof& p);

// Polynomial-to-exponential proof transformation: rebuilds every CLA5
// induction over the
// exponentially relaxed formula, bridging with skeleton-synchronized LC
// nodes; the result checks under CLA6.
Proof transform_cla5_to_cla6(const Proof& p);

// Serialized composed strategies: the extraction recipe (the proof) plus
// the system, conclusion and bound.
std::string solution_to_string(const Proof& p, const ExtractedSolution& s);
Proof solution_proof(const std::string& text);  // re-parse for loading

// The bundled library proofs, keyed by
// name; all check under their home systems. The same texts ship as
// lib/<name>.clp, plus fact-5.1-transform produced by the transformation.
std::vector<std::pair<std::string, Proof>> library();
std::vector<std::pair<std::string, std::string>> library_texts();

}  // namespace clarith
