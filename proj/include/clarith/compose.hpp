#pragma once

#include "clarith/script.hpp"

namespace clarith {

enum class AxiomId {
  Peano1, Peano2, Peano3, Peano4, Peano5, Peano6, Peano7,
  Axiom8,  // chall x. chex y. y = x'
  Axiom9,  // chall x. chex y. y = x#0
};

struct UnknownAxiomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Peano axioms: a silent strategy. Axiom 8: waits for the root constant n
// and answers n+1. Axiom 9: answers 2n.
Strategy axiom_strategy(AxiomId id);
FormulaPtr axiom_formula(AxiomId id);  // Peano7 has no fixed instance

// Subgame occurrences to keep synchronized within one game: identical
// underlying formulas of opposite polarities.
struct Pairing {
  std::vector<std::pair<Address, Address>> pairs;
};

struct PairingMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Strategy copycat(const FormulaPtr& game, const Pairing& pairing);

// ---------------------------------------------------------------------------
// Induction composition

// Region-relative move batches: moves within F'(i) subgames.
using Batch = std::vector<Move>;
using Batches = std::vector<Batch>;

struct IllegalEnvironmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The k+1 premise instances for one induction at root constants (k, c):
// row 0 plays F'(0) (the basis pre-fed with c), row i in 1..k plays
// F'(i-1) -> F'(i) (the step pre-fed with x := i-1 and c).
struct InductionRows {
  Strategy basis;
  Strategy step;
  FormulaPtr f;     // F(x), the induction formula
  std::string var;  // x
  std::map<std::string, Nat> consts;  // values for the other free variables
  long k = 0;

  Schedule prelude_row0() const;
  Schedule prelude_row(long i) const;  // 1-based
};

// Counters shared by one composed session; `live`/`peak` count row
// simulations the composer itself keeps open.
struct CompositionStats {
  long live = 0;
  long peak = 0;
  long row_sims_started = 0;
  long logical_steps = 0;
  Nat batch_cells = 0;
  Nat peak_batch_cells = 0;
};

// Procedure UP_j: returns the consequent batches <beta_1..beta_{j+1}> of
// row i, recomputing everything it needs and keeping at most one row
// simulation alive at a time.
Batches proc_up(int j, long i, const std::vector<Batch>& alphas,
                const InductionRows& rows, long L, CompositionStats* stats = nullptr);

// Procedure DOWN_j: returns the antecedent batches <gamma_1..gamma_j>.
// i may be k+1, in which case the batches are the alphas unchanged.
Batches proc_down(int j, long i, const std::vector<Batch>& alphas,
                  const InductionRows& rows, long L, long k,
                  CompositionStats* stats = nullptr);

struct ComposedStrategy {
  Strategy strategy;
  std::string composer;  // "axiom" | "script" | "ind-space" | "ind-parallel"
  FormulaPtr formula;    // conclusion game
  BoundObject bound;
  std::vector<std::shared_ptr<const ComposedStrategy>> premises;
};

enum class ParallelMode { CLA6, CLA7 };

// The space-frugal composer: sequential UP/DOWN simulation with
// recomputation instead of retention.
ComposedStrategy induction_space(const Strategy& basis, const Strategy& step,
                                 const FormulaPtr& f, const std::string& var);

// The parallel composer: k+1 simultaneous simulations
// chained by copycat.
ComposedStrategy induction_parallel(const Strategy& basis, const Strategy& step,
                                    const FormulaPtr& f, const std::string& var,
                                    ParallelMode mode);

// Instrumentation access: the stats object of a spawned composed session.
class ComposedSession;
std::unique_ptr<Session> spawn_with_stats(const Strategy& s,
                                          std::shared_ptr<CompositionStats>* stats);

// Drive a strategy against a schedule until it quiesces (at most
// max_cycles); returns all emitted moves in order.
std::vector<Move> play_to_quiescence(const Strategy& s, const Schedule& sched,
                                     long max_cycles = 4096);

}  // namespace clarith
