#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clarith/bignum.hpp"

namespace clarith {

// A literal interactive Turing machine at desk scale: one work tape
// (read/write) and one run tape (read-only; the adversary appends to it).
// Symbols are 0..q-1 with 0 the blank; states 0..s-1 with 0 initial.
// Heads never move beyond the leftmost blank cell.
struct ToyHPM {
  int states = 1;
  int symbols = 1;

  enum class Dir : std::uint8_t { Stay, Left, Right };

  struct Action {
    int next_state = 0;
    int write = 0;
    Dir move_work = Dir::Stay;
    Dir move_run = Dir::Stay;
    bool emit = false;
  };

  // Keyed by (state, work symbol, run symbol); a missing entry halts.
  std::vector<std::optional<Action>> table;

  int idx(int state, int wsym, int rsym) const {
    return (state * symbols + wsym) * symbols + rsym;
  }
  const std::optional<Action>& at(int state, int wsym, int rsym) const {
    return table[idx(state, wsym, rsym)];
  }

  static ToyHPM make(int states, int symbols);
  // Set of states some emitting transition enters.
  std::vector<int> move_emitting_states() const;
};

// Description file: `states <s>`, `symbols <q>`, then lines
//   trans <state> <wsym> <rsym> -> <state'> <write> <W:L|R|S> <R:L|R|S> [!]
// where `!` marks a move-emitting transition. Symbols are numerals, `_` is
// the blank (0).
ToyHPM parse_toyhpm(const std::string& text);
std::string toyhpm_to_string(const ToyHPM& m);

struct HPMConfig {
  int state = 0;
  int work_head = 0;
  int run_head = 0;
  std::vector<int> work;  // symbols; trailing blanks trimmed
  std::vector<int> run;

  bool operator==(const HPMConfig& o) const = default;
  bool operator<(const HPMConfig& o) const;
};

struct IllFormedConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntactic well-formedness: symbols/states in range, heads within the
// written region extended by one blank cell.
void check_config(const ToyHPM& m, const HPMConfig& c);

// One deterministic transition; halting configurations are stationary.
// The emitted flag reports whether the step emits a move.
HPMConfig step_configuration(const ToyHPM& m, const HPMConfig& c, bool* emitted = nullptr);

struct ToyRun {
  std::vector<long> emission_cycles;
  Nat spacecost = 0;        // work cells ever visited
  long run_symbolwise = 1;  // |run tape| + 1
  HPMConfig final_config;
};

// Run for `steps` cycles from the start configuration; adversary batches
// append symbols to the run tape at their scheduled cycles.
ToyRun run_toyhpm(const ToyHPM& m, long steps,
                  const std::vector<std::pair<long, std::vector<int>>>& batches = {});

struct QuiescenceReport {
  bool pass = true;
  long silence_point = -1;  // first violated c
  long violation_cycle = -1;
};

// Quiescence harness: for every silence point c in [0, horizon-L], if the
// machine is silent on [c, c+L) it must stay silent through the horizon.
// The machine runs with a silent adversary.
QuiescenceReport check_quiescence(const ToyHPM& m, const Nat& L, long horizon);

struct ConfigBoundReport {
  bool pass = true;
  bool moved_within = false;
  long first_move_index = -1;  // -1 when silent forever
};

// Move-index bound harness: if the machine moves in the i-th deterministic
// successor of z then i < chi'(z). Iterates to chi'(z) and, when still
// silent, continues until a configuration repeats.
ConfigBoundReport config_bound_check(const ToyHPM& m, const HPMConfig& z,
                                     const Nat& chi_prime_of_z);

// All configurations with spacecost <= W and run-tape symbolwise length
// <= R (run content length < R), for the counting argument.
long count_configurations(int states, int symbols, int W, int R);

}  // namespace clarith
