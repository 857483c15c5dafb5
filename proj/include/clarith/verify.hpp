#pragma once

#include <optional>

#include "clarith/compose.hpp"

namespace clarith {

struct DrivenPlay {
  std::vector<LabMove> run;
  RunVerdict verdict;
};

// Replay the strategy against one adversary line, one adversary move per
// cycle, draining machine output in between.
DrivenPlay drive_line(const Strategy& s, const std::vector<Move>& env_moves,
                      const Nat& eval_cap, long drain = 256);

struct VerifyOutcome {
  bool won_all = true;
  long lines = 0;
  std::optional<DrivenPlay> loss;
};

struct VerifyCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive legal-reasonable adversaries with constants <= const_cap; every
// prefix counts as a finished line. Throws VerifyCapError past max_lines.
VerifyOutcome verify_win(const Strategy& s, const Nat& const_cap,
                         const Nat& eval_cap, long max_lines = 200000);

// Adversary options at a state: all legal-reasonable one-move extensions.
std::vector<Move> adversary_options(const GameState& state, const Nat& const_cap);

}  // namespace clarith
