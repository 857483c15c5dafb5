#include "clarith/verify.hpp"

namespace clarith {

DrivenPlay drive_line(const Strategy& s, const std::vector<Move>& env_moves,
                      const Nat& eval_cap, long drain) {
  auto session = s.spawn();
  GameState state = GameState::initial(s.game);
  DrivenPlay r;
  auto absorb = [&](const std::vector<Move>& outs) {
    for (auto& o : outs) {
      state = apply_move(state, {Player::Top, o});
      r.run.push_back({Player::Top, o});
    }
  };
  auto drain_machine = [&] {
    for (long i = 0; i < drain; ++i) {
      auto outs = session->step({});
      absorb(outs);
      if (outs.empty() && session->quiescent()) break;
    }
  };
  drain_machine();
  for (auto& m : env_moves) {
    try {
      state = apply_move(state, {Player::Bot, m});
    } catch (const IllegalMoveError&) {
      // Forfeiture: the offender loses and the machine retires.
      r.run.push_back({Player::Bot, m});
      r.verdict = winner(s.game, r.run, eval_cap);
      return r;
    }
    r.run.push_back({Player::Bot, m});
    absorb(session->step({m}));
    drain_machine();
  }
  r.verdict = winner(s.game, r.run, eval_cap);
  return r;
}

std::vector<Move> adversary_options(const GameState& state, const Nat& const_cap) {
  std::vector<Move> out;
  for (auto& d : legal_moves(state, Player::Bot)) {
    if (d.kind == Formula::Kind::ChAnd || d.kind == Formula::Kind::ChOr) {
      out.push_back(Move::left(d.address));
      out.push_back(Move::right(d.address));
    } else {
      for (Nat n = 0; n <= const_cap; ++n) {
        Move m = Move::constant_move(d.address, n);
        if (move_is_reasonable(state, m)) out.push_back(std::move(m));
      }
    }
  }
  return out;
}

VerifyOutcome verify_win(const Strategy& s, const Nat& const_cap,
                         const Nat& eval_cap, long max_lines) {
  VerifyOutcome out;
  std::vector<std::vector<Move>> frontier{{}};
  while (!frontier.empty()) {
    if (++out.lines > max_lines)
      throw VerifyCapError("adversary enumeration exceeded " +
                           std::to_string(max_lines) + " lines");
    std::vector<Move> seq = std::move(frontier.back());
    frontier.pop_back();
    DrivenPlay r = drive_line(s, seq, eval_cap);
    if (r.verdict.winner != Player::Top) {
      out.won_all = false;
      out.loss = std::move(r);
      return out;
    }
    GameState state = GameState::initial(s.game);
    for (auto& lm : r.run) state = apply_move(state, lm);
    for (auto& m : adversary_options(state, const_cap)) {
      auto seq2 = seq;
      seq2.push_back(std::move(m));
      frontier.push_back(std::move(seq2));
    }
  }
  return out;
}

}  // namespace clarith
