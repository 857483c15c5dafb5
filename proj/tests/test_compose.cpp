#include "doctest.h"

#include <random>

#include "harness.hpp"

using namespace clarith;
using namespace clarith::harness;

namespace {

Schedule root_const(long cycle, const Nat& n) {
  Schedule s;
  s[cycle] = {{Side::Root, Move::constant_move({}, n)}};
  return s;
}

}  // namespace

TEST_CASE("axiom strategies") {
  auto ax8 = axiom_strategy(AxiomId::Axiom8);
  auto moves = play_to_quiescence(ax8, root_const(0, 3));
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].constant == 4);
  CHECK(find_loss(ax8, 8, 64) == std::nullopt);

  auto ax9 = axiom_strategy(AxiomId::Axiom9);
  auto m9 = play_to_quiescence(ax9, root_const(0, 5));
  REQUIRE(m9.size() == 1);
  CHECK(m9[0].constant == 10);

  auto peano = axiom_strategy(AxiomId::Peano3);
  CHECK(play_to_quiescence(peano, {}).empty());
  // A silent run of a universally quantified axiom: the truth oracle cannot
  // settle the unbounded quantifier, so the verdict is undetermined.
  auto pr = play_line(peano, {}, 16);
  CHECK(pr.verdict.undetermined);
  CHECK(pr.run.empty());

  CHECK_THROWS_AS(axiom_strategy(static_cast<AxiomId>(99)), UnknownAxiomError);
}

TEST_CASE("run_script: the fact-2.2 basis script") {
  // "choosing 0 for y and then choosing the left chor-disjunct"
  auto target = parse_formula("chex y. (|y| <= |0| /\\ (0 = y#0 chor 0 = y#1))");
  auto script = parse_script(parse_sexpr_list("(move e 0) (choose 1 left)"));
  Strategy s = script_strategy(script, target, {});
  auto r = play_line(s, {}, 16);
  REQUIRE(r.run.size() == 2);
  CHECK(r.verdict.winner == Player::Top);
  CHECK(find_loss(s, 4, 64) == std::nullopt);
}

TEST_CASE("run_script: the fact-2.1 inductive step vs a = 2") {
  auto target = parse_formula(
      "chall x. chall y. ((chex z. (|z| <= |x| + |y| /\\ z = x + y)) -> "
      "chex z. (|z| <= |x'| + |y| /\\ z = x' + y))");
  auto script = parse_script(parse_sexpr_list(
      "(wait e const $x) (wait e const $y) (wait 0 const $a) "
      "(use 0 (feed e $a) (bind e const $b)) (move 1 $b)"));
  Strategy s = script_strategy(script, target, {axiom_strategy(AxiomId::Axiom8)});
  // closure x := 1, y := 1; environment answers z := 2 in the antecedent.
  auto r = play_line(s,
                     {Move::constant_move({}, 1), Move::constant_move({}, 1),
                      Move::constant_move({0}, 2)},
                     16);
  CHECK(r.verdict.winner == Player::Top);
  // The machine's reply was 3, in the consequent.
  bool found = false;
  for (auto& lm : r.run)
    if (lm.player == Player::Top && lm.move.address == Address{1})
      found = lm.move.constant == 3;
  CHECK(found);
  CHECK(find_loss(s, 3, 64) == std::nullopt);
}

TEST_CASE("empty script wins a true elementary target silently") {
  Strategy s = script_strategy(Script{}, parse_formula("0'' = 0' + 0'"), {});
  auto r = play_line(s, {}, 8);
  CHECK(r.run.empty());
  CHECK(r.verdict.winner == Player::Top);
}

TEST_CASE("scripts retire as automatic winners on illegal adversary moves") {
  auto target = parse_formula("chall x. chex y. y = x'");
  auto script = parse_script(
      parse_sexpr_list("(wait e const $a) (compute succ $a $b) (move e $b)"));
  Strategy s = script_strategy(script, target, {});
  auto session = s.spawn();
  // Left/Right payload at a quantifier is illegal; the machine keeps quiet.
  auto out = session->step({Move::left({})});
  CHECK(out.empty());
  out = session->step({Move::constant_move({}, 3)});
  CHECK(out.empty());
}

TEST_CASE("copycat mirrors between paired subgames") {
  auto game = parse_formula(
      "(chall x. (x = 0 chor x = 0')) -> chall x. (x = 0 chor x = 0')");
  Strategy s = copycat(game, Pairing{{{Address{0}, Address{1}}}});
  CHECK(find_loss(s, 4, 64) == std::nullopt);

  // Environment resolving the consequent is mirrored into the antecedent.
  auto r = play_line(s, {Move::constant_move({1}, 2)}, 16);
  bool mirrored = false;
  for (auto& lm : r.run)
    if (lm.player == Player::Top && lm.move.address == Address{0})
      mirrored = lm.move.constant == 2;
  CHECK(mirrored);

  // Empty pairing: a silent strategy.
  Strategy silent = copycat(parse_formula("0 = 0"), Pairing{});
  CHECK(play_to_quiescence(silent, {}).empty());

  CHECK_THROWS_AS(copycat(parse_formula("(0 = 0) -> 0 = 0'"),
                          Pairing{{{Address{0}, Address{1}}}}),
                  PairingMismatchError);
  CHECK_THROWS_AS(copycat(parse_formula("(0 = 0) /\\ 0 = 0"),
                          Pairing{{{Address{0}, Address{1}}}}),
                  PairingMismatchError);
}

TEST_CASE("proc_up on the doubling corpus") {
  InductionRows rows;
  rows.basis = doubling_basis();
  rows.step = doubling_step();
  rows.f = doubling_formula();
  rows.var = "x";
  rows.k = 4;

  // j = 0, i = 0: the output is row 0's silent-scenario moves.
  auto b0 = proc_up(0, 0, {}, rows, 1);
  REQUIRE(b0.size() == 1);
  REQUIRE(b0[0].size() == 1);
  CHECK(b0[0][0].constant == 0);

  // j = 0, i = k: the recurrence hands 2k upward.
  for (long k = 1; k <= 4; ++k) {
    auto b = proc_up(0, k, {}, rows, 1);
    REQUIRE(b.size() == 1);
    REQUIRE(b[0].size() == 1);
    CHECK(b[0][0].constant == 2 * k);
  }

  // Silent rows: all batches empty.
  InductionRows silent = rows;
  silent.basis = script_strategy(Script{}, parse_formula("0 = 0"), {});
  silent.step = script_strategy(
      Script{}, parse_formula("(0 = 0) -> 0 = 0"), {});
  auto bs = proc_up(0, 3, {}, silent, 1);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].empty());
}

TEST_CASE("proc_down: trivial i = k and determinism") {
  InductionRows rows;
  rows.basis = doubling_basis();
  rows.step = doubling_step();
  rows.f = doubling_formula();
  rows.var = "x";
  rows.k = 3;

  // i = k with one alpha batch and a silent step row: gamma_1 empty.
  InductionRows silent = rows;
  silent.step = script_strategy(Script{}, parse_formula("(0 = 0) -> 0 = 0"), {});
  std::vector<Batch> alphas{{Move::constant_move({}, 7)}};
  auto g = proc_down(1, 3, alphas, silent, 1, 3);
  REQUIRE(g.size() == 1);
  CHECK(g[0].empty());

  // DOWN(k+1) returns the alphas unchanged (the recomputation base).
  auto g2 = proc_down(1, 4, alphas, rows, 1, 3);
  REQUIRE(g2.size() == 1);
  REQUIRE(g2[0].size() == 1);
  CHECK(g2[0][0].constant == 7);

  // Recomputation determinism.
  auto a = proc_up(0, 2, {}, rows, 1);
  auto b = proc_up(0, 2, {}, rows, 1);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].size() == b[i].size());
    for (size_t j = 0; j < a[i].size(); ++j) CHECK(a[i][j] == b[i][j]);
  }
}

TEST_CASE("induction_space on the doubling corpus") {
  auto composed = induction_space(doubling_basis(), doubling_step(),
                                  doubling_formula(), "x");
  CHECK(composed.bound.kind == BoundObject::Kind::Space);

  // k = 3, silent environment: the real-play move is 6, and Top wins.
  auto r = play_line(composed.strategy, {Move::constant_move({}, 3)}, 64);
  CHECK(r.verdict.winner == Player::Top);
  bool answered = false;
  for (auto& lm : r.run)
    if (lm.player == Player::Top) answered = lm.move.constant == 6;
  CHECK(answered);

  // k = 0 plays as the basis alone.
  auto r0 = play_line(composed.strategy, {Move::constant_move({}, 0)}, 64);
  CHECK(r0.verdict.winner == Player::Top);

  // Exhaustive adversaries at small caps.
  CHECK(find_loss(composed.strategy, 5, 256) == std::nullopt);
}

TEST_CASE("induction_parallel matches on outcomes and handles EXP") {
  auto space = induction_space(doubling_basis(), doubling_step(),
                               doubling_formula(), "x");
  auto par = induction_parallel(doubling_basis(), doubling_step(),
                                doubling_formula(), "x", ParallelMode::CLA7);
  for (long k = 0; k <= 5; ++k) {
    auto ms = play_to_quiescence(space.strategy, root_const(0, k));
    auto mp = play_to_quiescence(par.strategy, root_const(0, k), 4096);
    REQUIRE(ms.size() == mp.size());
    for (size_t i = 0; i < ms.size(); ++i) CHECK(ms[i] == mp[i]);
  }

  // Exponentiation corpus: k = 3 answers 8.
  auto exp = induction_parallel(exp_basis(), exp_step(), exp_formula(), "x",
                                ParallelMode::CLA6);
  CHECK(exp.bound.kind == BoundObject::Kind::Time);
  auto moves = play_to_quiescence(exp.strategy, root_const(0, 3), 4096);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].constant == 8);
  CHECK(find_loss(exp.strategy, 4, 1 << 20) == std::nullopt);

  // CLA6 mode rejects non-exponentially-bounded formulas.
  CHECK_THROWS_AS(induction_parallel(doubling_basis(), doubling_step(),
                                     doubling_formula(), "x", ParallelMode::CLA6),
                  NotBoundedError);
  CHECK_THROWS_AS(
      induction_space(exp_basis(), exp_step(), exp_formula(), "x"),
      NotPolyBoundedError);
}

TEST_CASE("space frugality instrumentation") {
  auto space = induction_space(doubling_basis(), doubling_step(),
                               doubling_formula(), "x");
  std::shared_ptr<CompositionStats> stats;
  auto session = spawn_with_stats(space.strategy, &stats);
  REQUIRE(stats != nullptr);
  session->step({Move::constant_move({}, 16)});
  CHECK(stats->peak <= 2);  // sequential simulation keeps one row alive
  CHECK(stats->row_sims_started >= 17);

  auto par = induction_parallel(doubling_basis(), doubling_step(),
                                doubling_formula(), "x", ParallelMode::CLA7);
  std::shared_ptr<CompositionStats> pstats;
  auto psession = spawn_with_stats(par.strategy, &pstats);
  psession->step({Move::constant_move({}, 16)});
  CHECK(pstats->peak == 17);  // k + 1 rows live at once
}

TEST_CASE("winner transport at small scale") {
  auto space = induction_space(doubling_basis(), doubling_step(),
                               doubling_formula(), "x");
  // Premises win; the composed strategy wins every adversary line.
  CHECK(find_loss(doubling_basis(), 6, 256) == std::nullopt);
  CHECK(find_loss(doubling_step(), 4, 256) == std::nullopt);
  CHECK(find_loss(space.strategy, 6, 256) == std::nullopt);
}

TEST_CASE("copycat soundness: paired subgames finish identical") {
  auto game = parse_formula(
      "(chall x. (x = 0 chor chex y. y = x)) -> chall x. (x = 0 chor chex y. y = x)");
  Strategy s = copycat(game, Pairing{{{Address{0}, Address{1}}}});
  std::mt19937 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    // Random legal-reasonable adversary lines.
    auto session = s.spawn();
    GameState state = GameState::initial(s.game);
    for (int moves = 0; moves < 6; ++moves) {
      std::vector<Move> opts;
      for (auto& d : legal_moves(state, Player::Bot)) {
        if (d.kind == Formula::Kind::ChAnd || d.kind == Formula::Kind::ChOr) {
          opts.push_back(Move::left(d.address));
          opts.push_back(Move::right(d.address));
        } else {
          for (int n = 0; n <= 3; ++n)
            opts.push_back(Move::constant_move(d.address, n));
        }
      }
      if (opts.empty()) break;
      auto& m = opts[std::uniform_int_distribution<size_t>(0, opts.size() - 1)(rng)];
      state = apply_move(state, {Player::Bot, m});
      for (auto& o : session->step({m}))
        state = apply_move(state, {Player::Top, o});
    }
    // Finished run: both sides of the pairing hold the same formula.
    FormulaPtr l = state.current->l, r = state.current->r;
    CHECK(formula_equal(l, r));
  }
}

TEST_CASE("eta soundness: no corpus move exceeds eta_bound") {
  auto composed = induction_space(doubling_basis(), doubling_step(),
                                  doubling_formula(), "x");
  for (long k = 0; k <= 8; ++k) {
    auto r = play_line(composed.strategy, {Move::constant_move({}, k)}, 1024);
    REQUIRE(r.verdict.winner == Player::Top);
    Nat l = nat_size(k);
    Nat ceiling = eta_bound(doubling_formula(), l, Sizebound::Kind::Polynomial);
    for (auto& lm : r.run) {
      if (lm.move.payload != Move::Payload::Constant) continue;
      CHECK(nat_size(lm.move.constant) <= ceiling);
    }
  }
  auto exp = induction_parallel(exp_basis(), exp_step(), exp_formula(), "x",
                                ParallelMode::CLA6);
  for (long k = 0; k <= 6; ++k) {
    auto r = play_line(exp.strategy, {Move::constant_move({}, k)}, 1 << 16);
    REQUIRE(r.verdict.winner == Player::Top);
    Nat l = nat_size(k);
    Nat ceiling = eta_bound(exp_formula(), l, Sizebound::Kind::Exponential);
    for (auto& lm : r.run) {
      if (lm.move.payload != Move::Payload::Constant) continue;
      CHECK(nat_size(lm.move.constant) <= ceiling);
    }
  }
}

TEST_CASE("unroutable premise moves surface as IllegalPremiseBehavior") {
  // The premise answers at the root, but the script binds a side payload:
  // the constant emission has nowhere to go.
  auto target = parse_formula("chall x. chex y. y = x'");
  auto script = parse_script(parse_sexpr_list(
      "(wait e const $a) (use 0 (feed e $a) (bind e side $d)) (move e 0)"));
  Strategy s = script_strategy(script, target, {axiom_strategy(AxiomId::Axiom8)});
  auto session = s.spawn();
  CHECK_THROWS_AS(session->step({Move::constant_move({}, 3)}),
                  IllegalPremiseBehaviorError);
}

TEST_CASE("schedule overruns are rejected by composed rows too") {
  InductionRows rows;
  rows.basis = doubling_basis();
  rows.step = doubling_step();
  rows.f = doubling_formula();
  rows.var = "x";
  rows.k = 2;
  // alphas for j=1 must exist; an empty alpha list with j=1 is a caller bug.
  CHECK_THROWS_AS(proc_down(1, 1, {}, rows, 1, 2), std::exception);
}

TEST_CASE("composers retire as automatic winners on illegal environment play") {
  auto space = induction_space(doubling_basis(), doubling_step(),
                               doubling_formula(), "x");
  auto s1 = space.strategy.spawn();
  CHECK(s1->step({Move::left({})}).empty());  // Left at a quantifier: illegal
  CHECK(s1->step({Move::constant_move({}, 2)}).empty());  // stays retired

  auto par = induction_parallel(doubling_basis(), doubling_step(),
                                doubling_formula(), "x", ParallelMode::CLA7);
  auto s2 = par.strategy.spawn();
  CHECK(s2->step({Move::constant_move({0}, 1)}).empty());  // bad address
  CHECK(s2->step({Move::constant_move({}, 2)}).empty());
}
