#include "doctest.h"

#include <set>

#include "clarith/strategy.hpp"
#include "clarith/toyhpm.hpp"

using namespace clarith;

namespace {

// Minimal session: waits for a root constant n, replies with n + delta.
struct AddDeltaSession : Session {
  int delta;
  bool done = false;
  explicit AddDeltaSession(int d) : delta(d) {}
  std::vector<Move> step(const std::vector<Move>& observed) override {
    std::vector<Move> out;
    for (auto& m : observed)
      if (!done && m.payload == Move::Payload::Constant) {
        done = true;
        out.push_back(Move::constant_move({}, m.constant + delta));
      }
    return out;
  }
};

Strategy add_delta(int d) {
  Strategy s;
  s.name = "add" + std::to_string(d);
  s.spawn = [d] { return std::make_unique<AddDeltaSession>(d); };
  return s;
}

}  // namespace

TEST_CASE("run_scheduled waits, injects, and records") {
  Strategy succ = add_delta(1);

  // Empty schedule: the machine waits forever.
  auto t0 = run_scheduled(succ, {}, 10);
  CHECK(t0.events.empty());

  Schedule sched;
  sched[0] = {{Side::Root, Move::constant_move({}, 3)}};
  auto t1 = run_scheduled(succ, sched, 10);
  REQUIRE(t1.events.size() == 2);
  CHECK(t1.events[0].player == Player::Bot);
  CHECK(t1.events[1].player == Player::Top);
  CHECK(t1.events[1].move.constant == 4);
  CHECK(t1.events[1].cycle <= 10);

  // Determinism: identical schedules give identical transcripts.
  auto t2 = run_scheduled(succ, sched, 10);
  REQUIRE(t1.events.size() == t2.events.size());
  for (size_t i = 0; i < t1.events.size(); ++i) {
    CHECK(t1.events[i].cycle == t2.events[i].cycle);
    CHECK(t1.events[i].move == t2.events[i].move);
  }

  Schedule bad;
  bad[12] = {{Side::Root, Move::constant_move({}, 1)}};
  CHECK_THROWS_AS(run_scheduled(succ, bad, 10), ScheduleOverrunError);
}

TEST_CASE("side tags prepend the region prefix") {
  CHECK(side_adjusted({Side::Root, Move::left({})}).address.empty());
  CHECK(side_adjusted({Side::Antecedent, Move::left({})}).address == Address{0});
  CHECK(side_adjusted({Side::Consequent, Move::left({1})}).address == Address{1, 1});
}

TEST_CASE("meters: background, timecost, spacecost") {
  Strategy succ = add_delta(1);
  Schedule sched;
  sched[0] = {{Side::Root, Move::constant_move({}, 3)}};
  auto t = run_scheduled(succ, sched, 8);
  auto m = meters(t);
  CHECK(m.background[0] == 2);  // |3| = 2
  CHECK(m.background[7] == 2);
  // Instant reply: timecost 0 at the observation cycle.
  REQUIRE(m.timecost.size() == 1);
  CHECK(m.timecost.begin()->second == 0);

  // Two adversary constants 3 then 255: background steps 2 then 8.
  Schedule two;
  two[0] = {{Side::Root, Move::constant_move({}, 3)}};
  two[5] = {{Side::Root, Move::constant_move({}, 255)}};
  auto t2 = run_scheduled(add_delta(2), two, 8);
  auto m2 = meters(t2);
  CHECK(m2.background[0] == 2);
  CHECK(m2.background[4] == 2);
  CHECK(m2.background[5] == 8);

  // No adversary moves: background 0 throughout.
  auto t3 = run_scheduled(succ, {}, 5);
  auto m3 = meters(t3);
  for (auto& b : m3.background) CHECK(b == 0);

  // Monotone meters.
  for (size_t i = 1; i < m2.background.size(); ++i)
    CHECK(m2.background[i] >= m2.background[i - 1]);
  for (size_t i = 1; i < t2.spacecost.size(); ++i)
    CHECK(t2.spacecost[i] >= t2.spacecost[i - 1]);
}

TEST_CASE("transcript wire format") {
  Strategy succ = add_delta(1);
  Schedule sched;
  sched[2] = {{Side::Root, Move::constant_move({}, 3)}};
  auto t = run_scheduled(succ, sched, 5);
  CHECK(transcript_to_string(t) == "cycle 2 B e 3\ncycle 2 T e 4\n");
}

TEST_CASE("toyhpm parse/print round-trip and stepping") {
  // Two states; writes 1s rightward forever, silently.
  ToyHPM m = parse_toyhpm(
      "states 2\n"
      "symbols 2\n"
      "trans 0 _ _ -> 1 1 R S\n"
      "trans 1 _ _ -> 0 1 R S\n");
  CHECK(m.states == 2);
  ToyHPM m2 = parse_toyhpm(toyhpm_to_string(m));
  CHECK(toyhpm_to_string(m) == toyhpm_to_string(m2));

  HPMConfig c;
  bool emitted = true;
  auto c1 = step_configuration(m, c, &emitted);
  CHECK(!emitted);
  CHECK(c1.state == 1);
  CHECK(c1.work_head == 1);
  CHECK(c1.work == std::vector<int>{1});

  // Halting configuration: stationary.
  ToyHPM halt = ToyHPM::make(1, 2);
  HPMConfig h;
  auto h1 = step_configuration(halt, h);
  CHECK(h1 == h);
}

TEST_CASE("heads never pass the leftmost blank cell") {
  ToyHPM m = parse_toyhpm(
      "states 1\n"
      "symbols 2\n"
      "trans 0 _ _ -> 0 0 R R\n");  // never writes; tries to run right
  HPMConfig c;
  for (int i = 0; i < 5; ++i) c = step_configuration(m, c);
  CHECK(c.work_head == 0);  // leftmost blank is cell 0 while nothing written
  CHECK(c.run_head == 0);
}

TEST_CASE("ill-formed configurations are rejected") {
  ToyHPM m = ToyHPM::make(2, 2);
  HPMConfig c;
  c.state = 5;
  CHECK_THROWS_AS(step_configuration(m, c), IllFormedConfigError);
  HPMConfig d;
  d.work = {1};
  d.work_head = 3;
  CHECK_THROWS_AS(step_configuration(m, d), IllFormedConfigError);
}

TEST_CASE("check_quiescence on silent and chatty machines") {
  ToyHPM silent = parse_toyhpm(
      "states 2\nsymbols 2\n"
      "trans 0 _ _ -> 1 0 S S\n"
      "trans 1 _ _ -> 0 0 S S\n");
  auto rep = check_quiescence(silent, 4, 32);
  CHECK(rep.pass);

  // Emits at every cycle: silence never begins, so the claim holds.
  ToyHPM chatty = parse_toyhpm(
      "states 1\nsymbols 2\n"
      "trans 0 _ _ -> 0 0 S S !\n");
  CHECK(check_quiescence(chatty, 4, 32).pass);

  // Moves early then goes quiet forever: passes.
  ToyHPM once = parse_toyhpm(
      "states 2\nsymbols 2\n"
      "trans 0 _ _ -> 1 0 S S !\n");
  CHECK(check_quiescence(once, 4, 32).pass);
}

TEST_CASE("a late mover is caught by check_quiescence") {
  // A three-state machine that is silent for a few cycles and then emits;
  // with L at most that silence it violates the quiescence property, and
  // indeed it must burn work-tape space to count that far.
  ToyHPM m = ToyHPM::make(3, 2);
  // state 0: write 1, move right; on reading blank again keep writing.
  m.table[m.idx(0, 0, 0)] = {1, 1, ToyHPM::Dir::Right, ToyHPM::Dir::Stay, false};
  m.table[m.idx(1, 0, 0)] = {2, 1, ToyHPM::Dir::Right, ToyHPM::Dir::Stay, false};
  // After two writes, loop silently for a while on the written cells, then emit.
  m.table[m.idx(2, 0, 0)] = {2, 1, ToyHPM::Dir::Left, ToyHPM::Dir::Stay, true};
  auto run = run_toyhpm(m, 16);
  REQUIRE(!run.emission_cycles.empty());
  long first = run.emission_cycles.front();
  auto rep = check_quiescence(m, first, 4 * (first + 1));
  // Silence [0, first) has length >= L = first, and the machine then moves.
  CHECK(!rep.pass);
  CHECK(rep.silence_point == 0);
  CHECK(rep.violation_cycle == first);
}

TEST_CASE("config_bound_check bounds the index of the first move") {
  // Machine that emits on its fourth step.
  ToyHPM m = ToyHPM::make(5, 2);
  for (int s = 0; s < 4; ++s)
    m.table[m.idx(s, 0, 0)] = {s + 1, 0, ToyHPM::Dir::Stay, ToyHPM::Dir::Stay,
                               s == 3};
  HPMConfig z;
  auto ok = config_bound_check(m, z, 10);
  CHECK(ok.pass);
  CHECK(ok.moved_within);
  CHECK(ok.first_move_index == 3);

  // chi' too small: the machine is silent through chi'(z) but moves after.
  auto bad = config_bound_check(m, z, 2);
  CHECK(!bad.pass);
  CHECK(bad.first_move_index == 3);

  // Forever-silent machine passes vacuously.
  ToyHPM silent = ToyHPM::make(1, 2);
  CHECK(config_bound_check(silent, z, 3).pass);
}

TEST_CASE("configuration counting matches the five-factor bound") {
  for (int s = 1; s <= 3; ++s)
    for (int q = 1; q <= 2; ++q)
      for (int W = 1; W <= 3; ++W)
        for (int R = 1; R <= 4; ++R) {
          long bound = s * W * R;
          long qW = 1, qR = 1;
          for (int i = 0; i < W; ++i) qW *= q;
          for (int i = 0; i < R; ++i) qR *= q;
          bound *= qW * qR;
          CHECK(count_configurations(s, q, W, R) <= bound);
        }
}

TEST_CASE("configuration counting agrees with direct enumeration") {
  // Enumerate configurations reachable-form-style for s=2, q=2, W=2, R=2
  // and compare with the closed count.
  std::set<HPMConfig> all;
  int s = 2, W = 2, R = 2;
  auto strings = [&](int maxlen) {
    std::vector<std::vector<int>> out{{}};
    std::vector<std::vector<int>> frontier{{}};
    for (int l = 1; l <= maxlen; ++l) {
      std::vector<std::vector<int>> next;
      for (auto& v : frontier)
        for (int sym = 0; sym < 2; ++sym) {
          auto w = v;
          w.push_back(sym);
          next.push_back(w);
          if (sym != 0) out.push_back(w);  // canonical: no trailing blank
        }
      frontier = next;
    }
    return out;
  };
  for (int state = 0; state < s; ++state)
    for (auto& work : strings(W))
      for (auto& run : strings(R - 1))
        for (int wh = 0; wh <= (int)work.size() && wh < W; ++wh)
          for (int rh = 0; rh <= (int)run.size(); ++rh) {
            HPMConfig c;
            c.state = state;
            c.work = work;
            c.run = run;
            c.work_head = wh;
            c.run_head = rh;
            all.insert(c);
          }
  CHECK((long)all.size() == count_configurations(s, 2, W, R));
}
