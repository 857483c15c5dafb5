#include "clarith/strategy.hpp"

#include <algorithm>

namespace clarith {

Move side_adjusted(const ScheduledMove& sm) {
  if (sm.side == Side::Root) return sm.move;
  Move out = sm.move;
  out.address.insert(out.address.begin(), sm.side == Side::Antecedent ? 0 : 1);
  return out;
}

Transcript run_scheduled(const Strategy& s, const Schedule& sched, long steps) {
  if (steps < 1) throw std::invalid_argument("run_scheduled needs steps >= 1");
  if (!sched.empty() && sched.rbegin()->first >= steps)
    throw ScheduleOverrunError("schedule entry at cycle " +
                               std::to_string(sched.rbegin()->first) +
                               " is beyond the last simulated cycle");
  auto session = s.spawn();
  Transcript t;
  t.cycles = steps;
  Nat background = 0;
  Nat space_peak = 0;
  for (long c = 0; c < steps; ++c) {
    std::vector<Move> in;
    auto it = sched.find(c);
    if (it != sched.end())
      for (auto& sm : it->second) {
        Move m = side_adjusted(sm);
        if (m.payload == Move::Payload::Constant)
          background = std::max(background, nat_size(m.constant));
        in.push_back(std::move(m));
      }
    std::vector<Move> out = session->step(in);
    // Injections precede emissions within a cycle: an instant reply to a
    // batch observed on cycle c carries timecost 0.
    for (auto& m : in) t.events.push_back({c, Player::Bot, m});
    for (auto& m : out) t.events.push_back({c, Player::Top, m});
    space_peak = std::max(space_peak, session->space_units());
    t.spacecost.push_back(space_peak);
    t.background.push_back(background);
  }
  std::stable_sort(t.events.begin(), t.events.end(),
                   [](const TranscriptEvent& a, const TranscriptEvent& b) {
                     return a.cycle < b.cycle;
                   });
  return t;
}

Meters meters(const Transcript& t) {
  Meters m;
  m.background.assign(t.cycles, 0);
  m.spacecost = t.spacecost;
  Nat bg = 0;
  long last_adversary = 0;
  std::map<long, Nat> bg_at;
  for (auto& e : t.events) {
    if (e.player == Player::Bot && e.move.payload == Move::Payload::Constant)
      bg_at[e.cycle] = std::max(bg_at.count(e.cycle) ? bg_at[e.cycle] : Nat(0),
                                nat_size(e.move.constant));
  }
  auto it = bg_at.begin();
  for (long c = 0; c < t.cycles; ++c) {
    while (it != bg_at.end() && it->first <= c) {
      bg = std::max(bg, it->second);
      ++it;
    }
    m.background[c] = bg;
  }
  for (auto& e : t.events) {
    if (e.player == Player::Bot) {
      last_adversary = e.cycle;
    } else {
      m.timecost[e.cycle] = e.cycle - last_adversary;
    }
  }
  return m;
}

std::string transcript_to_string(const Transcript& t) {
  std::string out;
  for (auto& e : t.events)
    out += "cycle " + std::to_string(e.cycle) + " " +
           std::string(1, player_char(e.player)) + " " + move_to_string(e.move) + "\n";
  return out;
}

}  // namespace clarith
