#include "clarith/toyhpm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace clarith {

ToyHPM ToyHPM::make(int states, int symbols) {
  ToyHPM m;
  m.states = states;
  m.symbols = symbols;
  m.table.assign(static_cast<size_t>(states) * symbols * symbols, std::nullopt);
  return m;
}

std::vector<int> ToyHPM::move_emitting_states() const {
  std::set<int> out;
  for (auto& a : table)
    if (a && a->emit) out.insert(a->next_state);
  return {out.begin(), out.end()};
}

namespace {

ToyHPM::Dir parse_dir(const std::string& s) {
  if (s == "L") return ToyHPM::Dir::Left;
  if (s == "R") return ToyHPM::Dir::Right;
  if (s == "S") return ToyHPM::Dir::Stay;
  throw std::invalid_argument("bad head direction: " + s);
}

char dir_char(ToyHPM::Dir d) {
  switch (d) {
    case ToyHPM::Dir::Left: return 'L';
    case ToyHPM::Dir::Right: return 'R';
    default: return 'S';
  }
}

int parse_sym(const std::string& s) {
  if (s == "_") return 0;
  return std::stoi(s);
}

}  // namespace

ToyHPM parse_toyhpm(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int states = -1, symbols = -1;
  std::vector<std::array<std::string, 8>> rows;
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "states") { ls >> states; continue; }
    if (kw == "symbols") { ls >> symbols; continue; }
    if (kw != "trans") throw std::invalid_argument("unknown toyhpm line: " + line);
    std::array<std::string, 8> r;
    std::string arrow;
    ls >> r[0] >> r[1] >> r[2] >> arrow >> r[3] >> r[4] >> r[5] >> r[6];
    if (arrow != "->") throw std::invalid_argument("expected '->': " + line);
    r[7] = "";
    ls >> r[7];
    rows.push_back(r);
  }
  if (states < 1 || symbols < 1)
    throw std::invalid_argument("toyhpm needs `states` and `symbols` headers");
  ToyHPM m = ToyHPM::make(states, symbols);
  for (auto& r : rows) {
    int st = std::stoi(r[0]), ws = parse_sym(r[1]), rs = parse_sym(r[2]);
    ToyHPM::Action a;
    a.next_state = std::stoi(r[3]);
    a.write = parse_sym(r[4]);
    a.move_work = parse_dir(r[5]);
    a.move_run = parse_dir(r[6]);
    a.emit = r[7] == "!";
    m.table[m.idx(st, ws, rs)] = a;
  }
  return m;
}

std::string toyhpm_to_string(const ToyHPM& m) {
  std::string out = "states " + std::to_string(m.states) + "\nsymbols " +
                    std::to_string(m.symbols) + "\n";
  for (int st = 0; st < m.states; ++st)
    for (int ws = 0; ws < m.symbols; ++ws)
      for (int rs = 0; rs < m.symbols; ++rs) {
        auto& a = m.at(st, ws, rs);
        if (!a) continue;
        out += "trans " + std::to_string(st) + " " + std::to_string(ws) + " " +
               std::to_string(rs) + " -> " + std::to_string(a->next_state) + " " +
               std::to_string(a->write) + " " + dir_char(a->move_work) + " " +
               dir_char(a->move_run) + (a->emit ? " !" : "") + "\n";
      }
  return out;
}

bool HPMConfig::operator<(const HPMConfig& o) const {
  return std::tie(state, work_head, run_head, work, run) <
         std::tie(o.state, o.work_head, o.run_head, o.work, o.run);
}

void check_config(const ToyHPM& m, const HPMConfig& c) {
  if (c.state < 0 || c.state >= m.states)
    throw IllFormedConfigError("state out of range");
  for (int s : c.work)
    if (s < 0 || s >= m.symbols) throw IllFormedConfigError("work symbol out of range");
  for (int s : c.run)
    if (s < 0 || s >= m.symbols) throw IllFormedConfigError("run symbol out of range");
  // Heads may stand anywhere on the written region plus the leftmost blank.
  if (c.work_head < 0 || c.work_head > static_cast<int>(c.work.size()))
    throw IllFormedConfigError("work head beyond the leftmost blank cell");
  if (c.run_head < 0 || c.run_head > static_cast<int>(c.run.size()))
    throw IllFormedConfigError("run head beyond the leftmost blank cell");
}

namespace {

int read_tape(const std::vector<int>& tape, int pos) {
  return pos < static_cast<int>(tape.size()) ? tape[pos] : 0;
}

int clamp_head(int pos, int dir_delta, int written) {
  int next = pos + dir_delta;
  if (next < 0) next = 0;
  if (next > written) next = written;  // leftmost blank cell
  return next;
}

}  // namespace

HPMConfig step_configuration(const ToyHPM& m, const HPMConfig& c, bool* emitted) {
  check_config(m, c);
  if (emitted) *emitted = false;
  int ws = read_tape(c.work, c.work_head);
  int rs = read_tape(c.run, c.run_head);
  auto& a = m.at(c.state, ws, rs);
  if (!a) return c;  // halting configurations are stationary
  HPMConfig n = c;
  n.state = a->next_state;
  if (c.work_head >= static_cast<int>(n.work.size()) && a->write != 0)
    n.work.resize(c.work_head + 1, 0);
  if (c.work_head < static_cast<int>(n.work.size())) n.work[c.work_head] = a->write;
  int wlen = static_cast<int>(n.work.size());
  int rlen = static_cast<int>(n.run.size());
  auto delta = [](ToyHPM::Dir d) {
    return d == ToyHPM::Dir::Left ? -1 : d == ToyHPM::Dir::Right ? 1 : 0;
  };
  n.work_head = clamp_head(c.work_head, delta(a->move_work), wlen);
  n.run_head = clamp_head(c.run_head, delta(a->move_run), rlen);
  if (emitted) *emitted = a->emit;
  return n;
}

ToyRun run_toyhpm(const ToyHPM& m, long steps,
                  const std::vector<std::pair<long, std::vector<int>>>& batches) {
  HPMConfig c;
  ToyRun out;
  std::map<long, std::vector<int>> sched(batches.begin(), batches.end());
  int visited = 0;  // rightmost work cell reached + 1
  for (long t = 0; t < steps; ++t) {
    auto it = sched.find(t);
    if (it != sched.end())
      for (int s : it->second) c.run.push_back(s);
    visited = std::max(visited, c.work_head + 1);
    bool emitted = false;
    c = step_configuration(m, c, &emitted);
    if (emitted) out.emission_cycles.push_back(t);
    visited = std::max(visited, c.work_head + 1);
  }
  out.spacecost = visited;
  out.run_symbolwise = static_cast<long>(c.run.size()) + 1;
  out.final_config = c;
  return out;
}

QuiescenceReport check_quiescence(const ToyHPM& m, const Nat& L, long horizon) {
  if (Nat(horizon) < 2 * L)
    throw std::invalid_argument("check_quiescence needs horizon >= 2L");
  ToyRun r = run_toyhpm(m, horizon);
  QuiescenceReport rep;
  // For silence point c: no emission in [c, c+L) but one at d >= c+L fails.
  // Scan emissions; the earliest violation is the first gap >= L followed
  // by a later emission.
  long prev = -1;
  for (long e : r.emission_cycles) {
    long gap_start = prev + 1;
    if (Nat(e - gap_start) >= L) {
      rep.pass = false;
      rep.silence_point = gap_start;
      rep.violation_cycle = e;
      return rep;
    }
    prev = e;
  }
  return rep;
}

ConfigBoundReport config_bound_check(const ToyHPM& m, const HPMConfig& z,
                                     const Nat& chi_prime_of_z) {
  check_config(m, z);
  ConfigBoundReport rep;
  HPMConfig c = z;
  for (Nat i = 0; i < chi_prime_of_z; ++i) {
    bool emitted = false;
    HPMConfig n = step_configuration(m, c, &emitted);
    if (emitted) {
      rep.moved_within = true;
      rep.first_move_index = static_cast<long>(i);
      return rep;
    }
    if (n == c) return rep;  // halted silently
    c = n;
  }
  // Silent through chi'(z) steps; keep going until a configuration repeats.
  std::set<HPMConfig> seen;
  Nat i = chi_prime_of_z;
  while (seen.insert(c).second) {
    bool emitted = false;
    HPMConfig n = step_configuration(m, c, &emitted);
    if (emitted) {
      rep.pass = false;
      rep.first_move_index = static_cast<long>(i);
      return rep;
    }
    if (n == c) break;
    c = n;
    ++i;
  }
  return rep;
}

long count_configurations(int states, int symbols, int W, int R) {
  // Distinct configurations with spacecost <= W (work region and head
  // within W cells) and run-tape symbolwise length <= R. Tape contents are
  // canonical: no trailing blanks.
  auto canonical = [&](int len) -> long {
    if (len == 0) return 1;
    long n = symbols - 1;
    for (int i = 1; i < len; ++i) n *= symbols;
    return n;
  };
  long count = 0;
  for (int wl = 0; wl <= W; ++wl)
    for (int rl = 0; rl <= R - 1; ++rl) {
      long heads_w = std::min(wl + 1, W);  // includes the leftmost blank
      long heads_r = rl + 1;
      count += static_cast<long>(states) * heads_w * heads_r * canonical(wl) *
               canonical(rl);
    }
  return count;
}

}  // namespace clarith
