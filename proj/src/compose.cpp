#include "clarith/compose.hpp"

#include <algorithm>

#include "clarith/parse.hpp"

namespace clarith {

namespace {

FormulaPtr closed_axiom(const char* text) { return parse_formula(text); }

class SilentSession final : public Session {
 public:
  std::vector<Move> step(const std::vector<Move>&) override { return {}; }
};

// Axiom 8/9: wait for the root constant, answer f(n), retire.
class RootFnSession final : public Session {
 public:
  explicit RootFnSession(bool doubles) : doubles_(doubles) {}
  std::vector<Move> step(const std::vector<Move>& observed) override {
    std::vector<Move> out;
    for (auto& m : observed)
      if (!done_ && m.address.empty() && m.payload == Move::Payload::Constant) {
        done_ = true;
        Nat reply = doubles_ ? Nat(m.constant * 2) : Nat(m.constant + 1);
        out.push_back(Move::constant_move({}, std::move(reply)));
      }
    return out;
  }

 private:
  bool doubles_;
  bool done_ = false;
};

}  // namespace

FormulaPtr axiom_formula(AxiomId id) {
  switch (id) {
    case AxiomId::Peano1: return closed_axiom("all x. ~x' = 0");
    case AxiomId::Peano2: return closed_axiom("all x. all y. (x' = y' -> x = y)");
    case AxiomId::Peano3: return closed_axiom("all x. x + 0 = x");
    case AxiomId::Peano4: return closed_axiom("all x. all y. x + y' = (x + y)'");
    case AxiomId::Peano5: return closed_axiom("all x. x * 0 = 0");
    case AxiomId::Peano6: return closed_axiom("all x. all y. x * y' = x * y + x");
    case AxiomId::Peano7: return nullptr;  // induction schema instances
    case AxiomId::Axiom8: return closed_axiom("chall x. chex y. y = x'");
    case AxiomId::Axiom9: return closed_axiom("chall x. chex y. y = x#0");
  }
  throw UnknownAxiomError("bad axiom id");
}

Strategy axiom_strategy(AxiomId id) {
  Strategy s;
  s.game = axiom_formula(id);
  s.quiescence = 1;
  auto poly = [](const char* t) {
    return BoundObject{BoundObject::Kind::Space,
                       ExplicitFunction::poly(parse_tree_term(t))};
  };
  switch (id) {
    case AxiomId::Axiom8:
      s.name = "axiom8";
      s.declared_bound = poly("w + 0''''");
      s.spawn = [] { return std::make_unique<RootFnSession>(false); };
      return s;
    case AxiomId::Axiom9:
      s.name = "axiom9";
      s.declared_bound = poly("w + 0''''");
      s.spawn = [] { return std::make_unique<RootFnSession>(true); };
      return s;
    default:
      s.name = "peano";
      s.declared_bound = poly("0");
      s.spawn = [] { return std::make_unique<SilentSession>(); };
      return s;
  }
}

namespace {

FormulaPtr subformula_at(const FormulaPtr& f, const Address& a) {
  FormulaPtr cur = f;
  for (int step : a) {
    if (!cur) throw PairingMismatchError("address runs off the formula");
    cur = step == 0 ? cur->l : cur->r;
  }
  if (!cur) throw PairingMismatchError("address runs off the formula");
  return cur;
}

bool polarity_at(const FormulaPtr& f, const Address& a) {
  bool positive = true;
  FormulaPtr cur = f;
  for (int step : a) {
    if (cur->kind == Formula::Kind::Not ||
        (cur->kind == Formula::Kind::Imp && step == 0))
      positive = !positive;
    cur = step == 0 ? cur->l : cur->r;
  }
  return positive;
}

}  // namespace

Strategy copycat(const FormulaPtr& game, const Pairing& pairing) {
  for (auto& [a, b] : pairing.pairs) {
    if (!formula_equal(subformula_at(game, a), subformula_at(game, b)))
      throw PairingMismatchError("paired occurrences differ at " +
                                 address_to_string(a) + " / " + address_to_string(b));
    if (polarity_at(game, a) == polarity_at(game, b))
      throw PairingMismatchError("paired occurrences have equal polarity");
  }
  Script s;
  for (auto& [a, b] : pairing.pairs) {
    Instr ins;
    ins.op = Instr::Op::Copycat;
    ins.addr = a;
    ins.addr2 = b;
    s.instrs.push_back(ins);
  }
  Strategy out = script_strategy(s, game, {}, "copycat");
  return out;
}

// ---------------------------------------------------------------------------
// Induction rows

namespace {

std::vector<std::string> closure_order(const FormulaPtr& f) {
  auto fv = free_vars(f);
  return {fv.begin(), fv.end()};
}

void append_prelude(Schedule& sched, const FormulaPtr& formula,
                    const std::map<std::string, Nat>& values) {
  for (auto& v : closure_order(formula)) {
    auto it = values.find(v);
    if (it == values.end())
      throw std::invalid_argument("missing closure constant for " + v);
    sched[0].push_back({Side::Root, Move::constant_move({}, it->second)});
  }
}

}  // namespace

Schedule InductionRows::prelude_row0() const {
  Schedule s;
  append_prelude(s, substitute(f, var, Term::zero()), consts);
  return s;
}

Schedule InductionRows::prelude_row(long i) const {
  Schedule s;
  FormulaPtr g = Formula::imp(f, substitute(f, var, Term::succ(Term::var(var))));
  auto values = consts;
  values[var] = i - 1;
  append_prelude(s, g, values);
  return s;
}

namespace {

Nat batch_cells(const Batches& bs) {
  Nat n = 0;
  for (auto& b : bs)
    for (auto& m : b)
      n += m.payload == Move::Payload::Constant ? nat_size(m.constant) + 1 : 1;
  return n;
}

struct CellsGuard {
  CompositionStats* stats;
  Nat held = 0;
  explicit CellsGuard(CompositionStats* s) : stats(s) {}
  void set(const Nat& cells) {
    if (!stats) return;
    stats->batch_cells += cells - held;
    held = cells;
    stats->peak_batch_cells = std::max(stats->peak_batch_cells, stats->batch_cells);
  }
  ~CellsGuard() {
    if (stats) stats->batch_cells -= held;
  }
};

// One finite row simulation (a fresh session every time).
Transcript simulate_row(const Strategy& strat, Schedule sched, long steps,
                        CompositionStats* stats) {
  if (stats) {
    stats->live += 1;
    stats->peak = std::max(stats->peak, stats->live);
    stats->row_sims_started += 1;
    stats->logical_steps += steps;
  }
  Transcript t = run_scheduled(strat, sched, steps);
  if (stats) stats->live -= 1;
  return t;
}

void inject(Schedule& sched, long cycle, Side side, const Batch& batch) {
  for (auto& m : batch) sched[cycle].push_back({side, m});
}

// Machine moves within a side-region during [lo, hi), region-relative.
Batch window(const Transcript& t, Side side, long lo, long hi) {
  Batch out;
  for (auto& e : t.events) {
    if (e.player != Player::Top || e.cycle < lo || e.cycle >= hi) continue;
    Move m = e.move;
    if (side != Side::Root) {
      int want = side == Side::Antecedent ? 0 : 1;
      if (m.address.empty() || m.address[0] != want) continue;
      m.address.erase(m.address.begin());
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

Batches proc_up(int j, long i, const std::vector<Batch>& alphas,
                const InductionRows& rows, long L, CompositionStats* stats) {
  if (static_cast<long>(alphas.size()) < j || j < 0 || i < 0 || i > rows.k)
    throw std::invalid_argument("proc_up: arguments out of range");
  CellsGuard beta_guard(stats), gamma_guard(stats);
  // Step 1
  long v = 0;
  // Step 2
  Batches gammas;
  if (j != 0) {
    gammas = proc_down(j, 1, alphas, rows, L, rows.k, stats);
    gamma_guard.set(batch_cells(gammas));
  }
  // Step 3: row 0 for (j+1)L steps, gamma_e on cycle #eL.
  Schedule sched = rows.prelude_row0();
  for (int e = 1; e <= j; ++e) inject(sched, e * L, Side::Root, gammas[e - 1]);
  Transcript t = simulate_row(rows.basis, sched, (j + 1) * L, stats);
  Batches betas(j + 1);
  for (int e = 1; e <= j + 1; ++e)
    betas[e - 1] = window(t, Side::Root, (e - 1) * L, e * L);
  beta_guard.set(batch_cells(betas));
  // Step 4
  while (v != i) {
    v += 1;  // 4.1
    if (j != 0) {  // 4.2
      gammas = proc_down(j, v + 1, alphas, rows, L, rows.k, stats);
      gamma_guard.set(batch_cells(gammas));
    }
    // 4.3: row v for (2j+1)L steps; beta_e at #(2e-2)L in the antecedent,
    // gamma_e at #(2e-1)L in the consequent.
    Schedule s = rows.prelude_row(v);
    for (int e = 1; e <= j + 1; ++e)
      inject(s, (2 * e - 2) * L, Side::Antecedent, betas[e - 1]);
    for (int e = 1; e <= j; ++e)
      inject(s, (2 * e - 1) * L, Side::Consequent, gammas[e - 1]);
    Transcript tv = simulate_row(rows.step, s, (2 * j + 1) * L, stats);
    betas[0] = window(tv, Side::Consequent, 0, L);
    for (int e = 2; e <= j + 1; ++e)
      betas[e - 1] = window(tv, Side::Consequent, (2 * e - 3) * L, (2 * e - 1) * L);
    beta_guard.set(batch_cells(betas));
  }
  // Step 5
  return betas;
}

Batches proc_down(int j, long i, const std::vector<Batch>& alphas,
                  const InductionRows& rows, long L, long k,
                  CompositionStats* stats) {
  if (static_cast<long>(alphas.size()) < j || j < 1 || i < 1 || i > k + 1)
    throw std::invalid_argument("proc_down: arguments out of range");
  CellsGuard gamma_guard(stats);
  // Step 1
  long v = k + 1;
  // Step 2
  Batches gammas(alphas.begin(), alphas.begin() + j);
  gamma_guard.set(batch_cells(gammas));
  // Step 3
  while (v != i) {
    v -= 1;  // 3.1
    // 3.2
    std::vector<Batch> fewer(alphas.begin(), alphas.begin() + (j - 1));
    Batches betas = proc_up(j - 1, v - 1, fewer, rows, L, stats);
    // 3.3: row v for 2jL steps; beta_e at #(2e-2)L antecedent, gamma_e at
    // #(2e-1)L consequent; new gamma_e = antecedent moves in [(2e-2)L, 2eL).
    Schedule s = rows.prelude_row(v);
    for (int e = 1; e <= j; ++e) {
      inject(s, (2 * e - 2) * L, Side::Antecedent, betas[e - 1]);
      inject(s, (2 * e - 1) * L, Side::Consequent, gammas[e - 1]);
    }
    Transcript tv = simulate_row(rows.step, s, 2 * j * L, stats);
    for (int e = 1; e <= j; ++e)
      gammas[e - 1] = window(tv, Side::Antecedent, (2 * e - 2) * L, 2 * e * L);
    gamma_guard.set(batch_cells(gammas));
  }
  // Step 4
  return gammas;
}

// ---------------------------------------------------------------------------
// The composed sessions

namespace {

constexpr long kMaxK = 1 << 20;

struct ClosureCollector {
  std::vector<std::string> vars;  // closure order
  std::map<std::string, Nat> values;
  size_t next = 0;

  bool complete() const { return next >= vars.size(); }
  void feed(const Nat& n) { values[vars[next++]] = n; }
};

}  // namespace

class ComposedSession : public Session {
 public:
  std::shared_ptr<CompositionStats> stats = std::make_shared<CompositionStats>();
};

namespace {

class SpaceSession final : public ComposedSession {
 public:
  SpaceSession(Strategy basis, Strategy step, FormulaPtr f, std::string var, long L)
      : basis_(std::move(basis)),
        step_(std::move(step)),
        f_(std::move(f)),
        var_(std::move(var)),
        L_(L),
        real_(GameState::initial(choice_closure(f_))) {
    closure_.vars = closure_order(f_);
  }

  std::vector<Move> step(const std::vector<Move>& observed) override {
    if (retired_) return {};
    std::vector<Move> out;
    Batch alpha;
    for (auto& m : observed) {
      try {
        real_ = apply_move(real_, {Player::Bot, m});
      } catch (const IllegalMoveError&) {
        retired_ = true;  // automatic winner
        return out;
      }
      if (!closure_.complete()) {
        if (m.payload != Move::Payload::Constant || !m.address.empty()) {
          retired_ = true;  // cannot happen on legal plays of a closure
          return out;
        }
        closure_.feed(m.constant);
        if (closure_.complete()) {
          begin_play();
          append_stage(out);  // stage j = 1
        }
      } else {
        alpha.push_back(m);
      }
    }
    if (!alpha.empty() && rows_) {
      alphas_.push_back(std::move(alpha));
      append_stage(out);
    }
    return out;
  }

  Nat space_units() const override {
    return stats->batch_cells + Nat(stats->live);
  }

 private:
  Strategy basis_, step_;
  FormulaPtr f_;
  std::string var_;
  long L_;
  GameState real_;
  ClosureCollector closure_;
  std::optional<InductionRows> rows_;
  std::vector<Batch> alphas_;
  bool retired_ = false;

  void begin_play() {
    Nat kv = closure_.values.at(var_);
    if (kv > kMaxK) throw ResourceCapError("induction constant too large");
    InductionRows rows;
    rows.basis = basis_;
    rows.step = step_;
    rows.f = f_;
    rows.var = var_;
    rows.consts = closure_.values;
    rows.consts.erase(var_);
    rows.k = static_cast<long>(kv);
    rows_ = std::move(rows);
  }

  void append_stage(std::vector<Move>& out) {
    // Main loop Step 1: betas = UP_{j-1}(k, alpha_1..alpha_{j-1}); make
    // the moves beta_j.
    Batches betas = proc_up(static_cast<int>(alphas_.size()), rows_->k, alphas_,
                            *rows_, L_, stats.get());
    for (auto& m : betas.back()) {
      real_ = apply_move(real_, {Player::Top, m});
      out.push_back(m);
    }
  }
};

class ParallelSession final : public ComposedSession {
 public:
  ParallelSession(Strategy basis, Strategy step, FormulaPtr f, std::string var)
      : basis_(std::move(basis)),
        step_(std::move(step)),
        f_(std::move(f)),
        var_(std::move(var)),
        real_(GameState::initial(choice_closure(f_))) {
    closure_.vars = closure_order(f_);
  }

  std::vector<Move> step(const std::vector<Move>& observed) override {
    if (retired_) return {};
    std::vector<Move> out;
    for (auto& m : observed) {
      try {
        real_ = apply_move(real_, {Player::Bot, m});
      } catch (const IllegalMoveError&) {
        retired_ = true;
        return out;
      }
      if (!closure_.complete()) {
        if (m.payload != Move::Payload::Constant || !m.address.empty()) {
          retired_ = true;
          return out;
        }
        closure_.feed(m.constant);
        if (closure_.complete()) begin_play();
      } else {
        route_real(m);
      }
    }
    if (rows_started_) round(out);
    return out;
  }

  bool quiescent() const override {
    if (!rows_started_) return true;
    for (auto& r : rows_)
      if (!r.queue.empty() || !r.session->quiescent()) return false;
    return true;
  }

  Nat space_units() const override {
    Nat n = stats->live;
    for (auto& r : rows_) n += r.session->space_units();
    return n;
  }

 private:
  struct Row {
    std::unique_ptr<Session> session;
    std::vector<Move> queue;
  };

  Strategy basis_, step_;
  FormulaPtr f_;
  std::string var_;
  GameState real_;
  ClosureCollector closure_;
  std::vector<Row> rows_;
  long k_ = 0;
  bool rows_started_ = false;
  bool retired_ = false;

  void begin_play() {
    Nat kv = closure_.values.at(var_);
    if (kv > kMaxK) throw ResourceCapError("induction constant too large");
    k_ = static_cast<long>(kv);
    InductionRows rows;
    rows.f = f_;
    rows.var = var_;
    rows.consts = closure_.values;
    rows.consts.erase(var_);
    rows.k = k_;
    // Spawn all k+1 simulations and feed every prelude at once.
    rows_.resize(k_ + 1);
    rows_[0].session = basis_.spawn();
    Schedule p0 = rows.prelude_row0();
    for (auto& sm : p0[0]) rows_[0].queue.push_back(side_adjusted(sm));
    for (long i = 1; i <= k_; ++i) {
      rows_[i].session = step_.spawn();
      Schedule pi = rows.prelude_row(i);
      for (auto& sm : pi[0]) rows_[i].queue.push_back(side_adjusted(sm));
    }
    rows_started_ = true;
    stats->live = k_ + 1;
    stats->peak = std::max(stats->peak, stats->live);
    stats->row_sims_started = k_ + 1;
  }

  void route_real(const Move& m) {
    // Environment moves enter the consequent of row k (row 0 when k = 0).
    Move inner = m;
    if (k_ > 0) inner.address.insert(inner.address.begin(), 1);
    rows_[k_].queue.push_back(std::move(inner));
  }

  void round(std::vector<Move>& out) {
    stats->logical_steps += 1;
    for (long i = 0; i <= k_; ++i) {
      std::vector<Move> in = std::move(rows_[i].queue);
      rows_[i].queue.clear();
      std::vector<Move> outs = rows_[i].session->step(in);
      for (auto& m : outs) route_row_emission(i, m, out);
    }
  }

  void route_row_emission(long i, const Move& m, std::vector<Move>& out) {
    if (k_ == 0) {
      emit(m, out);
      return;
    }
    if (i == 0) {
      Move t = m;
      t.address.insert(t.address.begin(), 0);
      rows_[1].queue.push_back(std::move(t));
      return;
    }
    if (m.address.empty())
      throw ScriptRuntimeError("row emission lacks a side prefix");
    bool antecedent = m.address[0] == 0;
    Move t = m;
    t.address.erase(t.address.begin());
    if (antecedent) {
      if (i == 1) {
        rows_[0].queue.push_back(std::move(t));
      } else {
        t.address.insert(t.address.begin(), 1);
        rows_[i - 1].queue.push_back(std::move(t));
      }
    } else {
      if (i == k_) {
        emit(t, out);
      } else {
        t.address.insert(t.address.begin(), 0);
        rows_[i + 1].queue.push_back(std::move(t));
      }
    }
  }

  void emit(const Move& m, std::vector<Move>& out) {
    real_ = apply_move(real_, {Player::Top, m});
    out.push_back(m);
  }
};

long common_L(const Strategy& a, const Strategy& b) {
  return std::max<long>(1, std::max(a.quiescence, b.quiescence));
}

ExplicitFunction bound_or_default(const Strategy& s) {
  if (s.declared_bound) return s.declared_bound->fn;
  return ExplicitFunction::poly(parse_tree_term("w + 0''''"));
}

}  // namespace

ComposedStrategy induction_space(const Strategy& basis, const Strategy& step,
                                 const FormulaPtr& f, const std::string& var) {
  if (!classify(f).polynomially_bounded)
    throw NotPolyBoundedError("space induction needs a polynomially bounded formula");
  ComposedStrategy out;
  out.composer = "ind-space";
  out.formula = choice_closure(f);
  ExplicitFunction phi = ef_sum(bound_or_default(basis), bound_or_default(step));
  ExplicitFunction eta = ExplicitFunction::poly(eta_term(f, Sizebound::Kind::Polynomial));
  out.bound = {BoundObject::Kind::Space,
               ef_affine(kMuSlope, ef_compose(phi, eta), kMuOffset)};
  long L = common_L(basis, step);
  Strategy s;
  s.name = "ind-space(" + basis.name + "," + step.name + ")";
  s.game = out.formula;
  s.quiescence = 8;
  s.declared_bound = out.bound;
  s.spawn = [basis, step, f, var, L] {
    return std::make_unique<SpaceSession>(basis, step, f, var, L);
  };
  out.strategy = std::move(s);
  return out;
}

ComposedStrategy induction_parallel(const Strategy& basis, const Strategy& step,
                                    const FormulaPtr& f, const std::string& var,
                                    ParallelMode mode) {
  if (mode == ParallelMode::CLA6 && !classify(f).exponentially_bounded)
    throw NotBoundedError("cla6 induction needs an exponentially bounded formula");
  ComposedStrategy out;
  out.composer = "ind-parallel";
  out.formula = choice_closure(f);
  ExplicitFunction phi = ef_sum(bound_or_default(basis), bound_or_default(step));
  Nat d = depth(substitute(f, var, Term::zero()));
  if (mode == ParallelMode::CLA6) {
    ExplicitFunction eta =
        ExplicitFunction::elem(eta_term(f, Sizebound::Kind::Exponential));
    ExplicitFunction phi_tree =
        phi.kind == ExplicitFunction::Kind::PR
            ? ExplicitFunction::elem(parse_tree_term("w + 0''''"))
            : phi;
    out.bound = {BoundObject::Kind::Time, cla6_bound_function(d, phi_tree, eta)};
  } else {
    out.bound = {BoundObject::Kind::Time, cla7_bound_function(d, phi)};
  }
  Strategy s;
  s.name = "ind-parallel(" + basis.name + "," + step.name + ")";
  s.game = out.formula;
  s.quiescence = 8;
  s.declared_bound = out.bound;
  s.spawn = [basis, step, f, var] {
    return std::make_unique<ParallelSession>(basis, step, f, var);
  };
  out.strategy = std::move(s);
  return out;
}

std::unique_ptr<Session> spawn_with_stats(const Strategy& s,
                                          std::shared_ptr<CompositionStats>* stats) {
  auto session = s.spawn();
  if (stats) {
    if (auto* c = dynamic_cast<ComposedSession*>(session.get()))
      *stats = c->stats;
    else
      *stats = nullptr;
  }
  return session;
}

std::vector<Move> play_to_quiescence(const Strategy& s, const Schedule& sched,
                                     long max_cycles) {
  auto session = s.spawn();
  std::vector<Move> out;
  long last_sched = sched.empty() ? -1 : sched.rbegin()->first;
  long quiet = 0;
  for (long c = 0; c < max_cycles; ++c) {
    std::vector<Move> in;
    auto it = sched.find(c);
    if (it != sched.end())
      for (auto& sm : it->second) in.push_back(side_adjusted(sm));
    auto outs = session->step(in);
    for (auto& m : outs) out.push_back(m);
    if (c > last_sched && outs.empty() && session->quiescent()) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return out;
}

}  // namespace clarith
