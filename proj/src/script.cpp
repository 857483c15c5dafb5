#include "clarith/script.hpp"

#include <algorithm>
#include <set>

namespace clarith {

namespace {

bool is_prefix(const Address& p, const Address& a) {
  if (p.size() > a.size()) return false;
  return std::equal(p.begin(), p.end(), a.begin());
}

std::vector<ChoiceOccurrence> actives_in(const FormulaPtr& f, const Address& region) {
  std::vector<ChoiceOccurrence> out;
  for (auto& occ : active_choices(f))
    if (is_prefix(region, occ.address)) out.push_back(occ);
  return out;
}

// Map a move at an active occurrence inside from_region onto the occurrence
// with the same left-to-right index inside to_region.
Move translate_move(const Move& m, const FormulaPtr& from_f, const Address& from_region,
                    const FormulaPtr& to_f, const Address& to_region) {
  auto from = actives_in(from_f, from_region);
  auto to = actives_in(to_f, to_region);
  size_t k = from.size();
  for (size_t i = 0; i < from.size(); ++i)
    if (from[i].address == m.address) k = i;
  if (k == from.size() || k >= to.size())
    throw ScriptRuntimeError("no synchronized counterpart for move at " +
                             address_to_string(m.address));
  bool from_side = from[k].kind == Formula::Kind::ChAnd || from[k].kind == Formula::Kind::ChOr;
  bool to_side = to[k].kind == Formula::Kind::ChAnd || to[k].kind == Formula::Kind::ChOr;
  if (from_side != to_side)
    throw ScriptRuntimeError("synchronized occurrences disagree on payload kind");
  Move out = m;
  out.address = to[k].address;
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

Address parse_addr(const SExpr& e) {
  if (e.kind != SExpr::Kind::Atom) throw ScriptTypeError("expected an address");
  return address_from_string(e.text);
}

ScriptExpr parse_expr(const SExpr& e) {
  if (e.kind != SExpr::Kind::Atom) throw ScriptTypeError("expected a value");
  ScriptExpr out;
  if (!e.text.empty() && e.text[0] == '$') {
    out.is_binder = true;
    out.binder = e.text;
    return out;
  }
  if (e.text == "L" || e.text == "R") {
    out.literal = ScriptValue::side(e.text == "L");
    return out;
  }
  out.literal = ScriptValue::num(Nat(e.text));
  return out;
}

std::string expr_text(const ScriptExpr& e) {
  if (e.is_binder) return e.binder;
  if (e.literal.kind == ScriptValue::Kind::Side) return e.literal.left ? "L" : "R";
  return e.literal.number.str();
}

Instr parse_instr(const SExpr& e);

std::vector<Instr> parse_block(const SExpr& e) {
  if (e.kind != SExpr::Kind::List) throw ScriptTypeError("expected a block");
  std::vector<Instr> out;
  for (auto& it : e.items) out.push_back(parse_instr(it));
  return out;
}

Instr parse_instr(const SExpr& e) {
  if (e.kind != SExpr::Kind::List || e.items.empty())
    throw ScriptTypeError("expected an instruction list");
  const std::string& head = e.at(0).text;
  Instr ins;
  if (head == "wait") {
    ins.op = Instr::Op::Wait;
    ins.addr = parse_addr(e.at(1));
    ins.side_kind = e.at(2).is_atom("side");
    if (!ins.side_kind && !e.at(2).is_atom("const"))
      throw ScriptTypeError("wait expects const or side");
    ins.binder = e.at(3).text;
  } else if (head == "compute") {
    ins.op = Instr::Op::Compute;
    ins.fn = e.at(1).text;
    for (size_t i = 2; i + 1 < e.items.size(); ++i) ins.args.push_back(parse_expr(e.at(i)));
    ins.binder = e.items.back().text;
  } else if (head == "move") {
    ins.op = Instr::Op::MoveOp;
    ins.addr = parse_addr(e.at(1));
    ins.payload = parse_expr(e.at(2));
  } else if (head == "choose") {
    ins.op = Instr::Op::Choose;
    ins.addr = parse_addr(e.at(1));
    if (!e.at(2).is_atom("left") && !e.at(2).is_atom("right"))
      throw ScriptTypeError("choose expects left or right");
    ins.left = e.at(2).is_atom("left");
  } else if (head == "copycat") {
    ins.op = Instr::Op::Copycat;
    ins.addr = parse_addr(e.at(1));
    ins.addr2 = parse_addr(e.at(2));
  } else if (head == "use") {
    ins.op = Instr::Op::Use;
    ins.premise = std::stoi(e.at(1).text);
    for (size_t i = 2; i < e.items.size(); ++i) {
      const SExpr& c = e.at(i);
      if (c.kind != SExpr::Kind::List || c.items.empty())
        throw ScriptTypeError("use clauses are lists");
      if (c.at(0).is_atom("feed")) {
        ins.feeds.push_back({parse_addr(c.at(1)), parse_expr(c.at(2))});
      } else if (c.at(0).is_atom("bind")) {
        bool side = c.at(2).is_atom("side");
        if (!side && !c.at(2).is_atom("const"))
          throw ScriptTypeError("bind expects const or side");
        ins.binds.push_back({parse_addr(c.at(1)), side, c.at(3).text});
      } else if (c.at(0).is_atom("sync")) {
        ins.syncs.push_back({parse_addr(c.at(1)), parse_addr(c.at(2))});
      } else {
        throw ScriptTypeError("unknown use clause: " + c.to_string());
      }
    }
  } else if (head == "branch") {
    ins.op = Instr::Op::Branch;
    const SExpr& cond = e.at(1);
    if (cond.kind != SExpr::Kind::List || cond.items.empty())
      throw ScriptTypeError("branch condition must be a list");
    ins.cond_op = cond.at(0).text;
    for (size_t i = 1; i < cond.items.size(); ++i)
      ins.cond_args.push_back(parse_expr(cond.at(i)));
    ins.then_block = parse_block(e.at(2));
    if (e.items.size() > 3) ins.else_block = parse_block(e.at(3));
  } else {
    throw ScriptTypeError("unknown instruction: " + head);
  }
  return ins;
}

SExpr atom(std::string s) { return SExpr{SExpr::Kind::Atom, std::move(s), {}}; }
SExpr list(std::vector<SExpr> items) { return SExpr{SExpr::Kind::List, "", std::move(items)}; }

SExpr instr_to_sexpr(const Instr& ins) {
  switch (ins.op) {
    case Instr::Op::Wait:
      return list({atom("wait"), atom(address_to_string(ins.addr)),
                   atom(ins.side_kind ? "side" : "const"), atom(ins.binder)});
    case Instr::Op::Compute: {
      std::vector<SExpr> xs{atom("compute"), atom(ins.fn)};
      for (auto& a : ins.args) xs.push_back(atom(expr_text(a)));
      xs.push_back(atom(ins.binder));
      return list(std::move(xs));
    }
    case Instr::Op::MoveOp:
      return list({atom("move"), atom(address_to_string(ins.addr)),
                   atom(expr_text(ins.payload))});
    case Instr::Op::Choose:
      return list({atom("choose"), atom(address_to_string(ins.addr)),
                   atom(ins.left ? "left" : "right")});
    case Instr::Op::Copycat:
      return list({atom("copycat"), atom(address_to_string(ins.addr)),
                   atom(address_to_string(ins.addr2))});
    case Instr::Op::Use: {
      std::vector<SExpr> xs{atom("use"), atom(std::to_string(ins.premise))};
      for (auto& f : ins.feeds)
        xs.push_back(list({atom("feed"), atom(address_to_string(f.addr)),
                           atom(expr_text(f.value))}));
      for (auto& b : ins.binds)
        xs.push_back(list({atom("bind"), atom(address_to_string(b.addr)),
                           atom(b.side_kind ? "side" : "const"), atom(b.binder)}));
      for (auto& s : ins.syncs)
        xs.push_back(list({atom("sync"), atom(address_to_string(s.inner)),
                           atom(address_to_string(s.outer))}));
      return list(std::move(xs));
    }
    default: {
      std::vector<SExpr> cond{atom(ins.cond_op)};
      for (auto& a : ins.cond_args) cond.push_back(atom(expr_text(a)));
      std::vector<SExpr> thenb, elseb;
      for (auto& i : ins.then_block) thenb.push_back(instr_to_sexpr(i));
      for (auto& i : ins.else_block) elseb.push_back(instr_to_sexpr(i));
      return list({atom("branch"), list(std::move(cond)), list(std::move(thenb)),
                   list(std::move(elseb))});
    }
  }
}

}  // namespace

Script parse_script(const std::vector<SExpr>& instrs) {
  Script s;
  for (auto& e : instrs) s.instrs.push_back(parse_instr(e));
  return s;
}

std::vector<SExpr> script_to_sexprs(const Script& s) {
  std::vector<SExpr> out;
  for (auto& i : s.instrs) out.push_back(instr_to_sexpr(i));
  return out;
}

namespace {

void check_block(const std::vector<Instr>& block, std::set<std::string> defined,
                 size_t premise_count, std::set<std::string>* out_defined) {
  auto need = [&](const ScriptExpr& e) {
    if (e.is_binder && !defined.count(e.binder))
      throw ScriptTypeError("binder " + e.binder + " used before definition");
  };
  for (auto& ins : block) {
    switch (ins.op) {
      case Instr::Op::Wait:
        defined.insert(ins.binder);
        break;
      case Instr::Op::Compute: {
        static const std::set<std::string> fns = {"succ", "double", "pred"};
        if (!fns.count(ins.fn))
          throw ScriptTypeError("unknown compute builtin: " + ins.fn);
        for (auto& a : ins.args) need(a);
        defined.insert(ins.binder);
        break;
      }
      case Instr::Op::MoveOp:
        need(ins.payload);
        break;
      case Instr::Op::Choose:
      case Instr::Op::Copycat:
        break;
      case Instr::Op::Use:
        if (ins.premise < 0 || static_cast<size_t>(ins.premise) >= premise_count)
          throw ScriptTypeError("premise index out of range");
        for (auto& f : ins.feeds) need(f.value);
        for (auto& b : ins.binds) defined.insert(b.binder);
        break;
      case Instr::Op::Branch: {
        if (ins.cond_op != "eq")
          throw ScriptTypeError("unknown branch condition: " + ins.cond_op);
        for (auto& a : ins.cond_args) need(a);
        std::set<std::string> t, e;
        check_block(ins.then_block, defined, premise_count, &t);
        check_block(ins.else_block, defined, premise_count, &e);
        for (auto& b : t)
          if (e.count(b)) defined.insert(b);
        break;
      }
    }
  }
  if (out_defined) *out_defined = defined;
}

}  // namespace

void typecheck_script(const Script& s, size_t premise_count) {
  check_block(s.instrs, {}, premise_count, nullptr);
}

namespace {

struct PendingIn {
  Move m;
  FormulaPtr outer_pre;  // outer formula before the move; null for feeds
  int sync_idx = -1;     // -1: already inner-addressed (a feed)
};

struct InnerRun {
  std::unique_ptr<Session> session;
  GameState state;
  std::vector<PendingIn> pending;
  std::vector<UseBind> binds;
  size_t next_bind = 0;
  std::vector<UseSync> syncs;
  bool started = false;  // fresh sessions get stepped once even unprompted

  bool binds_done() const { return next_bind >= binds.size(); }
};

class ScriptSession final : public Session {
 public:
  ScriptSession(Script script, FormulaPtr target, std::vector<Strategy> premises)
      : script_(std::move(script)),
        premises_(std::move(premises)),
        outer_(GameState::initial(std::move(target))) {
    stack_.push_back({&script_.instrs, 0});
  }

  std::vector<Move> step(const std::vector<Move>& observed) override {
    if (retired_) return {};
    for (auto& m : observed) {
      if (!admit(m)) return take_outbox();  // adversary illegal: auto-winner
    }
    pump();
    started_ = true;
    return take_outbox();
  }

  bool quiescent() const override {
    if (!started_) return false;
    for (auto& in : inners_)
      if (!in.started || !in.pending.empty() || !in.session->quiescent())
        return false;
    return true;
  }

  Nat space_units() const override {
    Nat units = 0;
    for (auto& in : inners_) units += 1 + in.session->space_units();
    for (auto& kv : env_)
      if (kv.second.kind == ScriptValue::Kind::Number)
        units += nat_size(kv.second.number);
    return units;
  }

 private:
  struct Obs {
    Move m;
    FormulaPtr pre;  // formula before the move was applied
    bool consumed = false;
  };
  struct Frame {
    const std::vector<Instr>* block;
    size_t idx;
  };

  Script script_;
  std::vector<Strategy> premises_;
  GameState outer_;
  std::map<std::string, ScriptValue> env_;
  std::vector<Obs> queue_;
  std::vector<Frame> stack_;
  std::vector<std::pair<Address, Address>> copycats_;
  std::vector<InnerRun> inners_;
  std::optional<size_t> blocking_use_;
  bool retired_ = false;
  bool started_ = false;
  std::vector<Move> outbox_;

  std::vector<Move> take_outbox() {
    auto out = std::move(outbox_);
    outbox_.clear();
    return out;
  }

  void emit(const Move& m) {
    outer_ = apply_move(outer_, {Player::Top, m});
    outbox_.push_back(m);
  }

  // Admit one adversary move: apply it and remember the pre-move formula;
  // relaying through copycats and syncs happens lazily in the pump so that
  // pairings registered later still see earlier moves. Returns false when
  // the move is illegal (we retire as the automatic winner).
  bool admit(const Move& m) {
    FormulaPtr pre = outer_.current;
    try {
      outer_ = apply_move(outer_, {Player::Bot, m});
    } catch (const IllegalMoveError&) {
      retired_ = true;
      return false;
    }
    queue_.push_back({m, pre, false});
    return true;
  }

  // Mirror unconsumed adversary moves through copycat pairings and forward
  // them into synchronized inner regions.
  bool route_pending() {
    bool changed = false;
    for (auto& o : queue_) {
      if (o.consumed) continue;
      bool routed = false;
      for (auto& [a, b] : copycats_) {
        const Address* from = nullptr;
        const Address* to = nullptr;
        if (is_prefix(a, o.m.address)) {
          from = &a;
          to = &b;
        } else if (is_prefix(b, o.m.address)) {
          from = &b;
          to = &a;
        }
        if (!from) continue;
        emit(translate_move(o.m, o.pre, *from, outer_.current, *to));
        routed = true;
        break;
      }
      if (!routed)
        for (size_t i = 0; i < inners_.size() && !routed; ++i)
          for (size_t k = 0; k < inners_[i].syncs.size(); ++k) {
            if (!is_prefix(inners_[i].syncs[k].outer, o.m.address)) continue;
            inners_[i].pending.push_back({o.m, o.pre, static_cast<int>(k)});
            routed = true;
            break;
          }
      if (routed) {
        o.consumed = true;
        changed = true;
      }
    }
    return changed;
  }

  ScriptValue eval(const ScriptExpr& e) {
    if (!e.is_binder) return e.literal;
    auto it = env_.find(e.binder);
    if (it == env_.end())
      throw ScriptRuntimeError("binder " + e.binder + " is unbound");
    return it->second;
  }

  void pump() {
    for (bool changed = true; changed;) {
      changed = false;
      if (exec()) changed = true;
      if (route_pending()) changed = true;
      if (pump_inners()) changed = true;
    }
  }

  bool pump_inners() {
    bool changed = false;
    for (size_t i = 0; i < inners_.size(); ++i) {
      auto& in = inners_[i];
      int guard = 0;
      while (!in.started || !in.pending.empty() || !in.session->quiescent()) {
        in.started = true;
        if (++guard > 100000)
          throw ScriptRuntimeError("inner simulation does not quiesce");
        std::vector<PendingIn> raw = std::move(in.pending);
        in.pending.clear();
        std::vector<Move> batch;
        for (auto& entry : raw) {
          Move m = entry.sync_idx < 0
                       ? entry.m
                       : translate_move(entry.m, entry.outer_pre,
                                        in.syncs[entry.sync_idx].outer,
                                        in.state.current,
                                        in.syncs[entry.sync_idx].inner);
          try {
            in.state = apply_move(in.state, {Player::Bot, m});
          } catch (const IllegalMoveError&) {
            throw ScriptRuntimeError("script fed an illegal move to its premise");
          }
          batch.push_back(std::move(m));
        }
        std::vector<Move> outs = in.session->step(batch);
        for (auto& m : outs) {
          route_inner_emission(i, m);
          in.state = apply_move(in.state, {Player::Top, m});
        }
        changed = true;
      }
    }
    return changed;
  }

  void route_inner_emission(size_t idx, const Move& m) {
    auto& in = inners_[idx];
    if (!in.binds_done()) {
      const UseBind& b = in.binds[in.next_bind];
      bool is_side = m.payload != Move::Payload::Constant;
      if (b.addr == m.address && b.side_kind == is_side) {
        env_[b.binder] = is_side
                             ? ScriptValue::side(m.payload == Move::Payload::Left)
                             : ScriptValue::num(m.constant);
        ++in.next_bind;
        return;
      }
    }
    for (auto& s : in.syncs) {
      if (!is_prefix(s.inner, m.address)) continue;
      emit(translate_move(m, in.state.current, s.inner, outer_.current, s.outer));
      return;
    }
    throw IllegalPremiseBehaviorError("premise move at " +
                                      address_to_string(m.address) +
                                      " has no bind or sync to route it");
  }

  bool exec() {
    bool changed = false;
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      if (f.idx >= f.block->size()) {
        stack_.pop_back();
        changed = true;
        continue;
      }
      const Instr& ins = (*f.block)[f.idx];
      if (blocking_use_) {
        if (!inners_[*blocking_use_].binds_done()) return changed;
        blocking_use_.reset();
        ++f.idx;
        changed = true;
        continue;
      }
      switch (ins.op) {
        case Instr::Op::Wait: {
          bool found = false;
          for (auto& o : queue_) {
            if (o.consumed || o.m.address != ins.addr) continue;
            bool is_side = o.m.payload != Move::Payload::Constant;
            if (is_side != ins.side_kind) continue;
            o.consumed = true;
            env_[ins.binder] =
                is_side ? ScriptValue::side(o.m.payload == Move::Payload::Left)
                        : ScriptValue::num(o.m.constant);
            found = true;
            break;
          }
          if (!found) return changed;  // blocked
          ++f.idx;
          changed = true;
          break;
        }
        case Instr::Op::Compute: {
          std::vector<Nat> args;
          for (auto& a : ins.args) {
            ScriptValue v = eval(a);
            if (v.kind != ScriptValue::Kind::Number)
              throw ScriptRuntimeError("compute needs numeric arguments");
            args.push_back(v.number);
          }
          Nat r;
          if (ins.fn == "succ") r = args.at(0) + 1;
          else if (ins.fn == "double") r = args.at(0) * 2;
          else r = args.at(0) == 0 ? Nat(0) : args.at(0) - 1;
          env_[ins.binder] = ScriptValue::num(r);
          ++f.idx;
          changed = true;
          break;
        }
        case Instr::Op::MoveOp: {
          ScriptValue v = eval(ins.payload);
          if (v.kind == ScriptValue::Kind::Number)
            emit(Move::constant_move(ins.addr, v.number));
          else
            emit(v.left ? Move::left(ins.addr) : Move::right(ins.addr));
          ++f.idx;
          changed = true;
          break;
        }
        case Instr::Op::Choose:
          emit(ins.left ? Move::left(ins.addr) : Move::right(ins.addr));
          ++f.idx;
          changed = true;
          break;
        case Instr::Op::Copycat:
          copycats_.push_back({ins.addr, ins.addr2});
          ++f.idx;
          changed = true;
          break;
        case Instr::Op::Use: {
          const Strategy& prem = premises_.at(ins.premise);
          if (!prem.game)
            throw ScriptRuntimeError("premise strategy has no game formula");
          InnerRun run{prem.spawn(), GameState::initial(prem.game), {}, ins.binds,
                       0, ins.syncs};
          for (auto& feed : ins.feeds) {
            ScriptValue v = eval(feed.value);
            Move m = v.kind == ScriptValue::Kind::Number
                         ? Move::constant_move(feed.addr, v.number)
                         : (v.left ? Move::left(feed.addr)
                                   : Move::right(feed.addr));
            run.pending.push_back({std::move(m), nullptr, -1});
          }
          inners_.push_back(std::move(run));
          blocking_use_ = inners_.size() - 1;
          changed = true;
          if (pump_inners()) changed = true;
          break;
        }
        case Instr::Op::Branch: {
          if (ins.cond_args.size() != 2)
            throw ScriptRuntimeError("eq needs two arguments");
          bool t = eval(ins.cond_args[0]) == eval(ins.cond_args[1]);
          ++f.idx;
          stack_.push_back({t ? &ins.then_block : &ins.else_block, 0});
          changed = true;
          break;
        }
      }
    }
    return changed;
  }
};

}  // namespace

Strategy script_strategy(const Script& script, const FormulaPtr& target,
                         std::vector<Strategy> premises, std::string name) {
  typecheck_script(script, premises.size());
  Strategy s;
  s.name = std::move(name);
  s.game = target;
  s.quiescence = 1;
  s.spawn = [script, target, premises] {
    return std::make_unique<ScriptSession>(script, target, premises);
  };
  return s;
}

}  // namespace clarith
