#include "clarith/game.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace clarith {

using K = Formula::Kind;

std::string address_to_string(const Address& a) {
  if (a.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(a[i]);
  }
  return out;
}

Address address_from_string(const std::string& s) {
  if (s == "e") return {};
  Address out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part != "0" && part != "1")
      throw std::invalid_argument("bad address component: " + part);
    out.push_back(part == "1" ? 1 : 0);
  }
  return out;
}

bool operator==(const Move& a, const Move& b) {
  return a.address == b.address && a.payload == b.payload && a.constant == b.constant;
}

std::string payload_to_string(const Move& m) {
  switch (m.payload) {
    case Move::Payload::Left: return "L";
    case Move::Payload::Right: return "R";
    default: return m.constant.str();
  }
}

std::string move_to_string(const Move& m) {
  return address_to_string(m.address) + " " + payload_to_string(m);
}

namespace {

Player owner_of(K kind, bool positive) {
  bool bot_owned = kind == K::ChAnd || kind == K::ChAll;
  if (!positive) bot_owned = !bot_owned;
  return bot_owned ? Player::Bot : Player::Top;
}

void actives_rec(const FormulaPtr& f, Address& path, bool positive,
                 std::vector<ChoiceOccurrence>& out) {
  switch (f->kind) {
    case K::ChAnd:
    case K::ChOr:
    case K::ChAll:
    case K::ChEx:
      out.push_back({path, f->kind, owner_of(f->kind, positive), f});
      return;
    case K::Eq:
    case K::Leq:
      return;
    case K::Not:
      path.push_back(0);
      actives_rec(f->l, path, !positive, out);
      path.pop_back();
      return;
    case K::Imp:
      path.push_back(0);
      actives_rec(f->l, path, !positive, out);
      path.pop_back();
      path.push_back(1);
      actives_rec(f->r, path, positive, out);
      path.pop_back();
      return;
    case K::And:
    case K::Or:
      path.push_back(0);
      actives_rec(f->l, path, positive, out);
      path.pop_back();
      path.push_back(1);
      actives_rec(f->r, path, positive, out);
      path.pop_back();
      return;
    case K::ForAll:
    case K::Exists:
      // No choice operators below (checked at state construction).
      return;
  }
}

}  // namespace

std::vector<ChoiceOccurrence> active_choices(const FormulaPtr& f) {
  std::vector<ChoiceOccurrence> out;
  Address path;
  actives_rec(f, path, true, out);
  return out;
}

GameState GameState::initial(FormulaPtr f) {
  if (!free_vars(f).empty())
    throw std::invalid_argument("game formula must be closed: " + formula_to_string(f));
  if (has_choice_under_classical_quantifier(f))
    throw std::invalid_argument(
        "choice operator in the scope of a classical quantifier: " +
        formula_to_string(f));
  return GameState{std::move(f), {}};
}

std::vector<LegalMoveDesc> legal_moves(const GameState& s, Player p) {
  std::vector<LegalMoveDesc> out;
  for (auto& occ : active_choices(s.current))
    if (occ.owner == p) out.push_back({occ.address, occ.kind});
  return out;
}

GameState apply_move(const GameState& s, const LabMove& lm) {
  const auto occs = active_choices(s.current);
  const ChoiceOccurrence* hit = nullptr;
  for (auto& occ : occs)
    if (occ.address == lm.move.address) hit = &occ;
  if (!hit)
    throw IllegalMoveError(lm.player, "no active choice at address " +
                                          address_to_string(lm.move.address));
  if (hit->owner != lm.player)
    throw IllegalMoveError(lm.player, "choice at " + address_to_string(lm.move.address) +
                                          " belongs to the other player");
  bool is_side = lm.move.payload != Move::Payload::Constant;
  bool wants_side = hit->kind == K::ChAnd || hit->kind == K::ChOr;
  if (is_side != wants_side)
    throw IllegalMoveError(lm.player, "payload kind does not match the choice at " +
                                          address_to_string(lm.move.address));

  FormulaPtr resolved;
  if (wants_side) {
    resolved = lm.move.payload == Move::Payload::Left ? hit->node->l : hit->node->r;
  } else {
    resolved = substitute(hit->node->l, hit->node->var, term_of_value(lm.move.constant));
  }

  // Rebuild along the address path.
  std::function<FormulaPtr(const FormulaPtr&, size_t)> rebuild =
      [&](const FormulaPtr& f, size_t i) -> FormulaPtr {
    if (i == lm.move.address.size()) return resolved;
    Formula copy = *f;
    if (lm.move.address[i] == 0)
      copy.l = rebuild(f->l, i + 1);
    else
      copy.r = rebuild(f->r, i + 1);
    return std::make_shared<const Formula>(std::move(copy));
  };

  GameState next;
  next.current = rebuild(s.current, 0);
  next.history = s.history;
  next.history.push_back(lm);
  return next;
}

namespace {

Truth t_not(Truth t) {
  if (t == Truth::Unknown) return t;
  return t == Truth::True ? Truth::False : Truth::True;
}
Truth t_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}
Truth t_or(Truth a, Truth b) { return t_not(t_and(t_not(a), t_not(b))); }

Truth eval_rec(const FormulaPtr& f, std::map<std::string, Nat>& env, const Nat& cap) {
  switch (f->kind) {
    case K::Eq:
    case K::Leq: {
      Nat l, r;
      try {
        l = term_value(f->tl, env);
        r = term_value(f->tr, env);
      } catch (const ResourceCapError&) {
        return Truth::Unknown;
      }
      bool v = f->kind == K::Eq ? l == r : l <= r;
      return v ? Truth::True : Truth::False;
    }
    case K::Not: return t_not(eval_rec(f->l, env, cap));
    case K::And: return t_and(eval_rec(f->l, env, cap), eval_rec(f->r, env, cap));
    case K::Or: return t_or(eval_rec(f->l, env, cap), eval_rec(f->r, env, cap));
    case K::Imp: return t_or(t_not(eval_rec(f->l, env, cap)), eval_rec(f->r, env, cap));
    case K::ForAll:
    case K::Exists: {
      bool universal = f->kind == K::ForAll;
      bool sawUnknown = false;
      for (Nat n = 0; n <= cap; ++n) {
        env[f->var] = n;
        Truth t = eval_rec(f->l, env, cap);
        env.erase(f->var);
        if (universal && t == Truth::False) return Truth::False;
        if (!universal && t == Truth::True) return Truth::True;
        if (t == Truth::Unknown) sawUnknown = true;
      }
      (void)sawUnknown;
      // The search is truncated at cap, so the settled answer is unknown.
      return Truth::Unknown;
    }
    default:
      throw std::invalid_argument("eval_elementary: formula is not elementary");
  }
}

}  // namespace

Truth eval_elementary(const FormulaPtr& f, const Nat& cap) {
  std::map<std::string, Nat> env;
  return eval_rec(f, env, cap);
}

std::string verdict_to_string(const RunVerdict& v) {
  std::string w = "none";
  if (v.winner) w = std::string(1, player_char(*v.winner));
  return std::string("verdict legal=") + (v.legal ? "true" : "false") +
         " winner=" + w + " undetermined=" + (v.undetermined ? "true" : "false");
}

RunVerdict winner(const FormulaPtr& initial, const std::vector<LabMove>& run,
                  const Nat& oracle_cap) {
  GameState s = GameState::initial(initial);
  for (auto& lm : run) {
    try {
      s = apply_move(s, lm);
    } catch (const IllegalMoveError& e) {
      RunVerdict v;
      v.legal = false;
      v.offender = e.offender;
      v.winner = other(e.offender);
      return v;
    }
  }
  Truth t = eval_elementary(elementarize(s.current), oracle_cap);
  RunVerdict v;
  if (t == Truth::Unknown)
    v.undetermined = true;
  else
    v.winner = t == Truth::True ? Player::Top : Player::Bot;
  return v;
}

std::vector<GameState> developments(const GameState& s, Player p, const Nat& const_cap) {
  std::vector<GameState> out;
  for (auto& d : legal_moves(s, p)) {
    if (d.kind == K::ChAnd || d.kind == K::ChOr) {
      out.push_back(apply_move(s, {p, Move::left(d.address)}));
      out.push_back(apply_move(s, {p, Move::right(d.address)}));
    } else {
      for (Nat n = 0; n <= const_cap; ++n)
        out.push_back(apply_move(s, {p, Move::constant_move(d.address, n)}));
    }
  }
  return out;
}

bool move_is_reasonable(const GameState& s, const Move& m) {
  if (m.payload != Move::Payload::Constant) return true;
  for (auto& occ : active_choices(s.current)) {
    if (occ.address != m.address) continue;
    if (occ.kind != K::ChAll && occ.kind != K::ChEx) return true;
    K guard_shape = occ.kind == K::ChAll ? K::Imp : K::And;
    if (occ.node->l->kind != guard_shape) return true;  // unguarded choice
    auto sb = match_sizebound(occ.node->l->l, occ.node->var);
    if (!sb) return true;
    FormulaPtr guard = substitute(Formula::leq(Term::len(Term::var(occ.node->var)),
                                               sb->bound_term),
                                  occ.node->var, term_of_value(m.constant));
    return eval_elementary(guard, 0) == Truth::True;
  }
  return true;
}

namespace {

struct OracleCtx {
  Nat const_cap;
  Nat eval_cap;
  std::map<std::string, bool> memo;  // keyed by printed formula
};

bool top_wins(const FormulaPtr& f, OracleCtx& ctx);

std::vector<std::pair<Move, FormulaPtr>> successors(const FormulaPtr& f, Player p,
                                                    const Nat& cap) {
  GameState s{f, {}};
  std::vector<std::pair<Move, FormulaPtr>> out;
  for (auto& d : legal_moves(s, p)) {
    if (d.kind == K::ChAnd || d.kind == K::ChOr) {
      out.push_back({Move::left(d.address),
                     apply_move(s, {p, Move::left(d.address)}).current});
      out.push_back({Move::right(d.address),
                     apply_move(s, {p, Move::right(d.address)}).current});
    } else {
      for (Nat n = 0; n <= cap; ++n)
        out.push_back({Move::constant_move(d.address, n),
                       apply_move(s, {p, Move::constant_move(d.address, n)}).current});
    }
  }
  return out;
}

// Top can force a win from f: either some Top move leads to a won game, or
// the current elementarization is true and every Bot move still loses.
bool top_wins(const FormulaPtr& f, OracleCtx& ctx) {
  std::string key = formula_to_string(f);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;

  bool result = false;
  for (auto& [m, g] : successors(f, Player::Top, ctx.const_cap)) {
    (void)m;
    if (top_wins(g, ctx)) {
      result = true;
      break;
    }
  }
  if (!result) {
    Truth t = eval_elementary(elementarize(f), ctx.eval_cap);
    if (t == Truth::Unknown)
      throw std::runtime_error("game-tree oracle: truth oracle exhausted on " + key);
    if (t == Truth::True) {
      result = true;
      for (auto& [m, g] : successors(f, Player::Bot, ctx.const_cap)) {
        (void)m;
        if (!top_wins(g, ctx)) {
          result = false;
          break;
        }
      }
    }
  }
  ctx.memo[key] = result;
  return result;
}

}  // namespace

Player game_tree_winner(const FormulaPtr& f, const Nat& const_cap, const Nat& eval_cap) {
  OracleCtx ctx{const_cap, eval_cap, {}};
  return top_wins(f, ctx) ? Player::Top : Player::Bot;
}

std::optional<Move> oracle_move(const GameState& s, Player p, const Nat& const_cap,
                                const Nat& eval_cap) {
  OracleCtx ctx{const_cap, eval_cap, {}};
  bool want = p == Player::Top;
  if (top_wins(s.current, ctx) != want) return std::nullopt;
  for (auto& [m, g] : successors(s.current, p, const_cap))
    if (top_wins(g, ctx) == want) return m;
  return std::nullopt;
}

}  // namespace clarith
