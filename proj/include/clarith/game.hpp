#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clarith/syntax_ops.hpp"

namespace clarith {

enum class Player { Top, Bot };

inline Player other(Player p) { return p == Player::Top ? Player::Bot : Player::Top; }
inline char player_char(Player p) { return p == Player::Top ? 'T' : 'B'; }

// Child-index path from the formula root, descending only through classical
// connectives; resolves to an active choice occurrence.
using Address = std::vector<int>;

std::string address_to_string(const Address& a);
Address address_from_string(const std::string& s);

struct Move {
  enum class Payload { Left, Right, Constant };
  Address address;
  Payload payload;
  Nat constant;  // Payload::Constant

  static Move left(Address a) { return {std::move(a), Payload::Left, 0}; }
  static Move right(Address a) { return {std::move(a), Payload::Right, 0}; }
  static Move constant_move(Address a, Nat n) {
    return {std::move(a), Payload::Constant, std::move(n)};
  }
};

bool operator==(const Move& a, const Move& b);
std::string move_to_string(const Move& m);
std::string payload_to_string(const Move& m);

struct LabMove {
  Player player;
  Move move;
};

struct IllegalMoveError : std::runtime_error {
  Player offender;
  IllegalMoveError(Player p, const std::string& what)
      : std::runtime_error(what), offender(p) {}
};

struct ChoiceOccurrence {
  Address address;
  Formula::Kind kind;   // ChAnd/ChOr/ChAll/ChEx
  Player owner;         // who resolves it, polarity taken into account
  FormulaPtr node;
};

// Active = not in the scope of another choice operator. Formulas with
// choice under a classical quantifier are rejected up front (see
// GameState), so active occurrences are reachable through connectives only.
std::vector<ChoiceOccurrence> active_choices(const FormulaPtr& f);

struct GameState {
  FormulaPtr current;
  std::vector<LabMove> history;

  // Throws std::invalid_argument unless f is closed and free of choice
  // operators under classical quantifiers.
  static GameState initial(FormulaPtr f);
};

struct LegalMoveDesc {
  Address address;
  Formula::Kind kind;  // Left/Right for ChAnd/ChOr, any constant for ChAll/ChEx
};

std::vector<LegalMoveDesc> legal_moves(const GameState& s, Player p);

// Returns the successor state; throws IllegalMoveError naming the offender.
GameState apply_move(const GameState& s, const LabMove& lm);

enum class Truth { True, False, Unknown };

// Atoms are decided exactly; classical quantifiers are searched over
// 0..cap and yield Unknown when unsettled within the cap.
Truth eval_elementary(const FormulaPtr& f, const Nat& cap);

struct RunVerdict {
  bool legal = true;
  std::optional<Player> offender;
  std::optional<Player> winner;
  bool undetermined = false;
};

std::string verdict_to_string(const RunVerdict& v);

RunVerdict winner(const FormulaPtr& initial, const std::vector<LabMove>& run,
                  const Nat& oracle_cap);

// All one-labmove successors by p, with constant payloads 0..const_cap.
std::vector<GameState> developments(const GameState& s, Player p, const Nat& const_cap);

// True when a constant move satisfies every sizebound guarding its choice
// quantifier occurrence; Left/Right moves are always reasonable.
bool move_is_reasonable(const GameState& s, const Move& m);

// Brute-force minimax over the truncated game tree (constants 0..cap).
// Exactly one player wins every such game; throws std::runtime_error if the
// truth oracle cannot settle a leaf.
Player game_tree_winner(const FormulaPtr& f, const Nat& const_cap, const Nat& eval_cap);

// The winning player's minimax move at this state, if one exists.
std::optional<Move> oracle_move(const GameState& s, Player p, const Nat& const_cap,
                                const Nat& eval_cap);

}  // namespace clarith
