#pragma once

#include <variant>

#include "clarith/sexpr.hpp"
#include "clarith/strategy.hpp"

namespace clarith {

// Strategy scripts make narrated strategies executable ("wait till
// Environment selects a value a, then choose a+1 for z").
// One instruction per line in files; binders are $names.
//
//   (wait <addr> const $a) | (wait <addr> side $d)
//   (compute succ|double|pred $a ... $out)
//   (move <addr> <expr>)            expr := numeral | $binder
//   (choose <addr> left|right)
//   (copycat <addrA> <addrB>)
//   (use <premise-index> (feed <addr> <expr>)* (bind <addr> const|side $b)*
//        (sync <inner-addr> <outer-addr>)*)
//   (branch (<cond>) (<then>...) (<else>...))   cond := (eq <expr> <expr>)
//
// Addresses are e or dotted child indices (0.1). In (eq _ _) the atoms L and
// R denote sides.

struct ScriptValue {
  enum class Kind { Number, Side };
  Kind kind = Kind::Number;
  Nat number;
  bool left = false;

  static ScriptValue num(Nat n) { return {Kind::Number, std::move(n), false}; }
  static ScriptValue side(bool l) { return {Kind::Side, 0, l}; }
  bool operator==(const ScriptValue& o) const {
    return kind == o.kind && number == o.number && left == o.left;
  }
};

struct ScriptExpr {
  bool is_binder = false;
  std::string binder;
  ScriptValue literal;
};

struct Instr;

struct UseFeed {
  Address addr;
  ScriptExpr value;
};
struct UseBind {
  Address addr;
  bool side_kind;
  std::string binder;
};
struct UseSync {
  Address inner;
  Address outer;
};

struct Instr {
  enum class Op { Wait, Compute, MoveOp, Choose, Copycat, Use, Branch };
  Op op;
  Address addr, addr2;
  bool side_kind = false;  // Wait; Choose left flag reuses `left`
  bool left = false;
  std::string binder;      // Wait/Compute output
  std::string fn;          // Compute
  std::vector<ScriptExpr> args;
  ScriptExpr payload;      // MoveOp
  int premise = 0;         // Use
  std::vector<UseFeed> feeds;
  std::vector<UseBind> binds;
  std::vector<UseSync> syncs;
  // Branch
  std::string cond_op;
  std::vector<ScriptExpr> cond_args;
  std::vector<Instr> then_block, else_block;
};

struct Script {
  std::vector<Instr> instrs;
};

struct ScriptTypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScriptRuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IllegalPremiseBehaviorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Script parse_script(const std::vector<SExpr>& instrs);
std::vector<SExpr> script_to_sexprs(const Script& s);

// Static checks: binders defined before use, premise indices in range,
// known compute builtins and branch conditions.
void typecheck_script(const Script& s, size_t premise_count);

// A deterministic strategy that interprets the script against the target
// game, running premise strategies as inner simulations.
Strategy script_strategy(const Script& script, const FormulaPtr& target,
                         std::vector<Strategy> premises,
                         std::string name = "script");

}  // namespace clarith
