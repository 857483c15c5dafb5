// clarith: parse clarithmetic formulas, check CLA5/CLA6/CLA7 proofs,
// extract interactive winning strategies with explicit resource bounds,
// and play or verify them.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "clarith/parse.hpp"
#include "clarith/proof.hpp"
#include "clarith/verify.hpp"

using namespace clarith;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitResourceCap = 3;

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

long env_cap(long fallback) {
  const char* v = std::getenv("CLARITH_CAP");
  if (!v) return fallback;
  return std::stol(v);
}

struct Loaded {
  Proof proof;
  ExtractedSolution sol;
};

Loaded load_solution(const std::string& path) {
  Loaded l;
  l.proof = solution_proof(slurp(path));
  l.sol = extract(l.proof);
  return l;
}

int cmd_parse(const std::string& text, bool classify_flag) {
  FormulaPtr f = parse_formula(text);
  std::cout << formula_to_string(f) << "\n";
  if (classify_flag) {
    FormulaClass c = classify(f);
    std::cout << "elementary=" << (c.elementary ? "true" : "false")
              << " polynomially-bounded=" << (c.polynomially_bounded ? "true" : "false")
              << " exponentially-bounded="
              << (c.exponentially_bounded ? "true" : "false") << " depth=" << c.depth
              << "\n";
    if (has_choice_under_classical_quantifier(f))
      std::cout << "note: choice operator under a classical quantifier; the "
                   "game engine rejects this formula\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& path, const std::string& system) {
  Proof p = parse_proof(slurp(path));
  if (!system.empty()) p.system = system_from_name(system);
  auto ds = check_proof(p);
  for (auto& d : ds) std::cout << diagnostic_to_string(d) << "\n";
  if (check_ok(ds)) {
    std::cout << "ok: " << path << " checks under " << system_name(p.system) << "\n";
    return kExitOk;
  }
  return kExitCheckFailed;
}

int cmd_extract(const std::string& path, const std::string& out,
                const std::string& system) {
  Proof p = parse_proof(slurp(path));
  if (!system.empty()) p.system = system_from_name(system);
  auto ds = check_proof(p);
  for (auto& d : ds)
    if (d.severity == Diagnostic::Severity::Warning)
      std::cout << diagnostic_to_string(d) << "\n";
  if (!check_ok(ds)) {
    for (auto& d : ds)
      if (d.severity == Diagnostic::Severity::Error)
        std::cout << diagnostic_to_string(d) << "\n";
    return kExitCheckFailed;
  }
  ExtractedSolution sol = extract(p);
  std::cout << "conclusion: " << formula_to_string(sol.strategy->formula) << "\n";
  std::cout << "bound kind: "
            << (sol.bound_kind == BoundObject::Kind::Space ? "space" : "time")
            << "\n";
  std::cout << "bound: " << explicit_to_string(sol.bound) << "\n";
  if (!out.empty()) {
    std::ofstream f(out);
    f << solution_to_string(p, sol);
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_verify_win(const std::string& path, long max_const, long cap) {
  Loaded l = load_solution(path);
  const Strategy& s = l.sol.strategy->strategy;
  if (depth(s.game) > 16) {
    std::cout << "formula depth exceeds the verification limit\n";
    return kExitResourceCap;
  }
  VerifyOutcome out = verify_win(s, max_const, env_cap(1 << 20), cap);
  if (out.won_all) {
    std::cout << "ok: strategy wins all " << out.lines
              << " legal-reasonable adversary lines (constants <= " << max_const
              << ")\n";
    return kExitOk;
  }
  std::cout << "LOSS on line:\n";
  for (auto& lm : out.loss->run)
    std::cout << "  " << player_char(lm.player) << " " << move_to_string(lm.move)
              << "\n";
  std::cout << verdict_to_string(out.loss->verdict) << "\n";
  return kExitCheckFailed;
}

// Environment move lines: "<address> <payload>"; payload L | R | numeral.
std::vector<Move> parse_env_moves(std::istream& in) {
  std::vector<Move> out;
  std::string addr, payload;
  while (in >> addr >> payload) {
    Address a = address_from_string(addr);
    if (payload == "L")
      out.push_back(Move::left(a));
    else if (payload == "R")
      out.push_back(Move::right(a));
    else
      out.push_back(Move::constant_move(a, Nat(payload)));
  }
  return out;
}

int cmd_duel(const std::string& path, const std::string& env_path) {
  Loaded l = load_solution(path);
  std::ifstream f(env_path);
  if (!f) throw std::runtime_error("cannot open " + env_path);
  auto moves = parse_env_moves(f);
  DrivenPlay r = drive_line(l.sol.strategy->strategy, moves, env_cap(1 << 20));
  long cycle = 0;
  for (auto& lm : r.run)
    std::cout << "cycle " << cycle++ << " " << player_char(lm.player) << " "
              << move_to_string(lm.move) << "\n";
  std::cout << verdict_to_string(r.verdict) << "\n";
  return r.verdict.winner == Player::Top ? kExitOk : kExitCheckFailed;
}

int cmd_play(const std::string& path) {
  Loaded l = load_solution(path);
  const Strategy& s = l.sol.strategy->strategy;
  std::vector<Move> env;  // replayed deterministically after :undo
  std::cout << "playing " << formula_to_string(s.game) << "\n";
  std::cout << "you are Environment; enter `<address> <payload>` (payload L, R "
               "or a numeral), or :moves :history :undo :quit\n";
  for (;;) {
    DrivenPlay r = drive_line(s, env, env_cap(1 << 20));
    GameState state = GameState::initial(s.game);
    for (auto& lm : r.run) state = apply_move(state, lm);
    std::cout << "position: " << formula_to_string(state.current) << "\n";
    bool quiescent_game = legal_moves(state, Player::Bot).empty();
    if (quiescent_game)
      std::cout << verdict_to_string(r.verdict) << " (:undo to revise, :quit to leave)\n";
    std::cout << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line) || line == ":quit") {
      std::cout << verdict_to_string(r.verdict) << "\n";
      return !quiescent_game || r.verdict.winner == Player::Top ? kExitOk
                                                                : kExitCheckFailed;
    }
    if (line == ":undo") {
      if (!env.empty()) env.pop_back();
      continue;
    }
    if (line == ":history") {
      long cycle = 0;
      for (auto& lm : r.run)
        std::cout << "cycle " << cycle++ << " " << player_char(lm.player) << " "
                  << move_to_string(lm.move) << "\n";
      continue;
    }
    if (line == ":moves") {
      for (auto& m : adversary_options(state, 8))
        std::cout << "  " << move_to_string(m) << "\n";
      std::cout << "  (constants above 8 may also be legal)\n";
      continue;
    }
    std::stringstream ss(line);
    try {
      auto moves = parse_env_moves(ss);
      if (moves.size() != 1) throw std::runtime_error("one move per line");
      GameState probe = apply_move(state, {Player::Bot, moves[0]});
      (void)probe;
      if (!move_is_reasonable(state, moves[0]))
        std::cout << "note: that move violates a sizebound (unreasonable); "
                     "the subgame is forfeit\n";
      env.push_back(moves[0]);
    } catch (const IllegalMoveError& e) {
      std::cout << "illegal move: " << e.what() << " (state unchanged)\n";
    } catch (const std::exception& e) {
      std::cout << "cannot read move: " << e.what() << "\n";
    }
  }
}

int cmd_bench(const std::string& path, long K, const std::string& meter) {
  Loaded l = load_solution(path);
  const ComposedStrategy* root = l.sol.strategy.get();
  if (root->composer != "ind-space" && root->composer != "ind-parallel") {
    // Walk down to an induction composer when the root is an LC wrapper.
    while (root && root->composer != "ind-space" && root->composer != "ind-parallel")
      root = root->premises.empty() ? nullptr : root->premises.back().get();
    if (!root) {
      std::cout << "strategy was not produced by an induction composer\n";
      return kExitCheckFailed;
    }
  }
  std::cout << "composer: " << root->composer << "\n";
  auto closure_vars = free_vars(root->formula);
  for (long k = 0; k <= K; ++k) {
    std::shared_ptr<CompositionStats> stats;
    auto session = spawn_with_stats(root->strategy, &stats);
    std::vector<Move> in;
    auto actives = active_choices(root->formula);
    // Feed every closure constant the value k, outermost first.
    GameState st = GameState::initial(root->formula);
    while (!legal_moves(st, Player::Bot).empty() &&
           legal_moves(st, Player::Bot)[0].address.empty()) {
      Move m = Move::constant_move({}, k);
      st = apply_move(st, {Player::Bot, m});
      auto outs = session->step({m});
      (void)outs;
      if (st.current->kind != Formula::Kind::ChAll) break;
    }
    for (int i = 0; i < 64; ++i) {
      auto outs = session->step({});
      if (outs.empty() && session->quiescent()) break;
    }
    if (!stats) {
      std::cout << "no instrumentation on this composer\n";
      return kExitCheckFailed;
    }
    if (meter == "space")
      std::cout << "k=" << k << " peak-live-rows=" << stats->peak
                << " row-sims=" << stats->row_sims_started
                << " peak-batch-cells=" << stats->peak_batch_cells << "\n";
    else
      std::cout << "k=" << k << " logical-steps=" << stats->logical_steps
                << " rows=" << stats->row_sims_started << "\n";
  }
  if (root->strategy.declared_bound)
    std::cout << "declared bound: "
              << explicit_to_string(root->strategy.declared_bound->fn) << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& pr_path, const std::string& tree,
             const std::string& args_csv, const std::string& eta_formula,
             const std::string& eta_mode, long eta_l) {
  if (!eta_formula.empty()) {
    FormulaPtr f = parse_formula(eta_formula);
    auto mode = eta_mode == "exp" ? Sizebound::Kind::Exponential
                                  : Sizebound::Kind::Polynomial;
    std::cout << "eta(" << eta_l << ") = " << eta_bound(f, eta_l, mode).str()
              << "\n";
    std::cout << "eta term: " << tree_term_to_string(eta_term(f, mode)) << "\n";
    return kExitOk;
  }
  std::vector<Nat> args;
  if (!args_csv.empty()) {
    std::stringstream ss(args_csv);
    std::string part;
    while (std::getline(ss, part, ',')) args.push_back(Nat(part));
  }
  ExplicitFunction fn = !pr_path.empty()
                            ? ExplicitFunction::prf(parse_pr(slurp(pr_path)))
                            : ExplicitFunction{};
  if (!tree.empty()) {
    ElemPtr t = parse_tree_term(tree);
    fn = contains_exp(t) ? ExplicitFunction::elem(t) : ExplicitFunction::poly(t);
  } else if (pr_path.empty()) {
    std::cout << "nothing to evaluate; pass --pr, --tree or --eta\n";
    return kExitCheckFailed;
  }
  if (fn.kind == ExplicitFunction::Kind::PR) {
    auto ds = validate_pr(fn.pr);
    if (!ds.empty()) {
      for (auto& d : ds) std::cout << d.def_name << ": " << d.message << "\n";
      return kExitCheckFailed;
    }
  }
  PREvalLimits lim;
  lim.value_cap = Nat(1) << static_cast<unsigned long>(env_cap(4096));
  std::cout << eval(fn, args, lim).str() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clarithmetic toolchain: CLA5/CLA6/CLA7 proofs to strategies"};
  app.require_subcommand(1);

  std::string formula_text, proof_path, system, out_path, env_path;
  std::string pr_path, tree_expr, args_csv, eta_formula, eta_mode = "poly";
  long max_const = 8, cap = 200000, bench_k = 8, eta_l = 3;
  std::string meter = "space";
  bool classify_flag = false;

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula");
  parse_cmd->add_option("formula", formula_text)->required();
  parse_cmd->add_flag("--classify", classify_flag);

  auto* check_cmd = app.add_subcommand("check", "check a proof");
  check_cmd->add_option("proof", proof_path)->required();
  check_cmd->add_option("--system", system);

  auto* extract_cmd = app.add_subcommand("extract", "extract a strategy");
  extract_cmd->add_option("proof", proof_path)->required();
  extract_cmd->add_option("-o,--out", out_path);
  extract_cmd->add_option("--system", system);

  auto* verify_cmd = app.add_subcommand("verify-win", "exhaustive verification");
  verify_cmd->add_option("strategy", proof_path)->required();
  verify_cmd->add_option("--max-const", max_const);
  verify_cmd->add_option("--cap", cap);

  auto* play_cmd = app.add_subcommand("play", "interactive play as Environment");
  play_cmd->add_option("strategy", proof_path)->required();

  auto* duel_cmd = app.add_subcommand("duel", "replay a scripted environment");
  duel_cmd->add_option("strategy", proof_path)->required();
  duel_cmd->add_option("--env", env_path)->required();

  auto* bench_cmd = app.add_subcommand("bench", "meter a composed strategy");
  bench_cmd->add_option("strategy", proof_path)->required();
  bench_cmd->add_option("--k", bench_k);
  bench_cmd->add_option("--meter", meter);

  auto* eval_cmd = app.add_subcommand("eval", "bound calculator");
  eval_cmd->add_option("--pr", pr_path);
  eval_cmd->add_option("--tree", tree_expr);
  eval_cmd->add_option("--args", args_csv);
  eval_cmd->add_option("--eta", eta_formula);
  eval_cmd->add_option("--mode", eta_mode);
  eval_cmd->add_option("--l", eta_l);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(formula_text, classify_flag);
    if (check_cmd->parsed()) return cmd_check(proof_path, system);
    if (extract_cmd->parsed()) return cmd_extract(proof_path, out_path, system);
    if (verify_cmd->parsed()) return cmd_verify_win(proof_path, max_const, cap);
    if (play_cmd->parsed()) return cmd_play(proof_path);
    if (duel_cmd->parsed()) return cmd_duel(proof_path, env_path);
    if (bench_cmd->parsed()) return cmd_bench(proof_path, bench_k, meter);
    if (eval_cmd->parsed())
      return cmd_eval(pr_path, tree_expr, args_csv, eta_formula, eta_mode, eta_l);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const SExprError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const VerifyCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}
