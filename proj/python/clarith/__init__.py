"""Clarithmetic toolchain: CLA5/CLA6/CLA7 proofs compiled to interactive
winning strategies with explicit resource bounds."""

try:  # installed wheel layout: the extension lives inside the package
    from ._clarith import (
        FormulaParseError,
        ResourceCap,
        check_proof_file,
        choice_closure,
        classify,
        depth,
        elementarize,
        eta_bound,
        eval_elementary,
        exp_relax,
        extract_file,
        game_tree_winner,
        library_names,
        overline,
        parse,
        play,
        pr_eval,
        pr_validate,
        quiescence_bound,
        tree_eval,
    )
except ImportError:  # development layout: extension on PYTHONPATH
    from _clarith import (
        FormulaParseError,
        ResourceCap,
        check_proof_file,
        choice_closure,
        classify,
        depth,
        elementarize,
        eta_bound,
        eval_elementary,
        exp_relax,
        extract_file,
        game_tree_winner,
        library_names,
        overline,
        parse,
        play,
        pr_eval,
        pr_validate,
        quiescence_bound,
        tree_eval,
    )

__all__ = [
    "FormulaParseError", "ResourceCap", "check_proof_file", "choice_closure",
    "classify", "depth", "elementarize", "eta_bound", "eval_elementary",
    "exp_relax", "extract_file", "game_tree_winner", "library_names",
    "overline", "parse", "play", "pr_eval", "pr_validate", "quiescence_bound",
    "tree_eval",
]
