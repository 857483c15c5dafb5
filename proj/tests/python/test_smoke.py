import os

import pytest

import _clarith as cl

LIB = os.environ.get("CLARITH_LIB_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "lib"))


def lib(name):
    return os.path.join(LIB, name)


def test_parse_roundtrip():
    s = cl.parse("chall x. chex y. y = x'")
    assert s == "chall x. chex y. y = x'"
    assert cl.parse(s) == s
    with pytest.raises(cl.FormulaParseError):
        cl.parse("0 = ")


def test_classify_and_depth():
    c = cl.classify("chex z. (|z| <= |x| + |y| /\\ z = x + y)")
    assert c["polynomially_bounded"] and not c["exponentially_bounded"]
    assert cl.depth("chall x. chex y. y = x'") == 2
    assert cl.depth("(chex y. y = 0) /\\ (chall x. (x = 0 chor ~x = 0))") == 3


def test_elementarize_and_eval():
    assert cl.eval_elementary("0'' = 0' + 0'") == "true"
    assert cl.eval_elementary("ex x. x * x = 0''''", 16) == "true"
    assert cl.eval_elementary("all x. x + 0 = x", 16) == "unknown"
    assert cl.eval_elementary(cl.elementarize("chex y. y = x' chor 0 = 0")) == "false"


def test_bounds():
    assert cl.tree_eval("w * w + w + 0''''", [3]) == 16
    add = "def g/1 = proj/1/1; def s/1 = succ; def p2/3 = proj/3/2; " \
          "def h/3 = comp s p2; def f/2 = rec g h; main f"
    assert cl.pr_eval(add, [2, 3]) == 5
    assert cl.pr_validate(add) == []
    f = "chex u. (|u| <= |x| * |z| /\\ chall v. (|v| <= |u| + |x| -> x = x))"
    assert cl.eta_bound(f, 3, "poly") == 16
    assert cl.quiescence_bound(2, 2, 1, 2) == 14336


def test_exp_relax():
    out = cl.exp_relax("chex z. (|z| <= |x| /\\ z = x)")
    assert cl.classify(out)["exponentially_bounded"]


def test_check_and_extract():
    res = cl.check_proof_file(lib("fact-2.1.clp"))
    assert res["ok"] and res["system"] == "CLA5"
    info = cl.extract_file(lib("fact-2.1.clp"))
    assert info["bound_kind"] == "space"
    info7 = cl.extract_file(lib("fact-7.1.clp"))
    assert info7["bound_kind"] == "time"
    assert "exp(" in info7["bound"]


def test_play_library_strategy():
    out = cl.play(lib("fact-2.1.clp"), ["e 3"])
    assert out["winner"] == "T"
    assert "T e 6" in out["run"]
    out = cl.play(lib("fact-10.1-case-v.clp"), ["e 2", "e 3"])
    assert out["winner"] == "T"
    assert "T e 5" in out["run"]


def test_oracle():
    assert cl.game_tree_winner("chall x. chex y. y = x") == "T"
    assert cl.game_tree_winner("0 = 0'") == "B"
    assert len(cl.library_names()) == 11
