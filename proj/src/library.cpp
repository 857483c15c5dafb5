#include "clarith/proof.hpp"

namespace clarith {

// The transcribed library proofs, in the proof file format. The same texts
// ship as lib/*.clp; a test keeps them in sync.
namespace library_text {

const char* fact_2_1 = R"CLP((proof (system CLA5)
  (node ax8 (axiom 8))
  (node basis (lc (concl "chall y. chex z. (|z| <= |0| + |y| /\ z = 0 + y)") (prem)
    (script (wait e const $y) (move e $y))))
  (node step (lc (concl "chall x. chall y. ((chex z. (|z| <= |x| + |y| /\ z = x + y)) -> chex z. (|z| <= |x'| + |y| /\ z = x' + y))") (prem ax8)
    (script (wait e const $x) (wait e const $y) (wait 0 const $a)
            (use 0 (feed e $a) (bind e const $b))
            (move 1 $b))))
  (node ind (ind (system-var x) (basis basis) (step step)
    (concl "chall x. chall y. chex z. (|z| <= |x| + |y| /\ z = x + y)")))
  (node main (lc (concl "chall x. chex y. y = x#0") (prem ind)
    (script (wait e const $a)
            (use 0 (feed e $a) (feed e $a) (bind e const $c))
            (move e $c))))
  (root main))
)CLP";

const char* fact_2_2 = R"CLP((proof (system CLA5)
  (node ax8 (axiom 8))
  (node basis (lc (concl "chex y. (|y| <= |0| /\ (0 = y#0 chor 0 = y#1))") (prem)
    (script (move e 0) (choose 1 left))))
  (node step (lc (concl "chall x. ((chex y. (|y| <= |x| /\ (x = y#0 chor x = y#1))) -> chex y. (|y| <= |x'| /\ (x' = y#0 chor x' = y#1)))") (prem ax8)
    (script (wait e const $x) (wait 0 const $a) (wait 0.1 side $d)
            (branch (eq $d L)
              ((move 1 $a) (choose 1.1 right))
              ((use 0 (feed e $a) (bind e const $b)) (move 1 $b) (choose 1.1 left))))))
  (node ind (ind (system-var x) (basis basis) (step step)
    (concl "chall x. chex y. (|y| <= |x| /\ (x = y#0 chor x = y#1))")))
  (node main (lc (concl "chall x. chex y. (x = y#0 chor x = y#1)") (prem ind)
    (script (wait e const $a)
            (use 0 (feed e $a) (bind e const $b) (bind 1 side $d))
            (move e $b)
            (branch (eq $d L) ((choose e left)) ((choose e right))))))
  (root main))
)CLP";

// The bounded-recursion construction demonstrated on
// F(y) = chex u (|u| <= |y| /\ u = y):
// CLA4-style premises F(0), F(x) -> F(x#0), F(x) -> F(x#1) are turned into
// a CLA5-Induction over G(x) = chall y (|y| <= |x| -> F(y)) using the
// binary predecessor (fact-2.2) and copycat through the development
// premises.
const char* fact_2_3 = R"CLP((proof (system CLA5)
  (node ax8 (axiom 8))
  (node bp.basis (lc (concl "chex y. (|y| <= |0| /\ (0 = y#0 chor 0 = y#1))") (prem)
    (script (move e 0) (choose 1 left))))
  (node bp.step (lc (concl "chall x. ((chex y. (|y| <= |x| /\ (x = y#0 chor x = y#1))) -> chex y. (|y| <= |x'| /\ (x' = y#0 chor x' = y#1)))") (prem ax8)
    (script (wait e const $x) (wait 0 const $a) (wait 0.1 side $d)
            (branch (eq $d L)
              ((move 1 $a) (choose 1.1 right))
              ((use 0 (feed e $a) (bind e const $b)) (move 1 $b) (choose 1.1 left))))))
  (node bp.ind (ind (system-var x) (basis bp.basis) (step bp.step)
    (concl "chall x. chex y. (|y| <= |x| /\ (x = y#0 chor x = y#1))")))
  (node bp (lc (concl "chall x. chex y. (x = y#0 chor x = y#1)") (prem bp.ind)
    (script (wait e const $a)
            (use 0 (feed e $a) (bind e const $b) (bind 1 side $d))
            (move e $b)
            (branch (eq $d L) ((choose e left)) ((choose e right))))))
  (node dev0 (lc (concl "chex u. (|u| <= |0| /\ u = 0)") (prem)
    (script (move e 0))))
  (node dev.b0 (lc (concl "chall x. ((chex u. (|u| <= |x| /\ u = x)) -> chex u. (|u| <= |x#0| /\ u = x#0))") (prem)
    (script (wait e const $x) (wait 0 const $a) (compute double $a $b) (move 1 $b))))
  (node dev.b1 (lc (concl "chall x. ((chex u. (|u| <= |x| /\ u = x)) -> chex u. (|u| <= |x#1| /\ u = x#1))") (prem)
    (script (wait e const $x) (wait 0 const $a) (compute double $a $b) (compute succ $b $c) (move 1 $c))))
  (node g.basis (lc (concl "chall y. (|y| <= |0| -> chex u. (|u| <= |y| /\ u = y))") (prem dev0)
    (script (wait e const $a)
            (branch (eq $a 0) ((use 0 (sync e 1))) ()))))
  (node g.step (lc (concl "chall x. ((chall y. (|y| <= |x| -> chex u. (|u| <= |y| /\ u = y))) -> chall y. (|y| <= |x'| -> chex u. (|u| <= |y| /\ u = y)))") (prem bp dev.b0 dev.b1)
    (script (wait e const $x) (wait 1 const $a)
            (use 0 (feed e $a) (bind e const $b) (bind e side $d))
            (move 0 $b)
            (branch (eq $d L)
              ((use 1 (feed e $b) (sync 0 0.1) (sync 1 1.1)))
              ((use 2 (feed e $b) (sync 0 0.1) (sync 1 1.1)))))))
  (node g.ind (ind (system-var x) (basis g.basis) (step g.step)
    (concl "chall x. chall y. (|y| <= |x| -> chex u. (|u| <= |y| /\ u = y))")))
  (node main (lc (concl "chall x. chex u. (|u| <= |x| /\ u = x)") (prem g.ind)
    (script (wait e const $a)
            (use 0 (feed e $a) (feed e $a) (sync 1 e)))))
  (root main))
)CLP";

const char* fact_7_1 = R"CLP((proof (system CLA6)
  (node basis (lc (concl "chex z. (|z| <= 0' /\ z = exp(0))") (prem)
    (script (move e 1))))
  (node step (lc (concl "chall x. ((chex z. (|z| <= x' /\ z = exp(x))) -> chex z. (|z| <= x'' /\ z = exp(x')))") (prem)
    (script (wait e const $x) (wait 0 const $a) (compute double $a $b) (move 1 $b))))
  (node ind (ind (system-var x) (basis basis) (step step)
    (concl "chall x. chex z. (|z| <= x' /\ z = exp(x))")))
  (node main (lc (concl "chall x. chex z. z = exp(x)") (prem ind)
    (script (wait e const $a)
            (use 0 (feed e $a) (bind e const $c))
            (move e $c))))
  (root main))
)CLP";

// System inclusion at the checker level: the fact-7.1 derivation checks
// verbatim under
// CLA7, whose induction imposes no side condition.
const char* fact_8_1 = R"CLP((proof (system CLA7)
  (node basis (lc (concl "chex z. (|z| <= 0' /\ z = exp(0))") (prem)
    (script (move e 1))))
  (node step (lc (concl "chall x. ((chex z. (|z| <= x' /\ z = exp(x))) -> chex z. (|z| <= x'' /\ z = exp(x')))") (prem)
    (script (wait e const $x) (wait 0 const $a) (compute double $a $b) (move 1 $b))))
  (node ind (ind (system-var x) (basis basis) (step step)
    (concl "chall x. chex z. (|z| <= x' /\ z = exp(x))")))
  (node main (lc (concl "chall x. chex z. z = exp(x)") (prem ind)
    (script (wait e const $a)
            (use 0 (feed e $a) (bind e const $c))
            (move e $c))))
  (root main))
)CLP";

const char* fact_10_1_i = R"CLP((proof (system CLA7)
  (node ax8 (axiom 8))
  (node main (lc (concl "chall x. chex z. z = x'") (prem ax8)
    (script (wait e const $a) (use 0 (feed e $a) (bind e const $b)) (move e $b))))
  (root main))
)CLP";

const char* fact_10_1_ii = R"CLP((proof (system CLA7)
  (node main (lc (concl "chall x1. chall x2. chex z. z = 0") (prem)
    (script (wait e const $a) (wait e const $b) (move e 0))))
  (root main))
)CLP";

const char* fact_10_1_iii = R"CLP((proof (system CLA7)
  (node main (lc (concl "chall x1. chall x2. chex z. z = x2") (prem)
    (script (wait e const $a) (wait e const $b) (move e $b))))
  (root main))
)CLP";

const char* fact_10_1_iv = R"CLP((proof (system CLA7)
  (node ax8 (axiom 8))
  (node main (lc (concl "chall x. chex z. z = x''") (prem ax8 ax8)
    (script (wait e const $a)
            (use 0 (feed e $a) (bind e const $b))
            (use 1 (feed e $b) (bind e const $c))
            (move e $c))))
  (root main))
)CLP";

const char* fact_10_1_v = R"CLP((proof (system CLA7)
  (node ax8 (axiom 8))
  (node basis (lc (concl "chall x2. chex z. z = 0 + x2") (prem)
    (script (wait e const $a) (move e $a))))
  (node step (lc (concl "chall x1. chall x2. ((chex z. z = x1 + x2) -> chex z. z = x1' + x2)") (prem ax8)
    (script (wait e const $x1) (wait e const $x2) (wait 0 const $a)
            (use 0 (feed e $a) (bind e const $b))
            (move 1 $b))))
  (node main (ind (system-var x1) (basis basis) (step step)
    (concl "chall x1. chall x2. chex z. z = x1 + x2")))
  (root main))
)CLP";

}  // namespace library_text

std::vector<std::pair<std::string, std::string>> library_texts() {
  return {
      {"fact-2.1", library_text::fact_2_1},
      {"fact-2.2", library_text::fact_2_2},
      {"fact-2.3-transform", library_text::fact_2_3},
      {"fact-7.1", library_text::fact_7_1},
      {"fact-8.1-demo", library_text::fact_8_1},
      {"fact-10.1-case-i", library_text::fact_10_1_i},
      {"fact-10.1-case-ii", library_text::fact_10_1_ii},
      {"fact-10.1-case-iii", library_text::fact_10_1_iii},
      {"fact-10.1-case-iv", library_text::fact_10_1_iv},
      {"fact-10.1-case-v", library_text::fact_10_1_v},
  };
}

std::vector<std::pair<std::string, Proof>> library() {
  std::vector<std::pair<std::string, Proof>> out;
  for (auto& [name, text] : library_texts())
    out.push_back({name, parse_proof(text)});
  out.push_back({"fact-5.1-transform",
                 transform_cla5_to_cla6(parse_proof(library_text::fact_2_1))});
  return out;
}

}  // namespace clarith
