import pytest
from itertools import product

from app.binders import Var
from app.exceptions import ProofError
from app.parser import parse_proof
from app.proof_kernel import ProofKernel, check_proof
from app.proofs import (
    Alle, Alli, Andi, Ande1, Ande2, Assume, ContraPv, Impe, Impi, Ind, NotTermAbort, OpSem, Subst,
    Term0, TermS, Truei, weaken,
)
from app.syntax import Suc, Zero
from app.typechecker import CheckConfig
from app.wprime import FEq, FTrue, SNat, Sequent

VALID = ["term0", "term_suc", "symmetry", "transitivity", "induction", "compind", "terminv"]
CORRUPTED = {
    "bad_assume": "Pv_Assume",
    "bad_alle": "Pv_Alle",
    "bad_opsem": "Pv_OpSem",
    "bad_alli": "Pv_Alli",
    "bad_terminv": "Pv_TermInv",
}


def script(text):
    return parse_proof(text)


def rejected(text, config=None):
    seq, proof = script(text)
    with pytest.raises(ProofError) as excinfo:
        check_proof(seq, proof, config)
    return excinfo.value


@pytest.mark.parametrize("name", VALID)
def test_corpus_proofs_check(name, corpus_dir):
    seq, proof = script((corpus_dir / "proofs" / f"{name}.wp").read_text())
    check_proof(seq, proof)


@pytest.mark.parametrize("name, rule", sorted(CORRUPTED.items()))
def test_corrupted_proofs_name_the_rule(name, rule, corpus_dir):
    error = rejected((corpus_dir / "proofs" / f"{name}.wp").read_text())
    assert error.rule == rule
    assert error.position.startswith("proof")


def test_implication_rules():
    check_proof(*script("hyps: Term 0 => 0 = 0; Term 0\ngoal: 0 = 0\n(impe (assume 0) (assume 1))"))
    check_proof(*script("goal: Term 0 => Term 0\n(impi (assume 0))"))


def test_conjunction_rules():
    text = "hyps: Term 0 /\\ 0 = 0\ngoal: 0 = 0 /\\ Term 0\n(andi (ande2 (assume 0)) (ande1 (assume 0)))"
    check_proof(*script(text))


def test_ande_needs_conjunction():
    assert rejected("hyps: Term 0\ngoal: Term 0\n(ande1 (assume 0))").rule == "Pv_Ande1"


def test_contra_proves_anything():
    check_proof(*script("hyps: 0 = Suc 0\ngoal: 1 = 2\n(contra (assume 0))"))


def test_contra_needs_zero_equals_successor():
    assert rejected("hyps: 0 = 0\ngoal: 1 = 2\n(contra (assume 0))").rule == "Pv_Contra"


def test_abort_does_not_terminate():
    check_proof(*script("hyps: Term abort\ngoal: 0 = 1\n(notterm (assume 0))"))


def test_values_terminate():
    check_proof(*script("goal: Term (\\x. x)\n(termabs)"))
    check_proof(*script("goal: Term (rec f (x) = f x)\n(termrec)"))


def test_termabs_needs_abstraction():
    assert rejected("goal: Term 0\n(termabs)").rule == "Pv_TermAbs"


def test_alle_instantiates():
    check_proof(*script("hyps: forall x : nat . x = x\ngoal: 1 = 1\n(alle (assume 0) 1)"))


def test_alle_sort_checks_the_witness():
    error = rejected("hyps: forall x : nat . x = x\ngoal: 0 = 0\n(alle (assume 0) (\\y. y))")
    assert error.rule == "Pv_Alle"


def test_alli_needs_matching_sort():
    assert rejected("goal: forall x : nat . x = x\n(alli x : nat -> nat (opsem 0))").rule == "Pv_Alli"


def test_opsem_reduces_left_side():
    check_proof(*script("goal: (\\x. x) 0 = 0\n(opsem 5)"))


def test_opsem_fuel_is_capped_by_config():
    error = rejected("goal: (\\x. x) 0 = 0\n(opsem 5)", CheckConfig(join_fuel=0))
    assert error.rule == "Pv_OpSem"


def test_induction_with_hypothesis():
    check_proof(*script("goal: forall x : nat . Term x => Term x\n"
                        "(ind x [Term x] (term0) x' (termS (assume 0)))"))


def test_induction_variable_must_be_fresh():
    error = rejected("sigma: y : nat\ngoal: forall x : nat . Term x => True\n"
                     "(ind x [True] (truei) y (truei))")
    assert error.rule == "Pv_Ind"


def test_error_position_points_into_the_tree():
    error = rejected("goal: Term 0 /\\ 0 = 0\n(andi (term0) (assume 3))")
    assert error.rule == "Pv_Assume"
    assert error.position == "proof/1"


def test_subst_body_position():
    error = rejected("sigma: x : nat, y : nat\nhyps: x = y\ngoal: y = x\n"
                     "(subst z [z = x] (assume 0) (assume 0))")
    assert error.position == "proof/1"
    assert "goal is x = x" in error.message


def test_synthesize_returns_none_for_checking_only_rules():
    seq, _ = script("goal: 0 = 0\n(opsem 0)")
    kernel = ProofKernel()
    assert kernel.synthesize(seq, Impi(Truei())) is None
    assert kernel.synthesize(seq, Truei()) == FTrue()


def test_weaken_shifts_later_hypotheses():
    assert weaken(Assume(0), 0) == Assume(1)
    assert weaken(Assume(0), 1) == Assume(0)
    assert weaken(Impi(Assume(2)), 1) == Impi(Assume(3))
    assert weaken(Alli("x", SNat(), Truei()), 0) == Alli("x", SNat(), Truei())


def test_weakened_proof_checks_in_weakened_sequent(corpus_dir):
    seq, proof = script((corpus_dir / "proofs" / "transitivity.wp").read_text())
    weakened = Sequent(seq.sigma, (FTrue(),) + seq.hyps, seq.goal)
    check_proof(weakened, weaken(proof, 0))
    with pytest.raises(ProofError):
        check_proof(weakened, proof)


LEAVES = [Assume(0), Truei(), Term0(), OpSem(3)]
UNARY = [
    lambda p: Alli("v", SNat(), p),
    lambda p: Alle(p, Suc(Zero())),
    Impi, Ande1, Ande2, ContraPv, TermS, NotTermAbort,
]
BINARY = [
    Impe,
    Andi,
    lambda p, q: Subst("a", FEq(Zero(), Var("a")), p, q),
    lambda p, q: Ind("n", FEq(Var("n"), Var("n")), p, "m", q),
]


def proofs(depth):
    """Every proof tree of at most ``depth`` levels built from the pools above."""
    if depth == 1:
        return list(LEAVES)
    smaller = proofs(depth - 1)
    return (list(LEAVES)
            + [rule(p) for rule in UNARY for p in smaller]
            + [rule(p, q) for rule in BINARY for p, q in product(smaller, repeat=2)])


def proves(seq, proof):
    try:
        check_proof(seq, proof)
    except ProofError:
        return False
    return True


def test_proof_enumeration_sizes():
    assert len(proofs(1)) == 4
    assert len(proofs(2)) == 100


def test_enumerated_proofs_reach_provable_goals():
    candidates = proofs(2)
    assert any(proves(Sequent((), (), FEq(Zero(), Zero())), p) for p in candidates)
    assert any(proves(Sequent((), (), FTrue()), p) for p in candidates)


@pytest.mark.slow
def test_no_shallow_proof_of_zero_equals_one():
    goal = Sequent((), (), FEq(Zero(), Suc(Zero())))
    candidates = proofs(3)
    assert len(candidates) == 40804
    assert not [p for p in candidates if proves(goal, p)]
