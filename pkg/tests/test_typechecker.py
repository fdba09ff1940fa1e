import pytest
from dataclasses import replace

from app.binders import Var
from app.diagnostics import DiagnosticKind
from app.evaluation import AppL, AppR, CaseC, Hole, SucC
from app.exceptions import TypeCheckError, ValidationError
from app.parser import parse_aterm, parse_atype, parse_term
from app.syntax import AEq, AJoin, ANat, AZero, Context, Effect
from app.typechecker import (
    CheckConfig, TypeChecker, find_eval_position, infer, subeffect, wf_context, wf_type,
)
from tests import term_generators as gen

TOTAL, GENERAL = Effect.TOTAL, Effect.GENERAL


def context(**bindings):
    gamma = Context()
    for name, text in bindings.items():
        gamma = gamma.extend(name, parse_atype(text))
    return gamma


def typeof(text, theta=TOTAL, gamma=None, config=None):
    return infer(gamma or Context(), parse_aterm(text), theta, config)


def rejection(text, theta=TOTAL, gamma=None, config=None):
    with pytest.raises(TypeCheckError) as excinfo:
        typeof(text, theta, gamma, config)
    return excinfo.value.diagnostic


# Effects

@pytest.mark.parametrize("rho, theta, expected", [
    (TOTAL, TOTAL, True),
    (TOTAL, GENERAL, True),
    (GENERAL, GENERAL, True),
    (GENERAL, TOTAL, False),
])
def test_subeffect(rho, theta, expected):
    assert subeffect(rho, theta) is expected


# Configuration

def test_check_config_defaults():
    config = CheckConfig()
    assert config.join_fuel == 1000
    assert config.proof_fuel == 1000


def test_check_config_opsem_fuel_overrides():
    assert CheckConfig(join_fuel=10, opsem_fuel=3).proof_fuel == 3


@pytest.mark.parametrize("kwargs", [{"join_fuel": -1}, {"opsem_fuel": -5}])
def test_check_config_rejects_negative_fuel(kwargs):
    with pytest.raises(ValidationError):
        CheckConfig(**kwargs)


# Variables, numbers, abstractions

def test_variable():
    assert typeof("x", gamma=context(x="nat")) == ANat()


def test_unbound_variable():
    diagnostic = rejection("x")
    assert (diagnostic.rule, diagnostic.premise) == ("A_Var", 1)
    assert diagnostic.kind is DiagnosticKind.UNBOUND_VARIABLE


def test_successor():
    assert typeof("Suc (Suc 0)") == ANat()


def test_successor_of_function():
    diagnostic = rejection(r"Suc (\! x : nat . x)")
    assert (diagnostic.rule, diagnostic.premise) == ("A_Suc", 1)


def test_abstraction():
    assert typeof(r"\! x : nat . Suc x") == parse_atype("Pi ! x : nat . nat")


def test_abstraction_at_general_body():
    assert typeof(r"\? x : nat . abort nat") == parse_atype("Pi ? x : nat . nat")


def test_abstraction_body_path():
    diagnostic = rejection(r"\! x : nat . abort nat")
    assert diagnostic.rule == "A_Abort"
    assert diagnostic.location == "term/body"


# Application

def test_application_at_general():
    gamma = context(f="Pi ? x : nat . nat")
    assert typeof("f 0", GENERAL, gamma) == ANat()


def test_general_function_applied_at_total():
    diagnostic = rejection("f 0", TOTAL, context(f="Pi ? x : nat . nat"))
    assert (diagnostic.rule, diagnostic.premise) == ("A_App", 3)
    assert diagnostic.kind is DiagnosticKind.EFFECT_VIOLATION


def test_application_argument_mismatch():
    gamma = context(f="Pi ! x : nat . nat")
    diagnostic = rejection(r"f (\! y : nat . y)", TOTAL, gamma)
    assert (diagnostic.rule, diagnostic.premise) == ("A_App", 2)
    assert diagnostic.kind is DiagnosticKind.TYPE_MISMATCH


def test_application_of_number():
    diagnostic = rejection("0 0")
    assert (diagnostic.rule, diagnostic.premise) == ("A_App", 1)
    assert diagnostic.kind is DiagnosticKind.NON_PI_APPLICATION


def test_dependent_application_substitutes_argument():
    gamma = context(f="Pi ! x : nat . x = x")
    assert typeof("f 2", TOTAL, gamma) == parse_atype("2 = 2")


# Join

def test_join():
    assert typeof(r"join ((\! x : nat . x) 0) 0") == parse_atype(r"(\! x : nat . x) 0 = 0")


def test_join_distinct_numbers():
    diagnostic = rejection("join 0 1")
    assert (diagnostic.rule, diagnostic.premise) == ("A_Join", 1)
    assert diagnostic.kind is DiagnosticKind.JOIN_FAILURE


@pytest.mark.parametrize("fuel", [0, 10, 10000])
def test_join_loop_with_zero(fuel):
    loop = "(rec f (x : nat) : nat = f x) 0"
    diagnostic = rejection(f"join ({loop}) 0", TOTAL, None, CheckConfig(join_fuel=fuel))
    assert diagnostic.kind is DiagnosticKind.JOIN_FAILURE


# Abort and contra

def test_abort_at_general():
    assert typeof("abort nat", GENERAL) == ANat()


def test_abort_at_total():
    diagnostic = rejection("abort nat", TOTAL)
    assert (diagnostic.rule, diagnostic.premise) == ("A_Abort", 0)
    assert diagnostic.kind is DiagnosticKind.EFFECT_VIOLATION


def test_contra():
    assert typeof("contra nat e", TOTAL, context(e="0 = Suc 0")) == ANat()


def test_contra_needs_impossible_equation():
    diagnostic = rejection("contra nat e", TOTAL, context(e="0 = 0"))
    assert (diagnostic.rule, diagnostic.premise) == ("A_Contra", 1)


# Termination casts

def test_reflect():
    gamma = context(f="Pi ? x : nat . nat", t="Term (f 0)")
    assert typeof("reflect (f 0) by t", TOTAL, gamma) == ANat()


def test_reflect_with_proof_about_other_term():
    gamma = context(f="Pi ? x : nat . nat", t="Term (f 0)")
    diagnostic = rejection("reflect (f 1) by t", TOTAL, gamma)
    assert (diagnostic.rule, diagnostic.premise) == ("A_Reflect", 2)


def test_terminates():
    assert typeof("tm 0") == parse_atype("Term 0")


def test_terminates_needs_total_subject():
    assert rejection("tm (abort nat)", GENERAL).rule == "A_Abort"


def test_inv():
    gamma = context(f="Pi ? x : nat . nat", t="Term (Suc (f 0))")
    assert typeof("inv t at (f 0)", TOTAL, gamma) == parse_atype("Term (f 0)")


def test_inv_subterm_not_in_evaluation_position():
    gamma = context(f="Pi ? x : nat . nat", t="Term (Suc (f 0))")
    diagnostic = rejection("inv t at 1", TOTAL, gamma)
    assert (diagnostic.rule, diagnostic.premise) == ("A_Inv", 2)
    assert diagnostic.kind is DiagnosticKind.CONTEXT_MATCH_FAILURE


def test_inv_needs_termination_proof():
    assert rejection("inv 0 at 0").rule == "A_Inv"


# Conversion

def test_conv():
    gamma = context(x="nat", y="nat", e="x = y", a="Term y")
    assert typeof("conv [w. Term w] a by e", TOTAL, gamma) == parse_atype("Term x")


def test_conv_subject_mismatch():
    gamma = context(y="nat", a="Term y")
    diagnostic = rejection("conv [w. Term w] a by (join 0 0)", TOTAL, gamma)
    assert (diagnostic.rule, diagnostic.premise) == ("A_Conv", 1)


def test_conv_needs_equation():
    gamma = context(y="nat", a="Term y")
    diagnostic = rejection("conv [w. Term w] a by a", TOTAL, gamma)
    assert (diagnostic.rule, diagnostic.premise) == ("A_Conv", 2)


# Case and recursion

def test_case():
    assert typeof(r"case [y. nat] 0 1 (\! z : nat . z)") == ANat()


def test_case_with_dependent_motive():
    text = r"case [y. y = y] 0 (join 0 0) (\! z : nat . join (Suc z) (Suc z))"
    assert typeof(text) == AEq(AZero(), AZero())


def test_case_scrutinee_must_be_number():
    diagnostic = rejection(r"case [y. nat] (\! z : nat . z) 0 (\! z : nat . z)")
    assert (diagnostic.rule, diagnostic.premise) == ("A_Case", 1)


def test_case_zero_branch_mismatch():
    diagnostic = rejection(r"case [y. nat] 0 (\! z : nat . z) (\! z : nat . z)")
    assert (diagnostic.rule, diagnostic.premise) == ("A_Case", 2)


def test_case_general_branch_at_total():
    text = r"case [y. nat] 0 1 (\? z : nat . z)"
    diagnostic = rejection(text, TOTAL)
    assert (diagnostic.rule, diagnostic.premise) == ("A_Case", 4)
    assert typeof(text, GENERAL) == ANat()


def test_rec():
    assert typeof("rec f (x : nat) : nat = f x") == parse_atype("Pi ? x : nat . nat")


def test_rec_body_mismatch():
    diagnostic = rejection(r"rec f (x : nat) : nat = \! y : nat . y")
    assert (diagnostic.rule, diagnostic.premise) == ("A_Rec", 1)


def test_recnat_rejects_proof_variable_in_body():
    diagnostic = rejection("recnat f (x, p) : nat = p")
    assert (diagnostic.rule, diagnostic.premise) == ("A_RecNat", 1)
    assert diagnostic.kind is DiagnosticKind.PROOF_VARIABLE_OCCURS


def test_recnat_is_total():
    text = r"recnat f (x, p) : nat = (case [y. Pi ! q : x = y . nat] x (\! q : x = 0 . 0) (\! z : nat . \! q : x = Suc z . 0)) (join x x)"
    assert typeof(text) == parse_atype("Pi ! x : nat . nat")


# Well-formedness

def test_wf_type_rejects_unbound_variable():
    with pytest.raises(TypeCheckError) as excinfo:
        wf_type(Context(), parse_atype("Pi ! x : nat . Term y"))
    assert excinfo.value.diagnostic.rule == "A_Var"


def test_wf_type_accepts_dependent_equation():
    wf_type(Context(), parse_atype("Pi ! x : nat . x = Suc x"))


def test_wf_context_checks_bindings_in_order():
    gamma = Context().extend("e", parse_atype("x = 0")).extend("x", ANat())
    with pytest.raises(TypeCheckError) as excinfo:
        wf_context(gamma)
    assert "binding e" in str(excinfo.value)


def test_wf_context_accepts_prefix_closed_context():
    wf_context(context(x="nat", e="x = 0", f="Pi ? y : nat . Term (Suc y)"))


def test_checker_instance_reuses_config():
    checker = TypeChecker(CheckConfig(join_fuel=0))
    with pytest.raises(TypeCheckError):
        checker.infer(Context(), parse_aterm(r"join ((\! x : nat . x) 0) 0"), TOTAL)
    assert checker.infer(Context(), parse_aterm("join 0 0"), TOTAL) == AEq(AZero(), AZero())


def test_infer_rejects_types():
    with pytest.raises(TypeError):
        TypeChecker().infer(Context(), ANat(), TOTAL)


# Evaluation positions

@pytest.mark.parametrize("big, sub, expected", [
    ("Suc (f 0)", "f 0", SucC(Hole())),
    ("f 0", "f", AppL(Hole(), parse_term("0"))),
    ("f (g 0)", "g 0", AppR(Var("f"), Hole())),
    ("case (f 0) 0 g", "f 0", CaseC(Hole(), parse_term("0"), Var("g"))),
    ("x", "x", Hole()),
])
def test_find_eval_position(big, sub, expected):
    assert find_eval_position(parse_term(big), parse_term(sub)) == expected


def test_find_eval_position_skips_lambda_bodies():
    assert find_eval_position(parse_term(r"\x. f 0"), parse_term("f 0")) is None


def test_find_eval_position_argument_after_non_value():
    assert find_eval_position(parse_term("(f 0) (g 0)"), parse_term("g 0")) is None


# Join properties over generated terms

def renamed(node):
    """The same tree with every binder name primed."""
    changes = {name: renamed(child) for name, child, _ in node.children()}
    for names in node.SCOPES.values():
        for field_name in names:
            changes[field_name] = getattr(node, field_name) + "'"
    return replace(node, **changes)


def join_type(checker, left, right):
    try:
        return checker.infer(Context(), AJoin(left, right), TOTAL)
    except TypeCheckError:
        return None


def test_renamed_is_alpha_equivalent():
    term = parse_aterm(r"(\! x:nat. x) 0")
    assert renamed(term) == term
    assert renamed(term).fn.name == "x'"


@pytest.mark.slow
def test_join_is_symmetric_and_stable_under_renaming(rng):
    checker = TypeChecker(CheckConfig(join_fuel=200))
    accepted = 0
    for _ in range(300):
        left = gen.nat_aterm(rng, [])
        right = left if rng.random() < 0.3 else gen.nat_aterm(rng, [])
        forward = join_type(checker, left, right)
        backward = join_type(checker, right, left)
        assert join_type(checker, renamed(left), renamed(right)) == forward
        if forward is None:
            assert backward is None
            continue
        accepted += 1
        assert forward == AEq(left, right)
        assert backward == AEq(right, left)
    assert accepted > 0
