"""Acceptance runs over the example programs in ``corpus/``."""

import pytest

from app.binders import Var
from app.erasure import erase_term, erase_type
from app.parser import parse_atype, parse_program
from app.program import CheckJob, resolve_program
from app.sort_checker import sty_check
from app.syntax import ANat, Context, Effect
from app.typechecker import infer
from app.wprime import trans_ctx, trans_term_c, trans_type_c
from tests import term_generators as gen

ACCEPTED = {
    "plus.teqt": {"plus": "Pi ! x1 : nat . Pi ! x2 : nat . nat"},
    "plus_external.teqt": {
        "plus": "Pi ! x2 : nat . Pi ? x1 : nat . nat",
        "plustotal": "Pi ! x2 : nat . Pi ! x1 : nat . Term (plus x2 x1)",
    },
    "lte.teqt": {
        "lte": "Pi ? x : nat . Pi ? x' : nat . nat",
        "pred": "Pi ! x : nat . nat",
    },
    "helper.teqt": {"g": "Pi ! x : nat . nat"},
    "example1.teqt": {"plus": "Pi ! x1 : nat . Pi ! x2 : nat . nat"},
    "example2.teqt": {"iter": "Pi ! x1 : (Pi ! x : nat . nat) . Pi ! x2 : nat . Pi ! x3 : nat . nat"},
    "example3.teqt": {"iter": "Pi ! x1 : (Pi ? x : nat . nat) . Pi ! x2 : nat . Pi ? x3 : nat . nat"},
    "example4.teqt": {"lte": "Pi ? x : nat . Pi ? x' : nat . nat"},
}


def check_jobs(path):
    jobs = resolve_program(parse_program(path.read_text(), str(path)))
    return [job for job in jobs if isinstance(job, CheckJob)]


@pytest.mark.parametrize("filename", sorted(ACCEPTED))
def test_corpus_programs_typecheck(filename, corpus_dir, toolchain):
    results = toolchain.check_program(corpus_dir / filename)
    assert [r.name for r in results] == list(ACCEPTED[filename])
    assert all(r.ok for r in results), [r.detail for r in results]


@pytest.mark.parametrize("filename", sorted(ACCEPTED))
def test_inferred_types(filename, corpus_dir):
    # inlined definitions make later types mention earlier bodies
    for job in check_jobs(corpus_dir / filename):
        assert infer(job.gamma, job.term, job.effect) == job.type
        assert job.declared == parse_atype(ACCEPTED[filename][job.name])


@pytest.mark.parametrize("filename", sorted(ACCEPTED))
def test_accepted_at_total_also_accepted_at_general(filename, corpus_dir):
    for job in check_jobs(corpus_dir / filename):
        assert infer(job.gamma, job.term, Effect.GENERAL) == infer(job.gamma, job.term, Effect.TOTAL)


@pytest.mark.parametrize("filename", sorted(ACCEPTED))
def test_erasure_is_well_sorted(filename, corpus_dir):
    for job in check_jobs(corpus_dir / filename):
        sigma, _ = trans_ctx(job.gamma)
        sty_check(sigma, trans_term_c(erase_term(job.term)), trans_type_c(erase_type(job.type)))


@pytest.mark.parametrize("filename, name, expected", [
    ("plus.teqt", "plus23", "plus23 = Suc (Suc (Suc (Suc (Suc 0))))"),
    ("plus_external.teqt", "sum", "sum = Suc (Suc (Suc (Suc (Suc 0))))"),
])
def test_corpus_evaluation(filename, name, expected, corpus_dir, toolchain):
    (result,) = toolchain.evaluate_program(corpus_dir / filename, fuel=100)
    assert result.name == name
    assert result.output.startswith(expected + "  [")
    assert "fuel exhausted" not in result.output


@pytest.mark.slow
def test_generated_terms_erase_to_well_sorted_terms(rng):
    gamma = Context().extend("x", ANat()).extend("y", ANat())
    sigma, _ = trans_ctx(gamma)
    for _ in range(500):
        a = gen.well_typed_aterm(rng, ["x", "y"])
        type_ = infer(gamma, a, Effect.GENERAL)
        sty_check(sigma, trans_term_c(erase_term(a)), trans_type_c(erase_type(type_)))


@pytest.mark.slow
def test_generated_terms_are_well_typed(rng):
    gamma = Context().extend("x", ANat())
    for _ in range(500):
        a = gen.nat_aterm(rng, ["x"])
        assert infer(gamma, a, Effect.GENERAL) == ANat()


def test_variable_erases_to_itself():
    assert erase_term(Var("x")) == Var("x")
