import pytest

from app.binders import Var
from app.exceptions import ValidationError
from app.parser import parse_aterm, parse_atype, parse_program
from app.program import CheckJob, EvalJob, ObligationJob, ProgramResolver, resolve_program
from app.syntax import ANat, Effect, aapp, anumeral


def resolve(text):
    return resolve_program(parse_program(text))


def test_definitions_are_inlined():
    jobs = resolve("def one = Suc 0\ndef two = Suc one\neval two")
    assert jobs == [EvalJob("two", parse_aterm("Suc (Suc 0)"))]


def test_check_job_carries_assumptions():
    (job,) = resolve("assume n : nat\ndef m = Suc n\ncheck m : nat at !")
    assert isinstance(job, CheckJob)
    assert job.gamma.lookup("n") == ANat()
    assert job.term == parse_aterm("Suc n")
    assert job.effect is Effect.TOTAL


def test_check_of_assumed_name_checks_the_variable():
    (job,) = resolve("assume n : nat\ncheck n : nat at ?")
    assert job.term == Var("n")


def test_types_are_inlined_but_declared_type_is_kept():
    (job,) = resolve("def z = 0\ndef e = join z 0\ncheck e : z = 0 at !")
    assert job.type == parse_atype("0 = 0")
    assert job.declared == parse_atype("z = 0")


def test_obligation_uses_last_preceding_check():
    jobs = resolve("def z = 0\ncheck z : nat at ?\ncheck z : nat at !\nobligation z")
    obligation = jobs[-1]
    assert isinstance(obligation, ObligationJob)
    assert obligation.check is jobs[1]


def test_assumptions_only_reach_later_directives():
    jobs = resolve("def z = 0\ncheck z : nat at !\nassume n : nat\ncheck z : nat at !")
    assert len(jobs[0].gamma) == 0
    assert len(jobs[1].gamma) == 1


@pytest.mark.parametrize("text, message", [
    ("def a = 0\ndef a = 1", "already defined"),
    ("assume a : nat\ndef a = 1", "already defined"),
    ("def a = b", "undefined name"),
    ("assume a : Term b", "undefined name"),
    ("check a : nat at !", "undefined name"),
    ("def a = 0\ncheck a : Term b at !", "undefined name"),
    ("obligation a", "no preceding check"),
    ("eval a", "undefined name"),
    ("assume a : nat\neval a", "undefined name"),
])
def test_resolution_errors(text, message):
    with pytest.raises(ValidationError, match=message):
        resolve(text)


def test_resolver_keeps_state_between_calls():
    resolver = ProgramResolver()
    resolver.resolve(parse_program("def z = 0"))
    (job,) = resolver.resolve(parse_program("eval z"))
    assert job == EvalJob("z", parse_aterm("0"))


def test_corpus_jobs(corpus_dir):
    jobs = resolve((corpus_dir / "plus.teqt").read_text())
    assert [type(job) for job in jobs] == [CheckJob, ObligationJob, EvalJob]
    assert jobs[2].term == aapp(jobs[0].term, anumeral(2), anumeral(3))
