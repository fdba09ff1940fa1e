import pytest

from app.binders import Bound, Var, free_vars
from app.syntax import (
    AApp, ANat, APi, ASuc, AZero, App, Context, Effect, Lam, Pi, Suc, Zero, aapp, alpha_eq,
    anumeral, api, app, lam, numeral, pi, subst_atype, subst_term,
)
from tests import term_generators as gen


def test_effect_strings():
    assert str(Effect.TOTAL) == "!"
    assert str(Effect.GENERAL) == "?"


def test_numeral():
    assert numeral(0) == Zero()
    assert numeral(2) == Suc(Suc(Zero()))


def test_anumeral():
    assert anumeral(1) == ASuc(AZero())


def test_app_is_left_nested():
    assert app(Var("f"), Zero(), Var("x")) == App(App(Var("f"), Zero()), Var("x"))
    assert aapp(Var("f"), AZero()) == AApp(Var("f"), AZero())


def test_lam_abstracts_its_variable():
    assert lam("x", Var("x")) == Lam("x", Bound(0))


def test_pi_binds_in_codomain_only():
    t = pi(Effect.TOTAL, "x", Var("x"), Var("x"))
    assert t == Pi(Effect.TOTAL, "x", Var("x"), Bound(0))


def test_pi_effects_are_compared():
    assert pi(Effect.TOTAL, "x", ANat(), ANat()) != pi(Effect.GENERAL, "x", ANat(), ANat())


def test_alpha_eq_ignores_binder_names():
    assert alpha_eq(api(Effect.TOTAL, "x", ANat(), ANat()), api(Effect.TOTAL, "y", ANat(), ANat()))


def test_subst_term_replaces_free_occurrences():
    assert subst_term(App(Var("x"), Var("y")), "x", Zero()) == App(Zero(), Var("y"))


def test_subst_atype_reaches_codomain():
    t = api(Effect.TOTAL, "y", ANat(), APi(Effect.GENERAL, "z", ANat(), Var("x")))
    result = subst_atype(t, "x", AZero())
    assert result.codomain.codomain == AZero()


def test_context_extend_and_lookup():
    gamma = Context().extend("x", ANat()).extend("f", api(Effect.GENERAL, "y", ANat(), ANat()))
    assert gamma.lookup("x") == ANat()
    assert gamma.lookup("missing") is None
    assert gamma.names() == {"x", "f"}
    assert len(gamma) == 2
    assert [name for name, _ in gamma] == ["x", "f"]


def test_context_later_binding_shadows():
    gamma = Context().extend("x", ANat()).extend("x", api(Effect.TOTAL, "y", ANat(), ANat()))
    assert isinstance(gamma.lookup("x"), APi)


def test_context_is_immutable():
    gamma = Context()
    gamma.extend("x", ANat())
    assert len(gamma) == 0


@pytest.mark.slow
def test_subst_term_free_variables(rng):
    for _ in range(500):
        t = gen.term(rng, ["x", "y"])
        u = gen.term(rng, ["z"])
        result = subst_term(t, "x", u)
        assert free_vars(result) <= (free_vars(t) - {"x"}) | free_vars(u)
        if "x" in free_vars(t):
            assert free_vars(u) <= free_vars(result)
        else:
            assert result == t
