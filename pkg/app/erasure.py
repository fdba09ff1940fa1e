########################
#  Annotation Erasure  #
########################

from functools import singledispatch

from app.binders import Bound, Node, Var, instantiate, walk
from app.syntax import (
    AAbort, AApp, ACase, AContra, AConv, AEq, AInv, AJoin, ALam, ANat, APi, ARec, ARecNat,
    AReflect, ASuc, ATerminates, ATerminatesTy, ATerm, AType, AZero, Abort, App, Case, Contra,
    Eq, Join, Lam, Nat, Pi, Rec, Suc, TerminatesPf, TerminatesTy, Zero,
)


@singledispatch
def erase_term(a: Node) -> Node:
    """
    Erase every annotation and proof from an annotated term.

    Casts (``conv``, ``reflect``, ``inv``) disappear in favour of their first
    sub-term; proof constructs keep only their keyword.

    Args:
        a: An annotated term.

    Returns:
        Node: The corresponding unannotated term.
    """
    raise TypeError(f"not an annotated term: {type(a).__name__}")


@erase_term.register
def _(a: Var) -> Node:
    return a


@erase_term.register
def _(a: Bound) -> Node:
    return a


@erase_term.register
def _(a: AZero) -> Node:
    return Zero()


@erase_term.register
def _(a: ASuc) -> Node:
    # numerals are erased level by level without recursing
    count = 0
    while isinstance(a, ASuc):
        a, count = a.arg, count + 1
    term = erase_term(a)
    for _ in range(count):
        term = Suc(term)
    return term


@erase_term.register
def _(a: AApp) -> Node:
    return App(erase_term(a.fn), erase_term(a.arg))


@erase_term.register
def _(a: ALam) -> Node:
    return Lam(a.name, erase_term(a.body))


@erase_term.register
def _(a: ARecNat) -> Node:
    # drop the innermost binder p; a checked body never mentions it
    body = instantiate(erase_term(a.body), [Var(a.pname)])
    return Rec(a.fname, a.xname, body)


@erase_term.register
def _(a: ARec) -> Node:
    return Rec(a.fname, a.xname, erase_term(a.body))


@erase_term.register
def _(a: ACase) -> Node:
    return Case(erase_term(a.scrutinee), erase_term(a.zero_branch), erase_term(a.suc_branch))


@erase_term.register
def _(a: AJoin) -> Node:
    return Join()


@erase_term.register
def _(a: ATerminates) -> Node:
    return TerminatesPf()


@erase_term.register
def _(a: AContra) -> Node:
    return Contra()


@erase_term.register
def _(a: AAbort) -> Node:
    return Abort()


@erase_term.register
def _(a: AConv) -> Node:
    return erase_term(a.subject)


@erase_term.register
def _(a: AReflect) -> Node:
    return erase_term(a.subject)


@erase_term.register
def _(a: AInv) -> Node:
    return erase_term(a.proof)


@singledispatch
def erase_type(s: Node) -> Node:
    """Erase an annotated type, homomorphically on its structure."""
    raise TypeError(f"not an annotated type: {type(s).__name__}")


@erase_type.register
def _(s: ANat) -> Node:
    return Nat()


@erase_type.register
def _(s: APi) -> Node:
    return Pi(s.effect, s.name, erase_type(s.domain), erase_type(s.codomain))


@erase_type.register
def _(s: AEq) -> Node:
    return Eq(erase_term(s.left), erase_term(s.right))


@erase_type.register
def _(s: ATerminatesTy) -> Node:
    return TerminatesTy(erase_term(s.term))


def is_unannotated(node: Node) -> bool:
    """True if no annotated constructor occurs anywhere in ``node``."""
    return not any(isinstance(current, (ATerm, AType)) for current, _ in walk(node))


def contains_logical_constants(node: Node) -> bool:
    """True if ``join``, ``terminates`` or ``contra`` occurs in an unannotated term."""
    return any(isinstance(current, (Join, TerminatesPf, Contra)) for current, _ in walk(node))

