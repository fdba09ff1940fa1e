########################
#  CBV Evaluation      #
########################

from dataclasses import dataclass
from functools import partial
import logging
from typing import Callable, List, Optional, Tuple, Union

from app.binders import Node, Var, instantiate
from app.syntax import (
    Abort, App, Case, Contra, Join, Lam, Rec, Suc, TerminatesPf, Zero,
)

########################
#  Evaluation Contexts #
########################


@dataclass(frozen=True)
class Hole:
    pass


@dataclass(frozen=True)
class SucC:
    inner: "EvalContext"


@dataclass(frozen=True)
class AppL:
    inner: "EvalContext"
    arg: Node


@dataclass(frozen=True)
class AppR:
    fn: Node
    inner: "EvalContext"


@dataclass(frozen=True)
class CaseC:
    inner: "EvalContext"
    zero_branch: Node
    suc_branch: Node


EvalContext = Union[Hole, SucC, AppL, AppR, CaseC]


def plug(context: EvalContext, term: Node) -> Node:
    """Fill the hole of ``context`` with ``term``."""
    frames = []
    while not isinstance(context, Hole):
        if not isinstance(context, (SucC, AppL, AppR, CaseC)):
            raise TypeError(f"not an evaluation context: {type(context).__name__}")
        frames.append(context)
        context = context.inner
    for frame in reversed(frames):
        if isinstance(frame, SucC):
            term = Suc(term)
        elif isinstance(frame, AppL):
            term = App(term, frame.arg)
        elif isinstance(frame, AppR):
            term = App(frame.fn, term)
        else:
            term = Case(term, frame.zero_branch, frame.suc_branch)
    return term


def is_evaluation_context(context: object) -> bool:
    """True if ``context`` follows the context grammar, values left of every ``AppR``."""
    while not isinstance(context, Hole):
        if isinstance(context, AppR) and not is_value(context.fn):
            return False
        if not isinstance(context, (SucC, AppL, AppR, CaseC)):
            return False
        context = context.inner
    return True


########################
#  Reduction           #
########################


def is_value(t: Node) -> bool:
    """
    Check whether a term is a value.

    Values are variables, ``0``, ``Suc v``, abstractions, recursive
    functions and the logical constants ``join``, ``terminates`` and
    ``contra``. ``abort`` is not a value.
    """
    while isinstance(t, Suc):
        t = t.arg
    return isinstance(t, (Var, Zero, Lam, Rec, Join, TerminatesPf, Contra))


def beta(t: Node) -> Optional[Node]:
    """
    Contract a root redex.

    Returns:
        Optional[Node]: The reduct, or None when ``t`` is not a redex whose
        arguments are values.
    """
    if isinstance(t, App) and is_value(t.arg):
        if isinstance(t.fn, Lam):
            return instantiate(t.fn.body, [t.arg])
        if isinstance(t.fn, Rec):
            # the recursive function is substituted for itself
            return instantiate(t.fn.body, [t.fn, t.arg])
        return None
    if isinstance(t, Case):
        if isinstance(t.scrutinee, Zero):
            return t.zero_branch
        if isinstance(t.scrutinee, Suc) and is_value(t.scrutinee.arg):
            return App(t.suc_branch, t.scrutinee.arg)
    return None


def decompose(t: Node) -> Optional[Tuple[EvalContext, Node]]:
    """
    Split a term into an evaluation context and the redex in its hole.

    Evaluation is call-by-value and left to right. ``abort`` counts as a
    redex wherever it sits in evaluation position.

    Returns:
        Optional[Tuple[EvalContext, Node]]: The unique split, or None for
        values and stuck terms.
    """
    frames: List[Callable[[EvalContext], EvalContext]] = []
    current = t
    while not isinstance(current, Abort):
        if isinstance(current, Suc):
            # Suc v is a value exactly when the base of the tower is one
            frames.append(SucC)
            current = current.arg
        elif is_value(current):
            return None
        elif isinstance(current, App) and not is_value(current.fn):
            frames.append(partial(AppL, arg=current.arg))
            current = current.fn
        elif isinstance(current, App) and not is_value(current.arg):
            frames.append(partial(AppR, current.fn))
            current = current.arg
        elif isinstance(current, Case) and not is_value(current.scrutinee):
            frames.append(partial(CaseC, zero_branch=current.zero_branch,
                                  suc_branch=current.suc_branch))
            current = current.scrutinee
        elif beta(current) is None:
            return None
        else:
            break
    context: EvalContext = Hole()
    for frame in reversed(frames):
        context = frame(context)
    return context, current


def step(t: Node) -> Optional[Node]:
    """
    Take one small step.

    Returns:
        Optional[Node]: The next term, or None when ``t`` is a value, stuck,
        or ``abort`` itself.
    """
    split = decompose(t)
    if split is None:
        return None
    context, redex = split
    if isinstance(redex, Abort):
        return None if isinstance(context, Hole) else Abort()
    return plug(context, beta(redex))


@dataclass(frozen=True)
class Trace:
    """
    A bounded reduction sequence.

    Attributes:
        terms: Every term visited, the input first.
        fuel_exhausted: True if the last term could still step.
    """
    terms: Tuple[Node, ...]
    fuel_exhausted: bool

    @property
    def final(self) -> Node:
        return self.terms[-1]

    @property
    def steps(self) -> int:
        return len(self.terms) - 1


def reduce_trace(t: Node, fuel: int) -> Trace:
    """
    Reduce ``t`` for at most ``fuel`` steps, recording every term.

    Args:
        t: An unannotated term.
        fuel: Maximum number of steps; must be non-negative.

    Returns:
        Trace: The visited terms.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    terms = [t]
    current = t
    for _ in range(fuel):
        following = step(current)
        if following is None:
            return Trace(tuple(terms), False)
        terms.append(following)
        current = following
    exhausted = step(current) is not None
    if exhausted:
        logging.debug(f"Reduction stopped after {fuel} steps without reaching a normal form")
    return Trace(tuple(terms), exhausted)


def joinable(t1: Node, t2: Node, fuel: int) -> bool:
    """
    Decide whether two terms reach a common reduct within ``fuel`` steps each.

    Reduction is deterministic, so this holds exactly when the two bounded
    traces share a term (up to alpha).
    """
    seen = set(reduce_trace(t1, fuel).terms)
    return any(term in seen for term in reduce_trace(t2, fuel).terms)


def evaluate(t: Node, fuel: int) -> Node:
    """Big-step evaluation: the last term reached within ``fuel`` steps."""
    return reduce_trace(t, fuel).final
