########################
#  Theory W' Model     #
########################

from dataclasses import dataclass, field
from typing import ClassVar, Dict, FrozenSet, Iterable, Optional, Tuple, Union

from app.binders import Node, Var, abstract, fresh_name, free_vars, instantiate, rewrite, substitute
from app.erasure import erase_type
from app.exceptions import ValidationError
from app.syntax import (
    App, Context, Contra, Effect, Eq, Join, Nat, Pi, TerminatesPf, TerminatesTy, Zero,
)

########################
#  Simple Sorts        #
########################


@dataclass(frozen=True)
class SNat:
    pass


@dataclass(frozen=True)
class SArrow:
    domain: "Sort"
    codomain: "Sort"


@dataclass(frozen=True)
class SVar:
    """A unification variable; only ever seen inside the sort checker."""
    id: int


Sort = Union[SNat, SArrow, SVar]


def arrows(*sorts: Sort) -> Sort:
    """Right-nested arrow sort, ``arrows(a, b, c) == a -> (b -> c)``."""
    result = sorts[-1]
    for sort in reversed(sorts[:-1]):
        result = SArrow(sort, result)
    return result


########################
#  Formulas            #
########################


@dataclass(frozen=True, eq=False)
class Formula(Node):
    """Formulas of W'; the terms they embed are unannotated terms."""


@dataclass(frozen=True, eq=False)
class FTrue(Formula):
    pass


@dataclass(frozen=True, eq=False)
class FForall(Formula):
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"body": ("name",)}
    name: str = field(compare=False)
    sort: Sort
    body: Node


@dataclass(frozen=True, eq=False)
class FImp(Formula):
    left: Node
    right: Node


@dataclass(frozen=True, eq=False)
class FAnd(Formula):
    left: Node
    right: Node


@dataclass(frozen=True, eq=False)
class FTerm(Formula):
    """``Terminates t``."""
    term: Node


@dataclass(frozen=True, eq=False)
class FEq(Formula):
    """An equation; its sides need not be well-sorted."""
    left: Node
    right: Node


def forall_(x: str, sort: Sort, body: Node) -> FForall:
    return FForall(x, sort, abstract(body, [x]))


def formula_subst(f: Node, x: str, t: Node) -> Node:
    """Capture-avoiding substitution of ``t`` for ``x`` in the terms embedded in ``f``."""
    return substitute(f, x, t)


def open_forall(f: FForall, name: str) -> Node:
    """The body of a quantifier with its bound variable replaced by ``name``."""
    return instantiate(f.body, [Var(name)])


########################
#  Sequents            #
########################


@dataclass(frozen=True)
class Sequent:
    """
    A judgment ``sigma ; hyps |- goal`` of W'.

    Hypotheses are addressed by position. Every free variable of the
    hypotheses and of the goal must be declared in ``sigma``.

    Raises:
        ValidationError: On construction, if a free variable is undeclared.
    """
    sigma: Tuple[Tuple[str, Sort], ...]
    hyps: Tuple[Node, ...]
    goal: Node

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "hyps", tuple(self.hyps))
        declared = self.names()
        used = set(free_vars(self.goal))
        for hyp in self.hyps:
            used |= free_vars(hyp)
        undeclared = sorted(used - declared)
        if undeclared:
            raise ValidationError(
                f"free variables not declared in sigma: {', '.join(undeclared)}"
            )

    def names(self) -> FrozenSet[str]:
        return frozenset(name for name, _ in self.sigma)

    def sort_of(self, name: str) -> Optional[Sort]:
        for bound_name, sort in reversed(self.sigma):
            if bound_name == name:
                return sort
        return None

    def hyp_vars(self) -> FrozenSet[str]:
        found: FrozenSet[str] = frozenset()
        for hyp in self.hyps:
            found |= free_vars(hyp)
        return found

    def extend(self, bindings: Iterable[Tuple[str, Sort]] = (), hyps: Iterable[Node] = (),
               goal: Optional[Node] = None) -> "Sequent":
        """A new sequent with extra bindings and hypotheses appended, and possibly a new goal."""
        return Sequent(
            self.sigma + tuple(bindings),
            self.hyps + tuple(hyps),
            self.goal if goal is None else goal,
        )


########################
#  Translations        #
########################


def trans_term_c(t: Node) -> Node:
    """
    Computational translation of a term.

    The logical constants ``join``, ``terminates`` and ``contra`` become
    ``0``; everything else is kept, so the result is a W' term.
    """
    constants = (Join, TerminatesPf, Contra)
    return rewrite(t, lambda node, _: Zero() if isinstance(node, constants) else None)


def trans_type_c(t: Node) -> Sort:
    """Computational translation of a type: its simple sort, forgetting effects and dependency."""
    if isinstance(t, Nat):
        return SNat()
    if isinstance(t, Pi):
        return SArrow(trans_type_c(t.domain), trans_type_c(t.codomain))
    if isinstance(t, (Eq, TerminatesTy)):
        return SNat()
    raise TypeError(f"not a type: {type(t).__name__}")


def trans_type_l(t: Node, w: Node) -> Node:
    """
    Logical translation of a type, applied to the W' term ``w``.

    Args:
        t: An unannotated type.
        w: The term the resulting formula speaks about.

    Returns:
        Node: A formula. For a Pi type the quantified variable keeps the
        binder's name, primed if it would clash with ``w`` or ``t``.
    """
    if isinstance(t, Nat):
        return FTrue()
    if isinstance(t, Pi):
        x = fresh_name(t.name, free_vars(w) | free_vars(t))
        codomain = instantiate(t.codomain, [Var(x)])
        body = FImp(
            trans_type_l_eff(t.domain, Effect.TOTAL, Var(x)),
            trans_type_l_eff(codomain, t.effect, App(w, Var(x))),
        )
        return forall_(x, trans_type_c(t.domain), body)
    if isinstance(t, Eq):
        return FEq(trans_term_c(t.left), trans_term_c(t.right))
    if isinstance(t, TerminatesTy):
        return FTerm(trans_term_c(t.term))
    raise TypeError(f"not a type: {type(t).__name__}")


def trans_type_l_eff(t: Node, effect: Effect, w: Node) -> Node:
    """Effect-indexed logical translation: termination is asserted for ``!`` and assumed for ``?``."""
    if effect is Effect.TOTAL:
        return FAnd(FTerm(w), trans_type_l(t, w))
    return FImp(FTerm(w), trans_type_l(t, w))


def trans_ctx(gamma: Context) -> Tuple[Tuple[Tuple[str, Sort], ...], Tuple[Node, ...]]:
    """
    Translate a typing context into a sort context and hypotheses.

    Each binding contributes its sort and the assertion that the variable
    terminates and satisfies its type.
    """
    sigma = []
    hyps = []
    for name, annotated_type in gamma:
        type_ = erase_type(annotated_type)
        sigma.append((name, trans_type_c(type_)))
        hyps.append(trans_type_l_eff(type_, Effect.TOTAL, Var(name)))
    return tuple(sigma), tuple(hyps)


def make_obligation(gamma: Context, t: Node, type_: Node, effect: Effect) -> Sequent:
    """
    The sequent a checked judgment ``gamma |- t : type_`` at ``effect`` must satisfy.

    Args:
        gamma: The typing context of the judgment.
        t: The erased term.
        type_: The erased type.
        effect: The effect of the judgment.

    Returns:
        Sequent: ``[[gamma]]C ; [[gamma]]L |- [[type_]]L_effect [[t]]C``.
    """
    sigma, hyps = trans_ctx(gamma)
    return Sequent(sigma, hyps, trans_type_l_eff(type_, effect, trans_term_c(t)))
