########################
#  Abstract Syntax     #
########################

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import ClassVar, Dict, FrozenSet, Iterator, Optional, Tuple, Union

from app.binders import Bound, Node, Var, abstract, free_vars as _free_vars, substitute


class Effect(Enum):
    """
    The two-point effect lattice.

    ``TOTAL`` (written ``!``) marks terms known to terminate, ``GENERAL``
    (written ``?``) makes no termination claim. The only order is
    ``TOTAL <= GENERAL`` plus reflexivity.
    """
    TOTAL = "!"
    GENERAL = "?"

    def __str__(self) -> str:
        return self.value


# Syntactic categories. Var and Bound are shared by every category.

@dataclass(frozen=True, eq=False)
class Term(Node):
    """Unannotated terms; also the terms of the theory W'."""


@dataclass(frozen=True, eq=False)
class Type(Node):
    """Unannotated types."""


@dataclass(frozen=True, eq=False)
class ATerm(Node):
    """Annotated terms, as consumed by the algorithmic checker."""


@dataclass(frozen=True, eq=False)
class AType(Node):
    """Annotated types."""


AnyTerm = Union[Term, ATerm, Var, Bound]

########################
#  Unannotated Terms   #
########################


@dataclass(frozen=True, eq=False)
class Zero(Term):
    pass


@dataclass(frozen=True, eq=False)
class Suc(Term):
    arg: Node


@dataclass(frozen=True, eq=False)
class App(Term):
    fn: Node
    arg: Node


@dataclass(frozen=True, eq=False)
class Lam(Term):
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"body": ("name",)}
    name: str = field(compare=False)
    body: Node


@dataclass(frozen=True, eq=False)
class Rec(Term):
    """``rec f(x) = body``; the body sees f (outer) and x (inner)."""
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"body": ("fname", "xname")}
    fname: str = field(compare=False)
    xname: str = field(compare=False)
    body: Node


@dataclass(frozen=True, eq=False)
class Case(Term):
    scrutinee: Node
    zero_branch: Node
    suc_branch: Node


@dataclass(frozen=True, eq=False)
class Join(Term):
    pass


@dataclass(frozen=True, eq=False)
class TerminatesPf(Term):
    pass


@dataclass(frozen=True, eq=False)
class Contra(Term):
    pass


@dataclass(frozen=True, eq=False)
class Abort(Term):
    pass


########################
#  Unannotated Types   #
########################


@dataclass(frozen=True, eq=False)
class Nat(Type):
    pass


@dataclass(frozen=True, eq=False)
class Pi(Type):
    """Dependent function type; the name is bound in the codomain only."""
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"codomain": ("name",)}
    effect: Effect
    name: str = field(compare=False)
    domain: Node
    codomain: Node


@dataclass(frozen=True, eq=False)
class Eq(Type):
    left: Node
    right: Node


@dataclass(frozen=True, eq=False)
class TerminatesTy(Type):
    term: Node


########################
#  Annotated Terms     #
########################


@dataclass(frozen=True, eq=False)
class AZero(ATerm):
    pass


@dataclass(frozen=True, eq=False)
class ASuc(ATerm):
    arg: Node


@dataclass(frozen=True, eq=False)
class AApp(ATerm):
    fn: Node
    arg: Node


@dataclass(frozen=True, eq=False)
class ALam(ATerm):
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"body": ("name",)}
    effect: Effect
    name: str = field(compare=False)
    domain: Node
    body: Node


@dataclass(frozen=True, eq=False)
class ARecNat(ATerm):
    """
    Structural recursion over nat: ``recnat f (x, p) : S = body``.

    The result type sees x. The body sees f, x and the termination
    assumption p (innermost); p may only appear in erased positions.
    """
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {
        "result": ("xname",),
        "body": ("fname", "xname", "pname"),
    }
    fname: str = field(compare=False)
    xname: str = field(compare=False)
    pname: str = field(compare=False)
    result: Node
    body: Node


@dataclass(frozen=True, eq=False)
class ARec(ATerm):
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {
        "result": ("xname",),
        "body": ("fname", "xname"),
    }
    fname: str = field(compare=False)
    xname: str = field(compare=False)
    domain: Node
    result: Node
    body: Node


@dataclass(frozen=True, eq=False)
class ACase(ATerm):
    """``case [x. S] a a' a''``; the motive S sees x."""
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"motive": ("xname",)}
    xname: str = field(compare=False)
    motive: Node
    scrutinee: Node
    zero_branch: Node
    suc_branch: Node


@dataclass(frozen=True, eq=False)
class AJoin(ATerm):
    left: Node
    right: Node


@dataclass(frozen=True, eq=False)
class AConv(ATerm):
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"motive": ("xname",)}
    xname: str = field(compare=False)
    motive: Node
    subject: Node
    proof: Node


@dataclass(frozen=True, eq=False)
class AReflect(ATerm):
    subject: Node
    proof: Node


@dataclass(frozen=True, eq=False)
class ATerminates(ATerm):
    subject: Node


@dataclass(frozen=True, eq=False)
class AInv(ATerm):
    """``inv a at a'``: from a proof of Terminates C[a'] conclude Terminates a'."""
    proof: Node
    subterm: Node


@dataclass(frozen=True, eq=False)
class AContra(ATerm):
    type: Node
    proof: Node


@dataclass(frozen=True, eq=False)
class AAbort(ATerm):
    type: Node


########################
#  Annotated Types     #
########################


@dataclass(frozen=True, eq=False)
class ANat(AType):
    pass


@dataclass(frozen=True, eq=False)
class APi(AType):
    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {"codomain": ("name",)}
    effect: Effect
    name: str = field(compare=False)
    domain: Node
    codomain: Node


@dataclass(frozen=True, eq=False)
class AEq(AType):
    left: Node
    right: Node


@dataclass(frozen=True, eq=False)
class ATerminatesTy(AType):
    term: Node


AVar = Var

########################
#  Named Constructors  #
########################


def lam(x: str, body: Node) -> Lam:
    return Lam(x, abstract(body, [x]))


def rec(f: str, x: str, body: Node) -> Rec:
    return Rec(f, x, abstract(body, [f, x]))


def pi(effect: Effect, x: str, domain: Node, codomain: Node) -> Pi:
    return Pi(effect, x, domain, abstract(codomain, [x]))


def app(fn: Node, *args: Node) -> Node:
    """Left-nested unannotated application."""
    return reduce(App, args, fn)


def aapp(fn: Node, *args: Node) -> Node:
    """Left-nested annotated application."""
    return reduce(AApp, args, fn)


def numeral(n: int) -> Term:
    """Unary numeral ``Suc^n 0``."""
    term: Term = Zero()
    for _ in range(n):
        term = Suc(term)
    return term


def anumeral(n: int) -> ATerm:
    term: ATerm = AZero()
    for _ in range(n):
        term = ASuc(term)
    return term


def alam(effect: Effect, x: str, domain: Node, body: Node) -> ALam:
    return ALam(effect, x, domain, abstract(body, [x]))


def api(effect: Effect, x: str, domain: Node, codomain: Node) -> APi:
    return APi(effect, x, domain, abstract(codomain, [x]))


def arec(f: str, x: str, domain: Node, result: Node, body: Node) -> ARec:
    return ARec(f, x, domain, abstract(result, [x]), abstract(body, [f, x]))


def arecnat(f: str, x: str, p: str, result: Node, body: Node) -> ARecNat:
    return ARecNat(f, x, p, abstract(result, [x]), abstract(body, [f, x, p]))


def acase(x: str, motive: Node, scrutinee: Node, zero_branch: Node, suc_branch: Node) -> ACase:
    return ACase(x, abstract(motive, [x]), scrutinee, zero_branch, suc_branch)


def aconv(x: str, motive: Node, subject: Node, proof: Node) -> AConv:
    return AConv(x, abstract(motive, [x]), subject, proof)


########################
#  Core Operations     #
########################


def subst_term(body: Node, x: str, value: Node) -> Node:
    """
    Capture-avoiding substitution of ``value`` for the free variable ``x``.

    Works on every syntactic category; bound variables have no names, so no
    renaming is ever needed.
    """
    return substitute(body, x, value)


def subst_atype(s: Node, x: str, a: Node) -> Node:
    """Substitute the annotated term ``a`` for ``x`` inside an annotated type."""
    return substitute(s, x, a)


def subst_type(t: Node, x: str, value: Node) -> Node:
    return substitute(t, x, value)


def alpha_eq(u: Node, v: Node) -> bool:
    """Equality up to renaming of bound variables."""
    return u == v


def free_vars(u: Node) -> FrozenSet[str]:
    return _free_vars(u)


########################
#  Typing Contexts     #
########################


@dataclass(frozen=True)
class Context:
    """
    Ordered typing context Γ of (name, annotated type) bindings.

    Later bindings shadow earlier ones on lookup. Well-formedness is a
    judgment of the checker, not a construction invariant.
    """
    bindings: Tuple[Tuple[str, Node], ...] = ()

    def extend(self, name: str, type_: Node) -> "Context":
        return Context(self.bindings + ((name, type_),))

    def lookup(self, name: str) -> Optional[Node]:
        for bound_name, type_ in reversed(self.bindings):
            if bound_name == name:
                return type_
        return None

    def names(self) -> FrozenSet[str]:
        return frozenset(name for name, _ in self.bindings)

    def __iter__(self) -> Iterator[Tuple[str, Node]]:
        return iter(self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)
