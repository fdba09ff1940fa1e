########################
#  W' Proof Terms      #
########################

from dataclasses import dataclass, fields, replace
from typing import ClassVar, Iterator, Tuple

from app.binders import Node
from app.evaluation import EvalContext
from app.wprime import Sort


@dataclass(frozen=True)
class Proof:
    """
    Base class of W' derivations; each subclass is one inference rule.

    Proofs name their variables explicitly. Witnesses that a rule's
    conclusion does not determine (instantiation terms, formula patterns
    with their hole variable, sorts, evaluation contexts, fuel) are stored
    on the node.
    """
    RULE: ClassVar[str] = ""

    def subproofs(self) -> Iterator[Tuple[int, "Proof"]]:
        """Yield the premises in order, numbered from 0."""
        index = 0
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Proof):
                yield index, value
                index += 1


@dataclass(frozen=True)
class Assume(Proof):
    RULE: ClassVar[str] = "Pv_Assume"
    index: int


@dataclass(frozen=True)
class Alli(Proof):
    RULE: ClassVar[str] = "Pv_Alli"
    x: str
    sort: Sort
    proof: Proof


@dataclass(frozen=True)
class Alle(Proof):
    RULE: ClassVar[str] = "Pv_Alle"
    proof: Proof
    term: Node


@dataclass(frozen=True)
class Impi(Proof):
    RULE: ClassVar[str] = "Pv_Impi"
    proof: Proof


@dataclass(frozen=True)
class Impe(Proof):
    RULE: ClassVar[str] = "Pv_Impe"
    implication: Proof
    argument: Proof


@dataclass(frozen=True)
class Andi(Proof):
    RULE: ClassVar[str] = "Pv_Andi"
    left: Proof
    right: Proof


@dataclass(frozen=True)
class Ande1(Proof):
    RULE: ClassVar[str] = "Pv_Ande1"
    proof: Proof


@dataclass(frozen=True)
class Ande2(Proof):
    RULE: ClassVar[str] = "Pv_Ande2"
    proof: Proof


@dataclass(frozen=True)
class Truei(Proof):
    RULE: ClassVar[str] = "Pv_Truei"


@dataclass(frozen=True)
class ContraPv(Proof):
    """From ``0 = Suc t`` conclude anything."""
    RULE: ClassVar[str] = "Pv_Contra"
    proof: Proof


@dataclass(frozen=True)
class Ind(Proof):
    """
    Induction over terminating numbers.

    ``formula`` mentions the hole variable ``x``; ``x2`` names the
    predecessor in the step case.
    """
    RULE: ClassVar[str] = "Pv_Ind"
    x: str
    formula: Node
    base: Proof
    x2: str
    step: Proof


@dataclass(frozen=True)
class CompInd(Proof):
    """
    Computational induction over ``rec f(x) = body`` of sort ``dom_sort -> cod_sort``.

    ``formula`` mentions the hole variable ``z``, which stands for a call
    of the recursive function.
    """
    RULE: ClassVar[str] = "Pv_CompInd"
    z: str
    formula: Node
    f: str
    x: str
    body: Node
    dom_sort: Sort
    cod_sort: Sort
    proof: Proof


@dataclass(frozen=True)
class Term0(Proof):
    RULE: ClassVar[str] = "Pv_Term0"


@dataclass(frozen=True)
class TermS(Proof):
    RULE: ClassVar[str] = "Pv_TermS"
    proof: Proof


@dataclass(frozen=True)
class TermAbs(Proof):
    RULE: ClassVar[str] = "Pv_TermAbs"


@dataclass(frozen=True)
class TermRec(Proof):
    RULE: ClassVar[str] = "Pv_TermRec"


@dataclass(frozen=True)
class TermInv(Proof):
    """From ``Terminates C[t]`` conclude ``Terminates t``; ``context`` is ``C``."""
    RULE: ClassVar[str] = "Pv_TermInv"
    context: EvalContext
    proof: Proof


@dataclass(frozen=True)
class NotTermAbort(Proof):
    RULE: ClassVar[str] = "Pv_NotTermAbort"
    proof: Proof


@dataclass(frozen=True)
class OpSem(Proof):
    """``t = t'`` when ``t`` reaches ``t'`` within ``fuel`` steps."""
    RULE: ClassVar[str] = "Pv_OpSem"
    fuel: int


@dataclass(frozen=True)
class Subst(Proof):
    """From ``t = t'`` and ``F[t/x]`` conclude ``F[t'/x]``."""
    RULE: ClassVar[str] = "Pv_Subst"
    x: str
    formula: Node
    equation: Proof
    body: Proof


def weaken(proof: Proof, at: int) -> Proof:
    """
    Re-index a proof for a hypothesis list with one extra entry inserted at ``at``.

    Every ``Assume`` pointing at ``at`` or later moves up by one, including
    the ones that address hypotheses added by the proof itself.

    Args:
        proof: A proof valid for some sequent.
        at: Insertion position in the hypothesis list.

    Returns:
        Proof: A proof of the same goal in the weakened sequent.
    """
    if isinstance(proof, Assume):
        return Assume(proof.index + 1) if proof.index >= at else proof
    changes = {}
    for f in fields(proof):
        value = getattr(proof, f.name)
        if isinstance(value, Proof):
            changes[f.name] = weaken(value, at)
    return replace(proof, **changes) if changes else proof
