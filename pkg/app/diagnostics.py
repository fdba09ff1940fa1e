########################
#  Checker Diagnostics #
########################

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class DiagnosticKind(Enum):
    """The ways a premise of an annotated typing rule can fail."""
    EFFECT_VIOLATION = "effect violation"
    TYPE_MISMATCH = "type mismatch"
    JOIN_FAILURE = "join failure"
    PROOF_VARIABLE_OCCURS = "proof variable occurs in body"
    NON_PI_APPLICATION = "application of a non-function"
    CONTEXT_MATCH_FAILURE = "no evaluation context matches"
    UNBOUND_VARIABLE = "unbound variable"


@dataclass(frozen=True)
class Diagnostic:
    """
    A failed typing judgment, reduced to the one premise that broke.

    Attributes:
        rule: Name of the typing rule, e.g. ``A_App``.
        premise: 1-based index of the failing premise in the rule as written;
            0 stands for a side condition on the conclusion.
        kind: Classification of the failure.
        path: Field names leading from the checked term to the offending sub-term.
        message: Human-readable explanation.
        expected: Printed expected type or effect, when one exists.
        actual: Printed actual type or effect, when one exists.
    """
    rule: str
    premise: int
    kind: DiagnosticKind
    path: Tuple[str, ...]
    message: str
    expected: Optional[str] = None
    actual: Optional[str] = None

    @property
    def location(self) -> str:
        return "/".join(("term",) + self.path)

    def __str__(self) -> str:
        text = f"{self.rule} (premise {self.premise}) at {self.location}: {self.kind.value}: {self.message}"
        if self.expected is not None or self.actual is not None:
            text += f" (expected {self.expected}, got {self.actual})"
        return text
