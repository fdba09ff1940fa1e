########################
#  Source Programs     #
########################

from dataclasses import dataclass
import logging
from typing import Dict, List, Optional, Tuple, Union

from app.binders import Node, Var, free_vars, substitute
from app.exceptions import ValidationError
from app.syntax import Context, Effect


@dataclass(frozen=True)
class Definition:
    """``def name = aterm``"""
    name: str
    term: Node


@dataclass(frozen=True)
class Assumption:
    """``assume name : atype``; adds a binding to the typing context of later directives."""
    name: str
    type: Node


@dataclass(frozen=True)
class CheckDirective:
    """``check name : atype at effect``"""
    name: str
    type: Node
    effect: Effect


@dataclass(frozen=True)
class ObligationDirective:
    """``obligation name``: translate the last preceding check of ``name``."""
    name: str


@dataclass(frozen=True)
class EvalDirective:
    """``eval name``"""
    name: str


Directive = Union[Definition, Assumption, CheckDirective, ObligationDirective, EvalDirective]


@dataclass(frozen=True)
class SourceFile:
    directives: Tuple[Directive, ...]
    path: Optional[str] = None

    def definitions(self) -> List[Definition]:
        return [d for d in self.directives if isinstance(d, Definition)]


########################
#  Resolved Directives #
########################


@dataclass(frozen=True)
class CheckJob:
    """
    A check with every defined name inlined.

    Attributes:
        name: The checked name.
        gamma: The assumptions preceding the directive.
        term: The inlined annotated term.
        type: The inlined declared type.
        declared: The declared type as written, for printing.
        effect: The effect to check at.
    """
    name: str
    gamma: Context
    term: Node
    type: Node
    declared: Node
    effect: Effect


@dataclass(frozen=True)
class ObligationJob:
    name: str
    check: CheckJob


@dataclass(frozen=True)
class EvalJob:
    name: str
    term: Node


Job = Union[CheckJob, ObligationJob, EvalJob]


class ProgramResolver:
    """
    Turns a source file into self-contained jobs.

    The calculus has no definition construct, so every use of a defined
    name is replaced by its body. Bodies are inlined as they are defined,
    so one substitution per name suffices for any later text.
    """

    def __init__(self):
        self.definitions: Dict[str, Node] = {}
        self.gamma = Context()
        self.checks: Dict[str, CheckJob] = {}

    def inline(self, node: Node) -> Node:
        for name, body in self.definitions.items():
            node = substitute(node, name, body)
        return node

    def _declared(self, name: str) -> bool:
        return name in self.definitions or self.gamma.lookup(name) is not None

    def _require_known(self, node: Node, where: str) -> None:
        unknown = sorted(free_vars(node) - self.gamma.names())
        if unknown:
            raise ValidationError(f"{where}: undefined name(s): {', '.join(unknown)}")

    def resolve(self, source: SourceFile) -> List[Job]:
        """
        Inline definitions and attach contexts, in file order.

        Raises:
            ValidationError: On a duplicate or undefined name, or an
                obligation without a preceding check.
        """
        jobs: List[Job] = []
        for directive in source.directives:
            if isinstance(directive, Definition):
                if self._declared(directive.name):
                    raise ValidationError(f"def {directive.name}: name is already defined")
                body = self.inline(directive.term)
                self._require_known(body, f"def {directive.name}")
                self.definitions[directive.name] = body
            elif isinstance(directive, Assumption):
                if self._declared(directive.name):
                    raise ValidationError(f"assume {directive.name}: name is already defined")
                type_ = self.inline(directive.type)
                self._require_known(type_, f"assume {directive.name}")
                self.gamma = self.gamma.extend(directive.name, type_)
            elif isinstance(directive, CheckDirective):
                jobs.append(self._check_job(directive))
            elif isinstance(directive, ObligationDirective):
                check = self.checks.get(directive.name)
                if check is None:
                    raise ValidationError(f"obligation {directive.name}: no preceding check")
                jobs.append(ObligationJob(directive.name, check))
            elif isinstance(directive, EvalDirective):
                if directive.name not in self.definitions:
                    raise ValidationError(f"eval {directive.name}: undefined name")
                jobs.append(EvalJob(directive.name, self.definitions[directive.name]))
        logging.debug(f"Resolved {len(jobs)} jobs from {source.path or '<text>'}")
        return jobs

    def _check_job(self, directive: CheckDirective) -> CheckJob:
        if directive.name in self.definitions:
            term = self.definitions[directive.name]
        elif self.gamma.lookup(directive.name) is not None:
            term = Var(directive.name)
        else:
            raise ValidationError(f"check {directive.name}: undefined name")
        type_ = self.inline(directive.type)
        self._require_known(type_, f"check {directive.name}")
        job = CheckJob(directive.name, self.gamma, term, type_, directive.type, directive.effect)
        self.checks[directive.name] = job
        return job


def resolve_program(source: SourceFile) -> List[Job]:
    """Inline and resolve every directive of ``source``; see ``ProgramResolver``."""
    return ProgramResolver().resolve(source)

