########################
#  Annotated Checker   #
########################

from dataclasses import dataclass
import logging
from typing import AbstractSet, NoReturn, Optional, Tuple

from app.binders import Bound, Node, Var, abstract, fresh_name, free_vars, instantiate
from app.diagnostics import Diagnostic, DiagnosticKind
from app.erasure import erase_term
from app.evaluation import AppL, AppR, CaseC, EvalContext, Hole, SucC, is_value, joinable
from app.exceptions import TypeCheckError, ValidationError
from app.printer import pretty
from app.syntax import (
    AAbort, AApp, ACase, AContra, AConv, AEq, AInv, AJoin, ALam, ANat, APi, ARec, ARecNat,
    AReflect, ASuc, ATerminates, ATerminatesTy, AZero, App, Case, Context, Effect, Suc, api,
)
from app.teq_config import DEFAULT_FUEL

Path = Tuple[str, ...]


@dataclass(frozen=True)
class CheckConfig:
    """
    Settings of the checker.

    Attributes:
        join_fuel: Step bound for the joinability premise of ``join``.
        opsem_fuel: Step bound for operational-semantics proof steps; the
            join fuel is used when unset.
    """
    join_fuel: int = DEFAULT_FUEL
    opsem_fuel: Optional[int] = None

    def __post_init__(self):
        if self.join_fuel < 0:
            raise ValidationError(f"join_fuel must be non-negative, got {self.join_fuel}")
        if self.opsem_fuel is not None and self.opsem_fuel < 0:
            raise ValidationError(f"opsem_fuel must be non-negative, got {self.opsem_fuel}")

    @property
    def proof_fuel(self) -> int:
        return self.join_fuel if self.opsem_fuel is None else self.opsem_fuel


def subeffect(rho: Effect, theta: Effect) -> bool:
    """``rho <= theta``: equal effects, or total below general."""
    return rho is theta or (rho is Effect.TOTAL and theta is Effect.GENERAL)


def find_eval_position(big: Node, sub: Node) -> Optional[EvalContext]:
    """
    Find an evaluation context ``C`` with ``C[sub] == big``.

    The hole is tried first, then the positions of the context grammar:
    under ``Suc``, the function of an application, its argument when the
    function is a value, and the scrutinee of a ``case``.

    Returns:
        Optional[EvalContext]: The first context found, or None.
    """
    if big == sub:
        return Hole()
    if isinstance(big, Suc):
        inner = find_eval_position(big.arg, sub)
        return None if inner is None else SucC(inner)
    if isinstance(big, App):
        inner = find_eval_position(big.fn, sub)
        if inner is not None:
            return AppL(inner, big.arg)
        if is_value(big.fn):
            inner = find_eval_position(big.arg, sub)
            if inner is not None:
                return AppR(big.fn, inner)
        return None
    if isinstance(big, Case):
        inner = find_eval_position(big.scrutinee, sub)
        return None if inner is None else CaseC(inner, big.zero_branch, big.suc_branch)
    return None


class TypeChecker:
    """
    The algorithmic judgment ``G |- a : S e``.

    Context, term and effect are inputs and the type is the output. Each
    constructor has exactly one rule; a failing premise raises
    ``TypeCheckError`` with a diagnostic naming the rule and the premise.
    Types are compared up to alpha only, with no reduction inside types.
    """

    def __init__(self, config: Optional[CheckConfig] = None):
        self.config = config or CheckConfig()

    ########################
    #  Helpers             #
    ########################

    @staticmethod
    def _fail(rule: str, premise: int, kind: DiagnosticKind, path: Path, message: str,
              expected: Optional[str] = None, actual: Optional[str] = None) -> NoReturn:
        diagnostic = Diagnostic(rule, premise, kind, path, message, expected, actual)
        logging.debug(f"Typing failed: {diagnostic}")
        raise TypeCheckError(diagnostic)

    def _expect(self, rule: str, premise: int, path: Path, expected: Node, actual: Node,
                message: str) -> None:
        if expected != actual:
            self._fail(rule, premise, DiagnosticKind.TYPE_MISMATCH, path, message,
                       pretty(expected), pretty(actual))

    @staticmethod
    def _fresh(base: str, gamma: Context, *scopes: Node, extra: AbstractSet[str] = frozenset()) -> str:
        avoid = set(gamma.names()) | set(extra)
        for scope in scopes:
            avoid |= free_vars(scope)
        return fresh_name(base, avoid)

    ########################
    #  Well-formedness     #
    ########################

    def wf_context(self, gamma: Context) -> None:
        """Check every binding's type in the prefix before it."""
        prefix = Context()
        for name, type_ in gamma:
            try:
                self.wf_type(prefix, type_, ("context", name))
            except TypeCheckError as error:
                inner = error.diagnostic
                raise TypeCheckError(Diagnostic(
                    inner.rule, inner.premise, inner.kind, inner.path,
                    f"binding {name}: {inner.message}", inner.expected, inner.actual,
                )) from error
            prefix = prefix.extend(name, type_)

    def wf_type(self, gamma: Context, s: Node, path: Path = ("type",)) -> None:
        """Check ``G |- S`` by the four type formation rules."""
        if isinstance(s, ANat):
            return
        if isinstance(s, APi):
            self.wf_type(gamma, s.domain, path + ("domain",))
            x = self._fresh(s.name, gamma, s)
            self.wf_type(gamma.extend(x, s.domain), instantiate(s.codomain, [Var(x)]),
                         path + ("codomain",))
            return
        if isinstance(s, AEq):
            left = self.infer(gamma, s.left, Effect.GENERAL, path + ("left",))
            right = self.infer(gamma, s.right, Effect.GENERAL, path + ("right",))
            self.wf_type(gamma, left, path + ("left",))
            self.wf_type(gamma, right, path + ("right",))
            return
        if isinstance(s, ATerminatesTy):
            self.infer(gamma, s.term, Effect.GENERAL, path + ("term",))
            return
        self._fail("S_Nat", 0, DiagnosticKind.TYPE_MISMATCH, path,
                   f"not an annotated type: {type(s).__name__}")

    ########################
    #  Typing Rules        #
    ########################

    def infer(self, gamma: Context, a: Node, theta: Effect, path: Path = ()) -> Node:
        """
        Compute the type of ``a`` in ``gamma`` at effect ``theta``.

        Args:
            gamma: A well-formed context.
            a: An annotated term.
            theta: The effect the term is checked at.
            path: Position of ``a`` inside the term being checked.

        Returns:
            Node: The annotated type.

        Raises:
            TypeCheckError: If no rule applies.
        """
        if isinstance(a, Var):
            found = gamma.lookup(a.name)
            if found is None:
                self._fail("A_Var", 1, DiagnosticKind.UNBOUND_VARIABLE, path,
                           f"{a.name} is not bound in the context")
            return found
        if isinstance(a, Bound):
            raise ValueError("infer expects a locally closed term")
        if isinstance(a, AZero):
            return ANat()
        if isinstance(a, ASuc):
            # every level of a successor tower has type nat; only the base needs checking
            count = 0
            while isinstance(a, ASuc):
                a, count = a.arg, count + 1
            arg_path = path + ("arg",) * count
            arg = self.infer(gamma, a, theta, arg_path)
            self._expect("A_Suc", 1, arg_path, ANat(), arg, "successor of a non-number")
            return ANat()
        if isinstance(a, ALam):
            return self._abs(gamma, a, path)
        if isinstance(a, AApp):
            return self._app(gamma, a, theta, path)
        if isinstance(a, AJoin):
            return self._join(gamma, a, path)
        if isinstance(a, AConv):
            return self._conv(gamma, a, theta, path)
        if isinstance(a, AReflect):
            subject = self.infer(gamma, a.subject, Effect.GENERAL, path + ("subject",))
            proof = self.infer(gamma, a.proof, Effect.TOTAL, path + ("proof",))
            self._expect("A_Reflect", 2, path + ("proof",), ATerminatesTy(a.subject), proof,
                         "termination proof is about a different term")
            return subject
        if isinstance(a, ATerminates):
            self.infer(gamma, a.subject, Effect.TOTAL, path + ("subject",))
            return ATerminatesTy(a.subject)
        if isinstance(a, AInv):
            return self._inv(gamma, a, theta, path)
        if isinstance(a, ARec):
            return self._rec(gamma, a, path)
        if isinstance(a, ARecNat):
            return self._recnat(gamma, a, path)
        if isinstance(a, ACase):
            return self._case(gamma, a, theta, path)
        if isinstance(a, AContra):
            proof = self.infer(gamma, a.proof, Effect.TOTAL, path + ("proof",))
            if not (isinstance(proof, AEq) and isinstance(proof.left, AZero)
                    and isinstance(proof.right, ASuc)):
                self._fail("A_Contra", 1, DiagnosticKind.TYPE_MISMATCH, path + ("proof",),
                           "contra needs a proof of 0 = Suc a", "0 = Suc a", pretty(proof))
            self.wf_type(gamma, a.type, path + ("type",))
            return a.type
        if isinstance(a, AAbort):
            if theta is not Effect.GENERAL:
                self._fail("A_Abort", 0, DiagnosticKind.EFFECT_VIOLATION, path,
                           "abort is only allowed at the general effect", "?", str(theta))
            return a.type
        raise TypeError(f"not an annotated term: {type(a).__name__}")

    def _abs(self, gamma: Context, a: ALam, path: Path) -> Node:
        self.wf_type(gamma, a.domain, path + ("domain",))
        x = self._fresh(a.name, gamma, a)
        inner = gamma.extend(x, a.domain)
        body = self.infer(inner, instantiate(a.body, [Var(x)]), a.effect, path + ("body",))
        self.wf_type(inner, body, path + ("body",))
        return APi(a.effect, a.name, a.domain, abstract(body, [x]))

    def _app(self, gamma: Context, a: AApp, theta: Effect, path: Path) -> Node:
        fn = self.infer(gamma, a.fn, theta, path + ("fn",))
        if not isinstance(fn, APi):
            self._fail("A_App", 1, DiagnosticKind.NON_PI_APPLICATION, path + ("fn",),
                       "applied term does not have a Pi type", "Pi type", pretty(fn))
        if not subeffect(fn.effect, theta):
            self._fail("A_App", 3, DiagnosticKind.EFFECT_VIOLATION, path,
                       f"a function with latent effect {fn.effect} cannot be applied at {theta}",
                       str(theta), str(fn.effect))
        arg = self.infer(gamma, a.arg, theta, path + ("arg",))
        self._expect("A_App", 2, path + ("arg",), fn.domain, arg, "argument type does not match")
        return instantiate(fn.codomain, [a.arg])

    def _join(self, gamma: Context, a: AJoin, path: Path) -> Node:
        self.infer(gamma, a.left, Effect.GENERAL, path + ("left",))
        self.infer(gamma, a.right, Effect.GENERAL, path + ("right",))
        fuel = self.config.join_fuel
        if not joinable(erase_term(a.left), erase_term(a.right), fuel):
            self._fail("A_Join", 1, DiagnosticKind.JOIN_FAILURE, path,
                       f"no common reduct within {fuel} steps",
                       pretty(erase_term(a.left)), pretty(erase_term(a.right)))
        return AEq(a.left, a.right)

    def _conv(self, gamma: Context, a: AConv, theta: Effect, path: Path) -> Node:
        proof = self.infer(gamma, a.proof, Effect.TOTAL, path + ("proof",))
        if not isinstance(proof, AEq):
            self._fail("A_Conv", 2, DiagnosticKind.TYPE_MISMATCH, path + ("proof",),
                       "conversion needs an equality proof", "an equation", pretty(proof))
        subject = self.infer(gamma, a.subject, theta, path + ("subject",))
        self._expect("A_Conv", 1, path + ("subject",), instantiate(a.motive, [proof.right]),
                     subject, "subject does not have the motive at the right-hand side")
        result = instantiate(a.motive, [proof.left])
        self.wf_type(gamma, result, path + ("motive",))
        return result

    def _inv(self, gamma: Context, a: AInv, theta: Effect, path: Path) -> Node:
        proof = self.infer(gamma, a.proof, theta, path + ("proof",))
        if not isinstance(proof, ATerminatesTy):
            self._fail("A_Inv", 1, DiagnosticKind.TYPE_MISMATCH, path + ("proof",),
                       "inversion needs a termination proof", "Term a", pretty(proof))
        big, sub = erase_term(proof.term), erase_term(a.subterm)
        if find_eval_position(big, sub) is None:
            self._fail("A_Inv", 2, DiagnosticKind.CONTEXT_MATCH_FAILURE, path + ("subterm",),
                       f"{pretty(sub)} is not in evaluation position of {pretty(big)}")
        return ATerminatesTy(a.subterm)

    def _rec(self, gamma: Context, a: ARec, path: Path) -> Node:
        fn_type = APi(Effect.GENERAL, a.xname, a.domain, a.result)
        self.wf_type(gamma, fn_type, path + ("type",))
        f = self._fresh(a.fname, gamma, a)
        x = self._fresh(a.xname, gamma, a, extra={f})
        inner = gamma.extend(f, fn_type).extend(x, a.domain)
        body = self.infer(inner, instantiate(a.body, [Var(f), Var(x)]), Effect.GENERAL,
                          path + ("body",))
        self._expect("A_Rec", 1, path + ("body",), instantiate(a.result, [Var(x)]), body,
                     "body does not have the declared result type")
        return fn_type

    def _recnat(self, gamma: Context, a: ARecNat, path: Path) -> Node:
        fn_type = APi(Effect.GENERAL, a.xname, ANat(), a.result)
        self.wf_type(gamma, fn_type, path + ("type",))
        f = self._fresh(a.fname, gamma, a)
        x = self._fresh(a.xname, gamma, a, extra={f})
        p = self._fresh(a.pname, gamma, a, extra={f, x})
        body = instantiate(a.body, [Var(f), Var(x), Var(p)])
        if p in free_vars(erase_term(body)):
            self._fail("A_RecNat", 1, DiagnosticKind.PROOF_VARIABLE_OCCURS, path + ("body",),
                       f"the termination assumption {a.pname} is used outside proofs")
        pred = self._fresh("x1", gamma, a, extra={f, x, p})
        eq = self._fresh("p'", gamma, a, extra={f, x, p, pred})
        assumption = api(Effect.TOTAL, pred, ANat(),
                         api(Effect.TOTAL, eq, AEq(Var(x), ASuc(Var(pred))),
                             ATerminatesTy(AApp(Var(f), Var(pred)))))
        inner = gamma.extend(f, fn_type).extend(x, ANat()).extend(p, assumption)
        body_type = self.infer(inner, body, Effect.TOTAL, path + ("body",))
        self._expect("A_RecNat", 2, path + ("body",), instantiate(a.result, [Var(x)]), body_type,
                     "body does not have the declared result type")
        return APi(Effect.TOTAL, a.xname, ANat(), a.result)

    def _case(self, gamma: Context, a: ACase, theta: Effect, path: Path) -> Node:
        scrutinee = self.infer(gamma, a.scrutinee, theta, path + ("scrutinee",))
        self._expect("A_Case", 1, path + ("scrutinee",), ANat(), scrutinee,
                     "case analysis on a non-number")
        zero = self.infer(gamma, a.zero_branch, theta, path + ("zero_branch",))
        self._expect("A_Case", 2, path + ("zero_branch",), instantiate(a.motive, [AZero()]), zero,
                     "zero branch does not have the motive at 0")
        suc = self.infer(gamma, a.suc_branch, theta, path + ("suc_branch",))
        if not (isinstance(suc, APi) and isinstance(suc.domain, ANat)):
            self._fail("A_Case", 3, DiagnosticKind.TYPE_MISMATCH, path + ("suc_branch",),
                       "successor branch must be a function of a number",
                       "Pi e x:nat. S", pretty(suc))
        y = self._fresh(suc.name, gamma, a, suc)
        self._expect("A_Case", 3, path + ("suc_branch",),
                     instantiate(a.motive, [ASuc(Var(y))]),
                     instantiate(suc.codomain, [Var(y)]),
                     "successor branch does not have the motive at Suc")
        if not subeffect(suc.effect, theta):
            self._fail("A_Case", 4, DiagnosticKind.EFFECT_VIOLATION, path + ("suc_branch",),
                       f"successor branch has latent effect {suc.effect} at {theta}",
                       str(theta), str(suc.effect))
        return instantiate(a.motive, [a.scrutinee])


def wf_context(gamma: Context, config: Optional[CheckConfig] = None) -> None:
    """Check ``G |- Ok``; raises TypeCheckError naming the first bad binding."""
    TypeChecker(config).wf_context(gamma)


def wf_type(gamma: Context, s: Node, config: Optional[CheckConfig] = None) -> None:
    """Check ``G |- S``; raises TypeCheckError."""
    TypeChecker(config).wf_type(gamma, s)


def infer(gamma: Context, a: Node, theta: Effect, config: Optional[CheckConfig] = None) -> Node:
    """
    Compute the type of ``a`` at ``theta`` in ``gamma``.

    Raises:
        TypeCheckError: With the diagnostic of the failing premise.
    """
    return TypeChecker(config).infer(gamma, a, theta)
