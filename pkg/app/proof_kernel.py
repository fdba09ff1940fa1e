########################
#  W' Proof Kernel     #
########################

import logging
from typing import Iterable, NoReturn, Optional, Tuple

from app.binders import Node, Var, free_vars, instantiate
from app.evaluation import is_evaluation_context, plug, reduce_trace
from app.exceptions import ProofError, SortError, ValidationError
from app.printer import pretty
from app.proofs import (
    Alle, Alli, Andi, Ande1, Ande2, Assume, CompInd, ContraPv, Impe, Impi, Ind, NotTermAbort,
    OpSem, Proof, Subst, Term0, TermAbs, TermInv, TermRec, TermS, Truei,
)
from app.sort_checker import sty_check
from app.syntax import Abort, App, Lam, Rec, Suc, Zero, rec
from app.typechecker import CheckConfig
from app.wprime import (
    FAnd, FEq, FForall, FImp, FTerm, FTrue, SArrow, SNat, Sequent, Sort, forall_,
    formula_subst, open_forall,
)

Position = Tuple[str, ...]


class ProofKernel:
    """
    LCF-style checker for W' derivations.

    Checking is bidirectional. Introduction rules and axioms whose
    conclusion carries information the proof term does not (``alli``,
    ``impi``, ``opsem``, ...) are checked against the goal; elimination
    rules and axioms with a fixed conclusion synthesize their formula, which
    is then compared with the goal up to alpha.
    """

    def __init__(self, config: Optional[CheckConfig] = None):
        self.config = config or CheckConfig()

    ########################
    #  Helpers             #
    ########################

    @staticmethod
    def _fail(rule: str, position: Position, message: str) -> NoReturn:
        where = "/".join(("proof",) + position)
        logging.debug(f"Proof rejected by {rule} at {where}: {message}")
        raise ProofError(rule, where, message)

    def _premise(self, rule: str, position: Position, seq: Sequent,
                 bindings: Iterable[Tuple[str, Sort]] = (), hyps: Iterable[Node] = (),
                 goal: Node = FTrue()) -> Sequent:
        try:
            return seq.extend(bindings, hyps, goal)
        except ValidationError as error:
            self._fail(rule, position, str(error))

    def _require_fresh(self, rule: str, position: Position, seq: Sequent, name: str,
                       formulas: Iterable[Node] = ()) -> None:
        if name in seq.names():
            self._fail(rule, position, f"variable {name} is already declared in sigma")
        if name in seq.hyp_vars():
            self._fail(rule, position, f"variable {name} occurs free in the hypotheses")
        for formula in formulas:
            if name in free_vars(formula):
                self._fail(rule, position, f"variable {name} occurs free in {pretty(formula)}")

    def _sort_check(self, rule: str, position: Position, seq: Sequent, t: Node, sort: Sort) -> None:
        try:
            sty_check(seq.sigma, t, sort)
        except SortError as error:
            self._fail(rule, position, f"{pretty(t)} does not have sort {pretty(sort)}: {error}")

    def _synthesize_required(self, seq: Sequent, proof: Proof, position: Position,
                             rule: str) -> Node:
        formula = self.synthesize(seq, proof, position)
        if formula is None:
            self._fail(rule, position, f"cannot determine what {proof.RULE} proves here")
        return formula

    ########################
    #  Checking Mode       #
    ########################

    def check(self, seq: Sequent, proof: Proof, position: Position = ()) -> None:
        """
        Check that ``proof`` derives ``seq``.

        Raises:
            ProofError: Naming the first rule whose premises or side
                conditions fail and the position of its node.
        """
        goal = seq.goal
        if isinstance(proof, Alli):
            if not isinstance(goal, FForall):
                self._fail(proof.RULE, position, f"goal is not a quantifier: {pretty(goal)}")
            if proof.sort != goal.sort:
                self._fail(proof.RULE, position,
                           f"sort {pretty(proof.sort)} does not match {pretty(goal.sort)}")
            self._require_fresh(proof.RULE, position, seq, proof.x)
            premise = self._premise(proof.RULE, position, seq, [(proof.x, proof.sort)],
                                    goal=open_forall(goal, proof.x))
            self.check(premise, proof.proof, position + ("0",))
            return
        if isinstance(proof, Impi):
            if not isinstance(goal, FImp):
                self._fail(proof.RULE, position, f"goal is not an implication: {pretty(goal)}")
            premise = self._premise(proof.RULE, position, seq, hyps=[goal.left], goal=goal.right)
            self.check(premise, proof.proof, position + ("0",))
            return
        if isinstance(proof, Andi):
            if not isinstance(goal, FAnd):
                self._fail(proof.RULE, position, f"goal is not a conjunction: {pretty(goal)}")
            self.check(self._premise(proof.RULE, position, seq, goal=goal.left),
                       proof.left, position + ("0",))
            self.check(self._premise(proof.RULE, position, seq, goal=goal.right),
                       proof.right, position + ("1",))
            return
        if isinstance(proof, ContraPv):
            premise = self._synthesize_required(seq, proof.proof, position + ("0",), proof.RULE)
            if not (isinstance(premise, FEq) and isinstance(premise.left, Zero)
                    and isinstance(premise.right, Suc)):
                self._fail(proof.RULE, position, f"premise is not of the form 0 = Suc t: {pretty(premise)}")
            return
        if isinstance(proof, NotTermAbort):
            premise = self._synthesize_required(seq, proof.proof, position + ("0",), proof.RULE)
            if premise != FTerm(Abort()):
                self._fail(proof.RULE, position, f"premise is not Term abort: {pretty(premise)}")
            return
        if isinstance(proof, TermS):
            if not (isinstance(goal, FTerm) and isinstance(goal.term, Suc)):
                self._fail(proof.RULE, position, f"goal is not Term (Suc t): {pretty(goal)}")
            self.check(self._premise(proof.RULE, position, seq, goal=FTerm(goal.term.arg)),
                       proof.proof, position + ("0",))
            return
        if isinstance(proof, TermAbs):
            if not (isinstance(goal, FTerm) and isinstance(goal.term, Lam)):
                self._fail(proof.RULE, position, f"goal is not Term of an abstraction: {pretty(goal)}")
            return
        if isinstance(proof, TermRec):
            if not (isinstance(goal, FTerm) and isinstance(goal.term, Rec)):
                self._fail(proof.RULE, position,
                           f"goal is not Term of a recursive function: {pretty(goal)}")
            return
        if isinstance(proof, OpSem):
            self._check_opsem(seq, proof, position)
            return
        if isinstance(proof, TermInv):
            self._check_terminv(seq, proof, position)
            return
        formula = self.synthesize(seq, proof, position)
        if formula is None:
            self._fail(proof.RULE, position, "proof cannot be checked in this position")
        if formula != goal:
            self._fail(proof.RULE, position,
                       f"proves {pretty(formula)} but the goal is {pretty(goal)}")

    def _check_opsem(self, seq: Sequent, proof: OpSem, position: Position) -> None:
        goal = seq.goal
        if not isinstance(goal, FEq):
            self._fail(proof.RULE, position, f"goal is not an equation: {pretty(goal)}")
        if proof.fuel < 0:
            self._fail(proof.RULE, position, f"fuel must be non-negative, got {proof.fuel}")
        fuel = min(proof.fuel, self.config.proof_fuel)
        trace = reduce_trace(goal.left, fuel)
        if goal.right not in trace.terms:
            self._fail(proof.RULE, position,
                       f"{pretty(goal.left)} does not reach {pretty(goal.right)} within {fuel} steps")

    def _check_terminv(self, seq: Sequent, proof: TermInv, position: Position) -> None:
        goal = seq.goal
        if not isinstance(goal, FTerm):
            self._fail(proof.RULE, position, f"goal is not a termination claim: {pretty(goal)}")
        if not is_evaluation_context(proof.context):
            self._fail(proof.RULE, position, f"{pretty(proof.context)} is not an evaluation context")
        expected = FTerm(plug(proof.context, goal.term))
        found = self.synthesize(seq, proof.proof, position + ("0",))
        if found is None:
            self.check(self._premise(proof.RULE, position, seq, goal=expected),
                       proof.proof, position + ("0",))
        elif found != expected:
            self._fail(proof.RULE, position,
                       f"premise proves {pretty(found)} but the context requires {pretty(expected)}")

    ########################
    #  Synthesis Mode      #
    ########################

    def synthesize(self, seq: Sequent, proof: Proof, position: Position = ()) -> Optional[Node]:
        """
        Compute the formula ``proof`` derives from the context of ``seq``.

        The goal of ``seq`` is ignored.

        Returns:
            Optional[Node]: The formula, or None for proofs that can only be
            checked against a goal.

        Raises:
            ProofError: If a premise fails.
        """
        if isinstance(proof, Assume):
            if not 0 <= proof.index < len(seq.hyps):
                self._fail(proof.RULE, position,
                           f"hypothesis {proof.index} out of range ({len(seq.hyps)} hypotheses)")
            return seq.hyps[proof.index]
        if isinstance(proof, Alle):
            quantified = self._synthesize_required(seq, proof.proof, position + ("0",), proof.RULE)
            if not isinstance(quantified, FForall):
                self._fail(proof.RULE, position, f"premise is not a quantifier: {pretty(quantified)}")
            self._sort_check(proof.RULE, position, seq, proof.term, quantified.sort)
            return instantiate(quantified.body, [proof.term])
        if isinstance(proof, Impe):
            implication = self._synthesize_required(seq, proof.implication, position + ("0",),
                                                    proof.RULE)
            if not isinstance(implication, FImp):
                self._fail(proof.RULE, position,
                           f"premise is not an implication: {pretty(implication)}")
            self.check(self._premise(proof.RULE, position, seq, goal=implication.left),
                       proof.argument, position + ("1",))
            return implication.right
        if isinstance(proof, (Ande1, Ande2)):
            conjunction = self._synthesize_required(seq, proof.proof, position + ("0",), proof.RULE)
            if not isinstance(conjunction, FAnd):
                self._fail(proof.RULE, position,
                           f"premise is not a conjunction: {pretty(conjunction)}")
            return conjunction.left if isinstance(proof, Ande1) else conjunction.right
        if isinstance(proof, Andi):
            left = self.synthesize(seq, proof.left, position + ("0",))
            right = self.synthesize(seq, proof.right, position + ("1",))
            return None if left is None or right is None else FAnd(left, right)
        if isinstance(proof, Alli):
            self._require_fresh(proof.RULE, position, seq, proof.x)
            inner = self._premise(proof.RULE, position, seq, [(proof.x, proof.sort)])
            body = self.synthesize(inner, proof.proof, position + ("0",))
            return None if body is None else forall_(proof.x, proof.sort, body)
        if isinstance(proof, Truei):
            return FTrue()
        if isinstance(proof, Term0):
            return FTerm(Zero())
        if isinstance(proof, TermS):
            inner = self.synthesize(seq, proof.proof, position + ("0",))
            if inner is None:
                return None
            if not isinstance(inner, FTerm):
                self._fail(proof.RULE, position, f"premise is not a termination claim: {pretty(inner)}")
            return FTerm(Suc(inner.term))
        if isinstance(proof, Ind):
            return self._induction(seq, proof, position)
        if isinstance(proof, CompInd):
            return self._computational_induction(seq, proof, position)
        if isinstance(proof, Subst):
            equation = self._synthesize_required(seq, proof.equation, position + ("0",), proof.RULE)
            if not isinstance(equation, FEq):
                self._fail(proof.RULE, position, f"premise is not an equation: {pretty(equation)}")
            before = formula_subst(proof.formula, proof.x, equation.left)
            self.check(self._premise(proof.RULE, position, seq, goal=before),
                       proof.body, position + ("1",))
            return formula_subst(proof.formula, proof.x, equation.right)
        return None

    def _induction(self, seq: Sequent, proof: Ind, position: Position) -> Node:
        x, formula, x2 = proof.x, proof.formula, proof.x2
        pattern_vars = free_vars(formula) - {x}
        if x2 != x and x2 in pattern_vars:
            self._fail(proof.RULE, position, f"variable {x2} occurs free in {pretty(formula)}")
        self._require_fresh(proof.RULE, position, seq, x2)
        base = self._premise(proof.RULE, position, seq, goal=formula_subst(formula, x, Zero()))
        self.check(base, proof.base, position + ("0",))
        step = self._premise(
            proof.RULE, position, seq,
            [(x2, SNat())],
            [FTerm(Var(x2)), formula_subst(formula, x, Var(x2))],
            formula_subst(formula, x, Suc(Var(x2))),
        )
        self.check(step, proof.step, position + ("1",))
        return forall_(x, SNat(), FImp(FTerm(Var(x)), formula))

    def _computational_induction(self, seq: Sequent, proof: CompInd, position: Position) -> Node:
        z, formula, f, x = proof.z, proof.formula, proof.f, proof.x
        if len({z, f, x}) < 3:
            self._fail(proof.RULE, position, f"variables {z}, {f} and {x} must be distinct")
        self._require_fresh(proof.RULE, position, seq, f, [formula])
        if x in free_vars(formula):
            self._fail(proof.RULE, position, f"variable {x} occurs free in {pretty(formula)}")
        function_sort = SArrow(proof.dom_sort, proof.cod_sort)
        function = rec(f, x, proof.body)
        self._sort_check(proof.RULE, position, seq, function, function_sort)
        premise = self._premise(
            proof.RULE, position, seq,
            [(f, function_sort)],
            [forall_(x, proof.dom_sort, formula_subst(formula, z, App(Var(f), Var(x))))],
            forall_(x, proof.dom_sort, formula_subst(formula, z, proof.body)),
        )
        self.check(premise, proof.proof, position + ("0",))
        call = App(function, Var(x))
        return forall_(x, proof.dom_sort, FImp(FTerm(call), formula_subst(formula, z, call)))


def check_proof(seq: Sequent, proof: Proof, config: Optional[CheckConfig] = None) -> None:
    """
    Check a W' derivation against a sequent.

    Args:
        seq: The sequent to prove.
        proof: The derivation.
        config: Supplies the fuel bound for ``opsem`` steps.

    Raises:
        ProofError: Naming the failing rule and its position in the proof.
    """
    ProofKernel(config).check(seq, proof)
    logging.debug(f"Proof accepted: {pretty(seq.goal)}")
