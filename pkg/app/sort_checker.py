########################
#  Simple-Sort Checker #
########################

import logging
from typing import Dict, Iterable, List, Tuple

from app.binders import Node, Var, fresh_name, free_vars, instantiate
from app.exceptions import SortError
from app.printer import pretty
from app.syntax import Abort, App, Case, Contra, Join, Lam, Rec, Suc, TerminatesPf, Zero
from app.wprime import SArrow, SNat, SVar, Sort

SortContext = Iterable[Tuple[str, Sort]]


class SortChecker:
    """
    Simple-sort assignment for W' terms by constraint solving.

    Lambda domains, recursive functions, ``case`` results and ``abort`` get
    fresh sort variables; constraints are solved eagerly by first-order
    unification with an occurs check. The variable supply and the solution
    live on the instance, so one instance serves one query.
    """

    def __init__(self):
        self._next_id = 0
        self._solution: Dict[int, Sort] = {}

    def fresh(self) -> SVar:
        self._next_id += 1
        return SVar(self._next_id)

    def resolve(self, sort: Sort) -> Sort:
        """Follow solved variables at the top of ``sort``."""
        while isinstance(sort, SVar) and sort.id in self._solution:
            sort = self._solution[sort.id]
        return sort

    def zonk(self, sort: Sort) -> Sort:
        """Apply the current solution everywhere inside ``sort``."""
        sort = self.resolve(sort)
        if isinstance(sort, SArrow):
            return SArrow(self.zonk(sort.domain), self.zonk(sort.codomain))
        return sort

    def _occurs(self, var: SVar, sort: Sort) -> bool:
        sort = self.resolve(sort)
        if isinstance(sort, SVar):
            return sort.id == var.id
        if isinstance(sort, SArrow):
            return self._occurs(var, sort.domain) or self._occurs(var, sort.codomain)
        return False

    def unify(self, left: Sort, right: Sort) -> None:
        """
        Make two sorts equal under the solution.

        Raises:
            SortError: If the sorts clash or a variable would occur in its own solution.
        """
        left, right = self.resolve(left), self.resolve(right)
        if left == right:
            return
        if isinstance(left, SVar) or isinstance(right, SVar):
            var, other = (left, right) if isinstance(left, SVar) else (right, left)
            if self._occurs(var, other):
                raise SortError("infinite sort", self._constraint(var, other))
            self._solution[var.id] = other
            return
        if isinstance(left, SArrow) and isinstance(right, SArrow):
            self.unify(left.domain, right.domain)
            self.unify(left.codomain, right.codomain)
            return
        raise SortError("sorts do not match", self._constraint(left, right))

    def _constraint(self, left: Sort, right: Sort) -> str:
        return f"{pretty(self.zonk(left))} = {pretty(self.zonk(right))}"

    def infer(self, env: List[Tuple[str, Sort]], t: Node) -> Sort:
        """
        Generate and solve the constraints for ``t``.

        Args:
            env: Sort bindings, innermost last.
            t: A W' term.

        Returns:
            Sort: The sort of ``t``, possibly containing unsolved variables.
        """
        if isinstance(t, Var):
            for name, sort in reversed(env):
                if name == t.name:
                    return sort
            raise SortError("unbound variable", t.name)
        if isinstance(t, Zero):
            return SNat()
        if isinstance(t, Suc):
            while isinstance(t, Suc):
                t = t.arg
            self.unify(self.infer(env, t), SNat())
            return SNat()
        if isinstance(t, App):
            fn_sort = self.infer(env, t.fn)
            arg_sort = self.infer(env, t.arg)
            result = self.fresh()
            self.unify(fn_sort, SArrow(arg_sort, result))
            return result
        if isinstance(t, Lam):
            x = self._bind_name(t.name, env, t)
            domain = self.fresh()
            body_sort = self.infer(env + [(x, domain)], instantiate(t.body, [Var(x)]))
            return SArrow(domain, body_sort)
        if isinstance(t, Rec):
            f = self._bind_name(t.fname, env, t)
            x = fresh_name(t.xname, {name for name, _ in env} | free_vars(t) | {f})
            domain, result = self.fresh(), self.fresh()
            inner = env + [(f, SArrow(domain, result)), (x, domain)]
            self.unify(self.infer(inner, instantiate(t.body, [Var(f), Var(x)])), result)
            return SArrow(domain, result)
        if isinstance(t, Case):
            self.unify(self.infer(env, t.scrutinee), SNat())
            result = self.infer(env, t.zero_branch)
            self.unify(self.infer(env, t.suc_branch), SArrow(SNat(), result))
            return result
        if isinstance(t, Abort):
            return self.fresh()
        if isinstance(t, (Join, TerminatesPf, Contra)):
            raise SortError("logical constant outside the term language of W'", pretty(t))
        raise SortError("not a W' term", type(t).__name__)

    @staticmethod
    def _bind_name(base: str, env: List[Tuple[str, Sort]], scope: Node) -> str:
        return fresh_name(base, {name for name, _ in env} | free_vars(scope))


def infer_sort(sigma: SortContext, t: Node) -> Sort:
    """The most general sort of ``t`` under ``sigma``; unconstrained parts stay variables."""
    checker = SortChecker()
    return checker.zonk(checker.infer(list(sigma), t))


def sty_check(sigma: SortContext, t: Node, expected: Sort) -> None:
    """
    Check ``sigma |- t : expected`` in the simple-sort system of W'.

    Args:
        sigma: Sort bindings of the free variables.
        t: A W' term (no ``join``, ``terminates`` or ``contra``).
        expected: The sort to check against.

    Raises:
        SortError: Naming the constraint that could not be solved.
    """
    checker = SortChecker()
    checker.unify(checker.infer(list(sigma), t), expected)
    logging.debug(f"Sort check passed: {pretty(t)} : {pretty(expected)}")
