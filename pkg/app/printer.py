########################
#  Pretty Printer      #
########################

from typing import Iterable, List, Sequence

from app.binders import Bound, Node, Var, fresh_name, free_vars, instantiate
from app.evaluation import AppL, AppR, CaseC, Hole, SucC
from app.proofs import (
    Alle, Alli, Andi, Ande1, Ande2, Assume, CompInd, ContraPv, Impe, Impi, Ind, NotTermAbort,
    OpSem, Proof, Subst, Term0, TermAbs, TermInv, TermRec, TermS, Truei,
)
from app.syntax import (
    AAbort, AApp, ACase, AContra, AConv, AEq, AInv, AJoin, ALam, ANat, APi, ARec, ARecNat,
    AReflect, ASuc, ATerminates, ATerminatesTy, AZero, Abort, App, Case, Contra, Eq, Join, Lam,
    Nat, Pi, Rec, Suc, TerminatesPf, TerminatesTy, Zero,
)
from app.wprime import FAnd, FEq, FForall, FImp, FTerm, FTrue, SArrow, SNat, SVar, Sequent

# Precedence levels, loosest first
OPEN = 0    # binders and casts whose last operand extends to the right
APP = 1     # application and keyword heads
ATOM = 2

IMP = 0
AND = 1
FATOM = 2


def _choose(bases: Iterable[str], avoid: Iterable[str]) -> List[str]:
    taken = set(avoid)
    names = []
    for base in bases:
        name = fresh_name(base, taken)
        taken.add(name)
        names.append(name)
    return names


def _open(node: Node, scope: str, names: Sequence[str]) -> Node:
    return instantiate(getattr(node, scope), [Var(name) for name in names])


def _wrap(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def _suc_tower(t: Node, level: int) -> str:
    """Print ``Suc (Suc ... b)`` without one call per successor."""
    count = 0
    while isinstance(t, (Suc, ASuc)):
        t, count = t.arg, count + 1
    inner = f"Suc {_term(t, ATOM)}"
    return _wrap("Suc (" * (count - 1) + inner + ")" * (count - 1), level > APP)


########################
#  Terms               #
########################


def _term(t: Node, level: int) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Bound):
        return f"#{t.index}"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Join):
        return "join"
    if isinstance(t, TerminatesPf):
        return "terminates"
    if isinstance(t, Contra):
        return "contra"
    if isinstance(t, Abort):
        return "abort"
    if isinstance(t, Suc):
        return _suc_tower(t, level)
    if isinstance(t, Case):
        parts = " ".join(_term(part, ATOM) for part in (t.scrutinee, t.zero_branch, t.suc_branch))
        return _wrap(f"case {parts}", level > APP)
    if isinstance(t, App):
        # keyword heads are bracketed in function position for readability
        head = _term(t.fn, ATOM if isinstance(t.fn, (Suc, Case)) else APP)
        return _wrap(f"{head} {_term(t.arg, ATOM)}", level > APP)
    if isinstance(t, Lam):
        (x,) = _choose([t.name], free_vars(t.body))
        return _wrap(f"\\{x}. {_term(_open(t, 'body', [x]), OPEN)}", level > OPEN)
    if isinstance(t, Rec):
        f, x = _choose([t.fname, t.xname], free_vars(t.body))
        return _wrap(f"rec {f} ({x}) = {_term(_open(t, 'body', [f, x]), OPEN)}", level > OPEN)
    return _aterm(t, level)


def _type(s: Node) -> str:
    if isinstance(s, (Nat, ANat)):
        return "nat"
    if isinstance(s, (Pi, APi)):
        (x,) = _choose([s.name], free_vars(s.codomain))
        domain = _wrap(_type(s.domain), isinstance(s.domain, (Pi, APi)))
        return f"Pi {s.effect} {x}:{domain}. {_type(_open(s, 'codomain', [x]))}"
    if isinstance(s, (Eq, AEq)):
        return f"{_term(s.left, APP)} = {_term(s.right, APP)}"
    if isinstance(s, (TerminatesTy, ATerminatesTy)):
        return f"Term {_term(s.term, ATOM)}"
    raise TypeError(f"cannot print {type(s).__name__} as a type")


def _type_atom(s: Node) -> str:
    return _wrap(_type(s), not isinstance(s, (Nat, ANat)))


def _aterm(a: Node, level: int) -> str:
    if isinstance(a, AZero):
        return "0"
    if isinstance(a, ASuc):
        return _suc_tower(a, level)
    if isinstance(a, AApp):
        head_form = (ASuc, ACase, AJoin, ATerminates)
        head = _term(a.fn, ATOM if isinstance(a.fn, head_form) else APP)
        return _wrap(f"{head} {_term(a.arg, ATOM)}", level > APP)
    if isinstance(a, ATerminates):
        return _wrap(f"tm {_term(a.subject, ATOM)}", level > APP)
    if isinstance(a, AJoin):
        return _wrap(f"join {_term(a.left, ATOM)} {_term(a.right, ATOM)}", level > APP)
    if isinstance(a, ACase):
        (x,) = _choose([a.xname], free_vars(a.motive))
        parts = " ".join(_term(part, ATOM) for part in (a.scrutinee, a.zero_branch, a.suc_branch))
        return _wrap(f"case [{x}. {_type(_open(a, 'motive', [x]))}] {parts}", level > APP)
    if isinstance(a, ALam):
        (x,) = _choose([a.name], free_vars(a.body))
        domain = _wrap(_type(a.domain), isinstance(a.domain, APi))
        body = _term(_open(a, "body", [x]), OPEN)
        return _wrap(f"\\{a.effect} {x}:{domain}. {body}", level > OPEN)
    if isinstance(a, ARec):
        f, x = _choose([a.fname, a.xname], free_vars(a.body) | free_vars(a.result))
        result = _type_atom(_open(a, "result", [x]))
        body = _term(_open(a, "body", [f, x]), OPEN)
        return _wrap(f"rec {f} ({x}:{_type(a.domain)}) : {result} = {body}", level > OPEN)
    if isinstance(a, ARecNat):
        f, x, p = _choose([a.fname, a.xname, a.pname], free_vars(a.body) | free_vars(a.result))
        result = _type_atom(_open(a, "result", [x]))
        body = _term(_open(a, "body", [f, x, p]), OPEN)
        return _wrap(f"recnat {f} ({x}, {p}) : {result} = {body}", level > OPEN)
    if isinstance(a, AConv):
        (x,) = _choose([a.xname], free_vars(a.motive))
        motive = _type(_open(a, "motive", [x]))
        text = f"conv [{x}. {motive}] {_term(a.subject, APP)} by {_term(a.proof, OPEN)}"
        return _wrap(text, level > OPEN)
    if isinstance(a, AReflect):
        return _wrap(f"reflect {_term(a.subject, APP)} by {_term(a.proof, OPEN)}", level > OPEN)
    if isinstance(a, AInv):
        return _wrap(f"inv {_term(a.proof, APP)} at {_term(a.subterm, OPEN)}", level > OPEN)
    if isinstance(a, AContra):
        return _wrap(f"contra {_type_atom(a.type)} {_term(a.proof, OPEN)}", level > OPEN)
    if isinstance(a, AAbort):
        return _wrap(f"abort {_type(a.type)}", level > OPEN)
    raise TypeError(f"cannot print {type(a).__name__} as a term")


########################
#  Sorts and Formulas  #
########################


def _sort(s: object) -> str:
    if isinstance(s, SNat):
        return "nat"
    if isinstance(s, SVar):
        return f"'a{s.id}"
    if isinstance(s, SArrow):
        return f"{_wrap(_sort(s.domain), isinstance(s.domain, SArrow))} -> {_sort(s.codomain)}"
    raise TypeError(f"cannot print {type(s).__name__} as a sort")


def _formula(f: Node, level: int, tail: bool) -> str:
    """
    Print a formula.

    A quantifier body extends as far right as possible, so a ``forall`` is
    bracketed unless it is the last thing printed at its nesting depth.
    """
    if isinstance(f, FTrue):
        return "True"
    if isinstance(f, FTerm):
        return f"Term {_term(f.term, ATOM)}"
    if isinstance(f, FEq):
        return f"{_term(f.left, APP)} = {_term(f.right, APP)}"
    if isinstance(f, FAnd):
        if level > AND:
            return f"({_formula(f, AND, True)})"
        return f"{_formula(f.left, FATOM, False)} /\\ {_formula(f.right, AND, tail)}"
    if isinstance(f, FImp):
        if level > IMP:
            return f"({_formula(f, IMP, True)})"
        return f"{_formula(f.left, AND, False)} => {_formula(f.right, IMP, tail)}"
    if isinstance(f, FForall):
        (x,) = _choose([f.name], free_vars(f.body))
        text = f"forall {x}:{_sort(f.sort)}. {_formula(_open(f, 'body', [x]), IMP, True)}"
        return _wrap(text, not tail or level > AND)
    raise TypeError(f"cannot print {type(f).__name__} as a formula")


def _context(c: object) -> str:
    if isinstance(c, Hole):
        return "hole"
    if isinstance(c, SucC):
        return f"(sucC {_context(c.inner)})"
    if isinstance(c, AppL):
        return f"(appL {_context(c.inner)} {_term(c.arg, ATOM)})"
    if isinstance(c, AppR):
        return f"(appR {_term(c.fn, ATOM)} {_context(c.inner)})"
    if isinstance(c, CaseC):
        return f"(caseC {_context(c.inner)} {_term(c.zero_branch, ATOM)} {_term(c.suc_branch, ATOM)})"
    raise TypeError(f"cannot print {type(c).__name__} as an evaluation context")


def _sort_atom(s: object) -> str:
    return _wrap(_sort(s), isinstance(s, SArrow))


def _proof(p: Proof) -> str:
    if isinstance(p, Assume):
        return f"(assume {p.index})"
    if isinstance(p, Alli):
        return f"(alli {p.x} : {_sort_atom(p.sort)} {_proof(p.proof)})"
    if isinstance(p, Alle):
        return f"(alle {_proof(p.proof)} {_term(p.term, ATOM)})"
    if isinstance(p, Ind):
        formula = _formula(p.formula, IMP, True)
        return f"(ind {p.x} [{formula}] {_proof(p.base)} {p.x2} {_proof(p.step)})"
    if isinstance(p, CompInd):
        formula = _formula(p.formula, IMP, True)
        sorts = f"{_sort_atom(p.dom_sort)} {_sort_atom(p.cod_sort)}"
        return (f"(compind {p.z} [{formula}] {p.f} {p.x} {_term(p.body, ATOM)} {sorts} "
                f"{_proof(p.proof)})")
    if isinstance(p, TermInv):
        return f"(terminv {_context(p.context)} {_proof(p.proof)})"
    if isinstance(p, OpSem):
        return f"(opsem {p.fuel})"
    if isinstance(p, Subst):
        formula = _formula(p.formula, IMP, True)
        return f"(subst {p.x} [{formula}] {_proof(p.equation)} {_proof(p.body)})"
    keyword = _PROOF_KEYWORDS.get(type(p))
    if keyword is None:
        raise TypeError(f"cannot print {type(p).__name__} as a proof")
    premises = "".join(f" {_proof(sub)}" for _, sub in p.subproofs())
    return f"({keyword}{premises})"


_PROOF_KEYWORDS = {
    Impi: "impi", Impe: "impe", Andi: "andi", Ande1: "ande1", Ande2: "ande2", Truei: "truei",
    ContraPv: "contra", Term0: "term0", TermS: "termS", TermAbs: "termabs", TermRec: "termrec",
    NotTermAbort: "notterm",
}


def pretty_sequent(seq: Sequent) -> str:
    """Print a sequent as the ``sigma:``/``hyps:``/``goal:`` block used by ``.wp`` and ``.obl`` files."""
    sigma = ", ".join(f"{name}:{_sort(sort)}" for name, sort in seq.sigma)
    hyps = "; ".join(_formula(h, IMP, True) for h in seq.hyps)
    return f"sigma: {sigma}\nhyps: {hyps}\ngoal: {_formula(seq.goal, IMP, True)}"


_TYPES = (Nat, Pi, Eq, TerminatesTy, ANat, APi, AEq, ATerminatesTy)
_FORMULAS = (FTrue, FTerm, FEq, FAnd, FImp, FForall)
_SORTS = (SNat, SArrow, SVar)
_CONTEXTS = (Hole, SucC, AppL, AppR, CaseC)


def pretty(value: object) -> str:
    """
    Print any syntax tree in the concrete syntax the parser reads back.

    Handles terms and types of both languages, sorts, formulas, sequents, proofs and
    evaluation contexts. Output is deterministic; bound names are the stored
    surface names, primed where they would clash with a free variable.

    Args:
        value: The tree to print.

    Returns:
        str: Its concrete syntax.
    """
    if isinstance(value, Sequent):
        return pretty_sequent(value)
    if isinstance(value, Proof):
        return _proof(value)
    if isinstance(value, _FORMULAS):
        return _formula(value, IMP, True)
    if isinstance(value, _SORTS):
        return _sort(value)
    if isinstance(value, _CONTEXTS):
        return _context(value)
    if isinstance(value, _TYPES):
        return _type(value)
    if isinstance(value, Node):
        return _term(value, OPEN)
    raise TypeError(f"cannot print {type(value).__name__}")
