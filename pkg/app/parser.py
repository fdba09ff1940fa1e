########################
#  Concrete Syntax     #
########################

import logging
from typing import Optional, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from app.binders import Node, Var
from app.evaluation import AppL, AppR, CaseC, EvalContext, Hole, SucC
from app.exceptions import ParseError
from app.program import (
    Assumption, CheckDirective, Definition, EvalDirective, ObligationDirective, SourceFile,
)
from app.proofs import (
    Alle, Alli, Andi, Ande1, Ande2, Assume, CompInd, ContraPv, Impe, Impi, Ind, NotTermAbort,
    OpSem, Proof, Subst, Term0, TermAbs, TermInv, TermRec, TermS, Truei,
)
from app.syntax import (
    AAbort, AApp, AContra, AEq, AInv, AJoin, ANat, AReflect, ASuc, ATerminates, ATerminatesTy,
    Abort, App, Case, Contra, Effect, Join, Suc, TerminatesPf, acase, aconv, alam, anumeral, api,
    arec, arecnat, lam, numeral, rec,
)
from app.wprime import FAnd, FEq, FImp, FTerm, FTrue, SArrow, SNat, Sequent, Sort, forall_

_COMMON = r"""
NAME: /[a-zA-Z_][a-zA-Z0-9_']*/
NUMBER: /[0-9]+/
effect: "!" -> total
      | "?" -> general

%import common.SH_COMMENT
%import common.WS
%ignore WS
%ignore SH_COMMENT
"""

PROGRAM_GRAMMAR = r"""
program: directive*
aterm_start: aterm
atype_start: atype

?directive: "def" NAME "=" aterm                   -> define
          | "assume" NAME ":" atype                -> assume
          | "check" NAME ":" atype "at" effect     -> check
          | "obligation" NAME                      -> obligation
          | "eval" NAME                            -> evaluate

?atype: tyatom
      | "Pi" effect NAME ":" atype "." atype       -> api
      | aapp "=" aapp                              -> aeq
      | "Term" aapp                                -> aterminates_ty
?tyatom: "nat"                                     -> anat
       | "(" atype ")"

?aterm: aapp
      | "\\" effect NAME ":" atype "." aterm                       -> alam
      | "rec" NAME "(" NAME ":" atype ")" ":" tyatom "=" aterm     -> arec
      | "recnat" NAME "(" NAME "," NAME ")" ":" tyatom "=" aterm   -> arecnat
      | "conv" "[" NAME "." atype "]" aapp "by" aterm              -> aconv
      | "reflect" aapp "by" aterm                                  -> areflect
      | "inv" aapp "at" aterm                                      -> ainv
      | "contra" tyatom aterm                                      -> acontra
      | "abort" atype                                              -> aabort
?aapp: aatom
     | aapp aatom                                        -> aapp
     | "Suc" aatom                                       -> asuc
     | "tm" aatom                                        -> aterminates
     | "join" aatom aatom                                -> ajoin
     | "case" "[" NAME "." atype "]" aatom aatom aatom   -> acase
?aatom: NAME                                       -> avar
      | NUMBER                                     -> anumber
      | "(" aterm ")"
""" + _COMMON

PROOF_GRAMMAR = r"""
script: sequent ("proof" ":")? proof
sequent: sigma? hyps? "goal" ":" formula
sigma: "sigma" ":" (binding ("," binding)*)?
binding: NAME ":" sort
hyps: "hyps" ":" (formula (";" formula)*)?

term_start: term
formula_start: formula
sort_start: sort
proof_start: proof
ectx_start: ectx

?term: tapp
     | "\\" NAME "." term                   -> lam
     | "rec" NAME "(" NAME ")" "=" term     -> rec
?tapp: tatom
     | tapp tatom                           -> app
     | "Suc" tatom                          -> suc
     | "case" tatom tatom tatom             -> case
?tatom: NAME                                -> var
      | NUMBER                              -> number
      | "join"                              -> join
      | "terminates"                        -> terminates
      | "contra"                            -> contra
      | "abort"                             -> abort
      | "(" term ")"

?formula: cand "=>" formula                 -> imp
        | cand
        | oand
?cand: fatom "/\\" cand                     -> conj
     | fatom
?oand: fatom "/\\" oand                     -> conj
     | "forall" NAME ":" sort "." formula   -> forall
?fatom: "True"                              -> true
      | "Term" tatom                        -> fterm
      | tapp "=" tapp                       -> feq
      | "(" formula ")"

?sort: satom "->" sort                      -> arrow
     | satom
?satom: "nat"                               -> snat
      | "(" sort ")"

?proof: "(" "assume" NUMBER ")"                                      -> assume
      | "(" "alli" NAME ":" sort proof ")"                           -> alli
      | "(" "alle" proof tatom ")"                                   -> alle
      | "(" "impi" proof ")"                                         -> impi
      | "(" "impe" proof proof ")"                                   -> impe
      | "(" "andi" proof proof ")"                                   -> andi
      | "(" "ande1" proof ")"                                        -> ande1
      | "(" "ande2" proof ")"                                        -> ande2
      | "(" "truei" ")"                                              -> truei
      | "(" "contra" proof ")"                                       -> contra_pv
      | "(" "ind" NAME "[" formula "]" proof NAME proof ")"          -> ind
      | "(" "compind" NAME "[" formula "]" NAME NAME tatom satom satom proof ")" -> compind
      | "(" "term0" ")"                                              -> term0
      | "(" "termS" proof ")"                                        -> term_s
      | "(" "termabs" ")"                                            -> termabs
      | "(" "termrec" ")"                                            -> termrec
      | "(" "terminv" ectx proof ")"                                 -> terminv
      | "(" "notterm" proof ")"                                      -> notterm
      | "(" "opsem" NUMBER ")"                                       -> opsem
      | "(" "subst" NAME "[" formula "]" proof proof ")"             -> subst
?ectx: "hole"                               -> hole
     | "(" "sucC" ectx ")"                  -> suc_c
     | "(" "appL" ectx tatom ")"            -> app_l
     | "(" "appR" tatom ectx ")"            -> app_r
     | "(" "caseC" ectx tatom tatom ")"     -> case_c
""" + _COMMON


@v_args(inline=True)
class _Common(Transformer):
    def NAME(self, token: Token) -> str:
        return str(token)

    def NUMBER(self, token: Token) -> int:
        return int(token)

    def total(self) -> Effect:
        return Effect.TOTAL

    def general(self) -> Effect:
        return Effect.GENERAL


@v_args(inline=True)
class ProgramTransformer(_Common):
    """Builds annotated syntax and directives from program parse trees."""

    def program(self, *directives):
        return tuple(directives)

    def aterm_start(self, a):
        return a

    def atype_start(self, s):
        return s

    define = Definition
    assume = Assumption
    check = CheckDirective
    obligation = ObligationDirective
    evaluate = EvalDirective

    def api(self, effect, name, domain, codomain):
        return api(effect, name, domain, codomain)

    def aeq(self, left, right):
        return AEq(left, right)

    def aterminates_ty(self, a):
        return ATerminatesTy(a)

    def anat(self):
        return ANat()

    def alam(self, effect, name, domain, body):
        return alam(effect, name, domain, body)

    def arec(self, f, x, domain, result, body):
        return arec(f, x, domain, result, body)

    def arecnat(self, f, x, p, result, body):
        return arecnat(f, x, p, result, body)

    def aconv(self, x, motive, subject, proof):
        return aconv(x, motive, subject, proof)

    def areflect(self, subject, proof):
        return AReflect(subject, proof)

    def ainv(self, proof, subterm):
        return AInv(proof, subterm)

    def acontra(self, type_, proof):
        return AContra(type_, proof)

    def aabort(self, type_):
        return AAbort(type_)

    def aapp(self, fn, arg):
        return AApp(fn, arg)

    def asuc(self, a):
        return ASuc(a)

    def aterminates(self, a):
        return ATerminates(a)

    def ajoin(self, left, right):
        return AJoin(left, right)

    def acase(self, x, motive, scrutinee, zero_branch, suc_branch):
        return acase(x, motive, scrutinee, zero_branch, suc_branch)

    def avar(self, name):
        return Var(name)

    def anumber(self, n):
        return anumeral(n)


@v_args(inline=True)
class ProofTransformer(_Common):
    """Builds W' terms, formulas, sorts, sequents and proofs."""

    def script(self, seq, proof):
        return seq, proof

    def sequent(self, *parts):
        sigma, hyps = (), ()
        for tag, items in parts[:-1]:
            if tag == "sigma":
                sigma = items
            else:
                hyps = items
        return Sequent(sigma, hyps, parts[-1])

    def sigma(self, *bindings):
        return "sigma", tuple(bindings)

    def binding(self, name, sort):
        return name, sort

    def hyps(self, *formulas):
        return "hyps", tuple(formulas)

    def term_start(self, t):
        return t

    formula_start = sort_start = proof_start = ectx_start = term_start

    # terms
    def lam(self, name, body):
        return lam(name, body)

    def rec(self, f, x, body):
        return rec(f, x, body)

    def app(self, fn, arg):
        return App(fn, arg)

    def suc(self, t):
        return Suc(t)

    def case(self, scrutinee, zero_branch, suc_branch):
        return Case(scrutinee, zero_branch, suc_branch)

    def var(self, name):
        return Var(name)

    def number(self, n):
        return numeral(n)

    def join(self):
        return Join()

    def terminates(self):
        return TerminatesPf()

    def contra(self):
        return Contra()

    def abort(self):
        return Abort()

    # formulas and sorts
    def imp(self, left, right):
        return FImp(left, right)

    def conj(self, left, right):
        return FAnd(left, right)

    def forall(self, name, sort, body):
        return forall_(name, sort, body)

    def true(self):
        return FTrue()

    def fterm(self, t):
        return FTerm(t)

    def feq(self, left, right):
        return FEq(left, right)

    def arrow(self, domain, codomain):
        return SArrow(domain, codomain)

    def snat(self):
        return SNat()

    # proofs
    assume = Assume
    alli = Alli
    alle = Alle
    impi = Impi
    impe = Impe
    andi = Andi
    ande1 = Ande1
    ande2 = Ande2
    truei = Truei
    contra_pv = ContraPv
    ind = Ind
    compind = CompInd
    term0 = Term0
    term_s = TermS
    termabs = TermAbs
    termrec = TermRec
    terminv = TermInv
    notterm = NotTermAbort
    opsem = OpSem
    subst = Subst

    # evaluation contexts
    def hole(self):
        return Hole()

    def suc_c(self, inner):
        return SucC(inner)

    def app_l(self, inner, arg):
        return AppL(inner, arg)

    def app_r(self, fn, inner):
        return AppR(fn, inner)

    def case_c(self, inner, zero_branch, suc_branch):
        return CaseC(inner, zero_branch, suc_branch)


_PROGRAM_PARSER = Lark(PROGRAM_GRAMMAR, parser="earley", lexer="basic",
                       start=["program", "aterm_start", "atype_start"])
_PROOF_PARSER = Lark(PROOF_GRAMMAR, parser="earley", lexer="basic",
                     start=["script", "sequent", "term_start", "formula_start", "sort_start",
                            "proof_start", "ectx_start"])


def _position(error: UnexpectedInput) -> Tuple[Optional[int], Optional[int]]:
    line = getattr(error, "line", None)
    column = getattr(error, "column", None)
    if line is None or line < 1:
        return None, None
    return line, column


def _describe(error: UnexpectedInput) -> str:
    if isinstance(error, UnexpectedEOF):
        return "unexpected end of input"
    if isinstance(error, UnexpectedCharacters):
        return f"unexpected character {error.char!r}"
    token = getattr(error, "token", None)
    if token is not None:
        if token.type == "$END":
            return "unexpected end of input"
        return f"unexpected token {str(token)!r}"
    return "syntax error"


def _parse(parser: Lark, transformer: Transformer, text: str, start: str):
    try:
        tree = parser.parse(text, start=start)
    except UnexpectedInput as error:
        line, column = _position(error)
        logging.debug(f"Parse error at {line}:{column}: {error}")
        raise ParseError(_describe(error), line, column) from error
    try:
        return transformer.transform(tree)
    except VisitError as error:
        raise ParseError(str(error.orig_exc)) from error


def parse_program(text: str, path: Optional[str] = None) -> SourceFile:
    """
    Parse a ``.teqt`` program.

    Args:
        text: The program source.
        path: File name recorded on the result.

    Returns:
        SourceFile: The directives in file order.

    Raises:
        ParseError: With the position of the first offending token.
    """
    return SourceFile(_parse(_PROGRAM_PARSER, ProgramTransformer(), text, "program"), path)


def parse_aterm(text: str) -> Node:
    return _parse(_PROGRAM_PARSER, ProgramTransformer(), text, "aterm_start")


def parse_atype(text: str) -> Node:
    return _parse(_PROGRAM_PARSER, ProgramTransformer(), text, "atype_start")


def parse_proof(text: str) -> Tuple[Sequent, Proof]:
    """
    Parse a ``.wp`` proof script: a sequent header followed by a proof.

    Raises:
        ParseError: On malformed text, or a header whose formulas use
            variables not declared in ``sigma``.
    """
    return _parse(_PROOF_PARSER, ProofTransformer(), text, "script")


def parse_sequent(text: str) -> Sequent:
    return _parse(_PROOF_PARSER, ProofTransformer(), text, "sequent")


def parse_term(text: str) -> Node:
    """Parse an unannotated term."""
    return _parse(_PROOF_PARSER, ProofTransformer(), text, "term_start")


def parse_formula(text: str) -> Node:
    return _parse(_PROOF_PARSER, ProofTransformer(), text, "formula_start")


def parse_sort(text: str) -> Sort:
    return _parse(_PROOF_PARSER, ProofTransformer(), text, "sort_start")


def parse_context(text: str) -> EvalContext:
    """Parse an evaluation context in the ``hole``/``(sucC C)``/... notation."""
    return _parse(_PROOF_PARSER, ProofTransformer(), text, "ectx_start")
