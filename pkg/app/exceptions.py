########################
# Exception Hierarchy  #
########################

from typing import Optional, TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from app.diagnostics import Diagnostic


class TeqError(Exception):
    """
    Base exception class for toolchain-specific errors.

    All custom exceptions raised by the checker, the evaluator, the proof
    kernel and the command-line driver inherit from this class, allowing for
    unified error handling at the top level.
    """
    pass


class ValidationError(TeqError):
    """
    Raised when user input is malformed.

    This covers bad command-line values (a negative fuel, an unknown effect),
    program files that use a name before defining it, and sequents whose free
    variables are not declared in their sort context.
    """
    pass


class ConfigurationError(TeqError):
    """
    Raised when the toolchain configuration is invalid.

    Triggered when settings loaded from the environment or passed to the
    configuration class do not meet their constraints.
    """
    pass


class ParseError(TeqError):
    """
    Raised when source text does not match the concrete syntax.

    Args:
        message (str): What the parser expected or found.
        line (Optional[int]): 1-based line of the offending token.
        column (Optional[int]): 1-based column of the offending token.
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            super().__init__(f"line {line}, column {column}: {message}")
        else:
            super().__init__(message)


class TypeCheckError(TeqError):
    """
    Raised when an annotated typing judgment cannot be derived.

    The attached diagnostic names the rule and the premise that failed.
    """

    def __init__(self, diagnostic: "Diagnostic"):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))


class SortError(TeqError):
    """
    Raised when a W' term has no simple sort.

    Args:
        message (str): Description of the failure.
        constraint (str): The unsolvable constraint, already printed.
    """

    def __init__(self, message: str, constraint: str = ""):
        self.message = message
        self.constraint = constraint
        super().__init__(f"{message}: {constraint}" if constraint else message)


class ProofError(TeqError):
    """
    Raised when a W' derivation is rejected by the proof kernel.

    Args:
        rule (str): Name of the rule whose check failed, e.g. ``Pv_Alle``.
        position (str): Path of the offending node inside the proof tree.
        message (str): What did not match.
    """

    def __init__(self, rule: str, position: str, message: str):
        self.rule = rule
        self.position = position
        self.message = message
        super().__init__(f"{rule} at {position}: {message}")
