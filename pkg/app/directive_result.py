########################
#  Directive Results   #
########################

from dataclasses import dataclass
from typing import Any, Dict

from app.exceptions import ValidationError

OK = "ok"
FAILED = "failed"

FIELDS = ("command", "source", "name", "status", "output", "detail")


@dataclass(frozen=True)
class DirectiveResult:
    """
    Value Object recording the outcome of one directive or proof script.

    Results are what the command-line driver prints and what reports store.
    They carry no timestamps, so running the same inputs twice yields equal
    results.

    Attributes:
        command: The subcommand that produced the result (``check``, ``eval``, ...).
        source: The input file.
        name: The directive's name, or the script file name for proofs.
        status: ``"ok"`` or ``"failed"``.
        output: The printed result line(s).
        detail: The diagnostic text of a failure, empty otherwise.
    """
    command: str
    source: str
    name: str
    status: str
    output: str = ""
    detail: str = ""

    def __post_init__(self):
        if self.status not in (OK, FAILED):
            raise ValidationError(f"Unknown result status: {self.status}")

    @property
    def ok(self) -> bool:
        return self.status == OK

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the result to a dictionary for serialization.

        Returns:
            Dict[str, Any]: One entry per field, in report column order.
        """
        return {name: getattr(self, name) for name in FIELDS}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> 'DirectiveResult':
        """
        Create a result from a dictionary, e.g. a row read back from a report.

        Missing ``output`` and ``detail`` entries default to empty strings.

        Raises:
            ValidationError: If a required field is missing or the status is unknown.
        """
        try:
            return DirectiveResult(
                command=str(data['command']),
                source=str(data['source']),
                name=str(data['name']),
                status=str(data['status']),
                output=str(data.get('output', '') or ''),
                detail=str(data.get('detail', '') or ''),
            )
        except KeyError as e:
            raise ValidationError(f"Invalid result data: missing {e}") from e

    def __str__(self) -> str:
        text = f"{self.command} {self.source}:{self.name} [{self.status}]"
        return f"{text} {self.detail}" if self.detail else text
