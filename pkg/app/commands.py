########################
#  Command Classes     #
########################

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
import sys
from typing import Dict, List, Optional, Tuple

from app.directive_result import DirectiveResult
from app.exceptions import ValidationError
from app.syntax import Effect
from app.teq_config import DEFAULT_FUEL
from app.toolchain import Toolchain


@dataclass(frozen=True)
class RunConfig:
    """
    One invocation of the command-line driver.

    Attributes:
        command: Subcommand name.
        inputs: Input files, processed in order.
        fuel: Step bound shared by join checking, evaluation and ``opsem``.
        effect: Effect override for ``check``.
        output: Obligation file for ``translate`` (single input only).
        report: CSV report path, if one is requested.
    """
    command: str
    inputs: Tuple[Path, ...] = field(default_factory=tuple)
    fuel: int = DEFAULT_FUEL
    effect: Optional[Effect] = None
    output: Optional[Path] = None
    report: Optional[Path] = None

    def __post_init__(self):
        if self.fuel < 0:
            raise ValidationError(f"fuel must be non-negative, got {self.fuel}")
        if self.output is not None and len(self.inputs) > 1:
            raise ValidationError("--output needs exactly one input file")


class Command(ABC):
    """
    Abstract base class for subcommands.

    A command runs its pipeline over every input file, prints result lines
    to standard output and failure details to standard error, and returns
    the exit status.
    """

    @abstractmethod
    def run_file(self, toolchain: Toolchain, path: Path, config: RunConfig) -> List[DirectiveResult]:
        """
        Process one input file.

        Raises:
            ParseError: If the file does not parse.
            ValidationError: If the file refers to undefined names.
        """
        pass  # pragma: no cover

    def execute(self, toolchain: Toolchain, config: RunConfig) -> int:
        """
        Run the command over all inputs.

        Returns:
            int: 0 if every result is ok, 1 otherwise.
        """
        status = 0
        for path in config.inputs:
            for result in self.run_file(toolchain, path, config):
                if result.ok:
                    print(result.output)
                else:
                    print(f"{result.source}: {result.name}: {result.detail}", file=sys.stderr)
                    status = 1
        return status

    def __str__(self) -> str:
        return self.__class__.__name__


class CheckCommand(Command):
    def run_file(self, toolchain: Toolchain, path: Path, config: RunConfig) -> List[DirectiveResult]:
        return toolchain.check_program(path, config.effect, config.fuel)


class EvalCommand(Command):
    def run_file(self, toolchain: Toolchain, path: Path, config: RunConfig) -> List[DirectiveResult]:
        return toolchain.evaluate_program(path, config.fuel)


class EraseCommand(Command):
    def run_file(self, toolchain: Toolchain, path: Path, config: RunConfig) -> List[DirectiveResult]:
        return toolchain.erase_program(path)


class TranslateCommand(Command):
    """Prints each accepted obligation; consecutive sequents are separated by a blank line."""

    def run_file(self, toolchain: Toolchain, path: Path, config: RunConfig) -> List[DirectiveResult]:
        return toolchain.translate_program(path, config.output, config.fuel)

    def execute(self, toolchain: Toolchain, config: RunConfig) -> int:
        status = 0
        first = True
        for path in config.inputs:
            for result in self.run_file(toolchain, path, config):
                if not result.ok:
                    print(f"{result.source}: {result.name}: {result.detail}", file=sys.stderr)
                    status = 1
                    continue
                if not first:
                    print()
                print(result.output)
                first = False
        return status


class WpCheckCommand(Command):
    def run_file(self, toolchain: Toolchain, path: Path, config: RunConfig) -> List[DirectiveResult]:
        return toolchain.check_script(path, config.fuel)


class HistoryCommand(Command):
    """Prints the results stored in saved reports; reads the configured report when no file is given."""

    def run_file(self, toolchain: Toolchain, path: Optional[Path],
                 config: RunConfig) -> List[DirectiveResult]:
        return toolchain.load_report(path)

    def execute(self, toolchain: Toolchain, config: RunConfig) -> int:
        shown = 0
        for path in config.inputs or (None,):
            for result in self.run_file(toolchain, path, config):
                print(result)
                shown += 1
        if not shown:
            print("No results recorded.")
        return 0


class CommandFactory:
    _commands: Dict[str, type] = {
        'check': CheckCommand,
        'eval': EvalCommand,
        'erase': EraseCommand,
        'translate': TranslateCommand,
        'wp-check': WpCheckCommand,
        'history': HistoryCommand,
    }

    @classmethod
    def register_command(cls, name: str, command_class: type) -> None:
        """
        Register a new subcommand.

        Args:
            name (str): Subcommand name as typed on the command line.
            command_class (type): The class implementing it.

        Raises:
            TypeError: If command_class does not inherit from Command.
        """
        if not issubclass(command_class, Command):
            raise TypeError("Command class must inherit from Command")
        cls._commands[name.lower()] = command_class

    @classmethod
    def names(cls) -> List[str]:
        return list(cls._commands)

    @classmethod
    def create_command(cls, name: str) -> Command:
        """
        Create the command registered under ``name``.

        Raises:
            ValidationError: If no command has that name.
        """
        command_class = cls._commands.get(name.lower())
        if not command_class:
            raise ValidationError(f"Unknown command: {name}")
        return command_class()
