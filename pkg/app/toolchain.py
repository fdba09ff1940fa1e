########################
#  Toolchain Facade    #
########################

import logging
import os
from pathlib import Path
from typing import List, Optional, Union

import pandas as pd

from app.diagnostics import Diagnostic, DiagnosticKind
from app.directive_result import FAILED, FIELDS, OK, DirectiveResult
from app.erasure import erase_term, erase_type
from app.evaluation import reduce_trace
from app.exceptions import ProofError, SortError, TeqError, TypeCheckError
from app.history import ResultObserver
from app.parser import parse_program, parse_proof
from app.printer import pretty
from app.program import CheckJob, Definition, EvalJob, ObligationJob, resolve_program
from app.proof_kernel import check_proof
from app.syntax import Effect
from app.teq_config import TeqConfig
from app.typechecker import CheckConfig, TypeChecker
from app.wprime import Sequent, make_obligation

PathLike = Union[str, Path]

# Failures of a single directive; anything else aborts the whole file
_JUDGMENT_ERRORS = (TypeCheckError, SortError, ProofError)


class Toolchain:
    """
    Facade over the pipeline: parse, inline, check, erase, evaluate, translate.

    Each pipeline method processes one input file and records one result
    per directive (or per proof script). Observers are notified of every
    recorded result; the accumulated results can be written to and read
    back from a CSV report.
    """

    def __init__(self, config: Optional[TeqConfig] = None):
        """
        Initialize the toolchain.

        Args:
            config (Optional[TeqConfig], optional): Settings; loaded from the
                environment when omitted.

        Raises:
            ConfigurationError: If the configuration is invalid.
        """
        self.config = config or TeqConfig()
        self.config.validate()

        self._setup_logging()

        self.results: List[DirectiveResult] = []
        self.observers: List[ResultObserver] = []
        self.report_file: Optional[Path] = None

        logging.info("Toolchain initialized with configuration")

    def _setup_logging(self) -> None:
        """
        Configure the logging system.

        Log records go to the configured log file, never to the console.
        """
        try:
            os.makedirs(self.config.log_dir, exist_ok=True)
            log_file = self.config.log_file.resolve()
            logging.basicConfig(
                filename=str(log_file),
                level=getattr(logging, self.config.log_level),
                format='%(asctime)s - %(levelname)s - %(message)s',
                force=True
            )
            logging.info(f"Logging initialized at: {log_file}")
        except Exception as e:
            print(f"Error setting up logging: {e}")
            raise

    ########################
    #  Observers           #
    ########################

    def add_observer(self, observer: ResultObserver) -> None:
        self.observers.append(observer)
        logging.info(f"Added observer: {observer.__class__.__name__}")

    def remove_observer(self, observer: ResultObserver) -> None:
        self.observers.remove(observer)
        logging.info(f"Removed observer: {observer.__class__.__name__}")

    def notify_observers(self, result: DirectiveResult) -> None:
        for observer in self.observers:
            observer.update(result)

    def record(self, result: DirectiveResult) -> DirectiveResult:
        """Store a result and notify every observer."""
        self.results.append(result)
        self.notify_observers(result)
        return result

    ########################
    #  Helpers             #
    ########################

    def _fuel(self, fuel: Optional[int]) -> int:
        return self.config.fuel if fuel is None else fuel

    def read_source(self, path: PathLike) -> str:
        return Path(path).read_text(encoding=self.config.default_encoding)

    def _judge(self, job: CheckJob, effect: Optional[Effect], fuel: int) -> Effect:
        """
        Run one check job: context, declared type, then the term.

        Returns:
            Effect: The effect the job was checked at.

        Raises:
            TypeCheckError: If a judgment fails or the inferred type differs
                from the declared one.
        """
        theta = effect or job.effect
        checker = TypeChecker(CheckConfig(join_fuel=fuel))
        checker.wf_context(job.gamma)
        checker.wf_type(job.gamma, job.type)
        inferred = checker.infer(job.gamma, job.term, theta)
        if inferred != job.type:
            raise TypeCheckError(Diagnostic(
                "check", 0, DiagnosticKind.TYPE_MISMATCH, (),
                "inferred type differs from the declared type",
                pretty(job.type), pretty(inferred),
            ))
        return theta

    ########################
    #  Pipelines           #
    ########################

    def check_program(self, path: PathLike, effect: Optional[Effect] = None,
                      fuel: Optional[int] = None) -> List[DirectiveResult]:
        """
        Typecheck every ``check`` directive of a program.

        Args:
            path: The ``.teqt`` file.
            effect: Overrides the effect written in each directive.
            fuel: Step bound for ``join``; the configured fuel when omitted.

        Returns:
            List[DirectiveResult]: One result per check, in file order.

        Raises:
            ParseError: If the file does not parse.
            ValidationError: If a name is undefined or defined twice.
        """
        source = str(path)
        jobs = resolve_program(parse_program(self.read_source(path), source))
        fuel = self._fuel(fuel)
        results = []
        for job in jobs:
            if not isinstance(job, CheckJob):
                continue
            try:
                theta = self._judge(job, effect, fuel)
                result = DirectiveResult("check", source, job.name, OK,
                                         f"{job.name} : {pretty(job.declared)}")
                logging.info(f"Checked {job.name} at {theta}")
            except _JUDGMENT_ERRORS as e:
                result = DirectiveResult("check", source, job.name, FAILED, detail=str(e))
            results.append(self.record(result))
        return results

    def evaluate_program(self, path: PathLike, fuel: Optional[int] = None) -> List[DirectiveResult]:
        """
        Erase and reduce the term named by each ``eval`` directive.

        The output line is ``name = <final term>  [<n> steps]``, with
        ``(fuel exhausted)`` appended when the bound cut reduction short.
        """
        source = str(path)
        jobs = resolve_program(parse_program(self.read_source(path), source))
        fuel = self._fuel(fuel)
        results = []
        for job in jobs:
            if not isinstance(job, EvalJob):
                continue
            trace = reduce_trace(erase_term(job.term), fuel)
            output = f"{job.name} = {pretty(trace.final)}  [{trace.steps} steps]"
            if trace.fuel_exhausted:
                output += " (fuel exhausted)"
            logging.info(f"Evaluated {job.name} in {trace.steps} steps")
            results.append(self.record(DirectiveResult("eval", source, job.name, OK, output)))
        return results

    def erase_program(self, path: PathLike) -> List[DirectiveResult]:
        """Print the erasure of every definition; other definitions stay referenced by name."""
        source = str(path)
        program = parse_program(self.read_source(path), source)
        results = []
        for definition in program.directives:
            if isinstance(definition, Definition):
                output = f"{definition.name} = {pretty(erase_term(definition.term))}"
                results.append(self.record(
                    DirectiveResult("erase", source, definition.name, OK, output)))
        return results

    def translate_program(self, path: PathLike, output: Optional[PathLike] = None,
                          fuel: Optional[int] = None) -> List[DirectiveResult]:
        """
        Emit the W' sequent of every ``obligation`` whose check is accepted.

        The sequents are also written, blank-line separated, to ``output``
        (by default the input path with the ``.obl`` suffix).

        Returns:
            List[DirectiveResult]: One result per obligation; rejected checks
            yield failed results and no sequent.
        """
        source = str(path)
        jobs = resolve_program(parse_program(self.read_source(path), source))
        fuel = self._fuel(fuel)
        results = []
        sequents: List[str] = []
        for job in jobs:
            if not isinstance(job, ObligationJob):
                continue
            try:
                theta = self._judge(job.check, None, fuel)
            except _JUDGMENT_ERRORS as e:
                results.append(self.record(
                    DirectiveResult("translate", source, job.name, FAILED, detail=str(e))))
                continue
            seq = self.obligation(job.check, theta)
            text = pretty(seq)
            sequents.append(text)
            results.append(self.record(DirectiveResult("translate", source, job.name, OK, text)))
        target = Path(output) if output is not None else Path(path).with_suffix(".obl")
        target.write_text("\n\n".join(sequents) + "\n" if sequents else "",
                          encoding=self.config.default_encoding)
        logging.info(f"Wrote {len(sequents)} obligations to {target}")
        return results

    @staticmethod
    def obligation(job: CheckJob, effect: Effect) -> Sequent:
        """The sequent an accepted check must satisfy."""
        return make_obligation(job.gamma, erase_term(job.term), erase_type(job.type), effect)

    def check_script(self, path: PathLike, fuel: Optional[int] = None) -> List[DirectiveResult]:
        """
        Check a ``.wp`` proof script.

        Returns:
            List[DirectiveResult]: A single result, ``<file>: proved <goal>`` on success.
        """
        source = str(path)
        seq, proof = parse_proof(self.read_source(path))
        name = Path(path).name
        try:
            check_proof(seq, proof, CheckConfig(join_fuel=self._fuel(fuel)))
            result = DirectiveResult("wp-check", source, name, OK,
                                     f"{source}: proved {pretty(seq.goal)}")
        except _JUDGMENT_ERRORS as e:
            result = DirectiveResult("wp-check", source, name, FAILED, detail=str(e))
        return [self.record(result)]

    ########################
    #  Reports             #
    ########################

    def save_report(self, path: Optional[PathLike] = None) -> Path:
        """
        Save all results to a CSV file using pandas.

        Args:
            path: Target file; the configured report file when omitted.

        Returns:
            Path: The file written.

        Raises:
            TeqError: If the report cannot be written.
        """
        target = Path(path) if path is not None else (self.report_file or self.config.report_file)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            df = pd.DataFrame([r.to_dict() for r in self.results], columns=list(FIELDS))
            df.to_csv(target, index=False)
            logging.info(f"Report saved to {target}")
            return target
        except OSError as e:
            logging.error(f"Failed to save report: {e}")
            raise TeqError(f"Failed to save report: {e}") from e

    def load_report(self, path: Optional[PathLike] = None) -> List[DirectiveResult]:
        """
        Read a report written by ``save_report``.

        Returns:
            List[DirectiveResult]: The stored results, in order.

        Raises:
            TeqError: If the file cannot be read.
        """
        source = Path(path) if path is not None else (self.report_file or self.config.report_file)
        try:
            df = pd.read_csv(source, dtype=str, keep_default_na=False)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            logging.error(f"Failed to load report: {e}")
            raise TeqError(f"Failed to load report: {e}") from e
        if df.empty:
            logging.info("Loaded empty report")
            return []
        return [DirectiveResult.from_dict(row.to_dict()) for _, row in df.iterrows()]
