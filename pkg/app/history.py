########################
#  Result Observers    #
########################

from abc import ABC, abstractmethod
import logging
from typing import Any

from app.directive_result import DirectiveResult


class ResultObserver(ABC):
    """
    Abstract base class for toolchain observers.

    Observers are notified each time the toolchain records a result.
    """

    @abstractmethod
    def update(self, result: DirectiveResult) -> None:
        """
        Handle a new result.

        Args:
            result (DirectiveResult): The result that was recorded.
        """
        pass  # pragma: no cover


class LoggingObserver(ResultObserver):
    """Observer that writes every result to the log file."""

    def update(self, result: DirectiveResult) -> None:
        if result is None:
            raise AttributeError("Result cannot be None")
        if result.ok:
            logging.info(f"{result.command} {result.source}: {result.name} accepted")
        else:
            logging.warning(f"{result.command} {result.source}: {result.name} rejected: {result.detail}")


class ReportObserver(ResultObserver):
    """
    Observer that keeps the CSV report up to date.

    After every result it asks the toolchain to save its report, provided a
    report file has been configured.
    """

    def __init__(self, toolchain: Any):
        """
        Initialize the ReportObserver.

        Args:
            toolchain (Any): Must have 'report_file' and 'save_report' attributes.

        Raises:
            TypeError: If the toolchain lacks the required attributes.
        """
        if not hasattr(toolchain, 'report_file') or not hasattr(toolchain, 'save_report'):
            raise TypeError("Toolchain must have 'report_file' and 'save_report' attributes")
        self.toolchain = toolchain

    def update(self, result: DirectiveResult) -> None:
        if result is None:
            raise AttributeError("Result cannot be None")
        if self.toolchain.report_file is not None:
            self.toolchain.save_report()
            logging.info("Report updated")
