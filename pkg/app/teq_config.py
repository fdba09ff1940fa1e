########################
#  Toolchain Config    #
########################

from dataclasses import dataclass
import logging
from pathlib import Path
import os
from typing import Optional

from dotenv import load_dotenv

from app.exceptions import ConfigurationError

# Load environment variables from a .env file into the program's environment
load_dotenv()

DEFAULT_FUEL = 1000


def get_project_root() -> Path:
    """
    Get the project root directory.

    Returns:
        Path: The directory containing the ``app`` package.
    """
    # app/teq_config.py -> project root
    current_file = Path(__file__)
    return current_file.parent.parent


@dataclass
class TeqConfig:
    """
    Toolchain configuration settings.

    Holds the reduction fuel shared by join checking, evaluation and the
    Pv_OpSem rule, the file encoding used for sources, and where logs and
    CSV reports are written. Every setting can come from a ``TEQ_*``
    environment variable or be passed to the constructor; none is required.
    """

    def __init__(
        self,
        base_dir: Optional[Path] = None,
        fuel: Optional[int] = None,
        default_encoding: Optional[str] = None,
        log_level: Optional[str] = None
    ):
        """
        Initialize configuration with environment variables and defaults.

        Args:
            base_dir (Optional[Path], optional): Base directory for logs and reports. Defaults to None.
            fuel (Optional[int], optional): Reduction step bound. Defaults to None.
            default_encoding (Optional[str], optional): Encoding for source files. Defaults to None.
            log_level (Optional[str], optional): Name of the logging level. Defaults to None.
        """
        project_root = get_project_root()
        self.base_dir = base_dir or Path(
            os.getenv('TEQ_BASE_DIR', str(project_root))
        ).resolve()

        # 0 is a legal fuel, so test against None rather than truthiness
        self.fuel = fuel if fuel is not None else int(
            os.getenv('TEQ_FUEL', str(DEFAULT_FUEL))
        )

        self.default_encoding = default_encoding or os.getenv(
            'TEQ_DEFAULT_ENCODING', 'utf-8'
        )

        self.log_level = (log_level or os.getenv('TEQ_LOG_LEVEL', 'INFO')).upper()

    @property
    def log_dir(self) -> Path:
        """
        Get log directory path.

        Returns:
            Path: The log directory path.
        """
        return Path(os.getenv(
            'TEQ_LOG_DIR',
            str(self.base_dir / "logs")
        )).resolve()

    @property
    def log_file(self) -> Path:
        """
        Get log file path.

        Returns:
            Path: The log file path.
        """
        return Path(os.getenv(
            'TEQ_LOG_FILE',
            str(self.log_dir / "teq.log")
        )).resolve()

    @property
    def report_dir(self) -> Path:
        """
        Get report directory path.

        Returns:
            Path: Directory where CSV reports go when no explicit path is given.
        """
        return Path(os.getenv(
            'TEQ_REPORT_DIR',
            str(self.base_dir / "reports")
        )).resolve()

    @property
    def report_file(self) -> Path:
        """
        Get the default report file path.

        Returns:
            Path: The CSV report path.
        """
        return Path(os.getenv(
            'TEQ_REPORT_FILE',
            str(self.report_dir / "teq_report.csv")
        )).resolve()

    def validate(self) -> None:
        """
        Validate configuration settings.

        Raises:
            ConfigurationError: If any configuration parameter is invalid.
        """
        if self.fuel < 0:
            raise ConfigurationError("fuel must be non-negative")
        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ConfigurationError(f"unknown log level: {self.log_level}")
        if not self.default_encoding:
            raise ConfigurationError("default_encoding must not be empty")
