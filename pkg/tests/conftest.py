import random
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.mock import PropertyMock, patch

import pytest

from app.teq_config import TeqConfig, get_project_root
from app.toolchain import Toolchain

CORPUS = get_project_root() / "corpus"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def rng():
    # fixed seed so failures reproduce
    return random.Random(20240917)


# Fixture to initialize a TeqConfig whose log and report paths live in a temporary directory
@pytest.fixture
def config():
    with TemporaryDirectory() as temp_dir:
        temp_path = Path(temp_dir)
        with patch.object(TeqConfig, 'log_dir', new_callable=PropertyMock) as mock_log_dir, \
             patch.object(TeqConfig, 'log_file', new_callable=PropertyMock) as mock_log_file, \
             patch.object(TeqConfig, 'report_dir', new_callable=PropertyMock) as mock_report_dir, \
             patch.object(TeqConfig, 'report_file', new_callable=PropertyMock) as mock_report_file:
            mock_log_dir.return_value = temp_path / "logs"
            mock_log_file.return_value = temp_path / "logs/teq.log"
            mock_report_dir.return_value = temp_path / "reports"
            mock_report_file.return_value = temp_path / "reports/teq_report.csv"
            yield TeqConfig(base_dir=temp_path, fuel=1000, log_level="DEBUG")


@pytest.fixture
def toolchain(config):
    return Toolchain(config=config)
