"""Pytest configuration and fixtures."""
import sys
from pathlib import Path

import numpy as np
import pytest
from pytest_factoryboy import register

# Ensure project root is on path so multiparty_qhe is found
ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from multiparty_qhe import settings  # noqa: E402
from multiparty_qhe.acceptance.experiment import (  # noqa: E402
    four_qubit_config,
    run_four_qubit_experiment,
)
from tests.factories import ChurnEventFactory, QotpKeyFactory, ScenarioConfigFactory  # noqa: E402

register(QotpKeyFactory)
register(ScenarioConfigFactory)
register(ChurnEventFactory)

SCENARIO_DIR = ROOT / "scenarios"


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    """Keep structlog on stderr at WARNING for the whole session."""
    settings.configure_logging("WARNING")


@pytest.fixture
def debug_logging():
    """Lower the level to DEBUG for tests that capture debug events."""
    settings.configure_logging("DEBUG")
    yield
    settings.configure_logging("WARNING")


@pytest.fixture
def rng():
    return np.random.default_rng(20240401)


@pytest.fixture
def experiment_config():
    return four_qubit_config(seed=7, shots=1024)


@pytest.fixture(scope="session")
def experiment_report():
    return run_four_qubit_experiment(shots=4096, seed=settings.EXPERIMENT_SEED)


@pytest.fixture
def scenario_dir():
    return SCENARIO_DIR
