"""
Runtime settings for the simulator.

Values come from environment variables, optionally loaded from a `.env` file at
the repository root (see `.env.template`).
"""

import logging
import os
import sys
from pathlib import Path

import structlog
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent

# Load .env from the project root (where pyproject.toml lives)
_load_env = BASE_DIR.parent / ".env"
if _load_env.exists():
    load_dotenv(_load_env)


def _get_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc


def _get_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be a number, got {raw!r}") from exc


# LOG_LEVEL: structlog filtering level; logs always go to stderr.
LOG_LEVEL = os.environ.get("QHE_LOG_LEVEL", "WARNING").upper()

# Statevector size cap. Dense cost is 2^n amplitudes.
MAX_QUBITS = _get_int("QHE_MAX_QUBITS", 16)
# Key-averaged density matrix cap. Cost grows as 8^n.
MIX_MAX_QUBITS = _get_int("QHE_MIX_MAX_QUBITS", 4)

# Key exchange defaults
QBER_THRESHOLD = _get_float("QHE_QBER_THRESHOLD", 0.11)
SAMPLE_FRACTION = _get_float("QHE_SAMPLE_FRACTION", 0.25)

DEFAULT_SHOTS = _get_int("QHE_DEFAULT_SHOTS", 4096)
# Seed of the built-in four-qubit experiment (its outcome does not depend on it,
# only the sampled histogram does).
EXPERIMENT_SEED = _get_int("QHE_EXPERIMENT_SEED", 20240401)


def configure_logging(level: str | None = None) -> None:
    """Route structlog output to stderr so stdout stays reserved for command output."""
    level_name = (level or LOG_LEVEL).upper()
    numeric_level = getattr(logging, level_name, logging.WARNING)
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.KeyValueRenderer(key_order=["level", "event"]),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
