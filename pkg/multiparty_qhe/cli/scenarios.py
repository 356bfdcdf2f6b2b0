"""Loading and running scenario files on behalf of the commands."""

from __future__ import annotations

import dataclasses
from pathlib import Path

from multiparty_qhe.cli.base import CommandError, ExitCode
from multiparty_qhe.protocol.errors import (
    ChurnRejected,
    InvalidConfig,
    ScenarioAborted,
    TraceWriteError,
)
from multiparty_qhe.protocol.scenario import ScenarioResult, run_scenario
from multiparty_qhe.protocol.scenario_config import ScenarioConfig, load_scenario
from multiparty_qhe.protocol.trace import write_trace


def load_config(path: str, seed: int, shots: int | None = None) -> ScenarioConfig:
    """Read a scenario file; `seed` always wins over the file, `shots` when given."""
    try:
        config = load_scenario(path)
        return dataclasses.replace(
            config, seed=seed, shots=config.shots if shots is None else shots
        )
    except InvalidConfig as exc:
        raise CommandError(f"invalid config: {exc}", ExitCode.CONFIG) from exc


def run_config(config: ScenarioConfig) -> ScenarioResult:
    try:
        return run_scenario(config)
    except ScenarioAborted as exc:
        raise CommandError(f"aborted: {exc}", ExitCode.ABORTED) from exc
    except (InvalidConfig, ChurnRejected) as exc:
        raise CommandError(f"invalid config: {exc}", ExitCode.CONFIG) from exc


def save_trace(result: ScenarioResult, path: str) -> int:
    try:
        with Path(path).open("w", encoding="utf-8") as sink:
            return write_trace(result, sink)
    except OSError as exc:
        # TraceWriteError is an OSError too.
        if not isinstance(exc, TraceWriteError):
            exc = TraceWriteError(f"could not write trace to {path}: {exc.strerror or exc}")
        raise CommandError(str(exc), ExitCode.CONFIG) from exc


def run_exit_code(result: ScenarioResult) -> ExitCode:
    audit_ok = result.audit is None or result.audit.passed
    return ExitCode.OK if result.verified and audit_ok else ExitCode.VERIFICATION_FAILED
