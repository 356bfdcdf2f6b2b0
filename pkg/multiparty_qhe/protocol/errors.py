from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from multiparty_qhe.keyexchange.sifting import QberReport


class ScenarioError(Exception):
    """Base class for scenario failures."""


class InvalidConfig(ScenarioError, ValueError):
    """Scenario configuration rejected; the message names the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ScenarioAborted(ScenarioError):
    """Key generation aborted the run."""

    def __init__(self, message: str, report: QberReport | None = None):
        self.report = report
        super().__init__(message)


class ChurnRejected(ScenarioError):
    """Churn event at a phase where it is not allowed."""


class OwnershipViolation(ScenarioError):
    """A party touched a register it does not hold."""


class ChannelClosed(ScenarioError):
    """Message addressed to or from a departed server."""


class TraceWriteError(ScenarioError, OSError):
    """Trace sink failed."""
