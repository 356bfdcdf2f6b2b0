"""End-to-end key exchange between a client and the key center through an untrusted relay."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import structlog

from multiparty_qhe import settings
from multiparty_qhe.encryption.keys import QotpKey
from multiparty_qhe.keyexchange.qubits import (
    intercept_resend,
    prepare_qubits,
    relay_bell_measurements,
)
from multiparty_qhe.keyexchange.sifting import (
    QberReport,
    SiftedRound,
    Verdict,
    choose_sample,
    estimate_qber,
    sift,
)
from multiparty_qhe.utils.decorators import tracker

LOGGER = structlog.get_logger(__name__)


class Eavesdropper(StrEnum):
    NONE = "none"
    INTERCEPT_RESEND = "intercept_resend"


class InsufficientRounds(RuntimeError):
    """Not enough sifted bits left to build the requested key material."""


class ExchangeAborted(RuntimeError):
    """The disclosed sample's error rate exceeded the threshold."""

    def __init__(self, report: QberReport):
        self.report = report
        super().__init__(f"key exchange aborted: {report}")


@dataclass(frozen=True)
class ExchangeOutcome:
    client_key: str
    center_key: str
    report: QberReport
    kept_rounds: int
    total_rounds: int


def reconcile(bits: str) -> str:
    """Error correction and privacy amplification, both identity passes."""
    LOGGER.debug("error_correction_passthrough", bits=len(bits))
    LOGGER.debug("privacy_amplification_passthrough", bits=len(bits))
    return bits


def finalize_key(remaining: list[SiftedRound]) -> tuple[str, str]:
    client_key = reconcile("".join(str(r.client_bit) for r in remaining))
    center_key = reconcile("".join(str(r.center_bit) for r in remaining))
    return client_key, center_key


@tracker(ulogger=LOGGER, level="debug")
def exchange(
    rounds: int,
    eavesdropper: Eavesdropper | str = Eavesdropper.NONE,
    threshold: float = settings.QBER_THRESHOLD,
    sample_fraction: float = settings.SAMPLE_FRACTION,
    rng: np.random.Generator | None = None,
    key_bits: int = 1,
) -> ExchangeOutcome:
    """Run the exchange and return both parties' keys with the QBER report."""
    if rounds < 1:
        raise ValueError("a key exchange needs at least one round")
    if not 0 < sample_fraction < 1:
        raise ValueError(f"sample_fraction must be in (0, 1), got {sample_fraction}")
    eavesdropper = Eavesdropper(eavesdropper)
    rng = rng if rng is not None else np.random.default_rng()
    # Fixed child streams keep honest draws identical with and without an eavesdropper.
    client_rng, center_rng, relay_rng, sample_rng, eve_rng = rng.spawn(5)

    client_qubits = prepare_qubits(rounds, client_rng)
    center_qubits = prepare_qubits(rounds, center_rng)
    arriving = [q.state for q in client_qubits]
    if eavesdropper is Eavesdropper.INTERCEPT_RESEND:
        arriving = [intercept_resend(state, eve_rng).state for state in arriving]
    outcomes = relay_bell_measurements(arriving, [q.state for q in center_qubits], relay_rng)

    sifted = sift(client_qubits, center_qubits, outcomes)
    if not sifted:
        raise InsufficientRounds(f"no round survived sifting out of {rounds}")
    report, remaining = estimate_qber(
        sifted, choose_sample(len(sifted), sample_fraction, sample_rng), threshold
    )
    LOGGER.info(
        "qber_estimated",
        rounds=rounds,
        kept=len(sifted),
        rate=report.rate,
        verdict=str(report.verdict),
    )
    if report.verdict is Verdict.ABORT:
        raise ExchangeAborted(report)
    if len(remaining) < key_bits:
        raise InsufficientRounds(f"{len(remaining)} key bits left, {key_bits} needed")

    client_key, center_key = finalize_key(remaining)
    return ExchangeOutcome(client_key, center_key, report, len(sifted), rounds)


def run_exchange(
    rounds: int,
    eavesdropper: Eavesdropper | str = Eavesdropper.NONE,
    threshold: float = settings.QBER_THRESHOLD,
    sample_fraction: float = settings.SAMPLE_FRACTION,
    rng: np.random.Generator | None = None,
) -> tuple[str, QberReport]:
    """Shared key bits (the client's copy) and the QBER report."""
    outcome = exchange(rounds, eavesdropper, threshold, sample_fraction, rng)
    return outcome.client_key, outcome.report


def derive_server_keys(raw_key: str, num_servers: int, bits_per_key: int) -> list[QotpKey]:
    """Cut consecutive `bits_per_key` slices into keys: first half a, second half b."""
    if bits_per_key < 2 or bits_per_key % 2:
        raise ValueError(f"bits_per_key must be a positive even number, got {bits_per_key}")
    needed = bits_per_key * num_servers
    if len(raw_key) < needed:
        raise InsufficientRounds(f"{len(raw_key)} raw key bits, {needed} needed")
    half = bits_per_key // 2
    keys = []
    for j in range(num_servers):
        chunk = raw_key[j * bits_per_key : (j + 1) * bits_per_key]
        keys.append(QotpKey(chunk[:half], chunk[half:]))
    return keys
