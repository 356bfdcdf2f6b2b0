"""Sifting and error-rate estimation."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from multiparty_qhe.keyexchange.qubits import Basis, PreparedQubit
from multiparty_qhe.quantum.measurement import BellState


class Verdict(StrEnum):
    ACCEPT = "accept"
    ABORT = "abort"


@dataclass(frozen=True)
class SiftedRound:
    index: int
    basis: Basis
    client_bit: int
    center_bit: int

    @property
    def agrees(self) -> bool:
        return self.client_bit == self.center_bit


@dataclass(frozen=True)
class QberReport:
    sampled_rounds: int
    errors: int
    threshold: float

    def __post_init__(self):
        if self.sampled_rounds < 1:
            raise ValueError("a QBER estimate needs at least one sampled round")
        if not 0 <= self.errors <= self.sampled_rounds:
            raise ValueError(f"{self.errors} errors out of {self.sampled_rounds} sampled rounds")

    @property
    def rate(self) -> float:
        return self.errors / self.sampled_rounds

    @property
    def verdict(self) -> Verdict:
        return Verdict.ABORT if self.rate > self.threshold else Verdict.ACCEPT

    def to_dict(self) -> dict:
        return {
            "sampled_rounds": self.sampled_rounds,
            "errors": self.errors,
            "rate": self.rate,
            "threshold": self.threshold,
            "verdict": str(self.verdict),
        }

    def __str__(self) -> str:
        return (
            f"sampled={self.sampled_rounds} errors={self.errors} rate={self.rate:.4f} "
            f"threshold={self.threshold:.4f} verdict={self.verdict}"
        )


def center_flips(basis: Basis, outcome: BellState) -> bool:
    """In the X basis a PHI- outcome anticorrelates the two bits."""
    return basis is Basis.X and outcome is BellState.PHI_MINUS


def sifted_positions(
    client_bases: Sequence[Basis], center_bases: Sequence[Basis], outcomes: Sequence[BellState]
) -> list[int]:
    """Rounds with matching bases and a PHI+/PHI- outcome; PSI rounds are dropped."""
    return [
        index
        for index, (ours, theirs, outcome) in enumerate(
            zip(client_bases, center_bases, outcomes, strict=True)
        )
        if ours is theirs and outcome.is_phi
    ]


def sift(
    client_qubits: Sequence[PreparedQubit],
    center_qubits: Sequence[PreparedQubit],
    outcomes: Sequence[BellState],
) -> list[SiftedRound]:
    """Sifted rounds with the center's bit corrected by the flip rule."""
    positions = sifted_positions(
        [q.basis for q in client_qubits], [q.basis for q in center_qubits], outcomes
    )
    kept = []
    for index in positions:
        client, center, outcome = client_qubits[index], center_qubits[index], outcomes[index]
        center_bit = center.bit ^ int(center_flips(center.basis, outcome))
        kept.append(SiftedRound(index, client.basis, client.bit, center_bit))
    return kept


def sample_size(kept: int, sample_fraction: float) -> int:
    return max(1, math.ceil(kept * sample_fraction))


def choose_sample(kept: int, sample_fraction: float, rng: np.random.Generator) -> list[int]:
    """Positions (into the sifted list) of the disclosed rounds, ascending."""
    size = sample_size(kept, sample_fraction)
    return sorted(int(i) for i in rng.choice(kept, size=size, replace=False))


def estimate_qber(
    sifted: Sequence[SiftedRound], sample_positions: Sequence[int], threshold: float
) -> tuple[QberReport, list[SiftedRound]]:
    """Compare the disclosed rounds; return the report and the undisclosed rounds."""
    disclosed = set(sample_positions)
    errors = sum(1 for pos in disclosed if not sifted[pos].agrees)
    remaining = [r for pos, r in enumerate(sifted) if pos not in disclosed]
    return QberReport(len(disclosed), errors, threshold), remaining
