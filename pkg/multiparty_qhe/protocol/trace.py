"""Newline-delimited JSON traces."""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from multiparty_qhe.protocol.errors import TraceWriteError
from multiparty_qhe.quantum.state import StateVector

DIGEST_CHARS = 16
AMPLITUDE_DIGITS = 12


@dataclass(frozen=True)
class TraceRecord:
    step: int
    phase: str
    sender: str
    recipient: str
    payload_kind: str
    payload_digest: str

    def to_json(self) -> str:
        # Field order is part of the format.
        return json.dumps(
            {
                "step": self.step,
                "phase": self.phase,
                "from": self.sender,
                "to": self.recipient,
                "payload_kind": self.payload_kind,
                "payload_digest": self.payload_digest,
            },
            separators=(",", ":"),
        )


def _round(value: float) -> float:
    # Adding 0.0 folds -0.0 into 0.0.
    return round(float(value), AMPLITUDE_DIGITS) + 0.0


def amplitude_pairs(state: StateVector) -> list[list[float]]:
    """Amplitudes as (re, im) pairs rounded for digesting."""
    return [[_round(z.real), _round(z.imag)] for z in np.asarray(state.amplitudes)]


def payload_digest(content: dict) -> str:
    canonical = json.dumps(content, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:DIGEST_CHARS]


def write_trace(result, sink: TextIO) -> int:
    """Write one JSON line per trace record of `result` (or of an iterable of records).

    Returns the record count.
    """
    records: Iterable[TraceRecord] = getattr(result, "trace", result)
    count = 0
    try:
        for record in records:
            sink.write(record.to_json() + "\n")
            count += 1
        sink.flush()
    except OSError as exc:
        raise TraceWriteError(f"could not write trace: {exc}") from exc
    return count
