"""Random state preparation, interception and the relay's Bell measurement."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from multiparty_qhe.quantum.measurement import (
    BellState,
    measure_bell_basis,
    measure_computational,
    measure_x_basis,
)
from multiparty_qhe.quantum.state import StateVector, apply_gate, new_basis_state, tensor


class Basis(StrEnum):
    Z = "Z"
    X = "X"


def _basis_state(basis: Basis, bit: int) -> StateVector:
    state = new_basis_state(1, str(bit))
    return apply_gate(state, "H", 0) if basis is Basis.X else state


@dataclass(frozen=True, eq=False)
class PreparedQubit:
    """One of |0>, |1>, |+>, |->: (Z, 0), (Z, 1), (X, 0), (X, 1)."""

    basis: Basis
    bit: int
    state: StateVector

    def __post_init__(self):
        object.__setattr__(self, "basis", Basis(self.basis))
        if self.bit not in (0, 1):
            raise ValueError(f"prepared bit must be 0 or 1, got {self.bit}")
        expected = _basis_state(self.basis, self.bit).amplitudes
        if not np.allclose(self.state.amplitudes, expected, atol=1e-12):
            raise ValueError(f"state does not match ({self.basis}, {self.bit})")

    @classmethod
    def of(cls, basis: Basis | str, bit: int) -> PreparedQubit:
        basis = Basis(basis)
        return cls(basis, bit, _basis_state(basis, bit))

    def __repr__(self) -> str:
        return f"PreparedQubit({self.basis}, {self.bit})"


_BASES = (Basis.Z, Basis.X)


def prepare_qubits(count: int, rng: np.random.Generator) -> list[PreparedQubit]:
    """`count` qubits with uniform basis and bit."""
    bases = rng.integers(0, 2, size=count)
    bits = rng.integers(0, 2, size=count)
    return [
        PreparedQubit.of(_BASES[int(basis)], int(bit))
        for basis, bit in zip(bases, bits, strict=True)
    ]


def encode_bits(qubits: Sequence[PreparedQubit]) -> str:
    """|0>, |+> -> "0"; |1>, |-> -> "1"."""
    return "".join(str(q.bit) for q in qubits)


def intercept_resend(state: StateVector, rng: np.random.Generator) -> PreparedQubit:
    """Measure a qubit in flight in a random basis and resend the state read."""
    basis = _BASES[int(rng.integers(2))]
    measure = measure_x_basis if basis is Basis.X else measure_computational
    bit, _ = measure(state, 0, rng)
    return PreparedQubit.of(basis, bit)


def relay_bell_measurements(
    client_states: Sequence[StateVector],
    center_states: Sequence[StateVector],
    rng: np.random.Generator,
) -> list[BellState]:
    """Joint Bell measurement of each arriving (client, center) pair, client qubit on wire 0.

    The relay sees only the qubits, never the preparation choices.
    """
    if len(client_states) != len(center_states):
        raise ValueError(f"round counts differ: {len(client_states)} and {len(center_states)}")
    outcomes = []
    for client, center in zip(client_states, center_states, strict=True):
        outcome, _ = measure_bell_basis(tensor(client, center), (0, 1), rng)
        outcomes.append(outcome)
    return outcomes
