"""Density matrices and the key-averaged ciphertext."""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass
from functools import reduce

import numpy as np

from multiparty_qhe import settings
from multiparty_qhe.quantum.errors import InvalidInput, TooLarge
from multiparty_qhe.quantum.gates import pauli_operator
from multiparty_qhe.quantum.state import STATE_TOL, StateVector


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 2^n x 2^n matrix."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidInput(f"density matrix must be square, got {entries.shape}")
        size = entries.shape[0]
        if size == 0 or size & (size - 1):
            raise InvalidInput(f"dimension {size} is not a power of two")
        if np.max(np.abs(entries - entries.conj().T)) > STATE_TOL:
            raise InvalidInput("density matrix is not Hermitian")
        if abs(np.trace(entries) - 1) > STATE_TOL:
            raise InvalidInput("density matrix does not have unit trace")
        if np.min(np.linalg.eigvalsh(entries)) < -STATE_TOL:
            raise InvalidInput("density matrix is not positive semidefinite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def num_qubits(self) -> int:
        return self.entries.shape[0].bit_length() - 1

    @classmethod
    def from_state(cls, state: StateVector) -> DensityMatrix:
        return cls(np.outer(state.amplitudes, state.amplitudes.conj()))

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)

    def max_deviation_from_maximally_mixed(self) -> float:
        """Largest entrywise distance to I / 2^n."""
        size = self.entries.shape[0]
        return float(np.max(np.abs(self.entries - np.eye(size) / size)))


def all_pauli_keys(num_qubits: int) -> Iterable[tuple[str, str]]:
    """Every (a, b) key pair of `num_qubits` bits each: 4^n pairs."""
    labels = ["".join(bits) for bits in itertools.product("01", repeat=num_qubits)]
    for a in labels:
        for b in labels:
            yield a, b


def pauli_string_operator(a: str, b: str) -> np.ndarray:
    """Tensor product over wires of X^a(w) Z^b(w)."""
    factors = [pauli_operator(int(x), int(z)) for x, z in zip(a, b, strict=True)]
    return reduce(np.kron, factors)


def mix_over_keys(
    plain: StateVector, keys: Iterable[tuple[str, str]] | None = None
) -> DensityMatrix:
    """Average of X^a Z^b |plain><plain| (X^a Z^b)^dagger over `keys` (all 4^n by default)."""
    n = plain.num_qubits
    if n > settings.MIX_MAX_QUBITS:
        raise TooLarge(
            f"key averaging over {n} qubits exceeds the cap of {settings.MIX_MAX_QUBITS}"
        )
    rho = np.outer(plain.amplitudes, plain.amplitudes.conj())
    total = np.zeros_like(rho)
    count = 0
    for a, b in (keys if keys is not None else all_pauli_keys(n)):
        if len(a) != n or len(b) != n:
            raise InvalidInput(f"key ({a}, {b}) does not match {n} qubits")
        operator = pauli_string_operator(a, b)
        total += operator @ rho @ operator.conj().T
        count += 1
    if count == 0:
        raise InvalidInput("no keys to average over")
    return DensityMatrix(total / count)
