"""Projective measurements: computational, X, Bell and GHZ bases."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from multiparty_qhe.quantum.errors import ImpossiblePostSelection, InvalidInput
from multiparty_qhe.quantum.state import StateVector, apply_gate, check_wires

# Branches below this squared norm count as impossible.
_ZERO_PROBABILITY = 1e-20


@dataclass(frozen=True)
class GhzOutcome:
    """One eigenstate (|p> + sign |not p>)/sqrt(2) of the k-particle GHZ basis.

    `bit_pattern` always starts with 0, so the 2^k outcomes are the
    2^(k-1) patterns times the two signs.
    """

    bit_pattern: str
    sign: int

    def __post_init__(self):
        if not self.bit_pattern or self.bit_pattern[0] != "0":
            raise InvalidInput(f"GHZ bit pattern must start with 0, got {self.bit_pattern!r}")
        if any(c not in "01" for c in self.bit_pattern):
            raise InvalidInput(f"GHZ bit pattern must be binary, got {self.bit_pattern!r}")
        if self.sign not in (1, -1):
            raise InvalidInput(f"GHZ sign must be +1 or -1, got {self.sign}")

    @property
    def num_particles(self) -> int:
        return len(self.bit_pattern)

    @property
    def secret_bit(self) -> int:
        """Parity of the X-basis outcomes on this eigenstate: 0 for +, 1 for -."""
        return 0 if self.sign == 1 else 1

    @property
    def complement(self) -> str:
        return "".join("1" if c == "0" else "0" for c in self.bit_pattern)

    def vector(self) -> np.ndarray:
        """Amplitudes of the eigenstate on its own k wires."""
        size = 2**self.num_particles
        amplitudes = np.zeros(size, dtype=complex)
        amplitudes[int(self.bit_pattern, 2)] = 1 / math.sqrt(2)
        amplitudes[int(self.complement, 2)] = self.sign / math.sqrt(2)
        return amplitudes

    def state(self) -> StateVector:
        return StateVector(self.vector())

    def __str__(self) -> str:
        sign = "+" if self.sign == 1 else "-"
        return f"{self.bit_pattern}{sign}"


# Eigenstates 1..8 of the three-particle GHZ basis in their conventional order.
# Eigenstates 4 and 8 equal the listed outcome up to a global phase of -1.
THREE_PARTICLE_EIGENSTATES: tuple[GhzOutcome, ...] = (
    GhzOutcome("000", 1),
    GhzOutcome("000", -1),
    GhzOutcome("011", 1),
    GhzOutcome("011", -1),
    GhzOutcome("010", 1),
    GhzOutcome("010", -1),
    GhzOutcome("001", 1),
    GhzOutcome("001", -1),
)


def three_particle_eigenstate(index: int) -> GhzOutcome:
    """Eigenstate `index` (1..8) of the three-particle GHZ basis."""
    if not 1 <= index <= len(THREE_PARTICLE_EIGENSTATES):
        raise InvalidInput(f"three-particle eigenstate index must be 1..8, got {index}")
    return THREE_PARTICLE_EIGENSTATES[index - 1]


def ghz_basis(num_particles: int) -> list[GhzOutcome]:
    """All 2^k GHZ outcomes, patterns ascending, + before -."""
    if num_particles < 1:
        raise InvalidInput("GHZ basis needs at least one particle")
    outcomes = []
    for tail in range(2 ** (num_particles - 1)):
        pattern = "0" + (format(tail, f"0{num_particles - 1}b") if num_particles > 1 else "")
        outcomes.append(GhzOutcome(pattern, 1))
        outcomes.append(GhzOutcome(pattern, -1))
    return outcomes


def outcomes_with_parity(num_particles: int, parity: int) -> list[GhzOutcome]:
    """GHZ outcomes whose X-basis parity equals `parity`."""
    return [o for o in ghz_basis(num_particles) if o.secret_bit == parity]


class BellState(StrEnum):
    PHI_PLUS = "PHI+"
    PHI_MINUS = "PHI-"
    PSI_PLUS = "PSI+"
    PSI_MINUS = "PSI-"

    @property
    def is_phi(self) -> bool:
        return self in (BellState.PHI_PLUS, BellState.PHI_MINUS)


_BELL_LABELS = {
    GhzOutcome("00", 1): BellState.PHI_PLUS,
    GhzOutcome("00", -1): BellState.PHI_MINUS,
    GhzOutcome("01", 1): BellState.PSI_PLUS,
    GhzOutcome("01", -1): BellState.PSI_MINUS,
}


def _split_measured(state: StateVector, wires: tuple[int, ...]) -> np.ndarray:
    """Matrix with one row per basis state of `wires` and one column per rest state."""
    k = len(wires)
    moved = np.moveaxis(state.as_tensor(), list(wires), list(range(k)))
    return moved.reshape(2**k, -1)


def _join_measured(
    measured: np.ndarray, rest: np.ndarray, wires: tuple[int, ...], num_qubits: int
) -> StateVector:
    k = len(wires)
    joint = np.outer(measured, rest).reshape([2] * num_qubits)
    return StateVector(np.moveaxis(joint, list(range(k)), list(wires)).reshape(-1))


def _measure_in_basis(
    state: StateVector,
    wires: tuple[int, ...],
    basis: Sequence[np.ndarray],
    rng: np.random.Generator | None,
    forced: int | None,
) -> tuple[int, StateVector]:
    """Measure `wires` in an orthonormal basis; return the outcome index and the collapsed state."""
    split = _split_measured(state, wires)
    branches = [vector.conj() @ split for vector in basis]
    weights = np.array([float(np.vdot(b, b).real) for b in branches])
    if forced is None:
        if rng is None:
            raise InvalidInput("a random source is required for unforced measurement")
        choice = int(rng.choice(len(basis), p=weights / weights.sum()))
    else:
        choice = forced
        if weights[choice] <= _ZERO_PROBABILITY:
            raise ImpossiblePostSelection(f"outcome {choice} has zero probability")
    if weights[choice] <= _ZERO_PROBABILITY:
        raise RuntimeError("selected a zero-norm measurement branch")
    rest = branches[choice] / math.sqrt(weights[choice])
    return choice, _join_measured(basis[choice], rest, wires, state.num_qubits)


_COMPUTATIONAL_BASIS = (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex))


def outcome_probability(state: StateVector, wire: int, bit: int) -> float:
    """Marginal probability of reading `bit` on `wire`."""
    (wire,) = check_wires((wire,), state.num_qubits)
    split = _split_measured(state, (wire,))
    return float(np.sum(np.abs(split[bit]) ** 2))


def measure_computational(
    state: StateVector, wire: int, rng: np.random.Generator
) -> tuple[int, StateVector]:
    """Z-basis measurement of one wire."""
    wires = check_wires((wire,), state.num_qubits)
    return _measure_in_basis(state, wires, _COMPUTATIONAL_BASIS, rng, None)


def measure_x_basis(
    state: StateVector,
    wire: int,
    rng: np.random.Generator | None,
    forced: int | None = None,
) -> tuple[int, StateVector]:
    """X-basis measurement of one wire: 0 projects onto |+>, 1 onto |->.

    `forced` post-selects the given outcome instead of sampling.
    """
    wires = check_wires((wire,), state.num_qubits)
    if forced not in (None, 0, 1):
        raise InvalidInput(f"forced X outcome must be 0 or 1, got {forced}")
    rotated = apply_gate(state, "H", wires)
    bit, collapsed = _measure_in_basis(rotated, wires, _COMPUTATIONAL_BASIS, rng, forced)
    return bit, apply_gate(collapsed, "H", wires)


def measure_ghz_basis(
    state: StateVector,
    wires: Sequence[int],
    rng: np.random.Generator | None,
    forced: GhzOutcome | None = None,
) -> tuple[GhzOutcome, StateVector]:
    """Joint measurement of k >= 2 wires in the GHZ basis.

    With `forced`, the state is post-selected onto that eigenstate.
    """
    wires = check_wires(wires, state.num_qubits)
    if len(wires) < 2:
        raise InvalidInput("a GHZ measurement needs at least two wires")
    outcomes = ghz_basis(len(wires))
    forced_index = None
    if forced is not None:
        if forced.num_particles != len(wires):
            raise InvalidInput(
                f"forced outcome has {forced.num_particles} particles, measuring {len(wires)}"
            )
        forced_index = outcomes.index(forced)
    index, collapsed = _measure_in_basis(
        state, wires, [o.vector() for o in outcomes], rng, forced_index
    )
    return outcomes[index], collapsed


def measure_bell_basis(
    state: StateVector, wires: Sequence[int], rng: np.random.Generator
) -> tuple[BellState, StateVector]:
    """Two-wire Bell measurement (the k = 2 GHZ measurement)."""
    if len(wires) != 2:
        raise InvalidInput("a Bell measurement acts on exactly two wires")
    outcome, collapsed = measure_ghz_basis(state, wires, rng)
    return _BELL_LABELS[outcome], collapsed


def projection_norm(state: StateVector, wires: Sequence[int], outcome: GhzOutcome) -> float:
    """Squared norm of the projection of `wires` onto a GHZ eigenstate."""
    wires = check_wires(wires, state.num_qubits)
    branch = outcome.vector().conj() @ _split_measured(state, wires)
    return float(np.vdot(branch, branch).real)
