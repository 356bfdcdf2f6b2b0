"""Dense statevectors and gate application.

Wire 0 is the leftmost character of a basis label: |1010> has wire 0 in |1>.
States are immutable; every operation returns a new StateVector.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from multiparty_qhe import settings
from multiparty_qhe.quantum.errors import InvalidGate, InvalidInput, InvalidWire, TooLarge
from multiparty_qhe.quantum.gates import gate_arity, gate_matrix, is_unitary

# Norm and comparison tolerance for states.
STATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    """2^n complex amplitudes over an ordered qubit register."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        size = amplitudes.size
        if size == 0 or size & (size - 1):
            raise InvalidInput(f"amplitude count {size} is not a power of two")
        num_qubits = size.bit_length() - 1
        if num_qubits > settings.MAX_QUBITS:
            raise TooLarge(f"{num_qubits} qubits exceeds the cap of {settings.MAX_QUBITS}")
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > STATE_TOL:
            raise InvalidInput(f"state is not normalized (norm={norm:.12g})")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @classmethod
    def normalized(cls, amplitudes) -> StateVector:
        """Build a state from unnormalized amplitudes."""
        vector = np.array(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise InvalidInput("cannot normalize the zero vector")
        return cls(vector / norm)

    def probabilities(self) -> np.ndarray:
        """Computational-basis outcome probabilities, indexed by basis label."""
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, bits: str) -> complex:
        """Amplitude of the basis state labelled by `bits`."""
        return complex(self.amplitudes[_bits_to_index(bits, self.num_qubits)])

    def as_tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per wire (a copy)."""
        return self.amplitudes.reshape([2] * self.num_qubits).copy()

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


def _bits_to_index(bits: str, num_qubits: int) -> int:
    if len(bits) != num_qubits or any(c not in "01" for c in bits):
        raise InvalidInput(f"expected {num_qubits} bits, got {bits!r}")
    return int(bits, 2) if bits else 0


def basis_label(index: int, num_qubits: int) -> str:
    """Bit string of a basis index, wire 0 first."""
    return format(index, f"0{num_qubits}b") if num_qubits else ""


def new_basis_state(num_qubits: int, bits: str) -> StateVector:
    """|bits> on `num_qubits` wires."""
    if num_qubits < 1:
        raise InvalidInput("a basis state needs at least one qubit")
    if num_qubits > settings.MAX_QUBITS:
        raise TooLarge(f"{num_qubits} qubits exceeds the cap of {settings.MAX_QUBITS}")
    amplitudes = np.zeros(2**num_qubits, dtype=complex)
    amplitudes[_bits_to_index(bits, num_qubits)] = 1.0
    return StateVector(amplitudes)


def random_state(num_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-like random pure state from complex Gaussian amplitudes."""
    size = 2**num_qubits
    return StateVector.normalized(rng.normal(size=size) + 1j * rng.normal(size=size))


def prepare_bell_pair() -> StateVector:
    """beta_00 = (|00> + |11>)/sqrt(2)."""
    return StateVector.normalized([1, 0, 0, 1])


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """a ⊗ b with a's wires first."""
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def tensor_all(states: Sequence[StateVector]) -> StateVector:
    """Left-to-right tensor product of a non-empty sequence."""
    if not states:
        raise InvalidInput("cannot tensor an empty sequence")
    result = states[0]
    for state in states[1:]:
        result = tensor(result, state)
    return result


def check_wires(wires: Sequence[int], num_qubits: int) -> tuple[int, ...]:
    """Validate and normalize a wire selection."""
    checked = tuple(int(w) for w in wires)
    for wire in checked:
        if wire < 0 or wire >= num_qubits:
            raise InvalidWire(f"wire {wire} is out of range for {num_qubits} qubits")
    if len(set(checked)) != len(checked):
        raise InvalidWire(f"wires {checked} are not distinct")
    return checked


def apply_matrix(state: StateVector, matrix: np.ndarray, wires: Sequence[int]) -> StateVector:
    """Apply a 2^k x 2^k unitary to k wires."""
    wires = check_wires(wires, state.num_qubits)
    k = len(wires)
    if matrix.shape != (2**k, 2**k):
        raise InvalidGate(f"matrix of shape {matrix.shape} does not act on {k} wire(s)")
    gate_tensor = matrix.reshape([2] * (2 * k))
    moved = np.tensordot(gate_tensor, state.as_tensor(), axes=(list(range(k, 2 * k)), list(wires)))
    result = np.moveaxis(moved, list(range(k)), list(wires))
    return StateVector(result.reshape(-1))


def apply_gate(
    state: StateVector,
    gate: str | np.ndarray,
    wires: int | Sequence[int],
    angle: float | None = None,
) -> StateVector:
    """Apply a named gate or an explicit unitary matrix to `wires`."""
    if isinstance(wires, (int, np.integer)):
        wires = (int(wires),)
    if isinstance(gate, str):
        if gate_arity(gate) != len(wires):
            raise InvalidGate(f"gate {gate} acts on {gate_arity(gate)} wire(s), got {len(wires)}")
        return apply_matrix(state, gate_matrix(gate, angle), wires)
    matrix = np.asarray(gate, dtype=complex)
    if not is_unitary(matrix):
        raise InvalidGate("matrix is not unitary")
    return apply_matrix(state, matrix, wires)


def global_phase_between(a: StateVector, b: StateVector) -> complex:
    """Unit-modulus c minimizing ||a - c b|| (1 when the overlap vanishes)."""
    overlap = complex(np.vdot(b.amplitudes, a.amplitudes))
    if abs(overlap) == 0:
        return 1.0 + 0j
    return overlap / abs(overlap)


def state_equal_up_to_global_phase(a: StateVector, b: StateVector, tol: float = STATE_TOL) -> bool:
    """True iff some unit-modulus c gives ||a - c b|| <= tol."""
    if a.num_qubits != b.num_qubits:
        raise InvalidInput(f"cannot compare {a.num_qubits} and {b.num_qubits} qubit states")
    phase = global_phase_between(a, b)
    return bool(np.linalg.norm(a.amplitudes - phase * b.amplitudes) <= tol)
