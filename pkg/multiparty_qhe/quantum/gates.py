"""Gate matrices of the simulator's gate set.

Named gates: X, Z, H, S, T, TDAG, CNOT and the rotations RZ(theta), RY(theta).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from multiparty_qhe.quantum.errors import InvalidGate

# Entrywise tolerance for exact matrix identities.
MATRIX_TOL = 1e-12

_SQRT2_INV = 1 / math.sqrt(2)

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
PHASE_S = np.array([[1, 0], [0, 1j]], dtype=complex)
T_GATE = np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex)
T_DAGGER = T_GATE.conj().T
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=complex,
)

FIXED_GATES: dict[str, np.ndarray] = {
    "I": IDENTITY,
    "X": PAULI_X,
    "Z": PAULI_Z,
    "H": HADAMARD,
    "S": PHASE_S,
    "T": T_GATE,
    "TDAG": T_DAGGER,
    "CNOT": CNOT,
}
ROTATION_GATES = frozenset({"RZ", "RY"})

for _matrix in FIXED_GATES.values():
    _matrix.setflags(write=False)


def rz(theta: float) -> np.ndarray:
    """Rotation about Z: diag(e^{-i theta/2}, e^{i theta/2})."""
    return np.array(
        [[cmath.exp(-0.5j * theta), 0], [0, cmath.exp(0.5j * theta)]],
        dtype=complex,
    )


def ry(theta: float) -> np.ndarray:
    """Rotation about Y."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def gate_matrix(name: str, angle: float | None = None) -> np.ndarray:
    """Return the unitary of a named gate. Rotations require `angle`."""
    key = name.upper()
    if key in FIXED_GATES:
        if angle is not None:
            raise InvalidGate(f"gate {name} takes no angle")
        return FIXED_GATES[key]
    if key in ROTATION_GATES:
        if angle is None or not math.isfinite(angle):
            raise InvalidGate(f"gate {name} needs a finite angle")
        return rz(angle) if key == "RZ" else ry(angle)
    raise InvalidGate(f"unknown gate {name!r}")


def gate_arity(name: str) -> int:
    """Number of wires a named gate acts on."""
    return 2 if name.upper() == "CNOT" else 1


def is_unitary(matrix: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    """True when matrix @ matrix^dagger equals the identity within `tol` entrywise."""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    product = matrix @ matrix.conj().T
    return bool(np.max(np.abs(product - np.eye(matrix.shape[0]))) <= tol)


def pauli_operator(a: int, b: int) -> np.ndarray:
    """X^a Z^b as a 2x2 matrix (Z acts first)."""
    x = PAULI_X if a else IDENTITY
    z = PAULI_Z if b else IDENTITY
    return x @ z


def zyz_unitary(alpha: float, beta: float, gamma: float, delta: float) -> np.ndarray:
    """e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)."""
    return cmath.exp(1j * alpha) * (rz(beta) @ ry(gamma) @ rz(delta))


def conjugated_zyz_parameters(
    a: int, b: int, alpha: float, beta: float, gamma: float, delta: float
) -> tuple[float, float, float, float]:
    """Parameters U' such that X^a Z^b U(alpha, beta, gamma, delta) = U' X^a Z^b."""
    sign_a = -1 if a else 1
    sign_ab = -1 if (a + b) % 2 else 1
    return alpha, sign_a * beta, sign_ab * gamma, sign_a * delta
