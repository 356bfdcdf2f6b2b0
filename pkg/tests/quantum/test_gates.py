"""Tests for gate matrices and rotation identities."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multiparty_qhe.acceptance.criteria import IDENTITY_TOL, rotation_identity_deviation
from multiparty_qhe.quantum.errors import InvalidGate
from multiparty_qhe.quantum.gates import (
    FIXED_GATES,
    MATRIX_TOL,
    PHASE_S,
    T_GATE,
    conjugated_zyz_parameters,
    gate_matrix,
    is_unitary,
    pauli_operator,
    rz,
    zyz_unitary,
)

angles = st.floats(min_value=-4 * math.pi, max_value=4 * math.pi, allow_nan=False)
bits = st.integers(0, 1)


def test_fixed_gates_are_unitary():
    assert all(is_unitary(matrix) for matrix in FIXED_GATES.values())


def test_t_squared_is_s():
    assert np.allclose(T_GATE @ T_GATE, PHASE_S, atol=MATRIX_TOL)


def test_rz_quarter_turn_is_t_up_to_phase():
    assert np.allclose(rz(math.pi / 4), np.exp(-1j * math.pi / 8) * T_GATE, atol=MATRIX_TOL)


def test_rotation_without_angle_rejected():
    with pytest.raises(InvalidGate):
        gate_matrix("RY")


def test_fixed_gate_with_angle_rejected():
    with pytest.raises(InvalidGate):
        gate_matrix("H", 0.5)


def test_pauli_operator_applies_z_first():
    assert np.allclose(pauli_operator(1, 1), np.array([[0, -1], [1, 0]]))


@given(a=bits, b=bits, alpha=angles, beta=angles, gamma=angles, delta=angles)
def test_conjugation_identities(a, b, alpha, beta, gamma, delta):
    """X^a Z^b passes through Rz, Ry and the ZYZ product with the expected sign flips."""
    deviation = rotation_identity_deviation(a, b, np.array([alpha, beta, gamma, delta]))
    assert deviation <= IDENTITY_TOL


@given(alpha=angles, beta=angles, gamma=angles, delta=angles)
def test_zyz_unitary_is_unitary(alpha, beta, gamma, delta):
    assert is_unitary(zyz_unitary(alpha, beta, gamma, delta))


def test_conjugated_parameters_signs():
    assert conjugated_zyz_parameters(1, 0, 0.1, 0.2, 0.3, 0.4) == (0.1, -0.2, -0.3, -0.4)
    assert conjugated_zyz_parameters(0, 1, 0.1, 0.2, 0.3, 0.4) == (0.1, 0.2, -0.3, 0.4)
    assert conjugated_zyz_parameters(1, 1, 0.1, 0.2, 0.3, 0.4) == (0.1, -0.2, 0.3, -0.4)
