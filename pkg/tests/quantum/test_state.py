"""Tests for the statevector engine."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multiparty_qhe import settings
from multiparty_qhe.quantum.errors import InvalidGate, InvalidInput, InvalidWire, TooLarge
from multiparty_qhe.quantum.gates import CNOT, HADAMARD
from multiparty_qhe.quantum.state import (
    StateVector,
    apply_gate,
    basis_label,
    new_basis_state,
    prepare_bell_pair,
    random_state,
    state_equal_up_to_global_phase,
    tensor,
    tensor_all,
)


class TestStateVector:
    """Construction and validation of StateVector."""

    def test_basis_state_is_big_endian(self):
        """Wire 0 is the leftmost bit of the label."""
        state = new_basis_state(3, "100")
        assert state.amplitude("100") == 1
        assert np.flatnonzero(state.amplitudes).tolist() == [4]

    def test_rejects_unnormalized(self):
        with pytest.raises(InvalidInput):
            StateVector(np.array([1, 1], dtype=complex))

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidInput):
            StateVector.normalized([1, 1, 1])

    def test_normalized_rejects_zero_vector(self):
        with pytest.raises(InvalidInput):
            StateVector.normalized([0, 0])

    def test_bits_must_match_width(self):
        with pytest.raises(InvalidInput):
            new_basis_state(2, "101")

    def test_cap_on_qubit_count(self):
        with pytest.raises(TooLarge):
            new_basis_state(settings.MAX_QUBITS + 1, "0" * (settings.MAX_QUBITS + 1))

    def test_amplitudes_are_read_only(self):
        state = new_basis_state(1, "0")
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0

    def test_basis_label(self):
        assert basis_label(2, 4) == "0010"
        assert basis_label(10, 4) == "1010"


class TestApplyGate:
    def test_hadamard_on_zero(self):
        state = apply_gate(new_basis_state(1, "0"), "H", 0)
        assert np.allclose(state.amplitudes, [1 / math.sqrt(2), 1 / math.sqrt(2)])

    def test_cnot_control_is_first_wire(self):
        state = apply_gate(new_basis_state(2, "10"), "CNOT", (0, 1))
        assert state.amplitude("11") == 1

    def test_cnot_on_non_adjacent_reversed_wires(self):
        state = apply_gate(new_basis_state(3, "001"), "CNOT", (2, 0))
        assert state.amplitude("101") == 1

    def test_gate_name_is_case_insensitive(self):
        lower = apply_gate(new_basis_state(1, "1"), "tdag", 0)
        upper = apply_gate(new_basis_state(1, "1"), "TDAG", 0)
        assert np.allclose(lower.amplitudes, upper.amplitudes)

    def test_rotation_needs_angle(self):
        with pytest.raises(InvalidGate):
            apply_gate(new_basis_state(1, "0"), "RZ", 0)

    def test_unknown_gate(self):
        with pytest.raises(InvalidGate):
            apply_gate(new_basis_state(1, "0"), "SWAP", 0)

    def test_arity_mismatch(self):
        with pytest.raises(InvalidGate):
            apply_gate(new_basis_state(2, "00"), "CNOT", 0)

    def test_wire_out_of_range(self):
        with pytest.raises(InvalidWire):
            apply_gate(new_basis_state(2, "00"), "X", 2)

    def test_repeated_wires(self):
        with pytest.raises(InvalidWire):
            apply_gate(new_basis_state(2, "00"), "CNOT", (1, 1))

    def test_explicit_matrix_must_be_unitary(self):
        with pytest.raises(InvalidGate):
            apply_gate(new_basis_state(1, "0"), np.array([[1, 1], [0, 1]]), 0)

    def test_explicit_matrix_matches_named_gate(self):
        plain = new_basis_state(2, "11")
        assert np.allclose(
            apply_gate(plain, CNOT, (0, 1)).amplitudes,
            apply_gate(plain, "CNOT", (0, 1)).amplitudes,
        )
        assert np.allclose(
            apply_gate(plain, HADAMARD, 1).amplitudes, apply_gate(plain, "H", 1).amplitudes
        )

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1), n=st.integers(1, 4))
    def test_gates_preserve_norm(self, seed, n):
        rng = np.random.default_rng(seed)
        state = random_state(n, rng)
        for name in ("H", "S", "T", "X", "Z", "TDAG"):
            state = apply_gate(state, name, int(rng.integers(n)))
        assert abs(np.linalg.norm(state.amplitudes) - 1) < 1e-10


class TestTensor:
    def test_left_operand_takes_leading_wires(self):
        state = tensor(new_basis_state(1, "1"), new_basis_state(2, "01"))
        assert state.amplitude("101") == 1

    def test_tensor_all_of_bell_pairs(self):
        state = tensor_all([prepare_bell_pair(), prepare_bell_pair()])
        assert state.num_qubits == 4
        assert math.isclose(abs(state.amplitude("0000")) ** 2, 0.25)
        assert math.isclose(abs(state.amplitude("1111")) ** 2, 0.25)

    def test_tensor_all_rejects_empty(self):
        with pytest.raises(InvalidInput):
            tensor_all([])


class TestGlobalPhase:
    def test_equal_up_to_phase(self, rng):
        state = random_state(3, rng)
        rotated = StateVector(np.exp(1j * 0.7) * state.amplitudes)
        assert state_equal_up_to_global_phase(state, rotated)

    def test_different_states(self):
        assert not state_equal_up_to_global_phase(
            new_basis_state(1, "0"), new_basis_state(1, "1")
        )

    def test_width_mismatch(self):
        with pytest.raises(InvalidInput):
            state_equal_up_to_global_phase(new_basis_state(1, "0"), new_basis_state(2, "00"))
