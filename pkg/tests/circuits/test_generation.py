"""Tests for random circuit generation and execution."""

import numpy as np
import pytest

from multiparty_qhe.circuits.execution import apply_circuit
from multiparty_qhe.circuits.generation import random_circuit
from multiparty_qhe.circuits.model import Circuit, GateKind
from multiparty_qhe.circuits.text_format import parse_circuit
from multiparty_qhe.quantum.errors import InvalidInput
from multiparty_qhe.quantum.state import new_basis_state


class TestRandomCircuit:
    def test_shape(self, rng):
        circuit = random_circuit(3, 20, 0.3, rng)
        assert circuit.num_wires == 3
        assert circuit.gate_count == 20

    def test_t_fraction_bounds(self, rng):
        assert random_circuit(2, 30, 0.0, rng).is_clifford
        assert random_circuit(2, 30, 1.0, rng).t_count == 30

    def test_single_wire_has_no_cnot(self, rng):
        circuit = random_circuit(1, 50, 0.0, rng)
        assert all(g.kind is not GateKind.CNOT for g in circuit.gates)

    def test_reproducible(self):
        first = random_circuit(3, 10, 0.5, np.random.default_rng(3))
        second = random_circuit(3, 10, 0.5, np.random.default_rng(3))
        assert first == second

    @pytest.mark.parametrize("args", [(0, 1, 0.1), (2, -1, 0.1), (2, 1, 1.5)])
    def test_rejects(self, rng, args):
        with pytest.raises(InvalidInput):
            random_circuit(*args, rng)


class TestApplyCircuit:
    def test_cnot_fan_out(self):
        circuit = parse_circuit("wires 2\nX 0\nCNOT 0 1\n")
        assert apply_circuit(new_basis_state(2, "00"), circuit).amplitude("11") == 1

    def test_empty_circuit_is_identity(self):
        state = new_basis_state(2, "10")
        assert apply_circuit(state, Circuit(2)) is state

    def test_width_mismatch(self):
        with pytest.raises(InvalidInput):
            apply_circuit(new_basis_state(3, "000"), Circuit(2))
