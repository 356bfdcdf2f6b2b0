"""Tests for the circuit model, execution and random generation."""

import numpy as np
import pytest

from multiparty_qhe.circuits.execution import apply_circuit
from multiparty_qhe.circuits.generation import random_circuit
from multiparty_qhe.circuits.model import Circuit, CircuitError, Gate, GateKind
from multiparty_qhe.quantum.errors import InvalidInput
from multiparty_qhe.quantum.state import new_basis_state


class TestGate:
    def test_kind_from_string(self):
        assert Gate("CNOT", (0, 1)).kind is GateKind.CNOT

    def test_arity(self):
        with pytest.raises(CircuitError):
            Gate(GateKind.H, (0, 1))

    def test_distinct_wires(self):
        with pytest.raises(CircuitError):
            Gate(GateKind.CNOT, (1, 1))

    def test_rotation_needs_angle(self):
        with pytest.raises(CircuitError):
            Gate(GateKind.RY, (0,))

    def test_fixed_gate_takes_no_angle(self):
        with pytest.raises(CircuitError):
            Gate(GateKind.S, (0,), 0.1)


class TestCircuit:
    def test_counts(self):
        circuit = Circuit(
            2, (Gate("H", (0,)), Gate("T", (0,)), Gate("TDAG", (1,)), Gate("CNOT", (0, 1)))
        )
        assert circuit.gate_count == 4
        assert circuit.t_count == 2
        assert not circuit.is_clifford

    def test_gate_outside_register(self):
        with pytest.raises(CircuitError):
            Circuit(1, (Gate("X", (1,)),))

    def test_needs_a_wire(self):
        with pytest.raises(CircuitError):
            Circuit(0)


class TestApplyCircuit:
    def test_experiment_circuit(self):
        circuit = Circuit(
            4,
            (
                Gate("H", (0,)),
                Gate("X", (0,)),
                Gate("T", (1,)),
                Gate("CNOT", (1, 2)),
                Gate("S", (3,)),
                Gate("Z", (3,)),
            ),
        )
        probabilities = apply_circuit(new_basis_state(4, "1010"), circuit).probabilities()
        assert probabilities[0b0010] == pytest.approx(0.5)
        assert probabilities[0b1010] == pytest.approx(0.5)

    def test_width_mismatch(self):
        with pytest.raises(InvalidInput):
            apply_circuit(new_basis_state(2, "00"), Circuit(3))


class TestRandomCircuit:
    def test_single_wire_has_no_cnot(self, rng):
        circuit = random_circuit(1, 200, 0.3, rng)
        assert all(g.kind is not GateKind.CNOT for g in circuit.gates)

    def test_t_fraction_extremes(self, rng):
        assert random_circuit(3, 50, 0.0, rng).t_count == 0
        assert random_circuit(3, 50, 1.0, rng).t_count == 50

    def test_t_fraction_roughly_respected(self):
        circuit = random_circuit(4, 2000, 0.3, np.random.default_rng(5))
        assert 0.25 < circuit.t_count / 2000 < 0.35

    def test_invalid_fraction(self, rng):
        with pytest.raises(InvalidInput):
            random_circuit(2, 5, 1.5, rng)
