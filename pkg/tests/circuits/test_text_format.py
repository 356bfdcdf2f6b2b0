"""Tests for the circuit text format."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multiparty_qhe.circuits.generation import random_circuit
from multiparty_qhe.circuits.model import Circuit, Gate, GateKind
from multiparty_qhe.circuits.text_format import (
    ParseError,
    WireError,
    format_angle,
    parse_circuit,
    serialize_circuit,
)

EXPERIMENT_TEXT = "wires 4\nH 0\nX 0\nT 1\nCNOT 1 2\nS 3\nZ 3"


class TestParseCircuit:
    def test_experiment_circuit(self):
        circuit = parse_circuit(EXPERIMENT_TEXT)
        assert circuit.num_wires == 4
        assert [g.kind for g in circuit.gates] == [
            GateKind.H,
            GateKind.X,
            GateKind.T,
            GateKind.CNOT,
            GateKind.S,
            GateKind.Z,
        ]
        assert circuit.gates[3].wires == (1, 2)

    def test_comments_blank_lines_and_lowercase(self):
        circuit = parse_circuit("# header comment\nwires 2\n\ncnot 0 1  # fan out\ntdag 1\n")
        assert [g.kind for g in circuit.gates] == [GateKind.CNOT, GateKind.TDAG]

    def test_angle_tokens_and_decimals(self):
        circuit = parse_circuit("wires 1\nRZ 0 pi/4\nRZ 0 -pi/4\nRY 0 0.25")
        assert [g.angle for g in circuit.gates] == [math.pi / 4, -math.pi / 4, 0.25]

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_circuit("H 0")

    def test_empty_text(self):
        with pytest.raises(ParseError):
            parse_circuit("# only a comment\n")

    def test_unknown_gate_reports_line(self):
        with pytest.raises(ParseError) as exc_info:
            parse_circuit("wires 2\nH 0\nFOO 1")
        assert exc_info.value.line == 3

    def test_wire_out_of_range(self):
        with pytest.raises(WireError) as exc_info:
            parse_circuit("wires 2\nX 2")
        assert exc_info.value.line == 2

    def test_cnot_on_same_wire(self):
        with pytest.raises(WireError):
            parse_circuit("wires 2\nCNOT 1 1")

    def test_rotation_without_angle(self):
        with pytest.raises(ParseError):
            parse_circuit("wires 1\nRZ 0")

    def test_extra_operands(self):
        with pytest.raises(ParseError):
            parse_circuit("wires 1\nH 0 0")

    def test_non_finite_angle(self):
        with pytest.raises(ParseError):
            parse_circuit("wires 1\nRY 0 inf")


class TestSerializeCircuit:
    def test_canonical_text(self):
        assert serialize_circuit(parse_circuit(EXPERIMENT_TEXT)) == EXPERIMENT_TEXT

    def test_quarter_turns_use_tokens(self):
        assert format_angle(math.pi / 4) == "pi/4"
        assert format_angle(-math.pi / 4) == "-pi/4"
        assert format_angle(0.5) == "0.5"

    def test_no_trailing_newline(self):
        assert not serialize_circuit(Circuit(1, (Gate(GateKind.H, (0,)),))).endswith("\n")

    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5), count=st.integers(0, 20))
    def test_reparse_is_identity(self, seed, n, count):
        circuit = random_circuit(n, count, 0.3, np.random.default_rng(seed))
        assert parse_circuit(serialize_circuit(circuit)) == circuit

    @given(angle=st.floats(-10, 10, allow_nan=False))
    def test_rotation_angles_survive(self, angle):
        circuit = Circuit(1, (Gate(GateKind.RZ, (0,), angle),))
        parsed = parse_circuit(serialize_circuit(circuit))
        assert abs(parsed.gates[0].angle - angle) <= 1e-12
