from multiparty_qhe.circuits.execution import apply_circuit
from multiparty_qhe.circuits.generation import random_circuit
from multiparty_qhe.circuits.model import Circuit, CircuitError, Gate, GateKind
from multiparty_qhe.circuits.text_format import (
    ParseError,
    WireError,
    parse_circuit,
    serialize_circuit,
)

__all__ = [
    "Circuit",
    "CircuitError",
    "Gate",
    "GateKind",
    "ParseError",
    "WireError",
    "apply_circuit",
    "parse_circuit",
    "random_circuit",
    "serialize_circuit",
]
