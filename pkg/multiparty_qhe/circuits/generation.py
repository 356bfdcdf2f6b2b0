"""Random circuits over the evaluation gate set."""

import numpy as np

from multiparty_qhe.circuits.model import CLIFFORD_KINDS, T_KINDS, Circuit, Gate, GateKind
from multiparty_qhe.quantum.errors import InvalidInput


def _random_gate(kind: GateKind, num_wires: int, rng: np.random.Generator) -> Gate:
    if kind is GateKind.CNOT:
        control, target = rng.choice(num_wires, size=2, replace=False)
        return Gate(kind, (int(control), int(target)))
    return Gate(kind, (int(rng.integers(num_wires)),))


def random_circuit(
    num_wires: int, num_gates: int, t_fraction: float, rng: np.random.Generator
) -> Circuit:
    """Draw `num_gates` gates; each is T/TDAG with probability `t_fraction`, Clifford otherwise.

    CNOT is only drawn when there are at least two wires.
    """
    if num_wires < 1:
        raise InvalidInput("a circuit needs at least one wire")
    if num_gates < 0:
        raise InvalidInput("gate count must be non-negative")
    if not 0.0 <= t_fraction <= 1.0:
        raise InvalidInput(f"t_fraction must be in [0, 1], got {t_fraction}")

    cliffords = [k for k in CLIFFORD_KINDS if num_wires > 1 or k is not GateKind.CNOT]
    gates = []
    for _ in range(num_gates):
        if rng.random() < t_fraction:
            kind = T_KINDS[int(rng.integers(len(T_KINDS)))]
        else:
            kind = cliffords[int(rng.integers(len(cliffords)))]
        gates.append(_random_gate(kind, num_wires, rng))
    return Circuit(num_wires, tuple(gates))
