"""Pauli-frame key update through Clifford + T circuits.

Evaluating a gate G on X^a Z^b |psi> leaves X^a' Z^b' G |psi> (up to global
phase) when G is Clifford, or when G is a T gate replaced by its key-dependent
rotation. The rules below map (a, b) to (a', b') gate by gate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from multiparty_qhe.circuits.model import Circuit, Gate, GateKind
from multiparty_qhe.encryption.keys import InvalidKey, QotpKey

# Gates that commute with the pad up to a key-independent rewrite.
_UNCHANGED = frozenset(
    {GateKind.X, GateKind.Z, GateKind.T, GateKind.TDAG, GateKind.RZ, GateKind.RY}
)


def update_key(key: QotpKey, gate: Gate) -> QotpKey:
    """Key after evaluating `gate` on a ciphertext padded with `key`."""
    if max(gate.wires) >= key.num_qubits:
        raise InvalidKey(
            f"{gate.kind} on wire {max(gate.wires)} is outside a {key.num_qubits}-qubit key"
        )
    if gate.kind in _UNCHANGED:
        return key
    if gate.kind is GateKind.H:
        (wire,) = gate.wires
        a, b = key.pair(wire)
        return key.with_pair(wire, b, a)
    if gate.kind is GateKind.S:
        (wire,) = gate.wires
        a, b = key.pair(wire)
        return key.with_pair(wire, a, a ^ b)
    if gate.kind is GateKind.CNOT:
        control, target = gate.wires
        a_c, b_c = key.pair(control)
        a_t, b_t = key.pair(target)
        return key.with_pair(control, a_c, b_c ^ b_t).with_pair(target, a_c ^ a_t, b_t)
    raise InvalidKey(f"no key update rule for {gate.kind}")


@dataclass(frozen=True)
class KeyUpdateStep:
    gate: Gate
    before: QotpKey
    after: QotpKey


@dataclass(frozen=True)
class KeyUpdateLedger:
    """Ordered record of every key update; consecutive steps chain."""

    initial: QotpKey
    steps: tuple[KeyUpdateStep, ...] = field(default_factory=tuple)

    def __post_init__(self):
        previous = self.initial
        for index, step in enumerate(self.steps):
            if step.before != previous:
                raise ValueError(f"ledger step {index} does not chain from the previous key")
            previous = step.after

    @property
    def final(self) -> QotpKey:
        return self.steps[-1].after if self.steps else self.initial


def update_key_through_circuit(key: QotpKey, circuit: Circuit) -> tuple[QotpKey, KeyUpdateLedger]:
    """Fold update_key over the circuit; return the decryption key and the ledger."""
    key.require_length(circuit.num_wires)
    steps = []
    current = key
    for gate in circuit.gates:
        after = update_key(current, gate)
        steps.append(KeyUpdateStep(gate, current, after))
        current = after
    return current, KeyUpdateLedger(key, tuple(steps))
