from multiparty_qhe.circuits.model import Circuit
from multiparty_qhe.quantum.errors import InvalidInput
from multiparty_qhe.quantum.state import StateVector, apply_gate


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply the gates of `circuit` to `state` in sequence order."""
    if state.num_qubits != circuit.num_wires:
        raise InvalidInput(
            f"circuit acts on {circuit.num_wires} wires, state has {state.num_qubits} qubits"
        )
    for gate in circuit.gates:
        state = apply_gate(state, gate.kind.value, gate.wires, gate.angle)
    return state
