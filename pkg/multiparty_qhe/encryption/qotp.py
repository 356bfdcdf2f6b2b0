from multiparty_qhe.encryption.keys import QotpKey
from multiparty_qhe.quantum.state import StateVector, apply_gate


def qotp_encrypt(state: StateVector, key: QotpKey) -> StateVector:
    """Apply X^a Z^b to every wire, Z first."""
    key.require_length(state.num_qubits)
    for wire, (a, b) in enumerate(key.pairs()):
        if b:
            state = apply_gate(state, "Z", wire)
        if a:
            state = apply_gate(state, "X", wire)
    return state


def qotp_decrypt(state: StateVector, key: QotpKey) -> StateVector:
    """Apply (X^a Z^b)^dagger = Z^b X^a to every wire, X first."""
    key.require_length(state.num_qubits)
    for wire, (a, b) in enumerate(key.pairs()):
        if a:
            state = apply_gate(state, "X", wire)
        if b:
            state = apply_gate(state, "Z", wire)
    return state
