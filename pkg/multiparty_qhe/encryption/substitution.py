"""Key-dependent replacement of T gates by Z rotations.

On a ciphertext padded with X^a Z^b, applying T directly would leave an
S^a error. Applying RZ((-1)^a pi/4) instead yields X^a Z^b RZ(pi/4) |psi>,
which is the plaintext T up to global phase, with the key unchanged.
"""

import math
from enum import StrEnum

import structlog

from multiparty_qhe.circuits.model import Circuit, Gate, GateKind
from multiparty_qhe.encryption.key_update import update_key
from multiparty_qhe.encryption.keys import QotpKey

LOGGER = structlog.get_logger(__name__)

_T_ANGLES = {GateKind.T: math.pi / 4, GateKind.TDAG: -math.pi / 4}


class SubstitutionMode(StrEnum):
    # X-bit of the Pauli frame in effect at the gate's position.
    FRAME = "frame"
    # X-bit of the initial encryption key; wrong once H, S or CNOT have moved the frame.
    INITIAL = "initial"


def substitute_circuit(
    circuit: Circuit, key: QotpKey, mode: SubstitutionMode | str = SubstitutionMode.FRAME
) -> Circuit:
    """Replace every T/TDAG by RZ(+-pi/4) with the sign set by the key's X-bit."""
    mode = SubstitutionMode(mode)
    key.require_length(circuit.num_wires)
    frame = key
    gates = []
    for gate in circuit.gates:
        if gate.kind.is_t_type:
            (wire,) = gate.wires
            a_bit = (frame if mode is SubstitutionMode.FRAME else key).pair(wire)[0]
            sign = -1 if a_bit else 1
            gates.append(Gate(GateKind.RZ, gate.wires, sign * _T_ANGLES[gate.kind]))
        else:
            gates.append(gate)
        frame = update_key(frame, gate)
    LOGGER.debug(
        "circuit_substituted", mode=str(mode), t_count=circuit.t_count, gates=len(gates)
    )
    return Circuit(circuit.num_wires, tuple(gates))
