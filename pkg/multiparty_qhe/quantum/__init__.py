from multiparty_qhe.quantum.density import DensityMatrix, mix_over_keys
from multiparty_qhe.quantum.errors import (
    ImpossiblePostSelection,
    InvalidGate,
    InvalidInput,
    InvalidWire,
    TooLarge,
)
from multiparty_qhe.quantum.measurement import (
    BellState,
    GhzOutcome,
    measure_bell_basis,
    measure_computational,
    measure_ghz_basis,
    measure_x_basis,
)
from multiparty_qhe.quantum.state import (
    STATE_TOL,
    StateVector,
    apply_gate,
    new_basis_state,
    prepare_bell_pair,
    state_equal_up_to_global_phase,
    tensor,
)

__all__ = [
    "STATE_TOL",
    "BellState",
    "DensityMatrix",
    "GhzOutcome",
    "ImpossiblePostSelection",
    "InvalidGate",
    "InvalidInput",
    "InvalidWire",
    "StateVector",
    "TooLarge",
    "apply_gate",
    "measure_bell_basis",
    "measure_computational",
    "measure_ghz_basis",
    "measure_x_basis",
    "mix_over_keys",
    "new_basis_state",
    "prepare_bell_pair",
    "state_equal_up_to_global_phase",
    "tensor",
]
