from multiparty_qhe.keyexchange.exchange import (
    Eavesdropper,
    ExchangeAborted,
    ExchangeOutcome,
    InsufficientRounds,
    derive_server_keys,
    exchange,
    reconcile,
    run_exchange,
)
from multiparty_qhe.keyexchange.qubits import (
    Basis,
    PreparedQubit,
    encode_bits,
    intercept_resend,
    prepare_qubits,
    relay_bell_measurements,
)
from multiparty_qhe.keyexchange.sifting import (
    QberReport,
    SiftedRound,
    Verdict,
    center_flips,
    choose_sample,
    estimate_qber,
    sift,
    sifted_positions,
)

__all__ = [
    "Basis",
    "Eavesdropper",
    "ExchangeAborted",
    "ExchangeOutcome",
    "InsufficientRounds",
    "PreparedQubit",
    "QberReport",
    "SiftedRound",
    "Verdict",
    "center_flips",
    "choose_sample",
    "derive_server_keys",
    "encode_bits",
    "estimate_qber",
    "exchange",
    "intercept_resend",
    "prepare_qubits",
    "reconcile",
    "relay_bell_measurements",
    "run_exchange",
    "sift",
    "sifted_positions",
]
