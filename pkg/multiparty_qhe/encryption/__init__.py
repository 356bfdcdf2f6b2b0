from multiparty_qhe.encryption.key_update import (
    KeyUpdateLedger,
    KeyUpdateStep,
    update_key,
    update_key_through_circuit,
)
from multiparty_qhe.encryption.keys import InvalidKey, QotpKey
from multiparty_qhe.encryption.metrics import efficiency
from multiparty_qhe.encryption.qotp import qotp_decrypt, qotp_encrypt
from multiparty_qhe.encryption.substitution import SubstitutionMode, substitute_circuit

__all__ = [
    "InvalidKey",
    "KeyUpdateLedger",
    "KeyUpdateStep",
    "QotpKey",
    "SubstitutionMode",
    "efficiency",
    "qotp_decrypt",
    "qotp_encrypt",
    "substitute_circuit",
    "update_key",
    "update_key_through_circuit",
]
