from multiparty_qhe.splitting.ghz_split import (
    IncompleteShares,
    add_server,
    reconstruct_secret,
    remove_server,
    split_secret,
)
from multiparty_qhe.splitting.records import Share, SplitRecord, xor_bits

__all__ = [
    "IncompleteShares",
    "Share",
    "SplitRecord",
    "add_server",
    "reconstruct_secret",
    "remove_server",
    "split_secret",
    "xor_bits",
]
