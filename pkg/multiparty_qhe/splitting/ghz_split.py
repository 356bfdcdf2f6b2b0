"""Secret splitting by GHZ entanglement swapping, and server churn.

For each secret bit the client prepares M Bell pairs (wires 2j, 2j+1 hold pair
j), jointly measures the first particles in the M-particle GHZ basis and keeps
the second particles, which are swapped into the same GHZ eigenstate. The
X-basis readings of either particle set then XOR to the eigenstate's sign bit.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import structlog

from multiparty_qhe.quantum.measurement import (
    GhzOutcome,
    measure_ghz_basis,
    measure_x_basis,
    outcomes_with_parity,
)
from multiparty_qhe.quantum.state import prepare_bell_pair, tensor_all
from multiparty_qhe.splitting.records import Share, SplitRecord, xor_bits
from multiparty_qhe.utils.decorators import tracker

LOGGER = structlog.get_logger(__name__)


class IncompleteShares(ValueError):
    """Reconstruction attempted without exactly one share per server."""


def _split_bit(
    bit: int, num_servers: int, rng: np.random.Generator
) -> tuple[GhzOutcome, str, str]:
    state = tensor_all([prepare_bell_pair() for _ in range(num_servers)])
    first_wires = [2 * j for j in range(num_servers)]
    second_wires = [2 * j + 1 for j in range(num_servers)]

    if num_servers == 1:
        # The one-particle GHZ basis is the X basis.
        _, state = measure_x_basis(state, 0, rng, forced=bit)
        outcome = GhzOutcome("0", 1 if bit == 0 else -1)
    else:
        candidates = outcomes_with_parity(num_servers, bit)
        forced = candidates[int(rng.integers(len(candidates)))]
        outcome, state = measure_ghz_basis(state, first_wires, rng, forced=forced)

    first, second = [], []
    for wires, readings in ((first_wires, first), (second_wires, second)):
        for wire in wires:
            reading, state = measure_x_basis(state, wire, rng)
            readings.append(str(reading))
    return outcome, "".join(first), "".join(second)


@tracker(ulogger=LOGGER, level="debug")
def split_secret(
    secret: str, num_servers: int, rng: np.random.Generator, client_id: int = 1
) -> SplitRecord:
    """Split `secret` among `num_servers` servers; consumes len(secret) * M Bell pairs.

    Each bit is split on a 2M-qubit register, so M is bounded by half the
    statevector cap (8 servers at the default QHE_MAX_QUBITS of 16).
    """
    if num_servers < 1:
        raise ValueError("a split needs at least one server")
    if not secret or any(c not in "01" for c in secret):
        raise ValueError(f"secret must be a non-empty bit string, got {secret!r}")

    outcomes, first_rows, second_rows = [], [], []
    for bit in secret:
        outcome, first, second = _split_bit(int(bit), num_servers, rng)
        outcomes.append(outcome)
        first_rows.append(first)
        second_rows.append(second)

    record = SplitRecord(
        client_id=client_id,
        num_servers=num_servers,
        num_bits=len(secret),
        ghz_outcomes=tuple(outcomes),
        first_particle_x_bits=tuple(first_rows),
        second_particle_x_bits=tuple(second_rows),
        server_ids=tuple(range(1, num_servers + 1)),
    )
    if record.secret != secret:
        raise RuntimeError("split readings do not reproduce the secret")
    LOGGER.info(
        "split_done",
        client=client_id,
        servers=num_servers,
        bits=len(secret),
        bell_pairs=record.bell_pairs,
    )
    return record


def reconstruct_secret(shares: Sequence[Share], num_servers: int) -> str:
    """XOR of all M shares."""
    if len(shares) != num_servers:
        raise IncompleteShares(f"need {num_servers} shares, got {len(shares)}")
    if len({share.server_id for share in shares}) != len(shares):
        raise IncompleteShares("duplicate server in share set")
    lengths = {share.num_bits for share in shares}
    if len(lengths) != 1:
        raise IncompleteShares(f"shares differ in length: {sorted(lengths)}")
    return xor_bits(*(share.x_bits for share in shares))


def add_server(
    record: SplitRecord, rng: np.random.Generator, server_id: int | None = None
) -> tuple[SplitRecord, Share]:
    """Extend a split to one more server.

    Per bit, one fresh Bell pair is X-measured on both particles; the readings
    agree, so the shared secret becomes K' = K xor the new server's share.
    """
    if server_id is None:
        server_id = max(record.server_ids) + 1
    if server_id in record.server_ids:
        raise ValueError(f"server {server_id} already holds a share of client {record.client_id}")

    first_bits, second_bits = [], []
    for _ in range(record.num_bits):
        pair = prepare_bell_pair()
        first, pair = measure_x_basis(pair, 0, rng)
        second, pair = measure_x_basis(pair, 1, rng)
        first_bits.append(str(first))
        second_bits.append(str(second))

    extended = SplitRecord(
        client_id=record.client_id,
        num_servers=record.num_servers + 1,
        num_bits=record.num_bits,
        ghz_outcomes=record.ghz_outcomes,
        first_particle_x_bits=tuple(
            row + bit for row, bit in zip(record.first_particle_x_bits, first_bits, strict=True)
        ),
        second_particle_x_bits=tuple(
            row + bit for row, bit in zip(record.second_particle_x_bits, second_bits, strict=True)
        ),
        server_ids=(*record.server_ids, server_id),
    )
    LOGGER.info("server_added", client=record.client_id, server=server_id)
    return extended, extended.share(server_id)


def remove_server(current_secret: str, departing_share: Share) -> str:
    """K'' = K xor the departing server's share; the server itself is not contacted."""
    if len(current_secret) != departing_share.num_bits:
        raise ValueError(
            f"share of {departing_share.num_bits} bits cannot adjust"
            f" a {len(current_secret)}-bit secret"
        )
    return xor_bits(current_secret, departing_share.x_bits)
