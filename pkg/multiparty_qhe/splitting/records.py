"""Split transcripts and server shares."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from multiparty_qhe.quantum.measurement import GhzOutcome
from multiparty_qhe.quantum.state import StateVector, apply_gate, new_basis_state, tensor_all


def xor_bits(*bit_strings: str) -> str:
    """Bitwise XOR of equal-length bit strings."""
    if not bit_strings:
        raise ValueError("nothing to XOR")
    length = len(bit_strings[0])
    if any(len(s) != length for s in bit_strings):
        raise ValueError(f"bit strings differ in length: {[len(s) for s in bit_strings]}")
    return "".join(
        str(reduce(lambda acc, s: acc ^ int(s[k]), bit_strings, 0)) for k in range(length)
    )


def parity(bits: str) -> int:
    return bits.count("1") % 2


def x_eigenstate(bit: int) -> StateVector:
    """|+> for 0, |-> for 1."""
    return apply_gate(new_basis_state(1, str(bit)), "H", 0)


@dataclass(frozen=True)
class Share:
    """X-basis readings of one server's second particles, one bit per secret bit."""

    server_id: int
    x_bits: str

    def __post_init__(self):
        if any(c not in "01" for c in self.x_bits):
            raise ValueError(f"share bits must be binary, got {self.x_bits!r}")

    @property
    def num_bits(self) -> int:
        return len(self.x_bits)

    def register(self) -> StateVector:
        """Computational-basis register |x_bits> carried to the server.

        Each second particle |+>/|-> is mapped by H onto |0>/|1>.
        """
        return tensor_all([new_basis_state(1, bit) for bit in self.x_bits])


@dataclass(frozen=True)
class SplitRecord:
    """Transcript of one client's split.

    Row k of `first_particle_x_bits` and `second_particle_x_bits` holds one
    character per server, in `server_ids` order. Columns appended by add_server
    come after the columns of the original GHZ split.
    """

    client_id: int
    num_servers: int
    num_bits: int
    ghz_outcomes: tuple[GhzOutcome, ...]
    first_particle_x_bits: tuple[str, ...]
    second_particle_x_bits: tuple[str, ...]
    server_ids: tuple[int, ...]

    def __post_init__(self):
        if self.num_servers < 1 or self.num_bits < 1:
            raise ValueError("a split needs at least one server and one bit")
        ids = self.server_ids
        if len(ids) != self.num_servers or len(set(ids)) != self.num_servers:
            raise ValueError(f"server ids {self.server_ids} do not name {self.num_servers} servers")
        for name in ("ghz_outcomes", "first_particle_x_bits", "second_particle_x_bits"):
            if len(getattr(self, name)) != self.num_bits:
                raise ValueError(f"{name} must have one row per secret bit")
        for k in range(self.num_bits):
            first, second = self.first_particle_x_bits[k], self.second_particle_x_bits[k]
            if len(first) != self.num_servers or len(second) != self.num_servers:
                raise ValueError(f"row {k} does not have one reading per server")
            if parity(first) != parity(second):
                raise ValueError(f"row {k}: first and second particle parities differ")
            initial = self.ghz_outcomes[k].num_particles
            if parity(first[:initial]) != self.ghz_outcomes[k].secret_bit:
                raise ValueError(f"row {k}: readings contradict GHZ outcome {self.ghz_outcomes[k]}")

    @property
    def initial_servers(self) -> int:
        return self.ghz_outcomes[0].num_particles

    @property
    def bell_pairs(self) -> int:
        return self.num_bits * self.num_servers

    @property
    def secret(self) -> str:
        """XOR over all servers: the secret currently shared by this record."""
        return "".join(str(parity(row)) for row in self.second_particle_x_bits)

    def _column(self, server_id: int) -> int:
        try:
            return self.server_ids.index(server_id)
        except ValueError:
            message = f"server {server_id} holds no share of client {self.client_id}"
            raise KeyError(message) from None

    def share(self, server_id: int) -> Share:
        column = self._column(server_id)
        return Share(server_id, "".join(row[column] for row in self.second_particle_x_bits))

    def first_particle_bits(self, server_id: int) -> str:
        column = self._column(server_id)
        return "".join(row[column] for row in self.first_particle_x_bits)

    def shares(self) -> list[Share]:
        return [self.share(server_id) for server_id in self.server_ids]

    def second_particle_states(self, server_id: int) -> list[StateVector]:
        """Collapsed |+>/|-> second particles held for `server_id`, one per bit."""
        return [x_eigenstate(int(bit)) for bit in self.share(server_id).x_bits]
