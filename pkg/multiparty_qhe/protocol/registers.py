"""Shared quantum register store with an ownership table.

Parties never copy amplitudes: messages carry handles, and delivering a message
that carries a handle moves ownership of the register to the recipient.
"""

from __future__ import annotations

from dataclasses import dataclass

from multiparty_qhe.protocol.errors import OwnershipViolation
from multiparty_qhe.protocol.messages import PartyId
from multiparty_qhe.quantum.state import StateVector

# A register holds one multi-qubit state or a batch of independent qubits.
RegisterContent = StateVector | tuple[StateVector, ...]


@dataclass
class _Slot:
    content: RegisterContent
    owner: PartyId


class RegisterStore:
    def __init__(self):
        self._slots: dict[int, _Slot] = {}
        self._next_handle = 1

    def allocate(self, content: RegisterContent, owner: PartyId) -> int:
        handle = self._next_handle
        self._next_handle += 1
        self._slots[handle] = _Slot(content, owner)
        return handle

    def _slot(self, handle: int, party: PartyId) -> _Slot:
        slot = self._slots.get(handle)
        if slot is None:
            raise OwnershipViolation(f"register {handle} does not exist")
        if slot.owner != party:
            raise OwnershipViolation(
                f"{party} does not hold register {handle} (held by {slot.owner})"
            )
        return slot

    def read(self, handle: int, party: PartyId) -> RegisterContent:
        return self._slot(handle, party).content

    def write(self, handle: int, content: RegisterContent, party: PartyId) -> None:
        self._slot(handle, party).content = content

    def transfer(self, handle: int, sender: PartyId, recipient: PartyId) -> None:
        self._slot(handle, sender).owner = recipient

    def release(self, handle: int, party: PartyId) -> RegisterContent:
        content = self._slot(handle, party).content
        del self._slots[handle]
        return content

    def owner(self, handle: int) -> PartyId:
        return self._slots[handle].owner

    def peek(self, handle: int) -> RegisterContent:
        """Harness-only access: trace digests, audits and eavesdroppers on the wire."""
        return self._slots[handle].content

    def replace(self, handle: int, content: RegisterContent) -> None:
        """Harness-only overwrite, used by an eavesdropper on the wire."""
        self._slots[handle].content = content

    def __len__(self) -> int:
        return len(self._slots)
