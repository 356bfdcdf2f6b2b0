"""Party identities, messages and payloads."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import ClassVar

from multiparty_qhe.keyexchange.sifting import QberReport


class Role(StrEnum):
    KEY_CENTER = "key_center"
    CLIENT = "client"
    SERVER = "server"


_ROLE_ORDER = {Role.KEY_CENTER: 0, Role.CLIENT: 1, Role.SERVER: 2}


@dataclass(frozen=True)
class PartyId:
    role: Role
    index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "role", Role(self.role))
        if self.role is Role.KEY_CENTER and self.index != 0:
            raise ValueError("the key center is unique and has index 0")
        if self.role is not Role.KEY_CENTER and self.index < 1:
            raise ValueError(f"{self.role} index must be >= 1, got {self.index}")

    @property
    def sort_key(self) -> tuple[int, int]:
        """Scheduling order: key center, clients ascending, servers ascending."""
        return _ROLE_ORDER[self.role], self.index

    def __str__(self) -> str:
        return str(self.role) if self.role is Role.KEY_CENTER else f"{self.role}.{self.index}"


KEY_CENTER = PartyId(Role.KEY_CENTER)


def client(index: int) -> PartyId:
    return PartyId(Role.CLIENT, index)


def server(index: int) -> PartyId:
    return PartyId(Role.SERVER, index)


class Payload:
    """Base of message payloads; `content()` is what the trace digest covers."""

    kind: ClassVar[str]

    def content(self) -> dict:
        raise NotImplementedError


def carried_handle(payload: Payload) -> int | None:
    """Register handle carried by a payload, if any."""
    return getattr(payload, "handle", None)


@dataclass(frozen=True)
class CipherQubits(Payload):
    kind: ClassVar[str] = "CipherQubits"
    client: int
    num_wires: int
    handle: int

    def content(self) -> dict:
        return {"client": self.client, "num_wires": self.num_wires}


@dataclass(frozen=True)
class CircuitSubmission(Payload):
    kind: ClassVar[str] = "CircuitSubmission"
    client: int
    circuit_text: str

    def content(self) -> dict:
        return {"client": self.client, "circuit": self.circuit_text}


@dataclass(frozen=True)
class SubstitutedCircuit(Payload):
    kind: ClassVar[str] = "SubstitutedCircuit"
    client: int
    circuit_text: str

    def content(self) -> dict:
        return {"client": self.client, "circuit": self.circuit_text}


@dataclass(frozen=True)
class DecryptionKey(Payload):
    kind: ClassVar[str] = "DecryptionKey"
    client: int
    server: int
    key_text: str

    def content(self) -> dict:
        return {"client": self.client, "server": self.server, "key": self.key_text}


@dataclass(frozen=True)
class EvalResult(Payload):
    kind: ClassVar[str] = "EvalResult"
    server: int
    handle: int

    def content(self) -> dict:
        return {"server": self.server}


class ExchangeStage(StrEnum):
    PREPARE = "prepare"
    ANNOUNCE = "announce"
    SIFT = "sift"
    SAMPLE = "sample"
    VERDICT = "verdict"


@dataclass(frozen=True)
class KeyExchangeRound(Payload):
    """One step of the key exchange for the (client, server) pair.

    prepare: qubit batch to the relaying server. announce: Bell outcomes from the
    relay. sift: client bases. sample: center bases, disclosed positions and the
    center's bits at them. verdict: the client's QBER report.
    """

    kind: ClassVar[str] = "KeyExchangeRound"
    client: int
    server: int
    stage: ExchangeStage
    handle: int | None = None
    bases: str | None = None
    outcomes: tuple[str, ...] | None = None
    positions: tuple[int, ...] | None = None
    bits: str | None = None
    report: QberReport | None = None

    def content(self) -> dict:
        content = {"client": self.client, "server": self.server, "stage": str(self.stage)}
        for name in ("bases", "outcomes", "positions", "bits"):
            value = getattr(self, name)
            if value is not None:
                content[name] = list(value) if isinstance(value, tuple) else value
        if self.report is not None:
            content["report"] = self.report.to_dict()
        return content


class ControlAction(StrEnum):
    ADD_SERVER = "add"
    REMOVE_SERVER = "remove"


@dataclass(frozen=True)
class Control(Payload):
    kind: ClassVar[str] = "Control"
    action: ControlAction
    server: int

    def content(self) -> dict:
        return {"action": str(self.action), "server": self.server}


@dataclass(frozen=True)
class LocalEvent(Payload):
    """A party's local step, traced with from = to = that party."""

    kind: ClassVar[str] = "LocalEvent"
    event: str
    details: tuple[tuple[str, object], ...] = ()

    def content(self) -> dict:
        return {"event": self.event, **dict(self.details)}


@dataclass(frozen=True)
class Message:
    sender: PartyId
    recipient: PartyId
    seq: int
    payload: Payload
