"""In-process network with deterministic round-based delivery.

A message sent during round r is delivered during round r + 1. Within a round,
recipients are served in scheduling order (key center, clients, servers) and
each recipient drains its inbound channels in sender order, FIFO per channel.
"""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Callable
from typing import Protocol

import structlog

from multiparty_qhe.protocol.errors import ChannelClosed, OwnershipViolation
from multiparty_qhe.protocol.messages import LocalEvent, Message, PartyId, Payload, carried_handle
from multiparty_qhe.protocol.phases import Phase
from multiparty_qhe.protocol.registers import RegisterStore
from multiparty_qhe.protocol.trace import TraceRecord, amplitude_pairs, payload_digest

LOGGER = structlog.get_logger(__name__)

# Guard against handler loops that never go quiet.
MAX_ROUNDS = 10_000


class Party(Protocol):
    party_id: PartyId

    def receive(self, message: Message) -> None: ...


# Observer called on every message as it is put on the wire.
WireTap = Callable[[Message, RegisterStore], None]

Channel = tuple[PartyId, PartyId]


class SimulatedNetwork:
    def __init__(self, store: RegisterStore):
        self.store = store
        self.phase = Phase.SPLIT
        self.trace: list[TraceRecord] = []
        self._parties: dict[PartyId, Party] = {}
        self._queues: dict[Channel, deque[Message]] = defaultdict(deque)
        self._seq: dict[Channel, int] = defaultdict(int)
        self._closed: set[PartyId] = set()
        self._taps: list[WireTap] = []
        self.messages_sent = 0

    def attach(self, party: Party) -> None:
        self._parties[party.party_id] = party

    def add_tap(self, tap: WireTap) -> None:
        self._taps.append(tap)

    def parties(self) -> list[Party]:
        """Open parties in scheduling order."""
        ids = sorted((p for p in self._parties if p not in self._closed), key=lambda p: p.sort_key)
        return [self._parties[p] for p in ids]

    def is_open(self, party_id: PartyId) -> bool:
        return party_id in self._parties and party_id not in self._closed

    def close(self, party_id: PartyId) -> None:
        """Close every channel to and from `party_id`, dropping queued messages."""
        self._closed.add(party_id)
        for channel in list(self._queues):
            if party_id in channel:
                dropped = len(self._queues[channel])
                if dropped:
                    LOGGER.info(
                        "messages_dropped", channel=[str(p) for p in channel], count=dropped
                    )
                del self._queues[channel]

    def _digest(self, payload: Payload) -> str:
        content = payload.content()
        handle = carried_handle(payload)
        if handle is not None:
            register = self.store.peek(handle)
            states = register if isinstance(register, tuple) else (register,)
            content["register"] = [amplitude_pairs(s) for s in states]
        return payload_digest(content)

    def _record(self, sender: PartyId, recipient: PartyId, payload: Payload) -> None:
        self.trace.append(
            TraceRecord(
                step=len(self.trace) + 1,
                phase=str(self.phase),
                sender=str(sender),
                recipient=str(recipient),
                payload_kind=payload.kind,
                payload_digest=self._digest(payload),
            )
        )

    def send(self, sender: PartyId, recipient: PartyId, payload: Payload) -> Message:
        for party in (sender, recipient):
            if party in self._closed:
                raise ChannelClosed(f"channel {sender} -> {recipient} is closed ({party} left)")
            if party not in self._parties:
                raise ChannelClosed(f"{party} is not on the network")
        handle = carried_handle(payload)
        if handle is not None and self.store.owner(handle) != sender:
            raise OwnershipViolation(f"{sender} sends register {handle} it does not hold")
        channel = (sender, recipient)
        self._seq[channel] += 1
        message = Message(sender, recipient, self._seq[channel], payload)
        self._record(sender, recipient, payload)
        for tap in self._taps:
            tap(message, self.store)
        self._queues[channel].append(message)
        self.messages_sent += 1
        return message

    def local_event(self, party_id: PartyId, event: str, **details) -> None:
        """Trace a local step; details are digested, never printed."""
        payload = LocalEvent(event, tuple(sorted(details.items())))
        self._record(party_id, party_id, payload)

    def pending(self) -> int:
        return sum(len(q) for q in self._queues.values())

    def deliver_round(self) -> int:
        """Deliver every message queued before this round; return how many."""
        snapshot = {channel: len(queue) for channel, queue in self._queues.items() if queue}
        delivered = 0
        for party in self.parties():
            inbound = sorted(
                (c for c in snapshot if c[1] == party.party_id), key=lambda c: c[0].sort_key
            )
            for channel in inbound:
                for _ in range(snapshot[channel]):
                    queue = self._queues.get(channel)
                    if not queue:
                        break
                    message = queue.popleft()
                    handle = carried_handle(message.payload)
                    if handle is not None:
                        self.store.transfer(handle, message.sender, message.recipient)
                    party.receive(message)
                    delivered += 1
        return delivered

    def run_until_quiescent(self) -> int:
        """Deliver rounds until no message is in flight; return the round count."""
        rounds = 0
        while self.pending():
            if rounds >= MAX_ROUNDS:
                raise RuntimeError(f"network still busy after {MAX_ROUNDS} rounds")
            self.deliver_round()
            rounds += 1
        return rounds
