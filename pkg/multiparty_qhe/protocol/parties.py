"""Party state machines: key center, clients and servers.

Each party reacts to `begin_phase` (the scheduler's phase tick) and to inbound
messages. Parties touch quantum registers only through the shared store, and
only the registers they hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import singledispatchmethod

import numpy as np
import structlog

from multiparty_qhe.circuits.execution import apply_circuit
from multiparty_qhe.circuits.model import Circuit
from multiparty_qhe.circuits.text_format import parse_circuit, serialize_circuit
from multiparty_qhe.encryption.key_update import update_key_through_circuit
from multiparty_qhe.encryption.keys import QotpKey
from multiparty_qhe.encryption.qotp import qotp_decrypt, qotp_encrypt
from multiparty_qhe.encryption.substitution import substitute_circuit
from multiparty_qhe.keyexchange.exchange import InsufficientRounds, derive_server_keys, reconcile
from multiparty_qhe.keyexchange.qubits import (
    Basis,
    PreparedQubit,
    encode_bits,
    prepare_qubits,
    relay_bell_measurements,
)
from multiparty_qhe.keyexchange.sifting import (
    QberReport,
    Verdict,
    center_flips,
    choose_sample,
    sifted_positions,
)
from multiparty_qhe.protocol.errors import ScenarioAborted, ScenarioError
from multiparty_qhe.protocol.messages import (
    KEY_CENTER,
    CipherQubits,
    CircuitSubmission,
    Control,
    ControlAction,
    DecryptionKey,
    EvalResult,
    ExchangeStage,
    KeyExchangeRound,
    Message,
    PartyId,
    Payload,
    Role,
    SubstitutedCircuit,
    client,
    server,
)
from multiparty_qhe.protocol.network import SimulatedNetwork
from multiparty_qhe.protocol.phases import Phase
from multiparty_qhe.protocol.registers import RegisterStore
from multiparty_qhe.protocol.scenario_config import ScenarioConfig
from multiparty_qhe.quantum.measurement import BellState
from multiparty_qhe.quantum.state import StateVector
from multiparty_qhe.splitting.ghz_split import add_server, remove_server, split_secret
from multiparty_qhe.splitting.records import SplitRecord
from multiparty_qhe.utils.randomness import Stream, random_bits, stream

LOGGER = structlog.get_logger(__name__)

# Sub-streams of the KEYGEN stream of a (client, server) pair.
_CLIENT_SIDE = 0
_CENTER_SIDE = 1
_SAMPLE_SIDE = 2


@dataclass
class ScenarioContext:
    """What every party shares: configuration, seed, network and register store."""

    config: ScenarioConfig
    seed: int
    network: SimulatedNetwork
    store: RegisterStore
    completed: set[Phase] = field(default_factory=set)

    def rng(self, purpose: Stream, *path: int) -> np.random.Generator:
        return stream(self.seed, purpose, *path)


@dataclass
class KeygenSession:
    """One side's view of the exchange for a (client, server) pair."""

    qubits: list[PreparedQubit]
    outcomes: list[BellState] | None = None
    kept: list[int] | None = None
    sample: list[int] | None = None

    @property
    def bases(self) -> str:
        return "".join(str(q.basis) for q in self.qubits)


class Party:
    def __init__(self, party_id: PartyId, context: ScenarioContext):
        self.party_id = party_id
        self.context = context

    @property
    def config(self) -> ScenarioConfig:
        return self.context.config

    @property
    def store(self) -> RegisterStore:
        return self.context.store

    def send(self, recipient: PartyId, payload: Payload) -> None:
        self.context.network.send(self.party_id, recipient, payload)

    def log_event(self, event: str, **details) -> None:
        self.context.network.local_event(self.party_id, event, **details)

    def begin_phase(self, phase: Phase) -> None:
        step = getattr(self, f"_begin_{phase.value}", None)
        if step is not None:
            step()

    def receive(self, message: Message) -> None:
        self.on_payload(message.payload, message)

    def on_payload(self, payload: Payload, message: Message) -> None:
        raise ScenarioError(f"{self.party_id} cannot handle {payload.kind} from {message.sender}")

    def _derive_key(self, raw: str, report: QberReport | None) -> QotpKey:
        try:
            return derive_server_keys(reconcile(raw), 1, 2 * self.config.num_bits)[0]
        except InsufficientRounds as exc:
            raise ScenarioAborted(f"{self.party_id}: {exc}", report) from exc


class Client(Party):
    def __init__(self, index: int, context: ScenarioContext):
        super().__init__(client(index), context)
        self.index = index
        self.record: SplitRecord | None = None
        self.initial_secret: str | None = None
        self.current_secret: str | None = None
        self.active: list[int] = []
        self.registers: dict[int, int] = {}
        self.keys: dict[int, QotpKey] = {}
        self.sessions: dict[int, KeygenSession] = {}
        self.reports: dict[int, QberReport] = {}
        self.decryption_keys: dict[int, QotpKey] = {}
        self.evaluated: dict[int, StateVector] = {}
        self.decrypted: dict[int, StateVector] = {}

    # phases

    def _begin_split(self) -> None:
        n = self.config.num_bits
        secret = self.config.secrets.get(self.index)
        if secret is None:
            secret = random_bits(self.context.rng(Stream.SECRET, self.index), n)
        self.record = split_secret(
            secret,
            self.config.num_servers,
            self.context.rng(Stream.SPLIT, self.index),
            client_id=self.index,
        )
        self.initial_secret = self.current_secret = self.record.secret
        self.active = list(self.record.server_ids)
        for j in self.active:
            self._allocate_plaintext(j)
        self.log_event("split", servers=len(self.active), bell_pairs=self.record.bell_pairs)

    def _allocate_plaintext(self, j: int) -> None:
        register = self.record.share(j).register()
        self.registers[j] = self.store.allocate(register, self.party_id)

    def _begin_keygen(self) -> None:
        for j in self.active:
            self.start_keygen(j)

    def start_keygen(self, j: int) -> None:
        fixed = self.config.keys.get((self.index, j))
        if fixed is not None:
            self.keys[j] = fixed
            self.log_event("preshared_key", server=j)
            return
        rng = self.context.rng(Stream.KEYGEN, self.index, j, _CLIENT_SIDE)
        session = KeygenSession(prepare_qubits(self.config.rounds, rng))
        self.sessions[j] = session
        handle = self.store.allocate(tuple(q.state for q in session.qubits), self.party_id)
        self.send(server(j), KeyExchangeRound(self.index, j, ExchangeStage.PREPARE, handle=handle))

    def _begin_substitute(self) -> None:
        text = serialize_circuit(self.config.circuit_for(self.index))
        self.send(KEY_CENTER, CircuitSubmission(self.index, text))

    def _begin_encrypt(self) -> None:
        for j in self.active:
            handle = self.registers[j]
            if j not in self.keys:
                raise ScenarioError(f"{self.party_id} has no key for server {j}")
            plain = self.store.read(handle, self.party_id)
            self.store.write(handle, qotp_encrypt(plain, self.keys[j]), self.party_id)
            self.send(server(j), CipherQubits(self.index, self.config.num_bits, handle))

    def _begin_decrypt(self) -> None:
        for j in self.active:
            if j not in self.decryption_keys:
                raise ScenarioError(f"{self.party_id} has no decryption key for server {j}")
            handle = self.registers[j]
            evaluated = self.store.read(handle, self.party_id)
            plain = qotp_decrypt(evaluated, self.decryption_keys[j])
            self.store.write(handle, plain, self.party_id)
            self.evaluated[j] = evaluated
            self.decrypted[j] = plain
            self.log_event("decrypted", server=j)

    # messages

    @singledispatchmethod
    def on_payload(self, payload: Payload, message: Message) -> None:
        super().on_payload(payload, message)

    @on_payload.register
    def _(self, payload: KeyExchangeRound, message: Message) -> None:
        session = self.sessions[payload.server]
        if payload.stage is ExchangeStage.ANNOUNCE:
            session.outcomes = [BellState(o) for o in payload.outcomes]
            sift = KeyExchangeRound(
                self.index, payload.server, ExchangeStage.SIFT, bases=session.bases
            )
            self.send(KEY_CENTER, sift)
        elif payload.stage is ExchangeStage.SAMPLE:
            self._check_sample(payload, session)
        else:
            raise ScenarioError(f"{self.party_id} got unexpected stage {payload.stage}")

    def _check_sample(self, payload: KeyExchangeRound, session: KeygenSession) -> None:
        j = payload.server
        center_bases = [Basis(c) for c in payload.bases]
        session.kept = sifted_positions(
            [q.basis for q in session.qubits], center_bases, session.outcomes
        )
        session.sample = list(payload.positions)
        errors = sum(
            1
            for position, center_bit in zip(session.sample, payload.bits, strict=True)
            if session.qubits[session.kept[position]].bit != int(center_bit)
        )
        report = QberReport(len(session.sample), errors, self.config.qber_threshold)
        self.reports[j] = report
        self.send(KEY_CENTER, KeyExchangeRound(self.index, j, ExchangeStage.VERDICT, report=report))
        if report.verdict is Verdict.ABORT:
            raise ScenarioAborted(
                f"key exchange for client {self.index} via server {j} aborted: {report}", report
            )
        disclosed = set(session.sample)
        remaining = [k for pos, k in enumerate(session.kept) if pos not in disclosed]
        self.keys[j] = self._derive_key(
            encode_bits([session.qubits[k] for k in remaining]), report
        )

    @on_payload.register
    def _(self, payload: EvalResult, message: Message) -> None:
        self.registers[payload.server] = payload.handle

    @on_payload.register
    def _(self, payload: DecryptionKey, message: Message) -> None:
        self.decryption_keys[payload.server] = QotpKey.from_text(
            payload.key_text, self.config.num_bits
        )

    @on_payload.register
    def _(self, payload: Control, message: Message) -> None:
        j = payload.server
        if payload.action is ControlAction.ADD_SERVER:
            self.record, _ = add_server(
                self.record, self.context.rng(Stream.CHURN, self.index, j), server_id=j
            )
            self.current_secret = self.record.secret
            self.active.append(j)
            self._allocate_plaintext(j)
            self.log_event("server_added", server=j)
            if Phase.KEYGEN in self.context.completed:
                self.start_keygen(j)
        else:
            self.current_secret = remove_server(self.current_secret, self.record.share(j))
            self.active.remove(j)
            handle = self.registers.pop(j, None)
            if handle is not None and self.store.owner(handle) == self.party_id:
                self.store.release(handle, self.party_id)
            self.keys.pop(j, None)
            self.decryption_keys.pop(j, None)
            self.log_event("server_removed", server=j)


class KeyCenter(Party):
    """Trusted third party: key exchange endpoint, circuit substitution and key update."""

    def __init__(self, context: ScenarioContext, servers: list[int]):
        super().__init__(KEY_CENTER, context)
        self.active = list(servers)
        self.sessions: dict[tuple[int, int], KeygenSession] = {}
        self.keys: dict[tuple[int, int], QotpKey] = {}
        self.circuits: dict[int, Circuit] = {}
        self.decryption_keys: dict[tuple[int, int], QotpKey] = {}

    @property
    def clients(self) -> range:
        return range(1, self.config.num_clients + 1)

    def _begin_keygen(self) -> None:
        for i in self.clients:
            for j in self.active:
                self.start_keygen(i, j)

    def start_keygen(self, i: int, j: int) -> None:
        fixed = self.config.keys.get((i, j))
        if fixed is not None:
            self.keys[(i, j)] = fixed
            self._key_ready(i, j)
            return
        rng = self.context.rng(Stream.KEYGEN, i, j, _CENTER_SIDE)
        session = KeygenSession(prepare_qubits(self.config.rounds, rng))
        self.sessions[(i, j)] = session
        handle = self.store.allocate(tuple(q.state for q in session.qubits), self.party_id)
        self.send(server(j), KeyExchangeRound(i, j, ExchangeStage.PREPARE, handle=handle))

    def _key_ready(self, i: int, j: int) -> None:
        # A key that lands after substitution (a late-joining server) gets its circuit now.
        if Phase.SUBSTITUTE in self.context.completed and i in self.circuits:
            self._send_substituted(i, j)

    def _send_substituted(self, i: int, j: int) -> None:
        key = self.keys.get((i, j))
        if key is None:
            raise ScenarioError(f"no key for client {i} and server {j} at substitution")
        substituted = substitute_circuit(self.circuits[i], key)
        self.send(server(j), SubstitutedCircuit(i, serialize_circuit(substituted)))

    def _begin_key_update(self) -> None:
        for i in sorted(self.circuits):
            for j in self.active:
                decryption_key, ledger = update_key_through_circuit(
                    self.keys[(i, j)], self.circuits[i]
                )
                self.decryption_keys[(i, j)] = decryption_key
                LOGGER.debug("key_updated", client=i, server=j, steps=len(ledger.steps))
                self.send(client(i), DecryptionKey(i, j, decryption_key.to_text()))

    def add_server(self, j: int) -> None:
        self.active.append(j)
        for i in self.clients:
            self.send(client(i), Control(ControlAction.ADD_SERVER, j))
        self.send(server(j), Control(ControlAction.ADD_SERVER, j))
        if Phase.KEYGEN in self.context.completed:
            for i in self.clients:
                self.start_keygen(i, j)

    def remove_server(self, j: int) -> None:
        # The departing server is not contacted.
        self.active.remove(j)
        for i in self.clients:
            self.send(client(i), Control(ControlAction.REMOVE_SERVER, j))

    @singledispatchmethod
    def on_payload(self, payload: Payload, message: Message) -> None:
        super().on_payload(payload, message)

    @on_payload.register
    def _(self, payload: KeyExchangeRound, message: Message) -> None:
        pair = (payload.client, payload.server)
        session = self.sessions[pair]
        if payload.stage is ExchangeStage.ANNOUNCE:
            session.outcomes = [BellState(o) for o in payload.outcomes]
        elif payload.stage is ExchangeStage.SIFT:
            self._disclose_sample(pair, session, payload.bases)
        elif payload.stage is ExchangeStage.VERDICT:
            if payload.report.verdict is Verdict.ACCEPT:
                disclosed = set(session.sample)
                remaining = [k for pos, k in enumerate(session.kept) if pos not in disclosed]
                raw = "".join(self._corrected_bit(session, k) for k in remaining)
                self.keys[pair] = self._derive_key(raw, payload.report)
                self._key_ready(*pair)
        else:
            raise ScenarioError(f"key center got unexpected stage {payload.stage}")

    @staticmethod
    def _corrected_bit(session: KeygenSession, k: int) -> str:
        qubit = session.qubits[k]
        return str(qubit.bit ^ int(center_flips(qubit.basis, session.outcomes[k])))

    def _disclose_sample(
        self, pair: tuple[int, int], session: KeygenSession, client_bases: str
    ) -> None:
        i, j = pair
        session.kept = sifted_positions(
            [Basis(c) for c in client_bases], [q.basis for q in session.qubits], session.outcomes
        )
        if not session.kept:
            raise ScenarioAborted(
                f"no key exchange round survived sifting for client {i}, server {j}"
            )
        rng = self.context.rng(Stream.KEYGEN, i, j, _SAMPLE_SIDE)
        session.sample = choose_sample(len(session.kept), self.config.sample_fraction, rng)
        bits = "".join(self._corrected_bit(session, session.kept[p]) for p in session.sample)
        self.send(
            client(i),
            KeyExchangeRound(
                i,
                j,
                ExchangeStage.SAMPLE,
                bases=session.bases,
                positions=tuple(session.sample),
                bits=bits,
            ),
        )

    @on_payload.register
    def _(self, payload: CircuitSubmission, message: Message) -> None:
        self.circuits[payload.client] = parse_circuit(payload.circuit_text)
        for j in self.active:
            self._send_substituted(payload.client, j)


class Server(Party):
    """Untrusted relay for key exchange and evaluator of ciphertexts."""

    def __init__(self, index: int, context: ScenarioContext):
        super().__init__(server(index), context)
        self.index = index
        self.batches: dict[int, dict[Role, int]] = {}
        self.circuits: dict[int, Circuit] = {}
        self.ciphertexts: dict[int, int] = {}

    def _begin_evaluate(self) -> None:
        for i in sorted(self.ciphertexts):
            circuit = self.circuits.get(i)
            if circuit is None:
                raise ScenarioError(f"{self.party_id} has no circuit for client {i}")
            handle = self.ciphertexts.pop(i)
            state = self.store.read(handle, self.party_id)
            self.store.write(handle, apply_circuit(state, circuit), self.party_id)
            self.send(client(i), EvalResult(self.index, handle))

    @singledispatchmethod
    def on_payload(self, payload: Payload, message: Message) -> None:
        super().on_payload(payload, message)

    @on_payload.register
    def _(self, payload: KeyExchangeRound, message: Message) -> None:
        if payload.stage is not ExchangeStage.PREPARE:
            raise ScenarioError(f"{self.party_id} got unexpected stage {payload.stage}")
        batches = self.batches.setdefault(payload.client, {})
        batches[message.sender.role] = payload.handle
        if Role.CLIENT in batches and Role.KEY_CENTER in batches:
            del self.batches[payload.client]
            self._relay(payload.client, batches)

    def _relay(self, i: int, batches: dict[Role, int]) -> None:
        client_states = self.store.release(batches[Role.CLIENT], self.party_id)
        center_states = self.store.release(batches[Role.KEY_CENTER], self.party_id)
        rng = self.context.rng(Stream.RELAY, i, self.index)
        outcomes = tuple(str(o) for o in relay_bell_measurements(client_states, center_states, rng))
        for recipient in (client(i), KEY_CENTER):
            self.send(
                recipient,
                KeyExchangeRound(i, self.index, ExchangeStage.ANNOUNCE, outcomes=outcomes),
            )

    @on_payload.register
    def _(self, payload: SubstitutedCircuit, message: Message) -> None:
        self.circuits[payload.client] = parse_circuit(payload.circuit_text)

    @on_payload.register
    def _(self, payload: CipherQubits, message: Message) -> None:
        self.ciphertexts[payload.client] = payload.handle

    @on_payload.register
    def _(self, payload: Control, message: Message) -> None:
        self.log_event("joined" if payload.action is ControlAction.ADD_SERVER else "left")
