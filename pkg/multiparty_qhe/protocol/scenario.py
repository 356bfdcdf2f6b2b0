"""Scenario engine: runs the full pipeline for every client and applies churn."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np
import structlog

from multiparty_qhe.circuits.execution import apply_circuit
from multiparty_qhe.encryption.keys import QotpKey
from multiparty_qhe.keyexchange.exchange import Eavesdropper
from multiparty_qhe.keyexchange.qubits import intercept_resend
from multiparty_qhe.keyexchange.sifting import QberReport
from multiparty_qhe.protocol.errors import ChurnRejected, InvalidConfig
from multiparty_qhe.protocol.messages import (
    CipherQubits,
    ControlAction,
    ExchangeStage,
    KeyExchangeRound,
    Message,
    Role,
    server,
)
from multiparty_qhe.protocol.network import SimulatedNetwork
from multiparty_qhe.protocol.parties import Client, KeyCenter, ScenarioContext, Server
from multiparty_qhe.protocol.phases import PIPELINE, Phase
from multiparty_qhe.protocol.registers import RegisterStore
from multiparty_qhe.protocol.scenario_config import ChurnEvent, ScenarioConfig
from multiparty_qhe.protocol.trace import TraceRecord
from multiparty_qhe.quantum.density import mix_over_keys
from multiparty_qhe.quantum.state import StateVector, basis_label, state_equal_up_to_global_phase
from multiparty_qhe.splitting.ghz_split import reconstruct_secret
from multiparty_qhe.splitting.records import Share, SplitRecord
from multiparty_qhe.utils.decorators import tracker
from multiparty_qhe.utils.randomness import Stream, stream

LOGGER = structlog.get_logger(__name__)

# Decrypted states must match direct evaluation this closely.
VERIFY_TOL = 1e-9
AUDIT_TOL = 1e-9


@dataclass
class AuditReport:
    """Key-averaged ciphertexts checked against the maximally mixed state."""

    checked: int = 0
    max_deviation: float = 0.0

    @property
    def passed(self) -> bool:
        return self.max_deviation <= AUDIT_TOL

    def observe(self, ciphertext: StateVector) -> None:
        deviation = mix_over_keys(ciphertext).max_deviation_from_maximally_mixed()
        self.checked += 1
        self.max_deviation = max(self.max_deviation, deviation)


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    seed: int
    records: dict[int, SplitRecord]
    initial_secrets: dict[int, str]
    secrets: dict[int, str]
    reconstructed: dict[int, str]
    active_servers: dict[int, tuple[int, ...]]
    shares: dict[int, tuple[Share, ...]]
    encryption_keys: dict[tuple[int, int], QotpKey]
    decryption_keys: dict[tuple[int, int], QotpKey]
    evaluated: dict[tuple[int, int], StateVector]
    decrypted: dict[tuple[int, int], StateVector]
    histograms: dict[int, dict[str, float]]
    qber_reports: dict[tuple[int, int], QberReport]
    audit: AuditReport | None
    trace: list[TraceRecord] = field(default_factory=list)
    messages_sent: int = 0
    verified: bool = False


def reconstructed_histogram(
    states: list[StateVector], shots: int, rng: np.random.Generator
) -> dict[str, float]:
    """Sample every register `shots` times and XOR the outcomes shot by shot."""
    num_qubits = states[0].num_qubits
    combined = np.zeros(shots, dtype=np.int64)
    for state in states:
        probabilities = state.probabilities()
        weights = probabilities / probabilities.sum()
        combined ^= rng.choice(probabilities.size, size=shots, p=weights)
    counts = np.bincount(combined, minlength=2**num_qubits)
    return {
        basis_label(index, num_qubits): counts[index] / shots
        for index in np.flatnonzero(counts)
    }


class ScenarioRun:
    """A scenario in progress; phases run in pipeline order, churn in between."""

    def __init__(self, config: ScenarioConfig):
        if config.seed is None:
            raise InvalidConfig("seed", "a seed is required to run a scenario")
        self.config = config
        self.store = RegisterStore()
        self.network = SimulatedNetwork(self.store)
        self.context = ScenarioContext(config, config.seed, self.network, self.store)
        self.audit = AuditReport() if config.audit else None

        servers = list(range(1, config.num_servers + 1))
        self.key_center = KeyCenter(self.context, servers)
        self.clients = [Client(i, self.context) for i in range(1, config.num_clients + 1)]
        self.servers = {j: Server(j, self.context) for j in servers}
        self._next_server = config.num_servers + 1
        for party in (self.key_center, *self.clients, *self.servers.values()):
            self.network.attach(party)

        self._eavesdropper_rngs: dict[tuple[int, int], np.random.Generator] = {}
        if config.eavesdropper is Eavesdropper.INTERCEPT_RESEND:
            self.network.add_tap(self._intercept)
        if self.audit is not None:
            self.network.add_tap(self._audit)

    @property
    def completed(self) -> set[Phase]:
        return self.context.completed

    def _intercept(self, message: Message, store: RegisterStore) -> None:
        payload = message.payload
        if not (
            isinstance(payload, KeyExchangeRound)
            and payload.stage is ExchangeStage.PREPARE
            and message.sender.role is Role.CLIENT
        ):
            return
        pair = (payload.client, payload.server)
        if pair not in self._eavesdropper_rngs:
            self._eavesdropper_rngs[pair] = stream(self.config.seed, Stream.EAVESDROP, *pair)
        rng = self._eavesdropper_rngs[pair]
        states = store.peek(payload.handle)
        store.replace(payload.handle, tuple(intercept_resend(s, rng).state for s in states))

    def _audit(self, message: Message, store: RegisterStore) -> None:
        if isinstance(message.payload, CipherQubits):
            self.audit.observe(store.peek(message.payload.handle))

    def run_phase(self, phase: Phase) -> None:
        if phase in self.completed:
            raise ValueError(f"phase {phase} already ran")
        self.network.phase = phase
        for party in self.network.parties():
            party.begin_phase(phase)
        self.network.run_until_quiescent()
        self.completed.add(phase)
        LOGGER.debug("phase_done", phase=str(phase), messages=self.network.messages_sent)
        for event in self.config.churn:
            if event.after is phase:
                self.inject_churn(event)

    def inject_churn(self, event: ChurnEvent) -> None:
        if event.action is ControlAction.ADD_SERVER:
            if Phase.ENCRYPT in self.completed:
                raise ChurnRejected("a server can only join before encryption completes")
        else:
            if Phase.DECRYPT in self.completed:
                raise ChurnRejected("a server can only leave before decryption")
            if event.server not in self.key_center.active:
                raise ChurnRejected(f"server {event.server} is not active")
            if len(self.key_center.active) == 1:
                raise ChurnRejected("the last server cannot leave")

        self.network.phase = Phase.CHURN
        if event.action is ControlAction.ADD_SERVER:
            j = self._next_server
            self._next_server += 1
            self.servers[j] = Server(j, self.context)
            self.network.attach(self.servers[j])
            self.key_center.add_server(j)
        else:
            j = event.server
            self.network.close(server(j))
            self.key_center.remove_server(j)
        self.network.run_until_quiescent()
        LOGGER.info("churn_applied", action=str(event.action), server=j, after=str(event.after))

    def run(self) -> ScenarioResult:
        for phase in PIPELINE:
            if phase not in self.completed:
                self.run_phase(phase)
        return self.result()

    def result(self) -> ScenarioResult:
        config = self.config

        def collect(attribute: str) -> dict:
            # Per (client, server) values of the active servers.
            return {
                (c.index, j): getattr(c, attribute)[j]
                for c in self.clients
                for j in c.active
                if j in getattr(c, attribute)
            }

        histograms = {}
        if Phase.DECRYPT in self.completed:
            for c in self.clients:
                rng = self.context.rng(Stream.HISTOGRAM, c.index)
                states = [c.decrypted[j] for j in c.active]
                histograms[c.index] = reconstructed_histogram(states, config.shots, rng)

        shares = {c.index: tuple(c.record.share(j) for j in c.active) for c in self.clients}
        result = ScenarioResult(
            config=config,
            seed=config.seed,
            records={c.index: c.record for c in self.clients},
            initial_secrets={c.index: c.initial_secret for c in self.clients},
            secrets={c.index: c.current_secret for c in self.clients},
            reconstructed={i: reconstruct_secret(s, len(s)) for i, s in shares.items()},
            active_servers={c.index: tuple(c.active) for c in self.clients},
            shares=shares,
            encryption_keys=collect("keys"),
            decryption_keys=collect("decryption_keys"),
            evaluated=collect("evaluated"),
            decrypted=collect("decrypted"),
            histograms=histograms,
            qber_reports={(c.index, j): r for c in self.clients for j, r in c.reports.items()},
            audit=self.audit,
            trace=list(self.network.trace),
            messages_sent=self.network.messages_sent,
        )
        return dataclasses.replace(result, verified=verify_homomorphism(result, config))


def verify_homomorphism(result: ScenarioResult, config: ScenarioConfig | None = None) -> bool:
    """True iff every client's decrypted registers equal direct evaluation of its plaintext."""
    config = config or result.config
    for i, shares in result.shares.items():
        circuit = config.circuit_for(i)
        for share in shares:
            decrypted = result.decrypted.get((i, share.server_id))
            if decrypted is None:
                return False
            expected = apply_circuit(share.register(), circuit)
            if not state_equal_up_to_global_phase(decrypted, expected, VERIFY_TOL):
                LOGGER.warning("verification_failed", client=i, server=share.server_id)
                return False
    return True


def inject_churn(run: ScenarioRun, event: ChurnEvent) -> ScenarioRun:
    """Apply a churn event to a running scenario between phases."""
    run.inject_churn(event)
    return run


@tracker(ulogger=LOGGER, log_start=True)
def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    return ScenarioRun(config).run()
