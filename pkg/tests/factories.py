"""Factories for test data."""

import factory

from multiparty_qhe.circuits.model import Circuit, Gate, GateKind
from multiparty_qhe.encryption.keys import QotpKey
from multiparty_qhe.protocol.messages import ControlAction
from multiparty_qhe.protocol.phases import Phase
from multiparty_qhe.protocol.scenario_config import ChurnEvent, ScenarioConfig


def small_circuit(num_wires: int) -> Circuit:
    """H, T and S on the first wire, a CNOT fan-out to the next one."""
    gates = [Gate(GateKind.H, (0,)), Gate(GateKind.T, (0,))]
    if num_wires > 1:
        gates.append(Gate(GateKind.CNOT, (0, 1)))
    gates.append(Gate(GateKind.S, (num_wires - 1,)))
    gates.append(Gate(GateKind.TDAG, (num_wires - 1,)))
    return Circuit(num_wires, tuple(gates))


class QotpKeyFactory(factory.Factory):
    class Meta:
        model = QotpKey

    a = factory.Sequence(lambda n: format(n % 16, "04b"))
    b = factory.Sequence(lambda n: format((5 * n + 3) % 16, "04b"))


class ScenarioConfigFactory(factory.Factory):
    class Meta:
        model = ScenarioConfig

    num_clients = 1
    num_servers = 2
    num_bits = 2
    circuit = factory.LazyAttribute(lambda o: small_circuit(o.num_bits))
    seed = factory.Sequence(lambda n: n + 1)
    shots = 256


class ChurnEventFactory(factory.Factory):
    class Meta:
        model = ChurnEvent

    after = Phase.KEYGEN
    action = ControlAction.ADD_SERVER
    server = None
