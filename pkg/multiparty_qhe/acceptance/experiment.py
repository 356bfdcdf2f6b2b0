"""Built-in four-qubit experiment.

One client holding |1010> delegates H then X on wire 0, T on wire 1, CNOT 1->2
and S then Z on wire 3 to a single server, encrypted under the fixed key
{(0,0),(0,1),(1,0),(1,1)}. The decrypted register is (|0010> - |1010>)/sqrt(2)
up to a global phase.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import structlog

from multiparty_qhe import settings
from multiparty_qhe.encryption.keys import QotpKey
from multiparty_qhe.protocol.scenario import ScenarioResult, run_scenario
from multiparty_qhe.protocol.scenario_config import ScenarioConfig, parse_scenario
from multiparty_qhe.quantum.state import basis_label

LOGGER = structlog.get_logger(__name__)

FOUR_QUBIT_SCENARIO = """\
[scenario]
clients = 1
servers = 1
bits = 4
secret.1 = 1010
key.1.1 = a=3 b=5

[circuit]
wires 4
H 0
X 0
T 1
CNOT 1 2
S 3
Z 3
"""

EXPECTED_OUTCOMES = ("0010", "1010")
EXPECTED_DECRYPTION_KEY = "{(0,0),(0,1),(1,0),(1,0)}"
AMPLITUDE_TOL = 1e-9
SIGMA_WIDTH = 3


def four_qubit_config(seed: int | None = None, shots: int | None = None) -> ScenarioConfig:
    config = parse_scenario(FOUR_QUBIT_SCENARIO)
    return dataclasses.replace(
        config,
        seed=settings.EXPERIMENT_SEED if seed is None else seed,
        shots=settings.DEFAULT_SHOTS if shots is None else shots,
    )


@dataclass(frozen=True)
class FourQubitReport:
    result: ScenarioResult
    encryption_key: QotpKey
    decryption_key: QotpKey
    probabilities: dict[str, float]
    histogram: dict[str, float]
    shots: int

    @property
    def sigma(self) -> float:
        """Standard deviation of a sampled frequency around 1/2."""
        return math.sqrt(0.25 / self.shots)

    @property
    def amplitudes_ok(self) -> bool:
        if set(self.probabilities) != set(EXPECTED_OUTCOMES):
            return False
        return all(abs(p - 0.5) <= AMPLITUDE_TOL for p in self.probabilities.values())

    @property
    def histogram_ok(self) -> bool:
        if not set(self.histogram) <= set(EXPECTED_OUTCOMES):
            return False
        tolerance = SIGMA_WIDTH * self.sigma
        return all(abs(self.histogram.get(o, 0.0) - 0.5) <= tolerance for o in EXPECTED_OUTCOMES)

    @property
    def key_ok(self) -> bool:
        return str(self.decryption_key) == EXPECTED_DECRYPTION_KEY

    @property
    def passed(self) -> bool:
        return self.amplitudes_ok and self.histogram_ok and self.key_ok and self.result.verified


def run_four_qubit_experiment(
    shots: int | None = None, seed: int | None = None
) -> FourQubitReport:
    config = four_qubit_config(seed=seed, shots=shots)
    result = run_scenario(config)
    decrypted = result.decrypted[(1, 1)]
    probabilities = {
        basis_label(index, decrypted.num_qubits): float(p)
        for index, p in enumerate(decrypted.probabilities())
        if p > AMPLITUDE_TOL
    }
    report = FourQubitReport(
        result=result,
        encryption_key=result.encryption_keys[(1, 1)],
        decryption_key=result.decryption_keys[(1, 1)],
        probabilities=probabilities,
        histogram=result.histograms[1],
        shots=config.shots,
    )
    LOGGER.info(
        "four_qubit_experiment",
        shots=config.shots,
        amplitudes_ok=report.amplitudes_ok,
        histogram_ok=report.histogram_ok,
        key_ok=report.key_ok,
    )
    return report
