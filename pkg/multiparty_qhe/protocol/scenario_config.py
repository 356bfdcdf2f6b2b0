"""Scenario configuration and the `.scn` file format.

    [scenario]
    clients = 2
    servers = 3
    bits = 4
    seed = 7
    secret.1 = 1010
    key.1.1 = a=3 b=5

    [circuit]          # default circuit, circuit text format
    wires 4
    H 0

    [circuit.2]        # override for client 2
    ...

    [churn]
    after=keygen action=add
    after=evaluate action=remove server=2
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from multiparty_qhe import settings
from multiparty_qhe.circuits.model import Circuit, CircuitError
from multiparty_qhe.circuits.text_format import parse_circuit
from multiparty_qhe.encryption.keys import InvalidKey, QotpKey
from multiparty_qhe.keyexchange.exchange import Eavesdropper
from multiparty_qhe.protocol.errors import InvalidConfig
from multiparty_qhe.protocol.messages import ControlAction
from multiparty_qhe.protocol.phases import PIPELINE, Phase

# Largest register audited against the key-averaged ciphertext.
AUDIT_MAX_BITS = 3

_RE_SECTION = re.compile(r"^\[([a-z]+)(?:\.(\d+))?\]$")
_RE_SECRET_KEY = re.compile(r"^secret\.(\d+)$")
_RE_QOTP_KEY = re.compile(r"^key\.(\d+)\.(\d+)$")
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass(frozen=True)
class ChurnEvent:
    after: Phase
    action: ControlAction
    server: int | None = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "after", Phase(self.after))
            object.__setattr__(self, "action", ControlAction(self.action))
        except ValueError as exc:
            raise InvalidConfig("churn", str(exc)) from exc
        if self.after not in PIPELINE:
            raise InvalidConfig("churn.after", f"{self.after} is not a pipeline phase")
        if self.action is ControlAction.REMOVE_SERVER and self.server is None:
            raise InvalidConfig("churn.server", "action=remove requires server=<j>")
        if self.action is ControlAction.ADD_SERVER and self.server is not None:
            raise InvalidConfig("churn.server", "action=add assigns the server index itself")


@dataclass(frozen=True)
class ScenarioConfig:
    num_clients: int
    num_servers: int
    num_bits: int
    circuit: Circuit
    circuits: dict[int, Circuit] = field(default_factory=dict)
    seed: int | None = None
    shots: int = settings.DEFAULT_SHOTS
    qber_threshold: float = settings.QBER_THRESHOLD
    sample_fraction: float = settings.SAMPLE_FRACTION
    keygen_rounds: int | None = None
    eavesdropper: Eavesdropper = Eavesdropper.NONE
    audit: bool = False
    secrets: dict[int, str] = field(default_factory=dict)
    keys: dict[tuple[int, int], QotpKey] = field(default_factory=dict)
    churn: tuple[ChurnEvent, ...] = ()

    def __post_init__(self):
        for name, value in (
            ("clients", self.num_clients),
            ("servers", self.num_servers),
            ("bits", self.num_bits),
        ):
            if value < 1:
                raise InvalidConfig(name, f"must be >= 1, got {value}")
        if 2 * self.num_servers > settings.MAX_QUBITS:
            raise InvalidConfig(
                "servers",
                f"splitting across {self.num_servers} servers needs {2 * self.num_servers} qubits,"
                f" the cap is {settings.MAX_QUBITS}",
            )
        if self.circuit.num_wires != self.num_bits:
            raise InvalidConfig(
                "bits", f"{self.num_bits} bits but the circuit has {self.circuit.num_wires} wires"
            )
        for index, circuit in self.circuits.items():
            if not 1 <= index <= self.num_clients:
                raise InvalidConfig(f"circuit.{index}", "no such client")
            if circuit.num_wires != self.num_bits:
                raise InvalidConfig(
                    f"circuit.{index}",
                    f"{circuit.num_wires} wires, expected {self.num_bits} bits",
                )
        if self.seed is not None and self.seed < 0:
            raise InvalidConfig("seed", "must be non-negative")
        if self.shots < 1:
            raise InvalidConfig("shots", f"must be >= 1, got {self.shots}")
        if not 0.0 <= self.qber_threshold <= 1.0:
            raise InvalidConfig("qber_threshold", f"must be in [0, 1], got {self.qber_threshold}")
        if not 0.0 < self.sample_fraction < 1.0:
            raise InvalidConfig(
                "sample_fraction", f"must be in (0, 1), got {self.sample_fraction}"
            )
        if self.keygen_rounds is not None and self.keygen_rounds < 1:
            raise InvalidConfig("keygen_rounds", f"must be >= 1, got {self.keygen_rounds}")
        object.__setattr__(self, "eavesdropper", Eavesdropper(self.eavesdropper))
        if self.audit and self.num_bits > AUDIT_MAX_BITS:
            raise InvalidConfig("audit", f"audit mode supports at most {AUDIT_MAX_BITS} bits")
        for index, secret in self.secrets.items():
            if not 1 <= index <= self.num_clients:
                raise InvalidConfig(f"secret.{index}", "no such client")
            if len(secret) != self.num_bits or any(c not in "01" for c in secret):
                raise InvalidConfig(f"secret.{index}", f"expected {self.num_bits} bits")
        max_server = self.num_servers + sum(
            1 for e in self.churn if e.action is ControlAction.ADD_SERVER
        )
        for (i, j), key in self.keys.items():
            if not 1 <= i <= self.num_clients or not 1 <= j <= max_server:
                raise InvalidConfig(f"key.{i}.{j}", "no such client or server")
            if key.num_qubits != self.num_bits:
                raise InvalidConfig(f"key.{i}.{j}", f"expected a {self.num_bits}-qubit key")
        object.__setattr__(self, "churn", tuple(self.churn))

    @property
    def rounds(self) -> int:
        """Key-exchange rounds per (client, server) pair."""
        if self.keygen_rounds is not None:
            return self.keygen_rounds
        return max(128, 32 * self.num_bits)

    def circuit_for(self, client: int) -> Circuit:
        return self.circuits.get(client, self.circuit)


def _parse_int(name: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise InvalidConfig(name, f"expected an integer, got {value!r}") from None


def _parse_float(name: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise InvalidConfig(name, f"expected a number, got {value!r}") from None


def _parse_bool(name: str, value: str) -> bool:
    lowered = value.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise InvalidConfig(name, f"expected true or false, got {value!r}")


def _parse_churn_line(line: str) -> ChurnEvent:
    fields = {}
    for token in line.split():
        name, sep, value = token.partition("=")
        if not sep or name not in ("after", "action", "server"):
            raise InvalidConfig("churn", f"unexpected token {token!r}")
        fields[name] = value
    if "after" not in fields or "action" not in fields:
        raise InvalidConfig("churn", f"line {line!r} needs after= and action=")
    server = _parse_int("churn.server", fields["server"]) if "server" in fields else None
    return ChurnEvent(fields["after"], fields["action"], server)


def _collect_sections(text: str) -> dict[tuple[str, int | None], list[str]]:
    sections: dict[tuple[str, int | None], list[str]] = {}
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        match = _RE_SECTION.match(stripped)
        if match:
            name, index = match.group(1), match.group(2)
            current = (name, int(index) if index is not None else None)
            if name not in ("scenario", "circuit", "churn") or (
                index is not None and name != "circuit"
            ):
                raise InvalidConfig(f"[{stripped[1:-1]}]", "unknown section")
            if current in sections:
                raise InvalidConfig(f"[{stripped[1:-1]}]", "section appears twice")
            sections[current] = []
            continue
        if current is None:
            if stripped:
                raise InvalidConfig("config", f"line {line_no}: content before the first section")
            continue
        sections[current].append(raw)
    return sections


def _parse_circuit_section(name: str, lines: list[str]) -> Circuit:
    try:
        return parse_circuit("\n".join(lines))
    except CircuitError as exc:
        raise InvalidConfig(name, str(exc)) from exc


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse `.scn` text into a ScenarioConfig."""
    sections = _collect_sections(text)
    if ("scenario", None) not in sections:
        raise InvalidConfig("[scenario]", "section is missing")
    if ("circuit", None) not in sections:
        raise InvalidConfig("[circuit]", "section is missing")

    values: dict[str, str] = {}
    secrets: dict[int, str] = {}
    raw_keys: dict[tuple[int, int], str] = {}
    for raw in sections[("scenario", None)]:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = (part.strip() for part in line.partition("="))
        if not sep:
            raise InvalidConfig("scenario", f"expected 'key = value', got {line!r}")
        if match := _RE_SECRET_KEY.match(name):
            secrets[int(match.group(1))] = value
        elif match := _RE_QOTP_KEY.match(name):
            raw_keys[(int(match.group(1)), int(match.group(2)))] = value
        elif name in _SCALAR_FIELDS:
            values[name] = value
        else:
            raise InvalidConfig(name, "unknown key")

    for required in ("clients", "servers", "bits"):
        if required not in values:
            raise InvalidConfig(required, "is required")
    num_bits = _parse_int("bits", values["bits"])

    keys = {}
    for (i, j), text_key in raw_keys.items():
        try:
            keys[(i, j)] = QotpKey.from_text(text_key, num_bits)
        except InvalidKey as exc:
            raise InvalidConfig(f"key.{i}.{j}", str(exc)) from exc

    options = {}
    for name, (target, convert) in _SCALAR_FIELDS.items():
        if name in values and target is not None:
            options[target] = convert(name, values[name])

    churn = tuple(
        _parse_churn_line(line)
        for raw in sections.get(("churn", None), [])
        if (line := raw.split("#", 1)[0].strip())
    )
    overrides = {
        index: _parse_circuit_section(f"circuit.{index}", lines)
        for (name, index), lines in sections.items()
        if name == "circuit" and index is not None
    }
    eavesdropper = values.get("eavesdropper", Eavesdropper.NONE)
    try:
        eavesdropper = Eavesdropper(eavesdropper)
    except ValueError:
        raise InvalidConfig("eavesdropper", f"unknown eavesdropper {eavesdropper!r}") from None

    return ScenarioConfig(
        num_clients=_parse_int("clients", values["clients"]),
        num_servers=_parse_int("servers", values["servers"]),
        num_bits=num_bits,
        circuit=_parse_circuit_section("circuit", sections[("circuit", None)]),
        circuits=overrides,
        eavesdropper=eavesdropper,
        secrets=secrets,
        keys=keys,
        churn=churn,
        **options,
    )


# key -> (ScenarioConfig field, converter); None marks keys handled separately.
_SCALAR_FIELDS = {
    "clients": (None, _parse_int),
    "servers": (None, _parse_int),
    "bits": (None, _parse_int),
    "eavesdropper": (None, None),
    "seed": ("seed", _parse_int),
    "shots": ("shots", _parse_int),
    "qber_threshold": ("qber_threshold", _parse_float),
    "sample_fraction": ("sample_fraction", _parse_float),
    "keygen_rounds": ("keygen_rounds", _parse_int),
    "audit": ("audit", _parse_bool),
}


def load_scenario(path: str | Path) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidConfig("config", f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_scenario(text)
