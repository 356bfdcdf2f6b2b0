"""Circuit intermediate representation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum


class GateKind(StrEnum):
    X = "X"
    Z = "Z"
    H = "H"
    S = "S"
    T = "T"
    TDAG = "TDAG"
    CNOT = "CNOT"
    RZ = "RZ"
    RY = "RY"

    @property
    def arity(self) -> int:
        return 2 if self is GateKind.CNOT else 1

    @property
    def is_rotation(self) -> bool:
        return self in (GateKind.RZ, GateKind.RY)

    @property
    def is_t_type(self) -> bool:
        return self in (GateKind.T, GateKind.TDAG)


CLIFFORD_KINDS = (GateKind.X, GateKind.Z, GateKind.H, GateKind.S, GateKind.CNOT)
T_KINDS = (GateKind.T, GateKind.TDAG)


class CircuitError(ValueError):
    """Invalid gate or circuit. `line` is the 1-based source line when parsing."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    wires: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if len(self.wires) != self.kind.arity:
            raise CircuitError(
                f"{self.kind} takes {self.kind.arity} wire(s), got {len(self.wires)}"
            )
        if len(set(self.wires)) != len(self.wires):
            raise CircuitError(f"{self.kind} wires must be distinct, got {self.wires}")
        if any(w < 0 for w in self.wires):
            raise CircuitError(f"negative wire in {self.wires}")
        if self.kind.is_rotation:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError(f"{self.kind} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise CircuitError(f"{self.kind} takes no angle")


@dataclass(frozen=True)
class Circuit:
    num_wires: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.num_wires < 1:
            raise CircuitError("a circuit needs at least one wire")
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if max(gate.wires) >= self.num_wires:
                raise CircuitError(f"{gate.kind} on wire {max(gate.wires)} >= {self.num_wires}")

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    @property
    def t_count(self) -> int:
        return sum(1 for g in self.gates if g.kind.is_t_type)

    @property
    def is_clifford(self) -> bool:
        return all(g.kind in CLIFFORD_KINDS for g in self.gates)
