"""Line-oriented circuit text format (`.qc`).

    wires 4          # header: register width
    H 0
    CNOT 1 2
    RZ 1 pi/4        # angles: decimal radians or the tokens pi/4, -pi/4

`#` starts a comment; blank lines are ignored. Serialization is canonical: one
gate per line, no comments, no trailing newline.
"""

from __future__ import annotations

import math
import re

from multiparty_qhe.circuits.model import Circuit, CircuitError, Gate, GateKind

ANGLE_TOKENS = {"pi/4": math.pi / 4, "-pi/4": -math.pi / 4}
# Angles this close to +-pi/4 are printed as tokens.
ANGLE_TOKEN_TOL = 1e-12

_RE_HEADER = re.compile(r"^wires\s+(\d+)$")
_RE_WIRE = re.compile(r"^\d+$")


class ParseError(CircuitError):
    """Malformed line in circuit text."""


class WireError(CircuitError):
    """Wire index out of range, or a CNOT whose wires coincide."""


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_angle(token: str, line_no: int) -> float:
    if token in ANGLE_TOKENS:
        return ANGLE_TOKENS[token]
    try:
        angle = float(token)
    except ValueError as exc:
        raise ParseError(f"invalid angle {token!r}", line_no) from exc
    if not math.isfinite(angle):
        raise ParseError(f"angle must be finite, got {token!r}", line_no)
    return angle


def _parse_gate_line(tokens: list[str], num_wires: int, line_no: int) -> Gate:
    name, *args = tokens
    try:
        kind = GateKind(name.upper())
    except ValueError as exc:
        raise ParseError(f"unknown gate {name!r}", line_no) from exc

    expected = kind.arity + (1 if kind.is_rotation else 0)
    if len(args) < expected:
        what = "an angle" if kind.is_rotation and len(args) == kind.arity else "more operands"
        raise ParseError(f"{kind} needs {what}", line_no)
    if len(args) > expected:
        raise ParseError(f"{kind} has unexpected operands {args[expected:]}", line_no)

    wires = []
    for token in args[: kind.arity]:
        if not _RE_WIRE.match(token):
            raise ParseError(f"invalid wire {token!r}", line_no)
        wire = int(token)
        if wire >= num_wires:
            raise WireError(f"wire {wire} out of range for {num_wires} wires", line_no)
        wires.append(wire)
    if len(set(wires)) != len(wires):
        raise WireError(f"{kind} wires must differ, got {wires}", line_no)

    angle = _parse_angle(args[kind.arity], line_no) if kind.is_rotation else None
    return Gate(kind, tuple(wires), angle)


def parse_circuit(text: str) -> Circuit:
    """Parse circuit text into a Circuit."""
    num_wires = None
    gates: list[Gate] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if num_wires is None:
            match = _RE_HEADER.match(line)
            if not match:
                raise ParseError("first line must be 'wires <n>'", line_no)
            num_wires = int(match.group(1))
            if num_wires < 1:
                raise ParseError("wire count must be positive", line_no)
            continue
        gates.append(_parse_gate_line(line.split(), num_wires, line_no))
    if num_wires is None:
        raise ParseError("missing 'wires <n>' header")
    return Circuit(num_wires, tuple(gates))


def format_angle(angle: float) -> str:
    for token, value in ANGLE_TOKENS.items():
        if abs(angle - value) <= ANGLE_TOKEN_TOL:
            return token
    return format(angle, ".17g")


def serialize_gate(gate: Gate) -> str:
    parts = [gate.kind.value, *(str(w) for w in gate.wires)]
    if gate.angle is not None:
        parts.append(format_angle(gate.angle))
    return " ".join(parts)


def serialize_circuit(circuit: Circuit) -> str:
    """Canonical text of a circuit."""
    lines = [f"wires {circuit.num_wires}", *(serialize_gate(g) for g in circuit.gates)]
    return "\n".join(lines)
