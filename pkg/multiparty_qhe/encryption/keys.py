"""Quantum one-time pad keys.

A key holds one (a, b) bit pair per qubit: `a` drives the X factor and `b` the Z
factor of the pad X^a Z^b. Keys travel as `a=<hex> b=<hex>`, each hex field
zero-padded to ceil(n / 4) digits.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from multiparty_qhe.utils.randomness import random_bits

_RE_KEY_TEXT = re.compile(r"^a=([0-9a-fA-F]+)\s+b=([0-9a-fA-F]+)$")


class InvalidKey(ValueError):
    """Malformed key, or a key whose length does not match its target."""


def _check_bits(name: str, bits: str) -> None:
    if any(c not in "01" for c in bits):
        raise InvalidKey(f"key field {name} must be a bit string, got {bits!r}")


def _bits_to_hex(bits: str) -> str:
    width = math.ceil(len(bits) / 4)
    return format(int(bits, 2), f"0{width}x")


def _hex_to_bits(name: str, digits: str, num_bits: int) -> str:
    value = int(digits, 16)
    if value >= 2**num_bits:
        raise InvalidKey(f"key field {name}={digits} does not fit in {num_bits} bits")
    return format(value, f"0{num_bits}b")


@dataclass(frozen=True)
class QotpKey:
    a: str
    b: str

    def __post_init__(self):
        _check_bits("a", self.a)
        _check_bits("b", self.b)
        if len(self.a) != len(self.b):
            raise InvalidKey(f"key fields differ in length: {len(self.a)} and {len(self.b)}")
        if not self.a:
            raise InvalidKey("a key covers at least one qubit")

    @property
    def num_qubits(self) -> int:
        return len(self.a)

    @classmethod
    def zero(cls, num_qubits: int) -> QotpKey:
        return cls("0" * num_qubits, "0" * num_qubits)

    @classmethod
    def random(cls, num_qubits: int, rng: np.random.Generator) -> QotpKey:
        return cls(random_bits(rng, num_qubits), random_bits(rng, num_qubits))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> QotpKey:
        pairs = list(pairs)
        return cls("".join(str(a) for a, _ in pairs), "".join(str(b) for _, b in pairs))

    @classmethod
    def from_text(cls, text: str, num_qubits: int) -> QotpKey:
        """Parse `a=<hex> b=<hex>` for a key of `num_qubits` qubits."""
        match = _RE_KEY_TEXT.match(text.strip())
        if not match:
            raise InvalidKey(f"expected 'a=<hex> b=<hex>', got {text!r}")
        return cls(
            _hex_to_bits("a", match.group(1), num_qubits),
            _hex_to_bits("b", match.group(2), num_qubits),
        )

    def to_text(self) -> str:
        return f"a={_bits_to_hex(self.a)} b={_bits_to_hex(self.b)}"

    def pair(self, wire: int) -> tuple[int, int]:
        return int(self.a[wire]), int(self.b[wire])

    def pairs(self) -> list[tuple[int, int]]:
        return [self.pair(w) for w in range(self.num_qubits)]

    def with_pair(self, wire: int, a: int, b: int) -> QotpKey:
        return QotpKey(
            self.a[:wire] + str(a) + self.a[wire + 1 :],
            self.b[:wire] + str(b) + self.b[wire + 1 :],
        )

    def require_length(self, num_qubits: int) -> None:
        if self.num_qubits != num_qubits:
            raise InvalidKey(f"key covers {self.num_qubits} qubits, target has {num_qubits}")

    def __str__(self) -> str:
        return "{" + ",".join(f"({a},{b})" for a, b in self.pairs()) + "}"
