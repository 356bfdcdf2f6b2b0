"""Seeded, splittable random sources.

Every consumer asks for a stream by a path of small integers (e.g. ``(client,
purpose)``). Streams with different paths are statistically independent and do
not depend on the order in which they were requested, so adding a party to a run
leaves every other party's stream untouched.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Purpose codes used as the second element of a stream path."""

    SPLIT = 1
    KEYGEN = 2
    CHURN = 3
    HISTOGRAM = 4
    SECRET = 5
    EAVESDROP = 6
    RELAY = 7


def stream(seed: int, *path: int) -> np.random.Generator:
    """Return the generator for `path` under `seed`."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(p) for p in path))
    return np.random.default_rng(sequence)


def random_bits(rng: np.random.Generator, length: int) -> str:
    """Draw a uniform bit string of `length` characters."""
    return "".join(str(int(b)) for b in rng.integers(0, 2, size=length))
