"""Errors raised by the statevector engine."""


class InvalidInput(ValueError):
    """Malformed state, bit string or dimension."""


class InvalidWire(ValueError):
    """Wire index out of range or repeated."""


class InvalidGate(ValueError):
    """Unknown gate name, wrong dimension or non-unitary matrix."""


class TooLarge(ValueError):
    """Requested register exceeds the configured qubit cap."""


class ImpossiblePostSelection(RuntimeError):
    """A forced measurement outcome has zero probability on the given state."""
