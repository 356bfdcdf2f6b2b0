"""Multi-party dynamic quantum homomorphic encryption simulator."""

__version__ = "0.1.0"
