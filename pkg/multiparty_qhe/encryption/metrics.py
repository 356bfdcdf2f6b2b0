from fractions import Fraction

from multiparty_qhe.quantum.errors import InvalidInput


def efficiency(num_servers: int) -> Fraction:
    """Qubit efficiency of splitting one secret bit over M servers: 1 / (2M).

    Each shared bit consumes M Bell pairs, i.e. 2M qubits.
    """
    if num_servers < 1:
        raise InvalidInput(f"efficiency needs at least one server, got {num_servers}")
    return Fraction(1, 2 * num_servers)
