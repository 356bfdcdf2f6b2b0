"""Tests for the seeded random streams."""

import pytest

from multiparty_qhe.utils.randomness import Stream, random_bits, stream


class TestStream:
    def test_same_path_same_draws(self):
        first = stream(5, Stream.SPLIT, 1).integers(1 << 30, size=8)
        second = stream(5, Stream.SPLIT, 1).integers(1 << 30, size=8)
        assert (first == second).all()

    def test_paths_are_independent_of_request_order(self):
        first = stream(5, Stream.KEYGEN, 1, 2).random(4)
        stream(5, Stream.KEYGEN, 1, 3).random(100)
        assert (stream(5, Stream.KEYGEN, 1, 2).random(4) == first).all()

    def test_paths_differ(self):
        a = stream(5, Stream.SPLIT, 1).random(4)
        b = stream(5, Stream.SPLIT, 2).random(4)
        c = stream(6, Stream.SPLIT, 1).random(4)
        assert not (a == b).all()
        assert not (a == c).all()

    def test_negative_seed(self):
        with pytest.raises(ValueError):
            stream(-1)


def test_random_bits():
    bits = random_bits(stream(1, Stream.SECRET), 64)
    assert len(bits) == 64
    assert set(bits) <= {"0", "1"}
