"""Tests for GHZ secret splitting and server churn."""

from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from structlog.testing import capture_logs

from multiparty_qhe.quantum.measurement import GhzOutcome
from multiparty_qhe.quantum.state import prepare_bell_pair
from multiparty_qhe.splitting import ghz_split
from multiparty_qhe.splitting.ghz_split import (
    IncompleteShares,
    add_server,
    reconstruct_secret,
    remove_server,
    split_secret,
)
from multiparty_qhe.splitting.records import Share, SplitRecord, parity, xor_bits

secrets = st.text(alphabet="01", min_size=1, max_size=6)


class TestXorBits:
    def test_xor(self):
        assert xor_bits("1100", "1010", "0001") == "0111"

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            xor_bits("1", "10")

    def test_nothing_to_xor(self):
        with pytest.raises(ValueError):
            xor_bits()


class TestSplitSecret:
    @settings(max_examples=40, deadline=None)
    @given(secret=secrets, servers=st.integers(1, 4), seed=st.integers(0, 2**32 - 1))
    def test_shares_reconstruct_the_secret(self, secret, servers, seed):
        record = split_secret(secret, servers, np.random.default_rng(seed))
        assert reconstruct_secret(record.shares(), servers) == secret
        assert record.secret == secret

    def test_first_and_second_particles_agree_in_parity(self, rng):
        record = split_secret("1011", 3, rng)
        for first, second in zip(
            record.first_particle_x_bits, record.second_particle_x_bits, strict=True
        ):
            assert parity(first) == parity(second)

    def test_ghz_outcomes_carry_the_bits(self, rng):
        record = split_secret("0110", 3, rng)
        assert [o.secret_bit for o in record.ghz_outcomes] == [0, 1, 1, 0]
        assert all(o.num_particles == 3 for o in record.ghz_outcomes)

    def test_single_server_share_is_the_secret(self, rng):
        record = split_secret("1010", 1, rng)
        assert record.share(1).x_bits == "1010"
        assert record.ghz_outcomes[0] == GhzOutcome("0", -1)

    def test_prepares_one_bell_pair_per_bit_and_server(self, rng, monkeypatch):
        prepared = []

        def counting_bell_pair():
            prepared.append(1)
            return prepare_bell_pair()

        monkeypatch.setattr(ghz_split, "prepare_bell_pair", counting_bell_pair)
        record = split_secret("101", 4, rng)
        assert len(prepared) == record.bell_pairs == 12

        extended, _ = add_server(record, rng)
        assert len(prepared) == extended.bell_pairs == 15

    def test_share_register_is_a_basis_state(self, rng):
        share = split_secret("11", 2, rng).share(2)
        assert share.register().amplitude(share.x_bits) == pytest.approx(1)

    def test_rejects_bad_input(self, rng):
        with pytest.raises(ValueError):
            split_secret("12", 2, rng)
        with pytest.raises(ValueError):
            split_secret("10", 0, rng)

    def test_logs_split(self, rng, debug_logging):
        with capture_logs() as logs:
            split_secret("10", 2, rng, client_id=3)
        events = [e for e in logs if e["event"] == "split_done"]
        assert events and events[0]["client"] == 3


class TestReconstruct:
    def test_missing_share(self, rng):
        record = split_secret("101", 3, rng)
        with pytest.raises(IncompleteShares):
            reconstruct_secret(record.shares()[:2], 3)

    def test_duplicate_server(self, rng):
        record = split_secret("101", 2, rng)
        share = record.share(1)
        with pytest.raises(IncompleteShares):
            reconstruct_secret([share, share], 2)

    def test_unknown_server(self, rng):
        with pytest.raises(KeyError):
            split_secret("1", 2, rng).share(5)


class TestChurn:
    @settings(max_examples=30, deadline=None)
    @given(secret=secrets, servers=st.integers(1, 3), seed=st.integers(0, 2**32 - 1))
    def test_add_server_xors_the_new_share(self, secret, servers, seed):
        rng = np.random.default_rng(seed)
        record = split_secret(secret, servers, rng)
        extended, share = add_server(record, rng)
        assert share.server_id == servers + 1
        assert extended.secret == xor_bits(secret, share.x_bits)
        assert reconstruct_secret(extended.shares(), servers + 1) == extended.secret

    def test_add_existing_server(self, rng):
        with pytest.raises(ValueError):
            add_server(split_secret("1", 2, rng), rng, server_id=2)

    @settings(max_examples=30, deadline=None)
    @given(secret=secrets, seed=st.integers(0, 2**32 - 1))
    def test_remove_server_keeps_reconstruction_consistent(self, secret, seed):
        record = split_secret(secret, 3, np.random.default_rng(seed))
        adjusted = remove_server(secret, record.share(2))
        remaining = [record.share(1), record.share(3)]
        assert reconstruct_secret(remaining, 2) == adjusted

    def test_remove_with_wrong_width(self):
        with pytest.raises(ValueError):
            remove_server("101", Share(1, "10"))


class TestSplitRecord:
    def test_rejects_contradicting_outcome(self):
        with pytest.raises(ValueError):
            SplitRecord(
                client_id=1,
                num_servers=2,
                num_bits=1,
                ghz_outcomes=(GhzOutcome("00", 1),),
                first_particle_x_bits=("10",),
                second_particle_x_bits=("01",),
                server_ids=(1, 2),
            )

    def test_second_particles_match_share(self, rng):
        record = split_secret("10", 2, rng)
        states = record.second_particle_states(1)
        share = record.share(1)
        for state, bit in zip(states, share.x_bits, strict=True):
            assert abs(state.amplitude("1")) == pytest.approx(2**-0.5)
            expected_sign = -1 if bit == "1" else 1
            assert np.sign(state.amplitude("1").real) == expected_sign


# Chi-square critical values at p = 0.01, keyed by degrees of freedom.
CHI_SQUARE_CRITICAL = {1: 6.635, 3: 11.345}
UNIFORMITY_TRIALS = 2000
PROPER_SUBSETS = [c for size in (1, 2) for c in combinations(range(3), size)]


def chi_square(observed):
    expected = sum(observed) / len(observed)
    return sum((count - expected) ** 2 / expected for count in observed)


@pytest.fixture(scope="module")
def three_server_rows():
    """Share bits of 2000 independent three-server splits of the secret 1."""
    rng = np.random.default_rng(2000)
    return [split_secret("1", 3, rng).second_particle_x_bits[0] for _ in range(UNIFORMITY_TRIALS)]


@pytest.mark.slow
class TestShareUniformity:
    @pytest.mark.parametrize("columns", PROPER_SUBSETS)
    def test_proper_subsets_are_uniform(self, three_server_rows, columns):
        counts = Counter("".join(row[c] for c in columns) for row in three_server_rows)
        patterns = [format(v, f"0{len(columns)}b") for v in range(2 ** len(columns))]
        observed = [counts.get(pattern, 0) for pattern in patterns]
        assert chi_square(observed) < CHI_SQUARE_CRITICAL[len(observed) - 1]

    def test_all_shares_together_fix_the_secret(self, three_server_rows):
        assert {parity(row) for row in three_server_rows} == {1}

    def test_added_server_share_is_uniform(self):
        rng = np.random.default_rng(2001)
        record = split_secret("1", 2, rng)
        ones = sum(int(add_server(record, rng)[1].x_bits) for _ in range(UNIFORMITY_TRIALS))
        assert abs(ones / UNIFORMITY_TRIALS - 0.5) <= 0.05
