"""Tests for trace records and digests."""

import io
import json

import pytest

from multiparty_qhe.protocol.errors import TraceWriteError
from multiparty_qhe.protocol.trace import (
    DIGEST_CHARS,
    TraceRecord,
    amplitude_pairs,
    payload_digest,
    write_trace,
)
from multiparty_qhe.quantum.state import StateVector, new_basis_state

RECORD = TraceRecord(1, "split", "client.1", "client.1", "LocalEvent", "0123456789abcdef")


class BrokenSink(io.StringIO):
    def write(self, text):
        raise OSError("disk full")


class TestTraceRecord:
    def test_key_order(self):
        keys = list(json.loads(RECORD.to_json()))
        assert keys == ["step", "phase", "from", "to", "payload_kind", "payload_digest"]

    def test_compact_json(self):
        assert " " not in RECORD.to_json()


class TestDigest:
    def test_independent_of_key_order(self):
        assert payload_digest({"a": 1, "b": [2]}) == payload_digest({"b": [2], "a": 1})

    def test_length_and_sensitivity(self):
        digest = payload_digest({"a": 1})
        assert len(digest) == DIGEST_CHARS
        assert digest != payload_digest({"a": 2})

    def test_negative_zero_folds(self):
        state = StateVector([complex(-0.0, -0.0), 1])
        assert amplitude_pairs(state) == [[0.0, 0.0], [1.0, 0.0]]
        assert payload_digest({"r": amplitude_pairs(state)}) == payload_digest(
            {"r": amplitude_pairs(new_basis_state(1, "1"))}
        )


class TestWriteTrace:
    def test_one_line_per_record(self):
        sink = io.StringIO()
        assert write_trace([RECORD, RECORD], sink) == 2
        assert sink.getvalue().count("\n") == 2

    def test_sink_failure(self):
        with pytest.raises(TraceWriteError):
            write_trace([RECORD], BrokenSink())
