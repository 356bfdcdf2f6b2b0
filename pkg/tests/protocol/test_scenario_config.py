"""Tests for scenario configuration parsing."""

import pytest

from multiparty_qhe.keyexchange.exchange import Eavesdropper
from multiparty_qhe.protocol.errors import InvalidConfig
from multiparty_qhe.protocol.messages import ControlAction
from multiparty_qhe.protocol.phases import Phase
from multiparty_qhe.protocol.scenario_config import (
    ChurnEvent,
    load_scenario,
    parse_scenario,
)

MINIMAL = """\
[scenario]
clients = 1
servers = 2
bits = 2

[circuit]
wires 2
H 0
CNOT 0 1
"""


def with_lines(extra_scenario="", tail=""):
    head, circuit = MINIMAL.split("\n\n")
    return f"{head}\n{extra_scenario}\n\n{circuit}{tail}"


def field_of(text):
    with pytest.raises(InvalidConfig) as exc_info:
        parse_scenario(text)
    return exc_info.value.field


class TestParseScenario:
    def test_minimal(self):
        config = parse_scenario(MINIMAL)
        assert (config.num_clients, config.num_servers, config.num_bits) == (1, 2, 2)
        assert config.circuit.gate_count == 2
        assert config.seed is None
        assert config.eavesdropper is Eavesdropper.NONE
        assert config.churn == ()

    def test_default_rounds(self):
        assert parse_scenario(MINIMAL).rounds == 128
        assert parse_scenario(with_lines("keygen_rounds = 300")).rounds == 300

    def test_optional_fields(self):
        config = parse_scenario(
            with_lines(
                "seed = 9\nshots = 10\nqber_threshold = 0.2\n"
                "sample_fraction = 0.5\neavesdropper = intercept_resend\naudit = yes"
            )
        )
        assert config.seed == 9
        assert config.shots == 10
        assert config.qber_threshold == 0.2
        assert config.sample_fraction == 0.5
        assert config.eavesdropper is Eavesdropper.INTERCEPT_RESEND
        assert config.audit is True

    def test_comments_and_blank_lines(self):
        text = "# header\n\n" + MINIMAL.replace("bits = 2", "bits = 2  # two wires")
        assert parse_scenario(text).num_bits == 2

    def test_experiment_file(self, scenario_dir):
        config = load_scenario(scenario_dir / "four_qubit_experiment.scn")
        assert config.secrets == {1: "1010"}
        assert config.keys[(1, 1)].to_text() == "a=3 b=5"
        assert config.circuit.t_count == 1

    def test_churn_file(self, scenario_dir):
        config = load_scenario(scenario_dir / "two_clients_churn.scn")
        assert config.audit
        assert config.circuit_for(1) is config.circuit
        assert config.circuit_for(2).gate_count == 4
        assert config.churn == (
            ChurnEvent(Phase.KEYGEN, ControlAction.ADD_SERVER),
            ChurnEvent(Phase.EVALUATE, ControlAction.REMOVE_SERVER, 2),
        )


class TestInvalidConfig:
    def test_servers_beyond_the_split_register(self):
        assert field_of(MINIMAL.replace("servers = 2", "servers = 9")) == "servers"
        assert parse_scenario(MINIMAL.replace("servers = 2", "servers = 8")).num_servers == 8

    def test_bits_and_wires_disagree(self):
        assert field_of(MINIMAL.replace("bits = 2", "bits = 3")) == "bits"

    def test_missing_required(self):
        assert field_of(MINIMAL.replace("servers = 2\n", "")) == "servers"

    def test_unknown_key(self):
        assert field_of(with_lines("colour = blue")) == "colour"

    def test_not_an_integer(self):
        assert field_of(with_lines("shots = many")) == "shots"

    def test_missing_sections(self):
        assert field_of(MINIMAL.split("\n\n")[0]) == "[circuit]"
        assert field_of(MINIMAL.split("\n\n")[1]) == "[scenario]"

    def test_unknown_and_duplicate_sections(self):
        assert field_of(MINIMAL + "\n[extras]\n") == "[extras]"
        assert field_of(MINIMAL + "\n[circuit]\nwires 2\n") == "[circuit]"

    def test_bad_circuit_line(self):
        assert field_of(MINIMAL + "FOO 1\n") == "circuit"

    def test_override_for_missing_client(self):
        assert field_of(MINIMAL + "\n[circuit.2]\nwires 2\n") == "circuit.2"

    def test_secret_width(self):
        assert field_of(with_lines("secret.1 = 101")) == "secret.1"

    def test_key_too_wide(self):
        assert field_of(with_lines("key.1.1 = a=7 b=0")) == "key.1.1"

    def test_key_for_unknown_server(self):
        assert field_of(with_lines("key.1.3 = a=1 b=0")) == "key.1.3"

    def test_key_for_server_added_by_churn(self):
        text = with_lines("key.1.3 = a=1 b=0", "\n[churn]\nafter=split action=add\n")
        assert parse_scenario(text).keys[(1, 3)].a == "01"

    def test_threshold_range(self):
        assert field_of(with_lines("qber_threshold = 1.5")) == "qber_threshold"

    def test_unknown_eavesdropper(self):
        assert field_of(with_lines("eavesdropper = mallory")) == "eavesdropper"

    def test_audit_limited_to_small_registers(self):
        text = MINIMAL.replace("bits = 2", "bits = 4").replace("wires 2", "wires 4")
        assert field_of(text.replace("bits = 4", "bits = 4\naudit = true")) == "audit"

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(InvalidConfig) as exc_info:
            load_scenario(tmp_path / "missing.scn")
        assert exc_info.value.field == "config"


class TestChurnLines:
    def test_remove_needs_server(self):
        assert field_of(MINIMAL + "\n[churn]\nafter=keygen action=remove\n") == "churn.server"

    def test_add_takes_no_server(self):
        assert field_of(MINIMAL + "\n[churn]\nafter=keygen action=add server=3\n") == (
            "churn.server"
        )

    def test_unknown_phase(self):
        assert field_of(MINIMAL + "\n[churn]\nafter=lunch action=add\n") == "churn"

    def test_churn_is_not_a_pipeline_phase(self):
        assert field_of(MINIMAL + "\n[churn]\nafter=churn action=add\n") == "churn.after"

    def test_stray_token(self):
        assert field_of(MINIMAL + "\n[churn]\nafter=keygen action=add now\n") == "churn"

    def test_factory_default(self, churn_event):
        assert churn_event.after is Phase.KEYGEN
        assert churn_event.action is ControlAction.ADD_SERVER
