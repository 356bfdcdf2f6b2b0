from multiparty_qhe.protocol.errors import (
    ChannelClosed,
    ChurnRejected,
    InvalidConfig,
    OwnershipViolation,
    ScenarioAborted,
    ScenarioError,
    TraceWriteError,
)
from multiparty_qhe.protocol.messages import KEY_CENTER, Message, PartyId, Role
from multiparty_qhe.protocol.network import SimulatedNetwork
from multiparty_qhe.protocol.phases import PIPELINE, Phase
from multiparty_qhe.protocol.registers import RegisterStore
from multiparty_qhe.protocol.scenario import (
    ScenarioResult,
    ScenarioRun,
    inject_churn,
    run_scenario,
    verify_homomorphism,
)
from multiparty_qhe.protocol.scenario_config import (
    ChurnEvent,
    ScenarioConfig,
    load_scenario,
    parse_scenario,
)
from multiparty_qhe.protocol.trace import TraceRecord, write_trace

__all__ = [
    "KEY_CENTER",
    "PIPELINE",
    "ChannelClosed",
    "ChurnEvent",
    "ChurnRejected",
    "InvalidConfig",
    "Message",
    "OwnershipViolation",
    "PartyId",
    "Phase",
    "RegisterStore",
    "Role",
    "ScenarioAborted",
    "ScenarioConfig",
    "ScenarioError",
    "ScenarioResult",
    "ScenarioRun",
    "SimulatedNetwork",
    "TraceRecord",
    "TraceWriteError",
    "inject_churn",
    "load_scenario",
    "parse_scenario",
    "run_scenario",
    "verify_homomorphism",
    "write_trace",
]
