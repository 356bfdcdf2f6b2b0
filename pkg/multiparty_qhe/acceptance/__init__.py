from multiparty_qhe.acceptance.criteria import (
    CRITERIA,
    FULL,
    QUICK,
    CriterionResult,
    SuiteSizes,
    run_suite,
)
from multiparty_qhe.acceptance.experiment import (
    FOUR_QUBIT_SCENARIO,
    FourQubitReport,
    four_qubit_config,
    run_four_qubit_experiment,
)

__all__ = [
    "CRITERIA",
    "FOUR_QUBIT_SCENARIO",
    "FULL",
    "QUICK",
    "CriterionResult",
    "FourQubitReport",
    "SuiteSizes",
    "four_qubit_config",
    "run_four_qubit_experiment",
    "run_suite",
]
