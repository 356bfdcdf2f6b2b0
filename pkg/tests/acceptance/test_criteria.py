"""Tests for the acceptance criteria, at smoke-run sizes unless marked slow."""

import dataclasses

import numpy as np
import pytest
from structlog.testing import capture_logs

from multiparty_qhe.acceptance.criteria import (
    CRITERIA,
    FULL,
    QUICK,
    CriterionResult,
    check_churn,
    check_determinism,
    check_efficiency,
    check_ghz_machinery,
    check_homomorphism,
    check_mixedness,
    check_rotation_identities,
    churn_config,
    churn_oracle_holds,
    homomorphism_trial,
    parity_violations,
    rotation_identity_deviation,
    run_suite,
    swapping_norms,
)
from multiparty_qhe.encryption.substitution import SubstitutionMode
from multiparty_qhe.protocol.messages import ControlAction
from multiparty_qhe.protocol.scenario import run_scenario

SEED = 20240401


class TestCriterionResult:
    def test_str(self):
        result = CriterionResult(8, "efficiency", True, "efficiency(2)=1/4")
        assert str(result) == "criterion 8 efficiency: PASS efficiency(2)=1/4"

    def test_numbers(self):
        assert sorted(CRITERIA) == list(range(1, 10))


class TestQuickCriteria:
    def test_homomorphism(self):
        assert check_homomorphism(QUICK, SEED).passed

    def test_frame_mode_trials(self):
        rng = np.random.default_rng(4)
        assert all(homomorphism_trial(rng, 3, 12, 0.5) for _ in range(10))

    def test_initial_mode_agrees_without_t_gates(self):
        rng = np.random.default_rng(4)
        mode = SubstitutionMode.INITIAL
        assert all(homomorphism_trial(rng, 3, 12, 0.0, mode) for _ in range(10))

    def test_mixedness(self):
        assert check_mixedness(QUICK, SEED).passed

    def test_rotation_identities(self):
        assert check_rotation_identities(QUICK, SEED).passed

    @pytest.mark.parametrize("a,b", [(0, 0), (0, 1), (1, 0), (1, 1)])
    def test_identity_deviation_is_tiny(self, a, b):
        angles = np.array([0.3, -1.2, 2.5, 0.7])
        assert rotation_identity_deviation(a, b, angles) < 1e-12

    def test_swapping_norms(self):
        norms = swapping_norms()
        assert len(norms) == 8
        assert norms == pytest.approx([1.0] * 8, abs=1e-10)

    def test_parity_law(self):
        assert parity_violations(10, np.random.default_rng(9)) == 0

    def test_ghz_machinery(self):
        assert check_ghz_machinery(QUICK, SEED).passed

    def test_churn(self):
        result = check_churn(QUICK, SEED)
        assert result.passed, result.detail

    def test_efficiency(self):
        result = check_efficiency(QUICK, SEED)
        assert result.passed
        assert result.detail == "efficiency(2)=1/4"

    def test_determinism(self):
        assert check_determinism(QUICK, SEED).passed


class TestChurnOracle:
    @pytest.mark.parametrize("action", list(ControlAction))
    def test_holds_on_random_scenarios(self, action):
        rng = np.random.default_rng(12)
        for _ in range(3):
            result = run_scenario(churn_config(rng, action, 2))
            assert churn_oracle_holds(result)

    def test_detects_a_wrong_secret(self):
        rng = np.random.default_rng(12)
        result = run_scenario(churn_config(rng, ControlAction.ADD_SERVER, 2))
        client = next(iter(result.secrets))
        wrong = "".join("1" if c == "0" else "0" for c in result.secrets[client])
        tampered = dataclasses.replace(result, secrets={**result.secrets, client: wrong})
        assert not churn_oracle_holds(tampered)


class TestRunSuite:
    def test_selection_in_order(self):
        results = run_suite(QUICK, seed=SEED, only=[8, 4, 8])
        assert [r.number for r in results] == [4, 8]
        assert all(r.passed for r in results)

    def test_logs_each_criterion(self, debug_logging):
        with capture_logs() as logs:
            run_suite(QUICK, seed=SEED, only=[8])
        done = [e for e in logs if e["event"] == "criterion_done"]
        assert done and done[0]["number"] == 8


@pytest.mark.slow
class TestFullCriteria:
    def test_full_suite(self):
        results = run_suite(FULL, seed=SEED)
        assert [r.number for r in results] == list(range(1, 10))
        failed = [str(r) for r in results if not r.passed]
        assert not failed
