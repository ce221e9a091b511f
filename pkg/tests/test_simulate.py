"""Tests for the Monte Carlo bound verification."""

import numpy as np
import pytest
from scipy import stats

from qcrb_kit.classical import Povm, basis_povm, outcome_probs
from qcrb_kit.errors import ZeroInformationError
from qcrb_kit.models import PureStateModel, rotation_family, rotation_mixture
from qcrb_kit.simulate import (
    SimConfig,
    bound_chain_ok,
    exact_estimator_moments,
    one_step_estimator,
    run_sim,
    sample_outcomes,
)

ROTATION = PureStateModel(rotation_family())


# --- sampling ------------------------------------------------------------------

def test_deterministic_distribution_gives_constant_sequence():
    seq = sample_outcomes(ROTATION, 0.0, basis_povm(2), 500, seed=1)
    assert np.all(seq == 0)


def test_empirical_frequencies_converge():
    model = rotation_mixture(0.5)  # uniform (1/2, 1/2) for any theta
    seq = sample_outcomes(model, 0.4, basis_povm(2), 100_000, seed=7)
    freq = np.bincount(seq, minlength=2) / seq.size
    assert abs(freq[0] - 0.5) <= 0.01
    assert abs(freq[1] - 0.5) <= 0.01


def test_sampling_is_seed_deterministic():
    a = sample_outcomes(ROTATION, 0.3, basis_povm(2), 2_000, seed=42)
    b = sample_outcomes(ROTATION, 0.3, basis_povm(2), 2_000, seed=42)
    np.testing.assert_array_equal(a, b)


def test_chi_square_sanity():
    theta = 0.6
    dist = outcome_probs(ROTATION, theta, basis_povm(2))
    n = 20_000
    seq = sample_outcomes(ROTATION, theta, basis_povm(2), n, seed=3)
    observed = np.bincount(seq, minlength=2)
    expected = dist.probs * n
    chi2 = float(np.sum((observed - expected) ** 2 / expected))
    assert chi2 <= stats.chi2.ppf(0.999, df=1)


# --- one-step estimator ----------------------------------------------------------

def test_estimator_attaining_measurement_variance_quarter():
    _, var = exact_estimator_moments(ROTATION, 0.3, basis_povm(2))
    assert var == pytest.approx(0.25, abs=1e-12)


def test_estimator_locally_unbiased():
    for model, povm in ((ROTATION, basis_povm(2)), (rotation_mixture(0.8), basis_povm(2))):
        mean, var = exact_estimator_moments(model, 0.3, povm)
        assert mean == pytest.approx(0.3, abs=1e-9)
        from qcrb_kit.classical import classical_fisher

        assert var == pytest.approx(1.0 / classical_fisher(model, 0.3, povm), abs=1e-9)


def test_estimator_rejects_zero_information():
    with pytest.raises(ZeroInformationError):
        one_step_estimator(ROTATION, 0.3, Povm([np.eye(2)]))


def test_two_outcome_closed_form():
    # with outcome probabilities (p, 1-p) and log-derivative scores
    # (s, -s p/(1-p)), the information is i = p s^2/(1-p) and the estimator
    # takes the two values t1 = theta0 + (1-p)/(p s), t2 = theta0 - 1/s
    theta0 = 0.3
    t = one_step_estimator(ROTATION, theta0, basis_povm(2))
    p = np.cos(theta0) ** 2
    s = -np.sin(2 * theta0) / p
    np.testing.assert_allclose(t, [theta0 + (1 - p) / (p * s), theta0 - 1.0 / s], atol=1e-12)
    # unbiasedness identity of the closed form
    assert p * t[0] + (1 - p) * t[1] == pytest.approx(theta0, abs=1e-12)


# --- run_sim -----------------------------------------------------------------------

def test_run_sim_attaining_measurement():
    cfg = SimConfig(model=ROTATION, povm=basis_povm(2), theta0=0.3, n_samples=100_000, seed=11)
    result = run_sim(cfg)
    assert result.crb == pytest.approx(0.25, abs=1e-9)
    assert result.qcrb == pytest.approx(0.25, abs=1e-9)
    assert abs(result.empirical_var - 0.25) <= 3.0 * result.standard_error_of_var
    assert bound_chain_ok(result)


def test_run_sim_reports_approximate_bound_gap():
    model = rotation_mixture(0.49)
    cfg = SimConfig(model=model, povm=basis_povm(2), theta0=0.3, n_samples=1_000, seed=2)
    result = run_sim(cfg)
    rel_gap = abs(result.approx_qcrb - result.qcrb) / result.qcrb
    assert rel_gap <= 1e-3  # near the maximum-entropy weight the bounds almost agree


def test_run_sim_seed_determinism():
    cfg = SimConfig(model=ROTATION, povm=basis_povm(2), theta0=0.3, n_samples=5_000, seed=21)
    assert run_sim(cfg) == run_sim(cfg)


def test_sim_config_validation():
    with pytest.raises(ValueError):
        SimConfig(model=ROTATION, povm=basis_povm(2), theta0=0.3, n_samples=10, seed=1)
    with pytest.raises(ValueError):
        SimConfig(
            model=ROTATION, povm=basis_povm(2), theta0=0.3, n_samples=200, seed=1,
            estimator="maximum likelihood",
        )
