"""Monte Carlo verification of the Cramér-Rao bound chain.

A locally unbiased one-step estimator makes the classical bound an exact
single-sample identity: t(x) = theta0 + score(x) / (p(x) i), so the
per-sample variance equals 1/i by direct summation. Sampling then only has
to confirm the empirical variance statistically. Sampling uses numpy's
PCG64 generator; identical (config, seed) gives identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroInformationError
from .classical import Povm, classical_fisher, outcome_probs, outcome_scores
from .models import ParametricStateModel
from .quantum import helstrom_info_sld, wy_info_generic

MIN_SAMPLES = 100
NEAR_ZERO_INFO = 1e-8


@dataclass(frozen=True)
class SimConfig:
    """One simulation run: model, measurement, true parameter, sampling plan."""

    model: ParametricStateModel
    povm: Povm
    theta0: float
    n_samples: int
    seed: int
    estimator: str = "one-step locally unbiased"

    def __post_init__(self):
        if self.n_samples < MIN_SAMPLES:
            raise ValueError(f"n_samples {self.n_samples} < minimum {MIN_SAMPLES}")
        if self.estimator != "one-step locally unbiased":
            raise ValueError(f"unknown estimator {self.estimator!r}")


@dataclass(frozen=True)
class SimResult:
    """Empirical variance next to the classical, sharp and approximate bounds."""

    empirical_var: float
    crb: float
    qcrb: float
    approx_qcrb: float
    n_samples: int
    standard_error_of_var: float

    def to_json_dict(self) -> dict:
        return {
            "empirical_var": self.empirical_var,
            "crb": self.crb,
            "qcrb": self.qcrb,
            "approx_qcrb": self.approx_qcrb,
            "n_samples": self.n_samples,
            "standard_error_of_var": self.standard_error_of_var,
        }


def sample_outcomes(
    model: ParametricStateModel, theta0: float, povm: Povm, n: int, seed: int
) -> np.ndarray:
    """Draw n outcome indices from the trace-rule distribution at theta0."""
    dist = outcome_probs(model, theta0, povm)
    probs = dist.probs / float(np.sum(dist.probs))
    rng = np.random.default_rng(seed)
    return rng.choice(len(probs), size=n, p=probs)


def one_step_estimator(
    model: ParametricStateModel, theta0: float, povm: Povm, h: float | None = None
) -> np.ndarray:
    """Per-outcome estimate t(x) = theta0 + score(x)/(p(x) i(theta0)).

    Locally unbiased by construction (the scores sum to zero), with exact
    single-sample variance 1/i. Outcomes off the support never occur and
    get the neutral value theta0.
    """
    info = classical_fisher(model, theta0, povm, h)
    if info <= NEAR_ZERO_INFO:
        raise ZeroInformationError(
            f"classical information {info:.3e} at theta0={theta0}; estimator undefined"
        )
    dist = outcome_probs(model, theta0, povm)
    scores = outcome_scores(model, theta0, povm, h)
    t = np.full(len(dist), float(theta0))
    on = dist.support
    t[on] = theta0 + (scores[on] / dist.probs[on]) / info
    return t


def exact_estimator_moments(
    model: ParametricStateModel, theta0: float, povm: Povm, h: float | None = None
) -> tuple[float, float]:
    """(mean, variance) of the one-step estimator by direct summation."""
    dist = outcome_probs(model, theta0, povm)
    t = one_step_estimator(model, theta0, povm, h)
    mean = float(np.sum(dist.probs * t))
    var = float(np.sum(dist.probs * (t - theta0) ** 2))
    return mean, var


def run_sim(cfg: SimConfig) -> SimResult:
    """Sample the estimator and compare its variance against the bound chain."""
    t = one_step_estimator(cfg.model, cfg.theta0, cfg.povm)
    idx = sample_outcomes(cfg.model, cfg.theta0, cfg.povm, cfg.n_samples, cfg.seed)
    samples = t[idx]
    n = cfg.n_samples
    mean = float(np.mean(samples))
    devs = samples - mean
    m2 = float(np.mean(devs**2))
    m4 = float(np.mean(devs**4))
    empirical_var = m2 * n / (n - 1)
    se_var = float(np.sqrt(max(m4 - m2 * m2, 0.0) / n))
    info = classical_fisher(cfg.model, cfg.theta0, cfg.povm)
    i_h = helstrom_info_sld(cfg.model, cfg.theta0)
    i_wy = wy_info_generic(cfg.model, cfg.theta0)
    return SimResult(
        empirical_var=empirical_var,
        crb=1.0 / info,
        qcrb=1.0 / i_h,
        approx_qcrb=1.0 / i_wy,
        n_samples=n,
        standard_error_of_var=se_var,
    )


def bound_chain_ok(result: SimResult) -> bool:
    """qcrb <= crb and empirical variance within 3 standard errors of crb."""
    return (
        result.crb >= result.qcrb - 1e-12
        and result.empirical_var >= result.crb - 3.0 * result.standard_error_of_var
    )
