"""Finite-outcome measurement statistics and classical Fisher information.

Outcome distributions come from the trace rule p(x) = tr{rho m_x}; the
classical Fisher information of the outcome distribution is summed over
the support and compared against the Helstrom bound. Outcome spaces are
finite: the measure-theoretic integral over outcomes is realized as a sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidPovm, SupportRegularityError
from .hermitian import HermitianMatrix, eigh, real_trace_product
from .models import ParametricStateModel
from .quantum import helstrom_info_sld, wy_info_generic

SUPPORT_PROB = 1e-12
SCORE_BLOWUP_ATOL = 1e-8
COMPLETENESS_ATOL = 1e-10
EFFECT_EIG_FLOOR = -1e-10
BOUND_SLACK = 1e-9
NEAR_ZERO_INFO = 1e-8


class Povm:
    """Finite list of PSD effects summing to the identity."""

    __slots__ = ("effects",)

    def __init__(self, effects):
        mats = [e if isinstance(e, HermitianMatrix) else HermitianMatrix(e) for e in effects]
        if not mats:
            raise InvalidPovm("a measurement needs at least one effect")
        dim = mats[0].dim
        if any(m.dim != dim for m in mats):
            raise DimensionError("effects have mixed dimensions")
        for i, m in enumerate(mats):
            lam_min = float(eigh(m).eigenvalues[0])
            if lam_min < EFFECT_EIG_FLOOR:
                raise InvalidPovm(f"effect {i} has eigenvalue {lam_min:.3e} < {EFFECT_EIG_FLOOR}")
        total = sum(m.mat for m in mats)
        dev = float(np.linalg.norm(total - np.eye(dim)))
        if dev > COMPLETENESS_ATOL:
            raise InvalidPovm(f"effects sum deviates from identity by {dev:.3e}")
        self.effects = tuple(mats)

    @property
    def dim(self) -> int:
        return self.effects[0].dim

    def __len__(self) -> int:
        return len(self.effects)

    def __iter__(self):
        return iter(self.effects)

    def __getitem__(self, i):
        return self.effects[i]

    def merged(self, i: int, j: int) -> "Povm":
        """Coarse-grain by summing effects i and j into one outcome."""
        if i == j:
            raise ValueError("cannot merge an effect with itself")
        keep = [m.mat for k, m in enumerate(self.effects) if k not in (i, j)]
        keep.append(self.effects[i].mat + self.effects[j].mat)
        return Povm(keep)


def basis_povm(dim: int) -> Povm:
    """Projective measurement onto the computational basis."""
    eye = np.eye(dim)
    return Povm([np.outer(eye[:, j], eye[:, j]) for j in range(dim)])


@dataclass(frozen=True)
class OutcomeDistribution:
    """Outcome probabilities and their support mask (p > 1e-12)."""

    probs: np.ndarray
    support: np.ndarray

    def __len__(self) -> int:
        return self.probs.shape[0]


def outcome_probs(model: ParametricStateModel, theta: float, povm: Povm) -> OutcomeDistribution:
    """Trace-rule distribution p_x = tr{rho(theta) m_x}."""
    rho = model.rho(theta)
    if rho.dim != povm.dim:
        raise DimensionError(f"state dim {rho.dim} vs measurement dim {povm.dim}")
    probs = np.array([real_trace_product([rho, m]) for m in povm])
    if float(np.min(probs)) < -SUPPORT_PROB:
        raise InvalidPovm(f"negative outcome probability {float(np.min(probs)):.3e}")
    probs = np.clip(probs, 0.0, None)
    total = float(np.sum(probs))
    if abs(total - 1.0) > 1e-10:
        raise InvalidPovm(f"outcome probabilities sum to {total!r}")
    return OutcomeDistribution(probs=probs, support=probs > SUPPORT_PROB)


def outcome_scores(model: ParametricStateModel, theta: float, povm: Povm, h: float | None = None) -> np.ndarray:
    """Per-outcome derivatives tr{drho m_x}; they sum to 0."""
    drho = model.drho(theta, h)
    return np.array([real_trace_product([drho, m]) for m in povm])


def classical_fisher(model: ParametricStateModel, theta: float, povm: Povm, h: float | None = None) -> float:
    """sum over the support of (tr{drho m_x})^2 / p_x.

    An outcome with vanishing probability but non-vanishing score makes the
    score function blow up and raises SupportRegularityError.
    """
    dist = outcome_probs(model, theta, povm)
    scores = outcome_scores(model, theta, povm, h)
    total = 0.0
    for p, s, on_support in zip(dist.probs, scores, dist.support):
        if not on_support:
            if abs(s) > SCORE_BLOWUP_ATOL:
                raise SupportRegularityError(
                    f"outcome with probability {p:.3e} has score {s:.3e}"
                )
            continue
        total += s * s / p
    return total


@dataclass(frozen=True)
class BoundCheck:
    """Classical information against the Helstrom bound at one theta."""

    i: float
    i_h: float
    gap: float
    ok: bool
    crb: float | None  # 1 / i
    qcrb: float | None  # 1 / i_h
    approx_qcrb: float | None  # 1 / i_wy


def bound_check(model: ParametricStateModel, theta: float, povm: Povm, h: float | None = None) -> BoundCheck:
    """Check i(theta, M) <= I_H(theta) and report the reciprocal bounds."""
    i = classical_fisher(model, theta, povm, h)
    i_h = helstrom_info_sld(model, theta, h)
    i_wy = wy_info_generic(model, theta, h)
    return BoundCheck(
        i=i,
        i_h=i_h,
        gap=i_h - i,
        ok=bool(i <= i_h + BOUND_SLACK),
        crb=1.0 / i if i > NEAR_ZERO_INFO else None,
        qcrb=1.0 / i_h if i_h > NEAR_ZERO_INFO else None,
        approx_qcrb=1.0 / i_wy if i_wy > NEAR_ZERO_INFO else None,
    )


def random_povm(dim: int, n_effects: int, seed: int) -> Povm:
    """Seeded random measurement: PSD draws A_x = B_x B_x*, normalized by
    S^{-1/2} (sum A) S^{-1/2} so the effects sum to the identity."""
    if n_effects < 1:
        raise InvalidPovm("n_effects must be >= 1")
    rng = np.random.default_rng(seed)
    for _ in range(10):
        draws = []
        for _ in range(n_effects):
            b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            draws.append(b @ b.conj().T)
        total = sum(draws)
        dec = eigh(HermitianMatrix(total))
        if float(dec.eigenvalues[0]) > 1e-10:
            inv_root = (dec.eigenvectors / np.sqrt(dec.eigenvalues)) @ dec.eigenvectors.conj().T
            return Povm([inv_root @ a @ inv_root for a in draws])
    raise InvalidPovm("normalizer stayed singular after 10 draws")
