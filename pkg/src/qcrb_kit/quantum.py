"""Quantum information quantities for one-parameter state models.

Symmetric logarithmic derivative (SLD), Helstrom information, and
Wigner-Yanase skew information, each computable along independent routes:

* definitional: tr{rho L^2} with L from the eigenbasis solve, and
  4 tr{[(sqrt rho)']^2} from the matrix-square-root derivative;
* closed forms for two-dimensional orthogonal mixtures in terms of the
  mixing weight and the pure-state information;
* closed forms for spectral mixtures in terms of the eigenvalue weights
  and projector derivatives.

Cross-route residuals are the core correctness surface and are collected
by ``relation_report``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryRegularityError, DomainError
from .hermitian import (
    SUPPORT_TOL,
    HermitianMatrix,
    real_trace_product,
    solve_symmetric_product,
    trace_product,
)
from .models import (
    ParametricStateModel,
    PureFamily,
    PureStateModel,
    QubitMixtureModel,
    SpectralMixtureModel,
)

INFO_FLOOR = -1e-9
NEAR_ZERO_INFO = 1e-8
SUM_IMAG_ATOL = 1e-9


def _check_nonnegative(value: float, label: str) -> float:
    if value < INFO_FLOOR:
        raise ValueError(f"{label} = {value!r} below noise floor {INFO_FLOOR}")
    return value


@dataclass(frozen=True)
class SldResult:
    """Symmetric logarithmic derivative with support metadata."""

    matrix: HermitianMatrix
    support_dropped: bool  # rho was rank deficient; solution zeroed off-support
    score_mean: float  # tr{rho L}, 0 up to numerical noise


def sld(model: ParametricStateModel, theta: float, h: float | None = None) -> SldResult:
    """Hermitian L solving rho L + L rho = 2 drho, in the eigenbasis of rho.

    Entries over eigenvalue pairs with lam_i + lam_j below the support
    tolerance are zeroed; an inconsistent right-hand side there raises
    RankDeficientInconsistent.
    """
    rho = model.rho(theta)
    drho = model.drho(theta, h)
    dec = rho.decomposition
    l_mat = solve_symmetric_product(rho, drho, decomposition=dec)
    dropped = bool(2.0 * dec.eigenvalues[0] <= SUPPORT_TOL)
    score = real_trace_product([rho, l_mat])
    return SldResult(matrix=l_mat, support_dropped=dropped, score_mean=score)


def sld_spectral_sum(eigenvalues, projectors, drho, tol: float = SUPPORT_TOL) -> HermitianMatrix:
    """SLD as the double projector sum sum_{l,k} 2/(lam_l+lam_k) P_l drho P_k.

    Independent of the eigenbasis solve; pairs below the support tolerance
    are skipped. Used as a cross-check oracle for ``sld``.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    d = np.asarray(drho.mat if isinstance(drho, HermitianMatrix) else drho, dtype=complex)
    total = np.zeros_like(d)
    for l, p_l in enumerate(projectors):
        for k, p_k in enumerate(projectors):
            denom = lam[l] + lam[k]
            if denom <= tol:
                continue
            total += (2.0 / denom) * (p_l @ d @ p_k)
    return HermitianMatrix(total)


def helstrom_info_sld(model: ParametricStateModel, theta: float, h: float | None = None) -> float:
    """tr{rho L^2}: the definitional route."""
    result = sld(model, theta, h)
    value = real_trace_product([model.rho(theta), result.matrix, result.matrix])
    return _check_nonnegative(value, "Helstrom information")


def _pure_projector_derivative(family, theta: float, h: float | None):
    if isinstance(family, PureStateModel):
        family = family.family
    if not isinstance(family, PureFamily):
        raise TypeError(f"expected a pure family, got {type(family).__name__}")
    step = h if h is not None else 1e-5
    return family.projector_derivative(theta, step)


def helstrom_info_pure(family, theta: float, h: float | None = None) -> float:
    """Pure-state shortcut 2 tr{(drho)^2}; accepts a PureFamily or PureStateModel."""
    dp = _pure_projector_derivative(family, theta, h)
    return _check_nonnegative(2.0 * real_trace_product([dp, dp]), "pure Helstrom information")


def wy_info_pure(family, theta: float, h: float | None = None) -> float:
    """Skew information of a pure state: 4 tr{(drho)^2}, twice the Helstrom value."""
    dp = _pure_projector_derivative(family, theta, h)
    return _check_nonnegative(4.0 * real_trace_product([dp, dp]), "pure skew information")


def helstrom_info_qubit_closed(model: QubitMixtureModel, theta: float, h: float | None = None) -> float:
    """Weight-based closed form for the two-dimensional orthogonal mixture.

    (w')^2 / (w(1-w)) + (2w-1)^2 I_H1, where I_H1 is the Helstrom
    information of the first pure family. Finite for all w in (0,1),
    including w = 1/2.
    """
    step = model.fd_step if h is None else h
    w = model.weight.value(theta)
    dw = model.weight.slope(theta, step)
    ih1 = helstrom_info_pure(model.psi1, theta, step)
    value = dw * dw / (w * (1.0 - w)) + (2.0 * w - 1.0) ** 2 * ih1
    return _check_nonnegative(value, "closed-form Helstrom information")


def wy_info_qubit_closed(model: QubitMixtureModel, theta: float, h: float | None = None) -> float:
    """Weight-based closed form for the skew information of the mixture.

    (w')^2 / (w(1-w)) + (1 - 2 sqrt(w(1-w))) I_WY1.
    """
    step = model.fd_step if h is None else h
    w = model.weight.value(theta)
    dw = model.weight.slope(theta, step)
    iwy1 = wy_info_pure(model.psi1, theta, step)
    value = dw * dw / (w * (1.0 - w)) + (1.0 - 2.0 * np.sqrt(w * (1.0 - w))) * iwy1
    return _check_nonnegative(float(value), "closed-form skew information")


def alpha_beta(w: float, dw: float) -> tuple[float, float]:
    """Affine coefficients relating skew to Helstrom information in 2 dims.

    alpha = 2 / (1 + 2 sqrt(w(1-w))) lies in [1, 2], minimal at w = 1/2;
    beta = -(1 - 2 sqrt(w(1-w))) / (1 + 2 sqrt(w(1-w))) * (w')^2/(w(1-w))
    is nonpositive and vanishes for constant weights.
    """
    if not (0.0 < w < 1.0):
        raise DomainError(f"weight {w!r} outside (0, 1)")
    root = 2.0 * np.sqrt(w * (1.0 - w))
    alpha = 2.0 / (1.0 + root)
    beta = -(1.0 - root) / (1.0 + root) * dw * dw / (w * (1.0 - w))
    return float(alpha), float(beta)


def gamma_qubit_closed(model: QubitMixtureModel, theta: float, h: float | None = None) -> float:
    """Two-dimensional gap I_WY - I_H = (1 - 2 sqrt(w(1-w)))^2 I_H1."""
    w = model.weight.value(theta)
    ih1 = helstrom_info_pure(model.psi1, theta, model.fd_step if h is None else h)
    return float((1.0 - 2.0 * np.sqrt(w * (1.0 - w))) ** 2 * ih1)


def _spectral_ingredients(model: SpectralMixtureModel, theta: float, h: float | None):
    lam = model.lambdas_at(theta)
    dlam = model.dlambdas_at(theta, h)
    projs = model.projectors_at(theta)
    dprojs = model.dprojectors_at(theta, h)
    return lam, dlam, projs, dprojs


def _eigenweight_fisher(lam: np.ndarray, dlam: np.ndarray) -> float:
    """sum (lam')^2 / lam over the support, guarding vanishing eigenvalues."""
    total = 0.0
    for l in range(lam.shape[0]):
        if lam[l] <= SUPPORT_TOL:
            if abs(dlam[l]) > 1e-8:
                raise BoundaryRegularityError(
                    f"eigenvalue {l} vanishes while its derivative is {dlam[l]:.3e}"
                )
            continue
        total += dlam[l] * dlam[l] / lam[l]
    return total


def helstrom_info_spectral(model: SpectralMixtureModel, theta: float, h: float | None = None) -> float:
    """Spectral closed form for the Helstrom information.

    sum_l (lam'_l)^2/lam_l
    + sum_l sum_{k!=l} sum_z 4 lam_l (lam_k - lam_l) lam_z / (lam_l+lam_k)^2
      * tr{P_l dP_k dP_z}.
    Eigenvalue pairs below the support tolerance are excluded.
    """
    lam, dlam, projs, dprojs = _spectral_ingredients(model, theta, h)
    n = model.dim
    total = complex(_eigenweight_fisher(lam, dlam))
    for l in range(n):
        for k in range(n):
            if k == l:
                continue
            pair = lam[l] + lam[k]
            if pair <= SUPPORT_TOL:
                continue
            coeff = 4.0 * lam[l] * (lam[k] - lam[l]) / (pair * pair)
            if coeff == 0.0:
                continue
            for z in range(n):
                if lam[z] == 0.0:
                    continue
                total += coeff * lam[z] * trace_product([projs[l], dprojs[k], dprojs[z]])
    if abs(total.imag) > SUM_IMAG_ATOL:
        raise ValueError(f"spectral Helstrom sum has imaginary residue {total.imag:.3e}")
    return _check_nonnegative(float(total.real), "spectral Helstrom information")


def wy_info_spectral(model: SpectralMixtureModel, theta: float, h: float | None = None) -> float:
    """Spectral closed form for the skew information.

    sum_l lam_l I_WY,l + sum_l (lam'_l)^2/lam_l
    + 4 sum_l sum_{k!=l} sqrt(lam_l lam_k) tr{dP_l dP_k},
    with I_WY,l = 4 tr{(dP_l)^2} the pure-state skew information.
    """
    lam, dlam, projs, dprojs = _spectral_ingredients(model, theta, h)
    n = model.dim
    total = complex(_eigenweight_fisher(lam, dlam))
    for l in range(n):
        total += 4.0 * lam[l] * trace_product([dprojs[l], dprojs[l]])
        for k in range(n):
            if k == l:
                continue
            root = np.sqrt(lam[l] * lam[k])
            if root == 0.0:
                continue
            total += 4.0 * root * trace_product([dprojs[l], dprojs[k]])
    if abs(total.imag) > SUM_IMAG_ATOL:
        raise ValueError(f"spectral skew sum has imaginary residue {total.imag:.3e}")
    return _check_nonnegative(float(total.real), "spectral skew information")


def gamma_spectral(model: SpectralMixtureModel, theta: float, h: float | None = None) -> float:
    """Eigenvalue-based gap between skew and Helstrom information.

    gamma = -4 sum_l sum_{k!=l} [ (lam_l - sqrt(lam_l lam_k)) tr{dP_l dP_k}
            + sum_z lam_l (lam_k - lam_l) lam_z / (lam_l+lam_k)^2
              tr{P_l dP_k dP_z} ],
    and I_WY = I_H + gamma. Vanishes when all eigenvalue weights coincide.
    """
    lam, _, projs, dprojs = _spectral_ingredients(model, theta, h)
    n = model.dim
    total = 0.0 + 0.0j
    for l in range(n):
        for k in range(n):
            if k == l:
                continue
            total += (lam[l] - np.sqrt(lam[l] * lam[k])) * trace_product([dprojs[l], dprojs[k]])
            pair = lam[l] + lam[k]
            if pair <= SUPPORT_TOL:
                continue
            coeff = lam[l] * (lam[k] - lam[l]) / (pair * pair)
            if coeff == 0.0:
                continue
            for z in range(n):
                if lam[z] == 0.0:
                    continue
                total += coeff * lam[z] * trace_product([projs[l], dprojs[k], dprojs[z]])
    total *= -4.0
    if abs(total.imag) > SUM_IMAG_ATOL:
        raise ValueError(f"gamma sum has imaginary residue {total.imag:.3e}")
    return float(total.real)


def wy_info_generic(model: ParametricStateModel, theta: float, h: float | None = None) -> float:
    """4 tr{[(sqrt rho)']^2}: the definitional skew-information route."""
    d = model.dsqrt_rho(theta, h)
    value = 4.0 * real_trace_product([d.matrix, d.matrix])
    return _check_nonnegative(value, "skew information")


@dataclass
class QuantumInfoResult:
    """Information quantities, relation residuals and bounds at one theta."""

    theta: float
    kind: str
    i_h_sld: float
    i_wy_generic: float
    i_h_closed: float | None = None
    i_wy_closed: float | None = None
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    score_mean: float = 0.0
    sharp_bound: float | None = None
    approx_bound: float | None = None
    residuals: dict[str, float] = field(default_factory=dict)
    route_errors: dict[str, str] = field(default_factory=dict)

    @property
    def ratio(self) -> float | None:
        if self.i_h_sld > NEAR_ZERO_INFO:
            return self.i_wy_generic / self.i_h_sld
        return None

    @property
    def gap(self) -> float:
        return self.i_wy_generic - self.i_h_sld


def _try_route(result: QuantumInfoResult, name: str, fn):
    try:
        return fn()
    except Exception as exc:  # noqa: BLE001 - a failed route must not abort the report
        result.route_errors[name] = f"{type(exc).__name__}: {exc}"
        return None


def relation_report(model: ParametricStateModel, theta: float, h: float | None = None) -> QuantumInfoResult:
    """Evaluate every applicable route at theta and record their residuals.

    Always computes the definitional routes (SLD-based Helstrom, generic
    skew); closed forms, alpha/beta/gamma and relation residuals are filled
    in per model kind. A failing optional route is recorded in
    ``route_errors`` instead of aborting.
    """
    s = sld(model, theta, h)
    rho = model.rho(theta)
    i_h = _check_nonnegative(
        real_trace_product([rho, s.matrix, s.matrix]), "Helstrom information"
    )
    out = QuantumInfoResult(
        theta=theta,
        kind=model.kind,
        i_h_sld=i_h,
        i_wy_generic=wy_info_generic(model, theta, h),
        score_mean=s.score_mean,
    )
    res = out.residuals
    if isinstance(model, PureStateModel):
        out.i_h_closed = _try_route(out, "i_h_closed", lambda: helstrom_info_pure(model, theta, h))
        res["pure_doubling_abs"] = abs(out.i_wy_generic - 2.0 * out.i_h_sld)
        if out.i_h_sld > NEAR_ZERO_INFO:
            res["pure_doubling"] = res["pure_doubling_abs"] / out.i_h_sld
    elif isinstance(model, QubitMixtureModel):
        w = model.weight.value(theta)
        dw = model.weight.slope(theta, model.fd_step if h is None else h)
        out.alpha, out.beta = alpha_beta(w, dw)
        if model.canonical:
            out.i_h_closed = _try_route(
                out, "i_h_closed", lambda: helstrom_info_qubit_closed(model, theta, h)
            )
        else:
            out.route_errors["i_h_closed"] = "not applicable: non-canonical psi2"
        out.i_wy_closed = _try_route(out, "i_wy_closed", lambda: wy_info_qubit_closed(model, theta, h))
        out.gamma = _try_route(out, "gamma", lambda: gamma_qubit_closed(model, theta, h))
        scale = max(1.0, out.i_h_sld)
        res["prop1"] = float(abs(out.i_wy_generic - (out.alpha * out.i_h_sld + out.beta)) / scale)
        if out.i_h_closed is not None and out.i_wy_closed is not None:
            res["prop1_closed"] = float(
                abs(out.i_wy_closed - (out.alpha * out.i_h_closed + out.beta)) / scale
            )
        if out.gamma is not None:
            res["prop2"] = float(abs(out.i_wy_generic - out.i_h_sld - out.gamma) / scale)
    elif isinstance(model, SpectralMixtureModel):
        out.i_h_closed = _try_route(out, "i_h_closed", lambda: helstrom_info_spectral(model, theta, h))
        out.i_wy_closed = _try_route(out, "i_wy_closed", lambda: wy_info_spectral(model, theta, h))
        out.gamma = _try_route(out, "gamma", lambda: gamma_spectral(model, theta, h))
        scale = max(1.0, out.i_h_sld)
        if out.gamma is not None:
            res["prop2"] = float(abs(out.i_wy_generic - out.i_h_sld - out.gamma) / scale)
            if out.i_h_closed is not None and out.i_wy_closed is not None:
                res["prop2_closed"] = float(
                    abs(out.i_wy_closed - out.i_h_closed - out.gamma) / scale
                )
    if out.i_h_closed is not None:
        out.i_h_closed = float(out.i_h_closed)
        res["route_i_h"] = float(abs(out.i_h_closed - out.i_h_sld) / max(1.0, out.i_h_sld))
    if out.i_wy_closed is not None:
        out.i_wy_closed = float(out.i_wy_closed)
        res["route_i_wy"] = float(
            abs(out.i_wy_closed - out.i_wy_generic) / max(1.0, out.i_wy_generic)
        )
    if out.i_h_sld > NEAR_ZERO_INFO:
        out.sharp_bound = 1.0 / out.i_h_sld
    if out.i_wy_generic > NEAR_ZERO_INFO:
        out.approx_bound = 1.0 / out.i_wy_generic
    return out
