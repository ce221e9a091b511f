"""Tests for the information quantities and their cross-route relations."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcrb_kit.errors import BoundaryRegularityError, DomainError
from qcrb_kit.models import (
    PureFamily,
    PureStateModel,
    SpectralMixtureModel,
    WeightFunction,
    complex_rotation_family,
    fixed_spectrum_model,
    qubit_mixture_as_spectral,
    random_pure_family,
    random_spectral_model,
    rotation_family,
    rotation_mixture,
    sine_weight,
)
from qcrb_kit.quantum import (
    alpha_beta,
    gamma_qubit_closed,
    gamma_spectral,
    helstrom_info_pure,
    helstrom_info_qubit_closed,
    helstrom_info_sld,
    helstrom_info_spectral,
    relation_report,
    sld,
    sld_spectral_sum,
    wy_info_generic,
    wy_info_qubit_closed,
    wy_info_spectral,
)

FROZEN = PureStateModel(PureFamily(dim=2, psi=lambda t: np.array([1.0, 0.0])))


# --- sld -----------------------------------------------------------------------

def test_sld_pure_state_is_twice_the_derivative():
    model = PureStateModel(rotation_family())
    for theta in (0.2, 0.9):
        result = sld(model, theta)
        np.testing.assert_allclose(result.matrix.mat, 2.0 * model.drho(theta).mat, atol=1e-10)
        assert result.support_dropped
        assert abs(result.score_mean) <= 1e-9


def test_sld_constant_maximally_mixed_state_vanishes():
    model = rotation_mixture(0.5)
    np.testing.assert_allclose(sld(model, 0.4).matrix.mat, np.zeros((2, 2)), atol=1e-10)


def test_sld_solve_matches_projector_sum():
    model = rotation_mixture(0.8)
    for theta in (0.1, 0.7):
        rho = model.rho(theta)
        a = sld(model, theta).matrix.mat
        dec = rho.decomposition
        b = sld_spectral_sum(dec.eigenvalues, dec.projectors(), model.drho(theta)).mat
        assert np.linalg.norm(a - b) <= 1e-10


def test_zero_mean_score_across_catalog():
    from qcrb_kit.models import builtin_models

    for name, model in builtin_models().items():
        for theta in model.sample_thetas:
            assert abs(sld(model, theta).score_mean) <= 1e-9, name


def test_sld_rejects_inconsistent_rank_deficiency():
    from qcrb_kit.errors import RankDeficientInconsistent
    from qcrb_kit.models import ParametricStateModel

    class InconsistentModel(ParametricStateModel):
        def __init__(self):
            super().__init__(2)

        def rho_matrix(self, theta):
            return np.diag([1.0, 0.0])

        def _drho_analytic(self, theta, h):
            return np.diag([0.5, -0.5])

    with pytest.raises(RankDeficientInconsistent):
        sld(InconsistentModel(), 0.1)


# --- Helstrom routes --------------------------------------------------------------

def test_helstrom_rotation_family_is_four():
    model = PureStateModel(rotation_family())
    assert helstrom_info_sld(model, 0.3) == pytest.approx(4.0, abs=1e-10)
    assert helstrom_info_pure(model, 0.3) == pytest.approx(4.0, abs=1e-12)


def test_helstrom_constant_model_is_zero():
    assert helstrom_info_sld(FROZEN, 0.3) == pytest.approx(0.0, abs=1e-12)


def test_helstrom_mixture_closed_form_value():
    model = rotation_mixture(0.9)
    assert helstrom_info_qubit_closed(model, 0.3) == pytest.approx(2.56, abs=1e-12)
    assert helstrom_info_sld(model, 0.3) == pytest.approx(2.56, abs=1e-10)


def test_helstrom_pure_routes_agree_for_complex_family():
    model = PureStateModel(complex_rotation_family())
    for theta in (0.25, 1.0):
        a = helstrom_info_pure(model, theta)
        b = helstrom_info_sld(model, theta)
        assert abs(a - b) / b <= 1e-8


def test_helstrom_sine_weight_at_origin():
    # (w')^2/(w(1-w)) = 1 and (2w-1)^2 = 0 at theta = 0
    model = rotation_mixture(sine_weight(), domain=(-1.45, 1.45))
    assert helstrom_info_qubit_closed(model, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_helstrom_constant_weight_kills_first_term():
    model = rotation_mixture(0.77)
    expected = (2 * 0.77 - 1) ** 2 * 4.0
    assert helstrom_info_qubit_closed(model, 0.6) == pytest.approx(expected, abs=1e-12)


def test_helstrom_spectral_reduces_to_weight_form_in_two_dims():
    mix = rotation_mixture(0.9)
    spec = qubit_mixture_as_spectral(mix)
    assert helstrom_info_spectral(spec, 0.3) == pytest.approx(2.56, abs=1e-8)


def test_helstrom_spectral_constant_model_is_zero():
    model = SpectralMixtureModel(
        3,
        lambdas=lambda t: np.array([0.5, 0.3, 0.2]),
        frame=lambda t: np.eye(3, dtype=complex),
        dlambdas=lambda t: np.zeros(3),
        dframe=lambda t: np.zeros((3, 3), dtype=complex),
    )
    assert helstrom_info_spectral(model, 0.2) == pytest.approx(0.0, abs=1e-12)


def test_helstrom_spectral_matches_sld_route():
    model = random_spectral_model(99, 4)
    a = helstrom_info_spectral(model, 0.3)
    b = helstrom_info_sld(model, 0.3)
    assert abs(a - b) / b <= 1e-7


def test_spectral_boundary_regularity_guard():
    model = SpectralMixtureModel(
        2,
        lambdas=lambda t: np.array([1.0 - t * 0.0, 0.0]),  # eigenvalue pinned at 0
        frame=lambda t: np.eye(2, dtype=complex),
        dlambdas=lambda t: np.array([-0.5, 0.5]),  # but its derivative is not
        dframe=lambda t: np.zeros((2, 2), dtype=complex),
    )
    with pytest.raises(BoundaryRegularityError):
        helstrom_info_spectral(model, 0.0)


# --- skew information routes -------------------------------------------------------

def test_wy_rotation_family_is_eight():
    model = PureStateModel(rotation_family())
    assert wy_info_generic(model, 0.3) == pytest.approx(8.0, abs=1e-9)


def test_wy_constant_model_is_zero():
    assert wy_info_generic(FROZEN, 0.3) == pytest.approx(0.0, abs=1e-12)


def test_wy_mixture_closed_form_values():
    model = rotation_mixture(0.9)
    assert wy_info_qubit_closed(model, 0.3) == pytest.approx(3.2, abs=1e-12)
    assert wy_info_generic(model, 0.3) == pytest.approx(3.2, abs=1e-9)
    low = rotation_mixture(0.45)
    expected = 8.0 * (1.0 - 2.0 * math.sqrt(0.45 * 0.55))
    assert expected == pytest.approx(0.0401005, abs=5e-7)
    assert wy_info_qubit_closed(low, 0.3) == pytest.approx(expected, abs=1e-12)


def test_wy_tends_to_pure_value_at_weight_boundary():
    # as w -> 1 the mixture reproduces the pure state: I_WY -> I_WY1 = 8
    model = rotation_mixture(1.0 - 1e-6)
    assert wy_info_qubit_closed(model, 0.3) == pytest.approx(8.0, abs=0.02)
    assert wy_info_qubit_closed(model, 0.3) < 8.0


def test_wy_spectral_reduces_to_weight_form_in_two_dims():
    mix = rotation_mixture(0.9)
    spec = qubit_mixture_as_spectral(mix)
    assert wy_info_spectral(spec, 0.3) == pytest.approx(3.2, abs=1e-7)


def test_wy_spectral_matches_generic_route():
    model = random_spectral_model(55, 4)
    a = wy_info_spectral(model, 0.3)
    b = wy_info_generic(model, 0.3)
    assert abs(a - b) / b <= 1e-6


# --- alpha, beta, gamma ---------------------------------------------------------------

def test_alpha_beta_reference_points():
    assert alpha_beta(0.5, 0.0) == pytest.approx((1.0, 0.0), abs=1e-15)
    assert alpha_beta(0.9, 0.0)[0] == pytest.approx(1.25, abs=1e-15)
    assert alpha_beta(1e-12, 0.0)[0] == pytest.approx(2.0, abs=1e-5)
    with pytest.raises(DomainError):
        alpha_beta(0.0, 0.0)
    with pytest.raises(DomainError):
        alpha_beta(1.0, 0.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1 - 1e-6), st.floats(min_value=-3.0, max_value=3.0))
def test_alpha_beta_ranges_and_symmetry(w, dw):
    alpha, beta = alpha_beta(w, dw)
    assert 1.0 <= alpha <= 2.0
    assert beta <= 1e-15
    assert alpha == pytest.approx(alpha_beta(1.0 - w, dw)[0], rel=1e-12)


def test_gamma_two_dim_closed_form():
    model = rotation_mixture(0.9)
    assert gamma_qubit_closed(model, 0.3) == pytest.approx(0.64, abs=1e-12)
    gap = wy_info_generic(model, 0.3) - helstrom_info_sld(model, 0.3)
    assert gap == pytest.approx(0.64, abs=1e-9)


def test_gamma_vanishes_for_uniform_spectrum():
    model = fixed_spectrum_model([1 / 3, 1 / 3, 1 / 3], seed=9)
    assert abs(gamma_spectral(model, 0.4)) <= 1e-12


def test_gamma_constant_model_is_zero():
    model = SpectralMixtureModel(
        2,
        lambdas=lambda t: np.array([0.6, 0.4]),
        frame=lambda t: np.eye(2, dtype=complex),
        dlambdas=lambda t: np.zeros(2),
        dframe=lambda t: np.zeros((2, 2), dtype=complex),
    )
    assert gamma_spectral(model, 0.1) == pytest.approx(0.0, abs=1e-15)


def test_gamma_closes_the_spectral_identity():
    for seed, n in ((4, 2), (8, 3), (15, 5)):
        model = random_spectral_model(seed, n)
        i_h = helstrom_info_spectral(model, 0.3)
        i_wy = wy_info_spectral(model, 0.3)
        gamma = gamma_spectral(model, 0.3)
        assert abs(i_wy - i_h - gamma) <= 1e-7 * max(1.0, i_h)


# --- relation report ---------------------------------------------------------------

def test_report_pure_doubling_residual_is_zero():
    report = relation_report(PureStateModel(rotation_family()), 0.3)
    assert report.i_h_sld == pytest.approx(4.0, abs=1e-9)
    assert report.i_wy_generic == pytest.approx(8.0, abs=1e-9)
    assert report.residuals["pure_doubling_abs"] <= 1e-8
    assert report.sharp_bound == pytest.approx(0.25, abs=1e-9)
    assert report.approx_bound == pytest.approx(0.125, abs=1e-9)


def test_report_low_weight_gap():
    report = relation_report(rotation_mixture(0.45), 0.3)
    assert report.i_h_sld == pytest.approx(0.04, abs=1e-9)
    gap = report.i_wy_generic - report.i_h_sld
    assert gap == pytest.approx(1.00503e-4, abs=1e-8)


def test_report_sine_weight_degenerate_point():
    report = relation_report(rotation_mixture(sine_weight(), domain=(-1.45, 1.45)), 0.0)
    assert report.i_h_sld == pytest.approx(1.0, abs=1e-10)
    assert report.i_wy_generic == pytest.approx(1.0, abs=1e-9)
    assert report.alpha == pytest.approx(1.0, abs=1e-12)
    assert report.beta == pytest.approx(0.0, abs=1e-12)
    assert report.residuals["prop1"] <= 1e-9


def test_report_marks_noncanonical_mixture():
    from qcrb_kit.models import QubitMixtureModel, constant_weight

    model = QubitMixtureModel(
        rotation_family(),
        constant_weight(0.8),
        psi2=lambda t: np.array([-math.sin(t), math.cos(t)]),
    )
    report = relation_report(model, 0.3)
    assert report.i_h_closed is None
    assert "not applicable" in report.route_errors["i_h_closed"]
    # prop1 residual still recorded (and small: rho is psi2-phase independent)
    assert report.residuals["prop1"] <= 1e-7


def test_report_route_errors_do_not_abort():
    # weight with a kink: slope blows past the closed-form agreement but the
    # report still returns, recording definitional values
    model = rotation_mixture(WeightFunction(w=lambda t: 0.5 + 0.4 * abs(math.sin(t))))
    report = relation_report(model, 0.0)
    assert report.i_h_sld >= 0.0


def test_ratio_bounds_for_constant_weight():
    for w in (0.55, 0.7, 0.85, 0.98):
        report = relation_report(rotation_mixture(w), 0.3)
        assert 1.0 - 1e-9 <= report.ratio <= 2.0 + 1e-6


def test_information_loss_under_mixing():
    for w in (0.6, 0.8, 0.95):
        model = rotation_mixture(w)
        assert helstrom_info_sld(model, 0.3) <= 4.0 + 1e-9
        assert wy_info_generic(model, 0.3) <= 8.0 + 1e-9


def test_monotone_gap_in_weight_distance():
    gaps = []
    for w in np.arange(0.5, 0.99, 0.02):
        model = rotation_mixture(float(w))
        gaps.append(wy_info_generic(model, 0.3) - helstrom_info_sld(model, 0.3))
    assert all(b >= a - 1e-9 for a, b in zip(gaps, gaps[1:]))


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=5_000))
def test_pure_doubling_property(seed):
    dim = 2 + seed % 4
    model = PureStateModel(random_pure_family(seed, dim))
    theta = -0.8 + (seed % 17) * 0.1
    i_h = helstrom_info_sld(model, theta)
    if i_h > 1e-8:
        assert abs(wy_info_generic(model, theta) / i_h - 2.0) <= 1e-6
