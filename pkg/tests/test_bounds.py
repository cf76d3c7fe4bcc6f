import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import lambertw

from bounds.curves import (
    BoundConstants, BoundCurve, hls_curve, hls_rate, hnls_curve, hnls_curve_simple, hnls_rate,
    lindblad_magnitude_bound, prior_curves, quadratic_prior_constant,
)
from bounds.decomposition import (
    bound_coefficients, build_decomposition, channel_expectation, optimize_rate_bound, project_to_span, rate_bound,
    span_operator,
)
from bounds.integrate import integrate_rate_bound, integrated_bound_along
from bounds.lambertw import INV_E, lambert_w_m1, lambert_w_m1_from_exponent, sandwich_bounds
from dynamics.propagation import propagate
from fisher.rate import annotate
from fisher.sld import qfi_wrt_operator
from quantum_core.errors import DimensionMismatchError, DomainError, NotHermitianError
from quantum_core.linalg import PAULI_X, PAULI_Z
from quantum_core.random_ops import random_density, random_hermitian, random_operator
from scenarios.qubit import dephasing_qubit


# -- Lambert W ---------------------------------------------------------------

def test_lambert_w_solves_defining_equation():
    x = -np.logspace(math.log10(INV_E) - 1e-9, -8, 1000)
    w = lambert_w_m1(x)
    assert np.all(w <= -1.0)
    assert_allclose(w * np.exp(w), x, rtol=1e-11)


def test_lambert_w_matches_scipy_away_from_branch_point():
    x = -np.logspace(math.log10(INV_E) - 1e-3, -8, 200)
    assert_allclose(lambert_w_m1(x), lambertw(x, -1).real, rtol=1e-10)


def test_lambert_w_branch_point_and_scalar():
    assert lambert_w_m1(-INV_E) == pytest.approx(-1.0, abs=1e-6)
    assert isinstance(lambert_w_m1(-0.1), float)


@pytest.mark.parametrize("x", [0.0, 0.1, -0.5])
def test_lambert_w_domain(x):
    with pytest.raises(DomainError):
        lambert_w_m1(x)


def test_exponent_form_stays_in_sandwich():
    u = np.linspace(0.1, 10.0, 100)
    lo, hi = sandwich_bounds(u)
    v = lambert_w_m1_from_exponent(u)
    assert np.all(lo <= v + 1e-12)
    assert np.all(v <= hi + 1e-12)
    assert_allclose(v - np.log(v), 1.0 + u, rtol=1e-13)
    assert lambert_w_m1_from_exponent(0.0) == 1.0
    # finite where −e^{−1−u} underflows
    assert np.isfinite(lambert_w_m1_from_exponent(1e4))


def test_sandwich_holds_from_small_to_large_exponents():
    u = np.geomspace(1e-3, 20.0, 200)
    lo, hi = sandwich_bounds(u)
    v = lambert_w_m1_from_exponent(u)
    assert np.all(lo <= v + 1e-12)
    assert np.all(v <= hi + 1e-12)
    assert_allclose(v - np.log(v), 1.0 + u, rtol=1e-12)


# -- closed-form curves --------------------------------------------------------

def test_hls_curve_reference_values():
    t_c = BoundConstants.for_hls(1.0, 1.0).t_c
    assert t_c == pytest.approx(2.0 * math.log(2.0), abs=1e-12)
    assert hls_curve(1.0, 1.0, t_c) == pytest.approx(4.0, abs=1e-9)
    assert hls_curve(1.0, 1.0, t_c + 1.0) == pytest.approx(8.0, abs=1e-9)
    assert BoundConstants.for_hls(math.sqrt(5.0), 1.0).t_c == pytest.approx(2.0 * math.log(2.0) / 5.0)


def test_hls_curve_is_tighter_than_linear_prior():
    t = np.linspace(1e-2, 10.0, 1000)
    assert np.all(hls_curve(1.0, 1.0, t) < prior_curves("linear", 1.0, t))


def test_hls_curve_continuous_at_crossover():
    for c1 in (1.0, math.sqrt(5.0), 0.3):
        t_c = BoundConstants.for_hls(c1, 1.0).t_c
        left, right = hls_curve(c1, 1.0, np.array([t_c * (1 - 1e-12), t_c * (1 + 1e-12)]))
        assert left == pytest.approx(right, rel=1e-9)


def test_hls_rate_branches():
    assert hls_rate(0.0, 2.0, 3.0) == pytest.approx(8.0)
    assert hls_rate(1.0, 1.0, 0.0) == 0.0
    assert hls_rate(1.0, 1.0, 100.0) == pytest.approx(4.0)
    # rising branch: 4c1√F(1 − c1√F/4c2)
    assert hls_rate(1.0, 1.0, 1.0) == pytest.approx(3.0)


def test_hls_needs_positive_c1():
    with pytest.raises(DomainError):
        hls_curve(0.0, 1.0, 1.0)


def test_hnls_reduces_to_hls():
    t = np.linspace(0.0, 10.0, 101)
    assert_allclose(hnls_curve(0.0, 1.0, 1.0, t), hls_curve(1.0, 1.0, t), atol=1e-10)
    assert_allclose(hnls_rate(0.0, 1.0, 1.0, t), hls_rate(1.0, 1.0, t))


def test_hnls_constants_validation():
    with pytest.raises(DomainError):
        BoundConstants.for_hnls(2.0, 1.0, 1.0)
    assert BoundConstants.for_hnls(1.0, 1.0, 1.0).t_c == math.inf


def test_hnls_continuous_at_crossover():
    c0, c1, c2 = 0.5, 1.0, 1.0
    t_c = BoundConstants.for_hnls(c0, c1, c2).t_c
    assert t_c == pytest.approx(8.0 * math.log(4.0 / 3.0))
    left, right = hnls_curve(c0, c1, c2, np.array([t_c, t_c * (1 + 1e-12)]))
    assert left == pytest.approx(16.0, rel=1e-9)
    assert right == pytest.approx(left, rel=1e-8)


@pytest.mark.parametrize("t", [1.0, 3.0, 8.0, 20.0])
def test_hnls_curve_follows_its_rate(t):
    c0, c1, c2 = 0.5, 1.0, 1.0
    h = 1e-5
    F = hnls_curve(c0, c1, c2, np.array([t - h, t, t + h]))
    slope = (F[2] - F[0]) / (2 * h)
    assert slope == pytest.approx(float(hnls_rate(c0, c1, c2, F[1])), rel=1e-5)


def test_hnls_approaches_heisenberg_scaling():
    c0, c1, c2 = 0.5, 1.0, 1.0
    t_c = BoundConstants.for_hnls(c0, c1, c2).t_c
    t = t_c * np.array([1e2, 1e3, 1e4])
    ratio = hnls_curve(c0, c1, c2, t) / (4.0 * c0 ** 2 * t ** 2)
    assert np.all(ratio >= 1.0)
    K = (ratio[0] - 1.0) * math.sqrt(t[0])
    assert np.all(ratio[1:] <= 1.0 + K / np.sqrt(t[1:]))


def test_hnls_simple_form():
    t = np.array([0.0, 1.0, 4.0])
    # (2c0t + 2√(c2t))² = 4c2t + 8c0t√(c2t) + 4c0²t²
    expected = 8.0 * t + 4.0 * math.sqrt(2.0) * t ** 1.5 + t ** 2
    assert_allclose(hnls_curve_simple(0.5, 2.0, t), expected)


def test_prior_curves_and_constants():
    assert quadratic_prior_constant(PAULI_Z) == pytest.approx(1.0)
    assert quadratic_prior_constant(np.diag([3.0, 1.0])) == pytest.approx(1.0)
    assert prior_curves("quadratic", 1.0, 2.0) == pytest.approx(16.0)
    with pytest.raises(DomainError):
        prior_curves("cubic", 1.0, 1.0)
    assert lindblad_magnitude_bound([1.0, 2.0], [1.0, 1.0]) == pytest.approx(20.0)
    with pytest.raises(DimensionMismatchError):
        lindblad_magnitude_bound([1.0], [1.0, 1.0])


def test_bound_curve_factories():
    t = np.linspace(0.0, 5.0, 11)
    curve = BoundCurve.oscillator(1.0, 1.0, 0.5)
    assert curve.family == "oscillator"
    assert curve.constants.c1 == pytest.approx(1.0)
    assert_allclose(curve(t), hls_curve(1.0, 1.0, t))
    sampled = BoundCurve.sampled([0.0, 1.0], [0.0, 2.0])
    assert sampled(0.5) == pytest.approx(1.0)
    assert sampled(3.0) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        BoundCurve("made_up", None, lambda x: x)


# -- decomposition and optimized rate bound ---------------------------------------------

def test_span_operator_matches_decomposition(rng):
    L = [random_operator(3, rng), random_operator(3, rng)]
    H_prime = random_hermitian(3, rng)
    beta = np.array([0.3 + 0.1j, -0.2j])
    gamma = np.array([[0.5, 0.1 + 0.2j], [0.1 - 0.2j, -0.4]])
    d = build_decomposition(H_prime, L, 0.7, beta, gamma)
    assert_allclose(d.G + span_operator(L, 0.7, beta, gamma), H_prime, atol=1e-12)
    assert len(d.A_ops) == 2


def test_decomposition_rejects_non_hermitian_gamma():
    with pytest.raises(NotHermitianError):
        build_decomposition(PAULI_Z, [PAULI_Z, PAULI_X], 0.0, [0, 0], [[0, 1], [0, 0]])


def test_projection_inside_span():
    projection = project_to_span(2.0 * PAULI_Z, [PAULI_Z])
    assert projection.hls
    assert projection.residual_norm <= 1e-12
    # εσz = 2βσz with A = iβ, so Σ⟨A†A⟩ = ε²/4 for unit dephasing
    assert channel_expectation(np.eye(2) / 2, projection.decomposition.A_ops) == pytest.approx(1.0)


def test_projection_outside_span():
    projection = project_to_span(PAULI_X, [PAULI_Z])
    assert not projection.hls
    assert projection.residual_norm == pytest.approx(math.sqrt(2.0))
    assert_allclose(projection.G0, PAULI_X, atol=1e-12)


def test_rate_bound_for_explicit_decomposition():
    d = build_decomposition(PAULI_Z, [PAULI_Z], 0.0, [0.5], [[0.0]])
    assert np.linalg.norm(d.G) <= 1e-14
    assert rate_bound(np.eye(2) / 2, 0.3, d) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        rate_bound(np.eye(2) / 2, -1.0, d)


def test_optimized_bound_without_noise(rng):
    rho = random_density(3, rng)
    H_prime = random_hermitian(3, rng)
    F = 0.8
    result = optimize_rate_bound(rho, F, H_prime, [])
    assert result.converged
    assert result.bound == pytest.approx(2.0 * math.sqrt(qfi_wrt_operator(rho, H_prime) * F))


def test_optimized_bound_never_exceeds_projection(rng):
    rho = random_density(3, rng)
    H_prime = random_hermitian(3, rng)
    L = [random_operator(3, rng, 0.5)]
    projection = project_to_span(H_prime, L).decomposition
    decomposition, bound = optimize_rate_bound(rho, 0.5, H_prime, L)
    assert bound <= rate_bound(rho, 0.5, projection) + 1e-9
    assert bound == pytest.approx(rate_bound(rho, 0.5, decomposition), rel=1e-8)


def test_optimized_bound_vanishes_at_zero_qfi(rng):
    rho = random_density(2, rng)
    result = optimize_rate_bound(rho, 0.0, random_hermitian(2, rng), [random_operator(2, rng, 0.5)])
    assert result.bound == pytest.approx(0.0, abs=1e-12)


def test_optimized_bound_at_large_qfi_stays_below_projection(rng):
    rho = random_density(2, rng)
    H_prime = random_hermitian(2, rng)
    L = [random_operator(2, rng, 0.5)]
    F = 1e4
    projection = project_to_span(H_prime, L).decomposition
    result = optimize_rate_bound(rho, F, H_prime, L)
    assert result.bound <= rate_bound(rho, F, projection) + 1e-9


def test_optimized_bound_stays_below_zero_coefficient_value(rng):
    rho = random_density(2, rng)
    H_prime = random_hermitian(2, rng)
    L = [random_operator(2, rng, 0.5)]
    F = 0.7
    result = optimize_rate_bound(rho, F, H_prime, L)
    assert result.bound <= 2.0 * math.sqrt(qfi_wrt_operator(rho, H_prime) * F) + 1e-9
    fg, channel = bound_coefficients(rho, result.decomposition)
    assert result.bound == pytest.approx(2.0 * math.sqrt(fg * F) + 4.0 * channel, rel=1e-8)


def test_rate_bound_dominates_dephasing_trajectory(plus_state):
    model = dephasing_qubit(1.0, 1.0)
    points = annotate(propagate(model, plus_state, np.zeros((2, 2)), 0.0, np.linspace(0.0, 2.0, 9)), model, 0.0)
    for p in points:
        bound = optimize_rate_bound(p.rho, p.qfi, PAULI_Z, [PAULI_Z]).bound
        assert p.qfi_rate <= bound + 1e-6
        # HLS: Ḟ ≤ 4c2 with c2 = ε²/(4γ)
        assert bound <= 1.0 + 1e-6


# -- integration ---------------------------------------------------------------

def test_integrated_hls_rate_reproduces_closed_form():
    t = np.linspace(0.0, 6.0, 61)
    curve = integrate_rate_bound(lambda s, F: hls_rate(1.0, 1.0, F), 0.0, t)
    assert_allclose(curve(t), hls_curve(1.0, 1.0, t), rtol=1e-6, atol=1e-6)


def test_integrated_constant_rate():
    t = np.linspace(0.0, 2.0, 5)
    assert_allclose(integrate_rate_bound(lambda s, F: 4.0, 0.0, t)(t), 4.0 * t, atol=1e-9)


def test_negative_rate_is_clipped():
    t = np.linspace(0.0, 1.0, 3)
    assert_allclose(integrate_rate_bound(lambda s, F: -1.0, 2.0, t)(t), 2.0)


def test_integrate_rejects_bad_grid():
    with pytest.raises(DomainError):
        integrate_rate_bound(lambda s, F: 1.0, 0.0, [0.0, 1.0, 0.5])
    with pytest.raises(DomainError):
        integrate_rate_bound(lambda s, F: 1.0, -1.0, [0.0, 1.0])


def test_integrated_bound_along_with_generator_term_only():
    t = np.linspace(0.0, 2.0, 11)
    # Ḟ = 4√F from 0 grows as 4t²
    out = integrated_bound_along(t, 0.0, np.full(t.size, 4.0), np.zeros(t.size))
    assert_allclose(out, 4.0 * t ** 2, rtol=1e-7, atol=1e-9)


def test_integrated_bound_along_with_channel_term_only():
    t = np.linspace(0.0, 2.0, 11)
    out = integrated_bound_along(t, 0.5, np.zeros(t.size), np.ones(t.size))
    assert_allclose(out, 0.5 + 4.0 * t, rtol=1e-9)


def test_integrated_bound_along_ignores_the_simulated_curve():
    t = np.linspace(0.0, 1.0, 6)
    # a zero rate bound stays at F0 however fast the trajectory grows
    out = integrated_bound_along(t, 0.0, np.zeros(t.size), np.zeros(t.size))
    assert_allclose(out, 0.0, atol=1e-12)
    assert np.any(t ** 2 > out + 1e-6)


def test_integrated_bound_along_rejects_bad_samples():
    t = np.linspace(0.0, 1.0, 3)
    with pytest.raises(DomainError):
        integrated_bound_along(t, 0.0, np.ones(2), np.ones(3))
    with pytest.raises(DomainError):
        integrated_bound_along(t, 0.0, -np.ones(3), np.ones(3))
    with pytest.raises(DomainError):
        integrated_bound_along([0.0, 1.0, 0.5], 0.0, np.ones(3), np.ones(3))
