"""
Self Test Module - quick property suites over every package
- Each group reports ✅/❌ with the measured worst-case value
- A group that raises is reported as failed with the error message
"""
import logging
import math
from typing import Callable, List, Tuple

import numpy as np
from scipy.special import lambertw

import settings
from bounds.curves import BoundConstants, hls_curve, hnls_curve
from bounds.decomposition import optimize_rate_bound
from bounds.lambertw import INV_E, lambert_w_m1, lambert_w_m1_from_exponent, sandwich_bounds
from cli.checks import CheckReport
from dynamics.model import IntegratorConfig
from dynamics.propagation import propagate
from fisher.rate import annotate
from fisher.sld import qfi_wrt_operator, solve_sld, variance
from quantum_core.errors import ToolkitError
from quantum_core.linalg import eig_hermitian
from quantum_core.random_ops import make_rng, random_density, random_hermitian, random_pure_state
from scenarios.oscillator import OscillatorSpec, StateSpec, analytic_coherent_qfi, damped_oscillator, make_state
from scenarios.random_models import random_instance

logger = logging.getLogger(__name__)

JUMP_TOL = 1e-4


def _linalg(rng, rank_tol) -> Tuple[bool, str]:
    worst = 0.0
    for _ in range(20):
        A = random_hermitian(int(rng.integers(2, 7)), rng)
        ref = eig_hermitian(A)
        jac = eig_hermitian(A, method="jacobi")
        worst = max(worst, float(np.max(np.abs(ref.eigenvalues - jac.eigenvalues))),
                    float(np.linalg.norm(jac.reconstruct() - A)))
    return worst <= 1e-10, f"Jacobi vs eigh worst deviation {worst:.2e}"


def _lambert_w(rng, rank_tol) -> Tuple[bool, str]:
    u = np.linspace(0.1, 10.0, 100)
    lo, hi = sandwich_bounds(u)
    v = lambert_w_m1_from_exponent(u)
    inside = bool(np.all((lo <= v + 1e-12) & (v <= hi + 1e-12)))

    x = -np.logspace(math.log10(INV_E) - 1e-9, -8, 1000)
    w = lambert_w_m1(x)
    residual = float(np.max(np.abs(w * np.exp(w) - x) / np.abs(x)))
    away = np.abs(x + INV_E) > 1e-4
    oracle = float(np.max(np.abs(w[away] - lambertw(x[away], -1).real) / np.abs(w[away])))
    ok = inside and residual <= 1e-12 and oracle <= 1e-10
    return ok, f"sandwich {'holds' if inside else 'violated'}, |we^w − x|/|x| ≤ {residual:.1e}, vs scipy {oracle:.1e}"


def _fisher_facts(rng, rank_tol) -> Tuple[bool, str]:
    scaling = triangle = variance_gap = pure_gap = 0.0
    for _ in range(200):
        dim = int(rng.integers(2, 5))
        rho = random_density(dim, rng)
        A, B = random_hermitian(dim, rng), random_hermitian(dim, rng)
        a, b = rng.normal(), rng.normal()
        fa = qfi_wrt_operator(rho, A, rank_tol)
        fab = qfi_wrt_operator(rho, a * A + b * np.eye(dim), rank_tol)
        scaling = max(scaling, abs(fab - a * a * fa) / max(1.0, fa))
        fb = qfi_wrt_operator(rho, B, rank_tol)
        f_sum = qfi_wrt_operator(rho, A + B, rank_tol)
        triangle = max(triangle, math.sqrt(f_sum) - math.sqrt(fa) - math.sqrt(fb))
        variance_gap = max(variance_gap, fa - 4.0 * variance(rho, A))
        pure = random_pure_state(dim, rng)
        pure_gap = max(pure_gap, abs(qfi_wrt_operator(pure, A, rank_tol) - 4.0 * variance(pure, A)))
    ok = scaling <= 1e-9 and triangle <= 1e-8 and variance_gap <= 1e-8 and pure_gap <= 1e-8
    return ok, (f"scaling {scaling:.1e}, triangle {triangle:.1e}, "
                f"F_A − 4Var {variance_gap:.1e}, pure equality {pure_gap:.1e}")


def _curves(rng, rank_tol) -> Tuple[bool, str]:
    t_c = BoundConstants.for_hls(1.0, 1.0).t_c
    at_tc = hls_curve(1.0, 1.0, t_c)
    after = hls_curve(1.0, 1.0, t_c + 1.0)
    t = np.linspace(1e-2, 10.0, 1000)
    tighter = bool(np.all(hls_curve(1.0, 1.0, t) < 4.0 * t))
    reduction = float(np.max(np.abs(hnls_curve(0.0, 1.0, 1.0, t) - hls_curve(1.0, 1.0, t))))
    ok = abs(t_c - 2.0 * math.log(2.0)) <= 1e-12 and abs(at_tc - 4.0) <= 1e-9 and abs(after - 8.0) <= 1e-9
    ok = ok and tighter and reduction <= 1e-10
    return ok, f"F(t_c) = {at_tc:.10g}, F(t_c+1) = {after:.10g}, HNLS(c0=0) − HLS = {reduction:.1e}"


def _coherent_saturation(rng, rank_tol) -> Tuple[bool, str]:
    n_max = 24
    spec = OscillatorSpec(n_max=n_max)
    rho0 = make_state(StateSpec(kind="coherent", amplitude=1.0 + 0.0j), n_max)
    t = np.linspace(0.0, 4.0, 81)
    model = damped_oscillator(spec)
    points = annotate(propagate(model, rho0, np.zeros_like(rho0), 0.0, t), model, 0.0, rank_tol)
    F = np.array([p.qfi for p in points])
    exact = analytic_coherent_qfi(1.0, 1.0, t)
    rel = float(np.max(np.abs(F - exact) / np.maximum(exact, 1e-6)))
    return rel <= 1e-6, f"max relative deviation from 16(1 − e^(−t/2))²: {rel:.2e}"


def _dominance(rng, rank_tol) -> Tuple[bool, str]:
    worst = -math.inf
    t = np.linspace(0.0, 1.0, 11)
    for _ in range(5):
        inst = random_instance(rng)
        points = annotate(
            propagate(inst.model, inst.rho0, np.zeros_like(inst.rho0), 0.0, t), inst.model, 0.0, rank_tol,
        )
        for p in points:
            bound = optimize_rate_bound(p.rho, p.qfi, inst.H_prime, inst.lindblads, rank_tol).bound
            worst = max(worst, p.qfi_rate - bound)
    return worst <= 1e-6, f"max(Ḟ − optimized bound) = {worst:.2e} over 5 random models"


def _continuity(rng, rank_tol) -> Tuple[bool, str]:
    """Fock-2 start: the top eigenvalue decays through every small threshold without 𝓕 jumping."""
    n_max = 12
    spec = OscillatorSpec(n_max=n_max)
    rho0 = make_state(StateSpec(kind="fock", n=2), n_max)
    model = damped_oscillator(spec)
    t = np.linspace(0.0, 3.0, 1501)
    curves = []
    for step in (0.002, 0.001, 0.0005):
        points = propagate(model, rho0, np.zeros_like(rho0), 0.0, t, IntegratorConfig(step=step))
        curves.append(np.array([solve_sld(p.rho, p.rho_prime, rank_tol).qfi for p in points]))
    refinement = float(np.max(np.abs(curves[-1] - curves[-2])))
    d = np.diff(curves[-1])
    jump = float(np.max(np.abs(d[1:-1] - 0.5 * (d[:-2] + d[2:]))))
    ok = refinement <= JUMP_TOL and jump <= JUMP_TOL
    return ok, f"refinement change {refinement:.1e}, largest isolated jump {jump:.1e}"


GROUPS: List[Tuple[str, Callable]] = [
    ("linalg", _linalg),
    ("lambert_w", _lambert_w),
    ("fisher_facts", _fisher_facts),
    ("bound_curves", _curves),
    ("coherent_saturation", _coherent_saturation),
    ("rate_dominance", _dominance),
    ("qfi_continuity", _continuity),
]


def selftest(rank_tol: float = settings.RANK_TOL, seed: int = settings.DEFAULT_SEED) -> CheckReport:
    """Run every group with its own generator derived from seed."""
    report = CheckReport("selftest")
    for i, (name, group) in enumerate(GROUPS):
        rng = make_rng(seed + i)
        try:
            ok, detail = group(rng, rank_tol)
        except ToolkitError as e:
            ok, detail = False, f"{type(e).__name__}: {e}"
        report.check(name, ok, detail)
    return report
