"""
Sensitivity-bandwidth experiments on the damped oscillator

- accessible_trajectory: system QFI plus the information emitted into the
  continuum channel (4κ|tr(aρ′)|² per unit time)
- cascade_emission_qfi: the same emission resolved slot by slot with an
  explicit ancilla mode and a partial beam splitter
- spectral_rate: stationary input-output rate, including a squeezed source
- detuning_sweep: long-time rate / time-averaged FI / measure-reset FI vs δω
- prepare_measure_reset, optimal_cycle_time: Fock-counting cycles
- stepwise_signal_qfi: independent estimation on consecutive intervals
"""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, NamedTuple, Optional, Sequence, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.optimize import brentq

import settings
from dynamics.model import IntegratorConfig
from dynamics.propagation import propagate
from fisher.classical import classical_fi, fock_distribution
from fisher.rate import qfi_rate
from fisher.sld import qfi, solve_sld
from quantum_core.errors import DomainError
from quantum_core.fock import annihilation
from quantum_core.linalg import matrix_exp, validate_density
from scenarios.oscillator import OscillatorSpec, damped_oscillator, oscillator_constants

logger = logging.getLogger(__name__)

SAMPLE_SPACING = 0.05
DRIFT_TOL = 1e-3
SWEEP_METHODS = ("simulate", "spectral", "measure_reset")


def _stable_config(spec: OscillatorSpec, config: Optional[IntegratorConfig]) -> IntegratorConfig:
    """Shrink the RK4 step so that |δω|·N_max·h stays below 0.25."""
    config = config or IntegratorConfig()
    limit = 0.25 / max(abs(spec.detuning) * (spec.n_max - 1), 1e-12)
    if config.step <= limit:
        return config
    return replace(config, step=limit)


def sample_grid(t0: float, t1: float, spacing: float = SAMPLE_SPACING) -> np.ndarray:
    n = max(2, int(math.ceil((t1 - t0) / spacing - 1e-9)) + 1)
    return np.linspace(t0, t1, n)


@dataclass(frozen=True)
class AccessibleTrajectory:
    t: np.ndarray
    qfi_system: np.ndarray
    qfi_rate_system: np.ndarray
    emission_rate: np.ndarray
    emitted: np.ndarray
    final_rho: np.ndarray = field(repr=False)

    @property
    def qfi_total(self) -> np.ndarray:
        return self.qfi_system + self.emitted

    @property
    def rate_total(self) -> np.ndarray:
        return self.qfi_rate_system + self.emission_rate


def accessible_trajectory(
    spec: OscillatorSpec,
    rho0,
    t_grid: Sequence[float],
    config: Optional[IntegratorConfig] = None,
    rho_prime0=None,
    g: float = 0.0,
    rank_tol: float = settings.RANK_TOL,
) -> AccessibleTrajectory:
    """
    Propagate with the continuum channel on and count what it carries away.

    The emission rate 4κ|tr(aρ′)|² is the QFI per unit time of the coherent
    output field, exact for Gaussian pure dynamics with a vacuum continuum.
    """
    model = damped_oscillator(spec)
    rho0 = validate_density(rho0)
    rho_prime0 = np.zeros_like(rho0) if rho_prime0 is None else rho_prime0
    points = propagate(model, rho0, rho_prime0, g, t_grid, _stable_config(spec, config))
    a = annihilation(spec.n_max)

    t = np.array([p.t for p in points])
    F = np.empty(len(points))
    F_dot = np.empty(len(points))
    emission = np.empty(len(points))
    for i, p in enumerate(points):
        sld = solve_sld(p.rho, p.rho_prime, rank_tol)
        F[i] = sld.qfi
        F_dot[i] = qfi_rate(p.rho, sld, model, p.t, g)
        kappa = spec.extra_damping if p.t >= spec.extra_damping_on else 0.0
        emission[i] = 4.0 * kappa * abs(np.trace(a @ p.rho_prime)) ** 2

    emitted = cumulative_trapezoid(emission, t, initial=0.0)
    return AccessibleTrajectory(t, F, F_dot, emission, emitted, final_rho=points[-1].rho)


@dataclass(frozen=True)
class CascadeResult:
    t: np.ndarray
    qfi_system: np.ndarray
    emitted: np.ndarray


def _partial_traces(M: np.ndarray, ds: int, da: int):
    R = M.reshape(ds, da, ds, da)
    return np.einsum("ikjk->ij", R), np.einsum("kikj->ij", R)


def cascade_emission_qfi(
    spec: OscillatorSpec,
    rho0,
    t_end: float,
    slot: float,
    n_ancilla: int = 3,
    config: Optional[IntegratorConfig] = None,
    rank_tol: float = settings.RANK_TOL,
) -> CascadeResult:
    """
    Emit into a fresh vacuum ancilla at the start of every slot of length Δτ.

    The beam splitter exp(θ(ab† − a†b)) has sin²θ = 1 − e^{−κΔτ}; between
    swaps the system evolves under its intrinsic noise only. Slot QFIs are
    summed, which is exact when the emitted slots are uncorrelated (coherent
    dynamics) and approaches the continuous emission rule as Δτ → 0.
    """
    if slot <= 0 or t_end <= 0:
        raise DomainError(f"slot and t_end must be positive, got slot={slot}, t_end={t_end}")
    if n_ancilla < 2:
        raise DomainError(f"n_ancilla must be ≥ 2, got {n_ancilla}")
    ds, da = spec.n_max, n_ancilla
    a = np.kron(annihilation(ds), np.eye(da))
    b = np.kron(np.eye(ds), annihilation(da))
    theta = math.asin(math.sqrt(-math.expm1(-spec.extra_damping * slot)))
    U = matrix_exp(theta * (a @ b.conj().T - a.conj().T @ b))
    vacuum = np.zeros((da, da), dtype=complex)
    vacuum[0, 0] = 1.0

    model = damped_oscillator(spec, include_continuum=False)
    rho = validate_density(rho0)
    rho_prime = np.zeros_like(rho)
    n_slots = int(round(t_end / slot))
    t_values, F_values, emitted_values = [0.0], [qfi(rho, rho_prime, rank_tol)], [0.0]
    emitted = 0.0
    for k in range(n_slots):
        t0 = k * slot
        if spec.extra_damping > 0 and t0 >= spec.extra_damping_on:
            joint = U @ np.kron(rho, vacuum) @ U.conj().T
            joint_prime = U @ np.kron(rho_prime, vacuum) @ U.conj().T
            rho, rho_anc = _partial_traces(joint, ds, da)
            rho_prime, rho_prime_anc = _partial_traces(joint_prime, ds, da)
            emitted += qfi(rho_anc, rho_prime_anc, rank_tol)
        end = propagate(model, rho, rho_prime, 0.0, [t0, t0 + slot], config)[-1]
        rho, rho_prime = end.rho, end.rho_prime
        t_values.append(t0 + slot)
        F_values.append(qfi(rho, rho_prime, rank_tol))
        emitted_values.append(emitted)

    return CascadeResult(np.array(t_values), np.array(F_values), np.array(emitted_values))


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def _as_quadrature_map(z: complex) -> np.ndarray:
    return abs(z) * _rotation(float(np.angle(z)))


def spectral_rate(spec: OscillatorSpec, delta: float) -> float:
    """
    Long-time accessible Ḟ at detuning δ from stationary input-output relations.

        r(ω) = ((κ−γ)/2 + iω)/(Γ/2 − iω),  t(ω) = √(κγ)/(Γ/2 − iω),
        d(ω) = √κ·ε/(Γ/2 − iω),  Γ = γ + κ

    The output noise V = R V_src Rᵀ + T V_bath Tᵀ (2×2 quadrature covariances),
    Ḟ = 2dᵀV⁻¹d. The source is squeezed by G_s with the squeezed axis chosen
    optimally at ω = Γ/2 and kept fixed for all ω.
    """
    gamma, kappa = spec.gamma, spec.extra_damping
    if kappa == 0:
        return 0.0
    big_gamma = gamma + kappa

    def responses(omega):
        denom = big_gamma / 2.0 - 1j * omega
        r = ((kappa - gamma) / 2.0 + 1j * omega) / denom
        t = math.sqrt(kappa * gamma) / denom
        d = math.sqrt(kappa) * complex(spec.epsilon) / denom
        return r, t, d

    r_ref, _, d_ref = responses(big_gamma / 2.0)
    axis = float(np.angle(d_ref) - np.angle(r_ref))
    G_s = spec.source_squeeze
    source = _rotation(axis) @ np.diag([0.5 / G_s, 0.5 * G_s]) @ _rotation(axis).T
    bath = (spec.n_T + 0.5) * np.eye(2)

    r, t, d = responses(delta)
    R, T = _as_quadrature_map(r), _as_quadrature_map(t)
    V = R @ source @ R.T + T @ bath @ T.T
    d_vec = np.array([d.real, d.imag])
    return float(2.0 * d_vec @ np.linalg.solve(V, d_vec))


class MeasureReset(NamedTuple):
    qfi_per_time: float
    classical_fi_per_time: float


def _measure_reset_from_point(point, t1: float, rank_tol: float) -> MeasureReset:
    F = solve_sld(point.rho, point.rho_prime, rank_tol).qfi
    p, dp, d2p = fock_distribution(point.rho, point.rho_prime, point.rho_second)
    return MeasureReset(F / t1, classical_fi(p, dp, d2p, rank_tol) / t1)


def prepare_measure_reset(
    rho0,
    spec: OscillatorSpec,
    t1: float,
    g: float = 0.0,
    config: Optional[IntegratorConfig] = None,
    rank_tol: float = settings.RANK_TOL,
) -> MeasureReset:
    """
    Prepare rho0, evolve for t1, count photons, reset.

    Returns (𝓕(t1)/t1, F_c(t1)/t1); ρ″ is carried so that outcomes with zero
    probability at g = 0 still contribute.
    """
    if t1 <= 0:
        raise DomainError(f"t1 must be positive, got {t1}")
    model = damped_oscillator(spec)
    rho0 = validate_density(rho0)
    end = propagate(model, rho0, np.zeros_like(rho0), g, [0.0, t1], _stable_config(spec, config), second_order=True)[-1]
    return _measure_reset_from_point(end, t1, rank_tol)


class CycleOptimum(NamedTuple):
    t1: float
    classical_fi_per_time: float
    qfi_per_time: float


def optimal_cycle_time(
    rho0,
    spec: OscillatorSpec,
    t_grid: Sequence[float],
    config: Optional[IntegratorConfig] = None,
    rank_tol: float = settings.RANK_TOL,
) -> CycleOptimum:
    """Cycle time maximizing on-resonance classical FI per unit time (grid search, parabolic refinement)."""
    grid = np.asarray(t_grid, dtype=float)
    if grid[0] != 0.0:
        grid = np.concatenate([[0.0], grid])
    model = damped_oscillator(spec)
    rho0 = validate_density(rho0)
    points = propagate(model, rho0, np.zeros_like(rho0), 0.0, grid, _stable_config(spec, config), second_order=True)[1:]
    merits = [_measure_reset_from_point(p, p.t, rank_tol) for p in points]
    values = np.array([m.classical_fi_per_time for m in merits])
    best = int(np.argmax(values))

    t_best = points[best].t
    if 0 < best < len(points) - 1:
        ts = np.array([points[best + k].t for k in (-1, 0, 1)])
        c2, c1, _ = np.polyfit(ts, values[best - 1:best + 2], 2)
        if c2 < 0:
            t_best = float(np.clip(-c1 / (2.0 * c2), ts[0], ts[2]))
    return CycleOptimum(t_best, float(values[best]), merits[best].qfi_per_time)


@dataclass
class SweepTable:
    delta: np.ndarray
    values: np.ndarray
    converged: np.ndarray
    method: str
    evaluate: Optional[Callable[[float], float]] = field(default=None, repr=False)

    @property
    def peak(self) -> float:
        return float(np.max(self.values))

    @property
    def peak_delta(self) -> float:
        return float(self.delta[int(np.argmax(self.values))])

    def _crossing(self, lo: int, hi: int, half: float) -> float:
        d0, d1 = self.delta[lo], self.delta[hi]
        v0, v1 = self.values[lo], self.values[hi]
        if self.evaluate is not None:
            return brentq(lambda x: self.evaluate(x) - half, d0, d1, xtol=1e-12)
        return float(d0 + (half - v0) * (d1 - d0) / (v1 - v0))

    @property
    def fwhm(self) -> float:
        """Full width at half maximum around the peak; inf if the grid never drops below half."""
        half = 0.5 * self.peak
        i_peak = int(np.argmax(self.values))
        below = np.nonzero(self.values < half)[0]
        left, right = below[below < i_peak], below[below > i_peak]
        if left.size == 0 or right.size == 0:
            logger.warning("⚠️ Sweep (%s) does not fall to half maximum inside the grid", self.method)
            return math.inf
        x_left = self._crossing(int(left[-1]), int(left[-1]) + 1, half)
        x_right = self._crossing(int(right[0]) - 1, int(right[0]), half)
        return float(x_right - x_left)


def detuning_sweep(
    spec: OscillatorSpec,
    rho0,
    delta_grid: Sequence[float],
    horizon: float,
    method: str = "simulate",
    metric: str = "rate",
    t1: Optional[float] = None,
    config: Optional[IntegratorConfig] = None,
) -> SweepTable:
    """
    Figure of merit as a function of detuning.

    method="simulate": long-time accessible Ḟ (metric="rate") or accessible
    𝓕(horizon)/horizon (metric="average"), flagged when the rate drifts by more
    than 1e-3 relative over the last tenth of the horizon.
    method="spectral": spectral_rate (stationary, always converged).
    method="measure_reset": classical FI per time of prepare_measure_reset at t1.
    """
    deltas = np.asarray(delta_grid, dtype=float)
    if deltas.ndim != 1 or deltas.size == 0 or not np.all(np.isfinite(deltas)):
        raise DomainError("delta_grid must be a finite, non-empty 1-D sequence")
    if method not in SWEEP_METHODS:
        raise DomainError(f"unknown sweep method '{method}' (expected one of {SWEEP_METHODS})")
    if metric not in ("rate", "average"):
        raise DomainError(f"unknown sweep metric '{metric}'")
    if method != "spectral" and not horizon > 0:
        raise DomainError(f"horizon must be positive, got {horizon}")

    values = np.empty(deltas.size)
    converged = np.ones(deltas.size, dtype=bool)
    evaluate = None

    if method == "spectral":
        def evaluate(d):
            return spectral_rate(spec.with_detuning(d), d)
        values[:] = [evaluate(d) for d in deltas]
    elif method == "measure_reset":
        if t1 is None:
            raise DomainError("measure_reset sweeps need t1")
        values[:] = [prepare_measure_reset(rho0, spec.with_detuning(d), t1, config=config).classical_fi_per_time
                     for d in deltas]
    else:
        grid = sample_grid(0.0, horizon)
        tail = int(np.searchsorted(grid, 0.9 * horizon))
        for i, d in enumerate(deltas):
            run = accessible_trajectory(spec.with_detuning(d), rho0, grid, config)
            rate = run.rate_total
            values[i] = rate[-1] if metric == "rate" else run.qfi_total[-1] / horizon
            drift = abs(rate[-1] - rate[tail]) / max(abs(rate[-1]), 1e-12)
            if drift > DRIFT_TOL:
                converged[i] = False
                logger.warning("⚠️ Long-time rate not converged at δω=%.4g (relative drift %.2e)", d, drift)
            logger.debug("🔄 δω=%.4g → %.6g", d, values[i])

    logger.info("📊 Detuning sweep (%s): %d points, peak %.6g", method, deltas.size, float(values.max()))
    return SweepTable(deltas, values, converged, method, evaluate)


@dataclass(frozen=True)
class StepwiseResult:
    widths: np.ndarray
    per_interval: np.ndarray
    f_dot_max: float

    @property
    def total(self) -> float:
        return float(self.per_interval.sum())

    @property
    def t_total(self) -> float:
        return float(self.widths.sum())


def stepwise_signal_qfi(
    spec: OscillatorSpec,
    rho0,
    interval_widths: Union[float, Sequence[float]],
    horizon: Optional[float] = None,
    config: Optional[IntegratorConfig] = None,
    rank_tol: float = settings.RANK_TOL,
) -> StepwiseResult:
    """
    Split the horizon into intervals, each an independent estimation problem.

    ρ carries over between intervals while ρ′ restarts from 0; 𝓕_i counts the
    system QFI at the interval end plus what the continuum channel emitted
    during the interval.

    A scalar width tiles the horizon; a horizon that is not a multiple of it ends
    with one shorter interval.
    """
    if np.ndim(interval_widths) == 0:
        if horizon is None:
            raise DomainError("a scalar interval width needs a horizon")
        width = float(interval_widths)
        if not (width > 0 and horizon > 0):
            raise DomainError(f"interval width and horizon must be positive, got {width}, {horizon}")
        count = math.floor(horizon / width + 1e-9)
        widths = np.full(count, width)
        remainder = horizon - count * width
        if remainder > 1e-9 * max(horizon, 1.0):
            widths = np.append(widths, remainder)
    else:
        widths = np.asarray(interval_widths, dtype=float)
    if np.any(widths <= 0):
        raise DomainError("interval widths must be positive")
    if horizon is not None and abs(widths.sum() - horizon) > 1e-9 * max(horizon, 1.0):
        raise DomainError(f"interval widths sum to {widths.sum():.6g}, horizon is {horizon:.6g}")

    rho = validate_density(rho0)
    f_dot_max = 4.0 * oscillator_constants(spec, rho).c2
    per_interval: List[float] = []
    t0 = 0.0
    for w in widths:
        run = accessible_trajectory(spec, rho, sample_grid(t0, t0 + w), config, rank_tol=rank_tol)
        per_interval.append(float(run.qfi_total[-1]))
        rho = run.final_rho
        t0 += w

    result = StepwiseResult(widths, np.array(per_interval), f_dot_max)
    if result.total > f_dot_max * result.t_total + 1e-6:
        logger.warning("⚠️ Stepwise QFI %.6g exceeds Ḟ_max·t = %.6g", result.total, f_dot_max * result.t_total)
    return result
