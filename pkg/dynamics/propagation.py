"""
Joint propagation of (ρ, ρ′[, ρ″]) under a parameter-dependent Lindblad model.

The master equation and its g-derivatives are integrated together with a
fixed-step classical Runge-Kutta scheme so that ρ′ is exactly the derivative of
the discrete ρ map, which keeps the SLD consistent at every output time.
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np

import settings
from dynamics.model import IntegratorConfig, ParamModel, TrajectoryPoint
from quantum_core.errors import (
    DimensionMismatchError, DomainError, ModelError, PropagationError, TruncationLeakageError,
)
from quantum_core.linalg import hermitize, require_hermitian, validate_density

logger = logging.getLogger(__name__)


def _check_dim(model: ParamModel, *ops: np.ndarray):
    for op in ops:
        if op is not None and np.shape(op) != (model.dim, model.dim):
            raise DimensionMismatchError(
                f"model '{model.name}' has dimension {model.dim}, got operator of shape {np.shape(op)}"
            )


def _dissipator(Ls, LdLs, X: np.ndarray) -> np.ndarray:
    out = np.zeros_like(X)
    for L, LdL in zip(Ls, LdLs):
        out += L @ X @ L.conj().T - 0.5 * (LdL @ X + X @ LdL)
    return out


class _Generator:
    """Operators of the model frozen at one (t, g), applied to ρ and its derivatives."""

    def __init__(self, model: ParamModel, t: float, g: float, second_order: bool = False):
        self.H, self.Hp, self.Ls, self.Lps = model.generators(t, g)
        self.LdLs = [L.conj().T @ L for L in self.Ls]
        self.Hpp = model.second_deriv(t, g) if second_order else None

    def rho_dot(self, rho):
        return -1j * (self.H @ rho - rho @ self.H) + _dissipator(self.Ls, self.LdLs, rho)

    def rho_prime_dot(self, rho, rho_prime):
        out = -1j * (self.Hp @ rho - rho @ self.Hp) + self.rho_dot(rho_prime)
        for L, Lp in zip(self.Ls, self.Lps):
            if Lp is None:
                continue
            cross = Lp.conj().T @ L + L.conj().T @ Lp
            out += Lp @ rho @ L.conj().T + L @ rho @ Lp.conj().T - 0.5 * (cross @ rho + rho @ cross)
        return out

    def rho_second_dot(self, rho, rho_prime, rho_second):
        out = self.rho_dot(rho_second) - 2j * (self.Hp @ rho_prime - rho_prime @ self.Hp)
        out += -1j * (self.Hpp @ rho - rho @ self.Hpp)
        return out

    def apply(self, state):
        rho, rho_prime, rho_second = state
        d_rho = self.rho_dot(rho)
        d_prime = self.rho_prime_dot(rho, rho_prime)
        d_second = None if rho_second is None else self.rho_second_dot(rho, rho_prime, rho_second)
        return d_rho, d_prime, d_second


def lindblad_rhs(model: ParamModel, t: float, g: float, rho) -> np.ndarray:
    """ρ̇ = −i[H,ρ] + Σ_j (L_j ρ L_j† − ½{L_j†L_j, ρ})."""
    rho = np.asarray(rho, dtype=complex)
    _check_dim(model, rho)
    return _Generator(model, t, g).rho_dot(rho)


def derivative_rhs(model: ParamModel, t: float, g: float, rho, rho_prime) -> np.ndarray:
    """ρ̇′ including the L_j′ terms of g-dependent Lindblad operators."""
    rho = np.asarray(rho, dtype=complex)
    rho_prime = np.asarray(rho_prime, dtype=complex)
    _check_dim(model, rho, rho_prime)
    return _Generator(model, t, g).rho_prime_dot(rho, rho_prime)


def second_derivative_rhs(model: ParamModel, t: float, g: float, rho, rho_prime, rho_second) -> np.ndarray:
    """ρ̇″ for models whose Lindblad operators do not depend on g."""
    if model.has_lindblad_derivs:
        raise ModelError(f"model '{model.name}': second-order propagation needs g-independent Lindblads")
    arrays = [np.asarray(x, dtype=complex) for x in (rho, rho_prime, rho_second)]
    _check_dim(model, *arrays)
    return _Generator(model, t, g, second_order=True).rho_second_dot(*arrays)


def _axpy(state, k, h):
    return tuple(None if s is None else s + h * d for s, d in zip(state, k))


def _rk4_step(model: ParamModel, t: float, g: float, h: float, state, second_order: bool):
    gen0 = _Generator(model, t, g, second_order)
    gen_mid = _Generator(model, t + 0.5 * h, g, second_order)
    gen1 = _Generator(model, t + h, g, second_order)

    k1 = gen0.apply(state)
    k2 = gen_mid.apply(_axpy(state, k1, 0.5 * h))
    k3 = gen_mid.apply(_axpy(state, k2, 0.5 * h))
    k4 = gen1.apply(_axpy(state, k3, h))

    new_state = []
    for i, s in enumerate(state):
        if s is None:
            new_state.append(None)
            continue
        new_state.append(s + (h / 6.0) * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]))
    return tuple(new_state)


def _check_output(model: ParamModel, t: float, rho: np.ndarray):
    smallest = float(np.linalg.eigvalsh(hermitize(rho))[0])
    if smallest < -settings.POSITIVITY_TOL:
        raise PropagationError(
            f"positivity lost at t={t:.6g}: smallest eigenvalue {smallest:.3e} (step too coarse?)"
        )
    if model.leakage_levels > 0:
        top = float(np.real(np.diag(rho)[-model.leakage_levels:]).sum())
        if top > settings.LEAKAGE_TOL:
            raise TruncationLeakageError(
                f"Fock truncation leakage at t={t:.6g}: top {model.leakage_levels} levels hold {top:.3e}"
            )


def propagate(
    model: ParamModel,
    rho0,
    rho_prime0,
    g: float,
    t_grid: Sequence[float],
    config: Optional[IntegratorConfig] = None,
    second_order: bool = False,
    rho_second0=None,
) -> List[TrajectoryPoint]:
    """
    Integrate ρ and ρ′ (and optionally ρ″) from t_grid[0] and sample at every grid time.

    Args:
        model: ParamModel to integrate
        rho0: initial density operator at t_grid[0]
        rho_prime0: initial ∂ρ/∂g (Hermitian, traceless)
        g: parameter value the trajectory is evaluated at
        t_grid: strictly increasing output times
        config: IntegratorConfig (default step from settings)
        second_order: also carry ρ″ (zero initial value unless rho_second0 given)

    Returns:
        List of TrajectoryPoint, one per grid time

    Raises:
        DomainError: rho_prime0 is not traceless
        PropagationError: the time grid is empty or not strictly increasing
    """
    config = config or IntegratorConfig()
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise PropagationError("time grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) <= 0):
        bad = int(np.argmin(np.diff(grid)))
        raise PropagationError(f"time grid not strictly increasing at index {bad + 1}")

    rho = validate_density(rho0)
    rho_prime = require_hermitian(rho_prime0, name="rho_prime0", tol=1e-9)
    drift = abs(np.trace(rho_prime))
    if drift > 1e-9 * max(1.0, float(np.linalg.norm(rho_prime))):
        raise DomainError(f"rho_prime0 must be traceless, got tr = {drift:.3e}")
    _check_dim(model, rho, rho_prime)
    rho_second = None
    if second_order:
        if model.has_lindblad_derivs:
            raise ModelError(f"model '{model.name}': second-order propagation needs g-independent Lindblads")
        rho_second = np.zeros_like(rho) if rho_second0 is None else np.asarray(rho_second0, dtype=complex)
        _check_dim(model, rho_second)

    state = (rho, hermitize(rho_prime), rho_second)
    points = [TrajectoryPoint(t=float(grid[0]), rho=state[0], rho_prime=state[1], rho_second=state[2])]

    for t_start, t_end in zip(grid[:-1], grid[1:]):
        span = t_end - t_start
        n_sub = max(1, math.ceil(span / config.step - 1e-9)) * config.substep_refinement
        h = span / n_sub
        t = float(t_start)
        for _ in range(n_sub):
            state = _rk4_step(model, t, g, h, state, second_order)
            if config.hermitize_each_step:
                state = tuple(None if s is None else hermitize(s) for s in state)
            t += h
        _check_output(model, float(t_end), state[0])
        points.append(TrajectoryPoint(t=float(t_end), rho=state[0], rho_prime=state[1], rho_second=state[2]))

    return points


def default_delta(g: float) -> float:
    return 1e-4 * max(1.0, abs(g))


def fd_rho_prime(
    model: ParamModel,
    rho0,
    g: float,
    delta_g: Optional[float],
    t_grid: Sequence[float],
    config: Optional[IntegratorConfig] = None,
) -> List[np.ndarray]:
    """Central-difference oracle [ρ(t,g+δ) − ρ(t,g−δ)]/2δ for a g-independent ρ0."""
    delta = default_delta(g) if delta_g is None else delta_g
    if not delta > 0:
        raise DomainError(f"delta_g must be positive, got {delta}")
    zero = np.zeros((model.dim, model.dim), dtype=complex)
    plus = propagate(model, rho0, zero, g + delta, t_grid, config)
    minus = propagate(model, rho0, zero, g - delta, t_grid, config)
    return [(p.rho - m.rho) / (2 * delta) for p, m in zip(plus, minus)]


def fd_rho_second(
    model: ParamModel,
    rho0,
    g: float,
    delta_g: float,
    t_grid: Sequence[float],
    config: Optional[IntegratorConfig] = None,
) -> List[np.ndarray]:
    """Second central difference [ρ(g+δ) − 2ρ(g) + ρ(g−δ)]/δ²."""
    if not delta_g > 0:
        raise DomainError(f"delta_g must be positive, got {delta_g}")
    zero = np.zeros((model.dim, model.dim), dtype=complex)
    runs = [propagate(model, rho0, zero, g + s * delta_g, t_grid, config) for s in (1.0, 0.0, -1.0)]
    return [(p.rho - 2 * c.rho + m.rho) / delta_g ** 2 for p, c, m in zip(*runs)]
