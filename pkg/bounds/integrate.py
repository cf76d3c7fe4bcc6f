"""Numerical integration of rate bounds into F(t) bound curves."""
import logging
import math
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from bounds.curves import BoundCurve
from quantum_core.errors import DomainError, ToolkitError

logger = logging.getLogger(__name__)

RateFunction = Callable[[float, float], float]

S_FLOOR = 1e-12
SAMPLE_TOL = 1e-9


def integrate_rate_bound(rate: RateFunction, F0: float, t_grid: Sequence[float]) -> BoundCurve:
    """
    Solve Ḟ = rate(t, F) from F(t_grid[0]) = F0 and sample it on t_grid.

    Rates that vanish like √F at F = 0 admit the trivial solution F ≡ 0; in that
    case the equation is integrated for s = √F (ṡ = rate/2s, finite at s → 0) to
    follow the maximal solution. Negative rates are clipped to 0 with a warning.

    Returns:
        BoundCurve of family "integrated"
    """
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise DomainError("t_grid must be a strictly increasing 1-D sequence")
    if F0 < 0:
        raise DomainError(f"F0 must be ≥ 0, got {F0}")

    warned = {"clip": False}

    def safe_rate(t, F):
        r = float(rate(t, F))
        if r < 0:
            if not warned["clip"]:
                logger.warning("⚠️ Rate bound returned %.3e < 0 at t=%.4g; clipping to 0", r, t)
                warned["clip"] = True
            r = 0.0
        return r

    if grid.size == 1:
        return BoundCurve.sampled(grid, [F0])

    use_sqrt = F0 == 0 and safe_rate(grid[0], 0.0) == 0.0
    if use_sqrt:
        def rhs(t, y):
            s = max(y[0], S_FLOOR)
            return [safe_rate(t, s * s) / (2.0 * s)]
        y0 = [math.sqrt(F0)]
    else:
        def rhs(t, y):
            return [safe_rate(t, max(y[0], 0.0))]
        y0 = [F0]

    sol = solve_ivp(rhs, (grid[0], grid[-1]), y0, t_eval=grid, method="RK45", rtol=1e-10, atol=1e-12)
    if not sol.success:
        raise ToolkitError(f"rate-bound integration failed: {sol.message}")
    values = sol.y[0] ** 2 if use_sqrt else sol.y[0]
    return BoundCurve.sampled(grid, np.maximum.accumulate(values))


def integrated_bound_along(t_grid, F0: float, generator_qfi, channel) -> np.ndarray:
    """
    Integrate Ḟ_B = 2√(𝓕_G(t)·F_B) + 4C(t) from F_B(t0) = F0.

    𝓕_G and C = Σ⟨A_j†A_j⟩ are sampled on t_grid for the decomposition chosen at
    each point and joined by cubic splines. Every decomposition gives a valid
    rate bound for all F, so F_B depends on the simulated trajectory only through
    those samples and F0; a trajectory whose rate exceeds the bound ends up above
    F_B.
    """
    t = np.asarray(t_grid, dtype=float)
    fg = np.asarray(generator_qfi, dtype=float)
    c = np.asarray(channel, dtype=float)
    if t.ndim != 1 or t.size == 0 or np.any(np.diff(t) <= 0):
        raise DomainError("t_grid must be a strictly increasing 1-D sequence")
    if fg.shape != t.shape or c.shape != t.shape:
        raise DomainError(f"samples {fg.shape}/{c.shape} do not match t_grid {t.shape}")
    if np.any(fg < -SAMPLE_TOL) or np.any(c < -SAMPLE_TOL):
        raise DomainError("𝓕_G and channel samples must be ≥ 0")
    fg, c = np.maximum(fg, 0.0), np.maximum(c, 0.0)
    if t.size == 1:
        return np.array([float(F0)])

    fg_spline = CubicSpline(t, fg)
    c_spline = CubicSpline(t, c)

    def rate(s, F):
        return 2.0 * math.sqrt(max(float(fg_spline(s)), 0.0) * F) + 4.0 * max(float(c_spline(s)), 0.0)

    return integrate_rate_bound(rate, float(F0), t)(t)
