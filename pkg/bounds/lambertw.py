"""
Lower branch W₋₁ of the Lambert-W function.

Everything is solved in the exponent form x = −e^{−1−u}: v = −W₋₁(x) ≥ 1 is the
root of v − ln v = 1 + u, bracketed for every u ≥ 0 by

    1 + √(2u) + ⅔u ≤ v ≤ 1 + √(2u) + u.

Halley's method is run on s = v − 1 from the middle of that bracket and every
iterate is clipped back into it. Working with u directly keeps the large-t HNLS
curve finite where −e^{−1−u} underflows.
"""
from typing import Union

import numpy as np

from quantum_core.errors import DomainError

ArrayLike = Union[float, np.ndarray]

MAX_ITER = 64
INV_E = float(np.exp(-1.0))


def sandwich_bounds(u: ArrayLike):
    """(lower, upper) bracket for −W₋₁(−e^{−1−u})."""
    u = np.asarray(u, dtype=float)
    r = np.sqrt(2.0 * u)
    return 1.0 + r + 2.0 * u / 3.0, 1.0 + r + u


def _s_minus_log1p(s: np.ndarray) -> np.ndarray:
    """s − ln(1+s), with a series near 0 where the subtraction cancels."""
    series = s * s * (0.5 - s * (1 / 3 - s * (0.25 - s * (0.2 - s / 6))))
    direct = s - np.log1p(np.maximum(s, 0.0))
    return np.where(s < 1e-3, series, direct)


def lambert_w_m1_from_exponent(u: ArrayLike) -> ArrayLike:
    """v = −W₋₁(−e^{−1−u}) for u ≥ 0."""
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(u_arr < 0) or not np.all(np.isfinite(u_arr)):
        raise DomainError("exponent u must be finite and ≥ 0")

    lo, hi = sandwich_bounds(u_arr)
    s_lo, s_hi = lo - 1.0, hi - 1.0
    s = 0.5 * (s_lo + s_hi)
    active = u_arr > 0
    for _ in range(MAX_ITER):
        if not active.any():
            break
        f = _s_minus_log1p(s) - u_arr
        f1 = s / (1.0 + s)
        f2 = 1.0 / (1.0 + s) ** 2
        denom = 2.0 * f1 * f1 - f * f2
        step = np.where(active & (denom != 0), 2.0 * f * f1 / np.where(denom == 0, 1.0, denom), 0.0)
        s_new = np.clip(s - step, s_lo, s_hi)
        active = active & (np.abs(s_new - s) > 4e-16 * (1.0 + s))
        s = s_new

    v = np.where(u_arr > 0, 1.0 + s, 1.0)
    return float(v[0]) if np.ndim(u) == 0 else v


def lambert_w_m1(x: ArrayLike) -> ArrayLike:
    """
    W₋₁(x) for −1/e ≤ x < 0.

    Args:
        x: scalar or array in [−1/e, 0)

    Returns:
        w ≤ −1 with w·e^w = x
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x_arr >= 0) or np.any(x_arr < -INV_E * (1 + 1e-15)):
        raise DomainError("lambert_w_m1 is defined on [−1/e, 0)")
    u = np.maximum(-1.0 - np.log(-x_arr), 0.0)
    w = -lambert_w_m1_from_exponent(u)
    w = np.atleast_1d(w)
    return float(w[0]) if np.ndim(x) == 0 else w
