"""
Closed-form QFI bound curves.

HLS (H′ in the Lindblad span):
    Ḟ ≤ 4c1√F(1 − c1√F/(4c2))  for √F ≤ 2c2/c1,  else 4c2
HNLS (remainder G0 with √(𝓕_G0/4) ≤ c0):
    Ḟ ≤ 4c1√F(1 − (c1−c0)²√F/(4c1c2))  for √F ≤ 2c2/(c1−c0),  else 4(c0√F + c2)

Below the crossover both rates give √F(t) = s∞(1 − e^{−kt}) with
k = (c1−c0)²/(2c2); the curves are evaluated in that exponential form.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from bounds.lambertw import lambert_w_m1_from_exponent
from quantum_core.errors import DimensionMismatchError, DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

FAMILIES = (
    "hls_piecewise", "hnls_lambert", "hnls_simple", "prior_linear",
    "prior_quadratic", "oscillator", "integrated",
)


def _check_nonnegative(**values):
    for name, value in values.items():
        if value < 0 or not math.isfinite(value):
            raise DomainError(f"{name} must be finite and ≥ 0, got {value}")


def _out(t, values):
    return float(values) if np.ndim(t) == 0 else values


@dataclass(frozen=True)
class BoundConstants:
    c0: float
    c1: float
    c2: float
    t_c: float

    def __post_init__(self):
        _check_nonnegative(c0=self.c0, c1=self.c1, c2=self.c2)
        if self.c0 > self.c1:
            raise DomainError(f"c0 = {self.c0} exceeds c1 = {self.c1}")

    @classmethod
    def for_hls(cls, c1: float, c2: float) -> "BoundConstants":
        t_c = 2.0 * c2 * math.log(2.0) / c1 ** 2 if c1 > 0 else math.inf
        return cls(c0=0.0, c1=c1, c2=c2, t_c=t_c)

    @classmethod
    def for_hnls(cls, c0: float, c1: float, c2: float) -> "BoundConstants":
        if c0 == 0:
            return cls.for_hls(c1, c2)
        if c0 > c1:
            raise DomainError(f"c0 = {c0} exceeds c1 = {c1}")
        if c1 == c0:
            return cls(c0=c0, c1=c1, c2=c2, t_c=math.inf)
        t_c = 2.0 * c2 / (c1 - c0) ** 2 * math.log(2.0 * c1 / (c1 + c0))
        return cls(c0=c0, c1=c1, c2=c2, t_c=t_c)


def hls_rate(c1: float, c2: float, F: ArrayLike) -> ArrayLike:
    """Interpolated HLS rate bound; c1 = 0 gives the flat 4c2 branch."""
    _check_nonnegative(c1=c1, c2=c2)
    s = np.sqrt(np.clip(np.asarray(F, dtype=float), 0.0, None))
    if c1 == 0:
        return _out(F, np.full_like(s, 4.0 * c2))
    if c2 == 0:
        return _out(F, np.zeros_like(s))
    rising = 4.0 * c1 * s * (1.0 - c1 * s / (4.0 * c2))
    return _out(F, np.where(s <= 2.0 * c2 / c1, rising, 4.0 * c2))


def hls_curve(c1: float, c2: float, t: ArrayLike) -> ArrayLike:
    """Piecewise HLS bound: 16c2²/c1²(1 − 2^{−t/t_c})² up to t_c, then 4c2(c2/c1² + t − t_c)."""
    _check_nonnegative(c1=c1, c2=c2)
    if c1 <= 0:
        raise DomainError("hls_curve needs c1 > 0")
    tt = np.asarray(t, dtype=float)
    if c2 == 0:
        return _out(t, np.zeros_like(tt))
    t_c = BoundConstants.for_hls(c1, c2).t_c
    early = 16.0 * c2 ** 2 / c1 ** 2 * (-np.expm1(-c1 ** 2 * tt / (2.0 * c2))) ** 2
    late = 4.0 * c2 * (c2 / c1 ** 2 + tt - t_c)
    return _out(t, np.where(tt <= t_c, early, late))


def hnls_rate(c0: float, c1: float, c2: float, F: ArrayLike) -> ArrayLike:
    """Three-constant rate bound; c0 = c1 always uses the first case."""
    _check_nonnegative(c0=c0, c1=c1, c2=c2)
    if c0 > c1:
        raise DomainError(f"c0 = {c0} exceeds c1 = {c1}")
    if c0 == 0:
        return hls_rate(c1, c2, F)
    s = np.sqrt(np.clip(np.asarray(F, dtype=float), 0.0, None))
    gap = c1 - c0
    if gap == 0:
        return _out(F, 4.0 * c1 * s)
    if c2 == 0:
        return _out(F, 4.0 * c0 * s)
    rising = 4.0 * c1 * s * (1.0 - gap ** 2 * s / (4.0 * c1 * c2))
    return _out(F, np.where(s <= 2.0 * c2 / gap, rising, 4.0 * (c0 * s + c2)))


def hnls_y(c0: float, c1: float, c2: float, t: ArrayLike) -> ArrayLike:
    """
    √F after the crossover: the solution of ẏ = 2(c0·y + c2)/y with y(0) = 2c2/(c1−c0).

    y(t) = (c2/c0)(−W₋₁(−e^{−1−u}) − 1) with u = 2c0²t/c2 + 2c0/(c1−c0) − ln((c0+c1)/(c1−c0)).
    """
    tt = np.asarray(t, dtype=float)
    gap = c1 - c0
    u = 2.0 * c0 ** 2 * tt / c2 + 2.0 * c0 / gap - math.log((c0 + c1) / gap)
    v = lambert_w_m1_from_exponent(np.maximum(u, 0.0))
    return c2 / c0 * (np.asarray(v) - 1.0)


def hnls_curve(c0: float, c1: float, c2: float, t: ArrayLike) -> ArrayLike:
    """HNLS bound on 𝓕(t) from 𝓕(0) = 0 (exponential rise, then y(t − t_c)²)."""
    _check_nonnegative(c0=c0, c1=c1, c2=c2)
    if c0 > c1:
        raise DomainError(f"c0 = {c0} exceeds c1 = {c1}")
    if c0 == 0:
        return hls_curve(c1, c2, t)
    tt = np.asarray(t, dtype=float)
    if c2 == 0:
        return _out(t, 4.0 * c0 ** 2 * tt ** 2)
    gap = c1 - c0
    if gap == 0:
        return _out(t, 4.0 * c1 ** 2 * tt ** 2)

    t_c = BoundConstants.for_hnls(c0, c1, c2).t_c
    k = gap ** 2 / (2.0 * c2)
    s_inf = 4.0 * c1 * c2 / gap ** 2
    early = (s_inf * -np.expm1(-k * tt)) ** 2
    late = np.atleast_1d(hnls_y(c0, c1, c2, np.maximum(tt - t_c, 0.0))) ** 2
    late = late.reshape(tt.shape)
    return _out(t, np.where(tt <= t_c, early, late))


def hnls_curve_simple(c0: float, c2: float, t: ArrayLike) -> ArrayLike:
    """Weaker HNLS bound 4c2t + 4t²c0(c0 + 2√(c2/t)) = (2c0t + 2√(c2t))²."""
    _check_nonnegative(c0=c0, c2=c2)
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0):
        raise DomainError("hnls_curve_simple needs t ≥ 0")
    return _out(t, (2.0 * c0 * tt + 2.0 * np.sqrt(c2 * tt)) ** 2)


def quadratic_prior_constant(H_prime) -> float:
    """min_α ‖H′ − αI‖² = ((λ_max − λ_min)/2)²."""
    vals = np.linalg.eigvalsh(0.5 * (np.asarray(H_prime) + np.asarray(H_prime).conj().T))
    return float(((vals[-1] - vals[0]) / 2.0) ** 2)


def prior_curves(kind: str, constant: float, t: ArrayLike) -> ArrayLike:
    """Earlier closed-form bounds: linear 4·c2·t, quadratic 4·‖H′ − αI‖²·t²."""
    _check_nonnegative(constant=constant)
    tt = np.asarray(t, dtype=float)
    if kind == "linear":
        return _out(t, 4.0 * constant * tt)
    if kind == "quadratic":
        return _out(t, 4.0 * constant * tt ** 2)
    raise DomainError(f"unknown prior curve kind '{kind}'")


def lindblad_magnitude_bound(f_prime: Sequence[float], expectations: Sequence[float]) -> float:
    """4 Σ_j (f_j′)² ⟨L̂_j†L̂_j⟩ for Lindblad operators L_j = f_j(g) L̂_j."""
    fp = np.asarray(f_prime, dtype=float)
    ex = np.asarray(expectations, dtype=float)
    if fp.shape != ex.shape:
        raise DimensionMismatchError(f"{fp.size} derivatives vs {ex.size} expectations")
    if np.any(ex < -1e-12):
        raise DomainError("⟨L̂†L̂⟩ expectations must be ≥ 0")
    return float(4.0 * np.sum(fp ** 2 * np.clip(ex, 0.0, None)))


@dataclass(frozen=True)
class BoundCurve:
    family: str
    constants: Optional[BoundConstants]
    evaluate: Callable[[ArrayLike], ArrayLike]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown bound-curve family '{self.family}'")

    def __call__(self, t: ArrayLike) -> ArrayLike:
        return self.evaluate(t)

    @classmethod
    def hls(cls, c1: float, c2: float) -> "BoundCurve":
        return cls("hls_piecewise", BoundConstants.for_hls(c1, c2), lambda t: hls_curve(c1, c2, t))

    @classmethod
    def hnls(cls, c0: float, c1: float, c2: float) -> "BoundCurve":
        return cls("hnls_lambert", BoundConstants.for_hnls(c0, c1, c2), lambda t: hnls_curve(c0, c1, c2, t))

    @classmethod
    def hnls_simple(cls, c0: float, c2: float) -> "BoundCurve":
        return cls("hnls_simple", None, lambda t: hnls_curve_simple(c0, c2, t))

    @classmethod
    def prior_linear(cls, c2: float) -> "BoundCurve":
        return cls("prior_linear", None, lambda t: prior_curves("linear", c2, t))

    @classmethod
    def prior_quadratic(cls, constant: float) -> "BoundCurve":
        return cls("prior_quadratic", None, lambda t: prior_curves("quadratic", constant, t))

    @classmethod
    def oscillator(cls, epsilon: complex, gamma_t: float, sigma_p2: float) -> "BoundCurve":
        """HLS curve with c1² = 2|ε|²σ²_p̃ and c2 = |ε|²/γ_T."""
        c1 = math.sqrt(2.0 * abs(epsilon) ** 2 * sigma_p2)
        c2 = abs(epsilon) ** 2 / gamma_t
        return cls("oscillator", BoundConstants.for_hls(c1, c2), lambda t: hls_curve(c1, c2, t))

    @classmethod
    def sampled(cls, t_grid, values, family: str = "integrated") -> "BoundCurve":
        """Piecewise-linear interpolation of values on t_grid (clamped outside it)."""
        grid = np.asarray(t_grid, dtype=float).copy()
        vals = np.asarray(values, dtype=float).copy()
        return cls(family, None, lambda t: _out(t, np.interp(np.asarray(t, dtype=float), grid, vals)))
