"""
Nuisance-parameter check for signals with an unknown shape h.

For H(t, g, h) with ∂_h H = 0 at g = 0, the σ-model

    H^{(σ)}(t, g) = H(t, 0, h) + ∂_h H(t, g, h)

evolves exactly like ρ at g = 0, and its QFI rate equals the h² coefficient of
Ḟ(h), i.e. ½∂²_h Ḟ at h = 0. The check runs both sides numerically.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

import settings
from dynamics.model import IntegratorConfig, ParamModel
from dynamics.propagation import propagate
from fisher.rate import annotate
from quantum_core.errors import DomainError, ModelError
from quantum_core.linalg import validate_density

logger = logging.getLogger(__name__)

NuisanceMap = Callable[[float, float, float], np.ndarray]

PRECONDITION_TOL = 1e-10
STATE_TOL = 1e-8
RATE_TOL = 1e-4


@dataclass(frozen=True)
class NuisanceModel:
    dim: int
    hamiltonian: NuisanceMap
    d_g: NuisanceMap
    d_h: NuisanceMap
    d_gh: NuisanceMap
    lindblads: Tuple[np.ndarray, ...] = ()
    name: str = "nuisance_model"

    @classmethod
    def scalar_signal(
        cls,
        H_tilde,
        H_c: Callable[[float], np.ndarray],
        f0: Callable[[float], float],
        f1: Callable[[float], float],
        lindblads: Sequence[np.ndarray] = (),
    ) -> "NuisanceModel":
        """H = g(f0(t) + h·f1(t))·H̃ + H_c(t)."""
        Ht = np.asarray(H_tilde, dtype=complex)
        return cls(
            dim=Ht.shape[0],
            hamiltonian=lambda t, g, h: H_c(t) + g * (f0(t) + h * f1(t)) * Ht,
            d_g=lambda t, g, h: (f0(t) + h * f1(t)) * Ht,
            d_h=lambda t, g, h: g * f1(t) * Ht,
            d_gh=lambda t, g, h: f1(t) * Ht,
            lindblads=tuple(np.asarray(L, dtype=complex) for L in lindblads),
            name="scalar_signal",
        )

    def _lindblad_maps(self):
        return tuple((lambda t, g, L=L: L) for L in self.lindblads)

    def at_h(self, h: float) -> ParamModel:
        """The ordinary one-parameter model in g at fixed h."""
        return ParamModel(
            dim=self.dim,
            hamiltonian=lambda t, g: self.hamiltonian(t, g, h),
            hamiltonian_deriv=lambda t, g: self.d_g(t, g, h),
            lindblads=self._lindblad_maps(),
            name=f"{self.name}[h={h:g}]",
        )

    def sigma_model(self, h: float = 0.0) -> ParamModel:
        return ParamModel(
            dim=self.dim,
            hamiltonian=lambda t, g: self.hamiltonian(t, 0.0, h) + self.d_h(t, g, h),
            hamiltonian_deriv=lambda t, g: self.d_gh(t, g, h),
            lindblads=self._lindblad_maps(),
            name=f"{self.name}[sigma]",
        )


@dataclass(frozen=True)
class NuisanceReport:
    t: np.ndarray
    rate_h2: np.ndarray
    sigma_rate: np.ndarray
    sigma_qfi: np.ndarray
    max_state_deviation: float
    max_rate_error: float

    @property
    def passed(self) -> bool:
        return self.max_state_deviation <= STATE_TOL and self.max_rate_error <= RATE_TOL


def _check_precondition(model: NuisanceModel, t_grid: np.ndarray, delta: float):
    for t in t_grid:
        for h in (-delta, 0.0, delta):
            norm = float(np.linalg.norm(model.d_h(float(t), 0.0, h)))
            if norm > PRECONDITION_TOL:
                raise ModelError(f"∂_h H ≠ 0 at g = 0: t={t:.6g}, ‖∂_h H‖ = {norm:.3e}")


def nuisance_sigma_check(
    model: NuisanceModel,
    rho0,
    t_grid: Sequence[float],
    delta: float = 1e-2,
    config: Optional[IntegratorConfig] = None,
    rank_tol: float = settings.RANK_TOL,
) -> NuisanceReport:
    """
    Compare [Ḟ(δ) − 2Ḟ(0) + Ḟ(−δ)]/(2δ²) with the σ-model rate along t_grid (g = 0).

    Raises:
        ModelError: ∂_h H is nonzero at g = 0 for some sampled t
    """
    grid = np.asarray(t_grid, dtype=float)
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    _check_precondition(model, grid, delta)
    rho0 = validate_density(rho0)
    zero = np.zeros_like(rho0)

    rates = {}
    rhos = None
    for h in (-delta, 0.0, delta):
        sub = model.at_h(h)
        points = annotate(propagate(sub, rho0, zero, 0.0, grid, config), sub, 0.0, rank_tol)
        rates[h] = np.array([p.qfi_rate for p in points])
        if h == 0.0:
            rhos = [p.rho for p in points]
    rate_h2 = (rates[delta] - 2.0 * rates[0.0] + rates[-delta]) / (2.0 * delta ** 2)

    sigma = model.sigma_model()
    sigma_points = annotate(propagate(sigma, rho0, zero, 0.0, grid, config), sigma, 0.0, rank_tol)
    sigma_rate = np.array([p.qfi_rate for p in sigma_points])
    sigma_qfi = np.array([p.qfi for p in sigma_points])
    deviation = max(float(np.linalg.norm(p.rho - r)) for p, r in zip(sigma_points, rhos))
    scale = np.maximum(1.0, np.abs(sigma_rate))
    rate_error = float(np.max(np.abs(rate_h2 - sigma_rate) / scale))

    report = NuisanceReport(grid, rate_h2, sigma_rate, sigma_qfi, deviation, rate_error)
    status = "✅" if report.passed else "❌"
    logger.info("%s σ-model check: ‖σ − ρ‖ = %.2e, rate error = %.2e", status, deviation, rate_error)
    return report


def sigma_rise_time(report: NuisanceReport, target: float, fraction: float = 0.9, t_f: float = 0.0) -> float:
    """Time after t_f until the σ-model rate first reaches fraction·target (inf if never)."""
    if target <= 0 or not 0 < fraction <= 1:
        raise DomainError(f"need target > 0 and 0 < fraction ≤ 1, got {target}, {fraction}")
    hits = np.nonzero((report.t >= t_f) & (report.sigma_rate >= fraction * target))[0]
    if hits.size == 0:
        return math.inf
    return float(report.t[hits[0]] - t_f)
