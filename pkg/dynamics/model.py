"""
Parameter-dependent Lindblad models and the value types produced by propagation.

A ParamModel bundles H(t,g), ∂H/∂g, the Lindblad operators L_j(t,g) and their
g-derivatives as plain callables, so scenario builders can close over
precomputed matrices.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

import settings
from quantum_core.errors import DomainError, ModelError
from quantum_core.linalg import hermiticity_defect

logger = logging.getLogger(__name__)

OperatorMap = Callable[[float, float], np.ndarray]


@dataclass(frozen=True)
class ParamModel:
    dim: int
    hamiltonian: OperatorMap
    hamiltonian_deriv: OperatorMap
    lindblads: Tuple[OperatorMap, ...] = ()
    lindblad_derivs: Tuple[Optional[OperatorMap], ...] = ()
    hamiltonian_second_deriv: Optional[OperatorMap] = None
    leakage_levels: int = 0
    name: str = "model"

    def __post_init__(self):
        if self.dim < 1:
            raise ModelError(f"model '{self.name}' has dimension {self.dim}")
        lindblads = tuple(self.lindblads)
        derivs = tuple(self.lindblad_derivs) or (None,) * len(lindblads)
        if len(derivs) != len(lindblads):
            raise ModelError(
                f"model '{self.name}': {len(lindblads)} Lindblad operators but "
                f"{len(derivs)} derivative maps"
            )
        object.__setattr__(self, "lindblads", lindblads)
        object.__setattr__(self, "lindblad_derivs", derivs)

    @property
    def has_lindblad_derivs(self) -> bool:
        return any(d is not None for d in self.lindblad_derivs)

    def generators(self, t: float, g: float):
        """Evaluate (H, H′, [L_j], [L_j′]) at (t, g); missing derivatives are None."""
        H = np.asarray(self.hamiltonian(t, g), dtype=complex)
        Hp = np.asarray(self.hamiltonian_deriv(t, g), dtype=complex)
        Ls = [np.asarray(L(t, g), dtype=complex) for L in self.lindblads]
        Lps = [None if d is None else np.asarray(d(t, g), dtype=complex) for d in self.lindblad_derivs]
        return H, Hp, Ls, Lps

    def second_deriv(self, t: float, g: float) -> np.ndarray:
        if self.hamiltonian_second_deriv is None:
            return np.zeros((self.dim, self.dim), dtype=complex)
        return np.asarray(self.hamiltonian_second_deriv(t, g), dtype=complex)


def linear_model(
    name: str,
    H0: np.ndarray,
    H1: np.ndarray,
    lindblads: Sequence[np.ndarray] = (),
    leakage_levels: int = 0,
) -> ParamModel:
    """Time-independent model H = H0 + g·H1 with g-independent Lindblad operators."""
    H0 = np.asarray(H0, dtype=complex)
    H1 = np.asarray(H1, dtype=complex)
    ops = [np.asarray(L, dtype=complex) for L in lindblads]
    return ParamModel(
        dim=H0.shape[0],
        hamiltonian=lambda t, g: H0 + g * H1,
        hamiltonian_deriv=lambda t, g: H1,
        lindblads=tuple((lambda t, g, L=L: L) for L in ops),
        leakage_levels=leakage_levels,
        name=name,
    )


def check_derivatives(
    model: ParamModel,
    t_samples: Sequence[float],
    g: float = 0.0,
    delta: float = 1e-5,
    tol: float = 1e-6,
) -> float:
    """
    Compare the derivative maps against central differences of their parents.

    Returns:
        Largest deviation found; raises ModelError when it exceeds tol or when
        H(t,g) is not Hermitian at a sampled point.
    """
    worst = 0.0
    for t in t_samples:
        H = np.asarray(model.hamiltonian(t, g), dtype=complex)
        defect = hermiticity_defect(H)
        if defect > 1e-12 * max(np.linalg.norm(H), 1.0):
            raise ModelError(f"H(t={t}, g={g}) is not Hermitian: ‖H − H†‖ = {defect:.3e}")

        pairs = [(model.hamiltonian, model.hamiltonian_deriv)]
        pairs += [(L, d) for L, d in zip(model.lindblads, model.lindblad_derivs)]
        for parent, deriv in pairs:
            fd = (np.asarray(parent(t, g + delta)) - np.asarray(parent(t, g - delta))) / (2 * delta)
            exact = np.zeros_like(fd) if deriv is None else np.asarray(deriv(t, g))
            err = float(np.linalg.norm(fd - exact))
            worst = max(worst, err)
            if err > tol * max(1.0, float(np.linalg.norm(exact))):
                raise ModelError(
                    f"model '{model.name}': derivative map off by {err:.3e} at t={t}, g={g}"
                )
    return worst


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = settings.DEFAULT_STEP
    substep_refinement: int = 1
    hermitize_each_step: bool = True

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise DomainError(f"integrator step must be positive, got {self.step}")
        if self.substep_refinement < 1:
            raise DomainError(f"substep_refinement must be ≥ 1, got {self.substep_refinement}")

    def halved(self) -> "IntegratorConfig":
        return IntegratorConfig(self.step / 2, self.substep_refinement, self.hermitize_each_step)


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    rho: np.ndarray
    rho_prime: np.ndarray
    qfi: Optional[float] = None
    qfi_rate: Optional[float] = None
    rho_second: Optional[np.ndarray] = field(default=None, repr=False)


def times(points: List[TrajectoryPoint]) -> np.ndarray:
    return np.array([p.t for p in points])
