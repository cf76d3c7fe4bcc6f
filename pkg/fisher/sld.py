"""
SLD Module - symmetric logarithmic derivative and quantum Fisher information

The SLD is solved in the eigenbasis of ρ: 𝓛_jk = 2⟨j|ρ′|k⟩/(p_j + p_k) on the
support, zero on the joint kernel.
"""
import logging
from dataclasses import dataclass

import numpy as np

import settings
from quantum_core.errors import DimensionMismatchError, InconsistentDerivativeError
from quantum_core.linalg import as_operator, hermitize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SLD:
    operator: np.ndarray
    kernel_dim: int
    qfi: float


def _spectrum(rho: np.ndarray):
    vals, vecs = np.linalg.eigh(hermitize(rho))
    return np.clip(vals, 0.0, None), vecs


def _support_mask(p: np.ndarray, rank_tol: float):
    denom = p[:, None] + p[None, :]
    threshold = rank_tol * max(float(p.sum()), 1e-300)
    return denom, denom > threshold, threshold


def solve_sld(
    rho,
    rho_prime,
    rank_tol: float = settings.RANK_TOL,
    kernel_tol: float = settings.KERNEL_TOL,
) -> SLD:
    """
    Solve ρ𝓛 + 𝓛ρ = 2ρ′ for the minimal-norm Hermitian 𝓛.

    Raises:
        InconsistentDerivativeError: ρ′ has weight > kernel_tol on the joint kernel of ρ
    """
    rho = as_operator(rho)
    rho_prime = as_operator(rho_prime)
    if rho.shape != rho_prime.shape:
        raise DimensionMismatchError(f"rho {rho.shape} vs rho_prime {rho_prime.shape}")

    p, V = _spectrum(rho)
    R = V.conj().T @ hermitize(rho_prime) @ V
    denom, support, threshold = _support_mask(p, rank_tol)

    kernel = ~support
    if kernel.any():
        worst = float(np.abs(R[kernel]).max())
        if worst > kernel_tol:
            raise InconsistentDerivativeError(
                f"rho_prime has kernel-block element {worst:.3e} (> {kernel_tol:g}); "
                f"(ρ, ρ′) cannot come from a g-dependent channel"
            )

    L_eig = np.zeros_like(R)
    L_eig[support] = 2.0 * R[support] / denom[support]
    value = float(np.sum(2.0 * np.abs(R[support]) ** 2 / denom[support]))
    operator = hermitize(V @ L_eig @ V.conj().T)
    kernel_dim = int(np.count_nonzero(2.0 * p <= threshold))
    return SLD(operator=operator, kernel_dim=kernel_dim, qfi=max(value, 0.0))


def qfi(rho, rho_prime, rank_tol: float = settings.RANK_TOL) -> float:
    return solve_sld(rho, rho_prime, rank_tol).qfi


class GeneratorQfi:
    """
    𝓕_A for a fixed ρ and many generators A.

    The eigenbasis of ρ is computed once; each call costs one basis change.
    Used by the bound optimizer, which evaluates 𝓕_G at every trial point.
    """

    def __init__(self, rho, rank_tol: float = settings.RANK_TOL):
        p, self.V = _spectrum(as_operator(rho))
        denom, support, _ = _support_mask(p, rank_tol)
        weights = np.zeros_like(denom)
        diff = p[:, None] - p[None, :]
        weights[support] = 2.0 * diff[support] ** 2 / denom[support]
        self.weights = weights

    def __call__(self, A) -> float:
        Ak = self.V.conj().T @ np.asarray(A, dtype=complex) @ self.V
        return float(np.sum(self.weights * np.abs(Ak) ** 2))


def qfi_wrt_operator(rho, A, rank_tol: float = settings.RANK_TOL) -> float:
    """QFI of the unitary family e^{−iAs}ρe^{iAs} at s = 0 (ρ′ = i[ρ, A])."""
    rho = as_operator(rho)
    A = as_operator(A)
    if rho.shape != A.shape:
        raise DimensionMismatchError(f"rho {rho.shape} vs A {A.shape}")
    return GeneratorQfi(rho, rank_tol)(A)


def variance(rho, A) -> float:
    """Var_ρ(A) = ⟨A²⟩ − ⟨A⟩² for Hermitian A."""
    rho = np.asarray(rho, dtype=complex)
    A = np.asarray(A, dtype=complex)
    mean = np.trace(rho @ A).real
    return float(max(np.trace(rho @ A @ A).real - mean ** 2, 0.0))
