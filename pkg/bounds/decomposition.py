"""
Lindblad-span decompositions of H′ and the instantaneous QFI growth-rate bound

    H′ = G + αI + Σ_j (β*_j L_j + β_j L_j†) + Σ_jk γ_jk L_j†L_k
    A_j = i(β_j I + Σ_k γ_jk L_k)
    Ḟ ≤ 4(√(𝓕_G 𝓕 / 4) + Σ_j ⟨A_j†A_j⟩)

The optimizer searches (β, γ) with Nelder-Mead over a real parameterization;
α only shifts G by a multiple of I and never changes 𝓕_G.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

import settings
from fisher.sld import GeneratorQfi, qfi_wrt_operator
from quantum_core.errors import DimensionMismatchError, DomainError, NotHermitianError
from quantum_core.linalg import as_operator, hermitize, require_hermitian

logger = logging.getLogger(__name__)

SPAN_TOL = 1e-9


@dataclass(frozen=True)
class SpanDecomposition:
    alpha: float
    beta: np.ndarray
    gamma: np.ndarray
    G: np.ndarray
    A_ops: List[np.ndarray] = field(repr=False)


def span_operator(L: Sequence[np.ndarray], alpha: float, beta, gamma) -> np.ndarray:
    """αI + Σ(β*_j L_j + β_j L_j†) + Σ γ_jk L_j†L_k."""
    L = [np.asarray(op, dtype=complex) for op in L]
    beta = np.asarray(beta, dtype=complex).reshape(-1)
    gamma = np.asarray(gamma, dtype=complex).reshape(len(L), len(L))
    dim = L[0].shape[0] if L else 1
    S = alpha * np.eye(dim, dtype=complex)
    for j, Lj in enumerate(L):
        S += np.conj(beta[j]) * Lj + beta[j] * Lj.conj().T
        for k, Lk in enumerate(L):
            if gamma[j, k] != 0:
                S += gamma[j, k] * Lj.conj().T @ Lk
    return S


def build_decomposition(H_prime, L: Sequence[np.ndarray], alpha: float, beta, gamma) -> SpanDecomposition:
    """
    Remainder G and channel operators A_j for explicit coefficients.

    Raises:
        NotHermitianError: gamma is not Hermitian
        DimensionMismatchError: coefficient shapes do not match the Lindblad list
    """
    H_prime = require_hermitian(H_prime, name="H′")
    L = [as_operator(op) for op in L]
    n = len(L)
    beta = np.asarray(beta, dtype=complex).reshape(-1)
    gamma = np.asarray(gamma, dtype=complex)
    if beta.size != n or gamma.size != n * n:
        raise DimensionMismatchError(f"{n} Lindblad operators but beta {beta.shape}, gamma {gamma.shape}")
    gamma = gamma.reshape(n, n)
    defect = float(np.linalg.norm(gamma - gamma.conj().T))
    if defect > 1e-12 * max(1.0, float(np.linalg.norm(gamma))):
        raise NotHermitianError(f"gamma is not Hermitian: ‖γ − γ†‖ = {defect:.3e}")

    dim = H_prime.shape[0]
    if not L:
        G = hermitize(H_prime - alpha * np.eye(dim))
        return SpanDecomposition(alpha=float(alpha), beta=beta, gamma=gamma, G=G, A_ops=[])

    G = hermitize(H_prime - span_operator(L, alpha, beta, gamma))
    identity = np.eye(dim, dtype=complex)
    A_ops = []
    for j in range(n):
        M = beta[j] * identity
        for k in range(n):
            M = M + gamma[j, k] * L[k]
        A_ops.append(1j * M)
    return SpanDecomposition(alpha=float(alpha), beta=beta, gamma=gamma, G=G, A_ops=A_ops)


# -- real parameterization -------------------------------------------------------

def _n_params(n: int) -> int:
    return 2 * n + n * n


def _unpack(theta: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    beta = theta[:n] + 1j * theta[n:2 * n]
    gamma = np.zeros((n, n), dtype=complex)
    rest = theta[2 * n:]
    gamma[np.diag_indices(n)] = rest[:n]
    iu = np.triu_indices(n, k=1)
    m = len(iu[0])
    upper = rest[n:n + m] + 1j * rest[n + m:n + 2 * m]
    gamma[iu] = upper
    gamma[(iu[1], iu[0])] = np.conj(upper)
    return beta, gamma


def _pack(beta: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    n = len(beta)
    iu = np.triu_indices(n, k=1)
    return np.concatenate([
        beta.real, beta.imag, np.real(np.diag(gamma)), gamma[iu].real, gamma[iu].imag,
    ])


def _span_basis(L: Sequence[np.ndarray]) -> np.ndarray:
    """Hermitian basis operators matching the (β, γ) parameter order of _pack."""
    n = len(L)
    basis = []
    for Lj in L:
        basis.append(Lj + Lj.conj().T)
    for Lj in L:
        basis.append(1j * (Lj.conj().T - Lj))
    for Lj in L:
        basis.append(Lj.conj().T @ Lj)
    iu = np.triu_indices(n, k=1)
    for j, k in zip(*iu):
        basis.append(L[j].conj().T @ L[k] + L[k].conj().T @ L[j])
    for j, k in zip(*iu):
        basis.append(1j * (L[j].conj().T @ L[k] - L[k].conj().T @ L[j]))
    return np.array(basis)


def _center_alpha(X: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(hermitize(X))
    return float(0.5 * (vals[0] + vals[-1]))


@dataclass(frozen=True)
class SpanProjection:
    decomposition: SpanDecomposition
    G0: np.ndarray
    residual_norm: float
    hls: bool

    @property
    def coefficients(self):
        d = self.decomposition
        return d.alpha, d.beta, d.gamma


def project_to_span(H_prime, L: Sequence[np.ndarray]) -> SpanProjection:
    """
    Least-squares projection of H′ onto span{I, L_j, L_j†, L_j†L_k} (trace inner product).

    Returns:
        SpanProjection with the minimal-norm coefficients, the Hermitian residual G0
        and its Frobenius norm; hls is True when the residual vanishes
    """
    H_prime = require_hermitian(H_prime, name="H′")
    L = [as_operator(op) for op in L]
    dim = H_prime.shape[0]
    n = len(L)

    basis = [np.eye(dim, dtype=complex)]
    if n:
        basis.extend(_span_basis(L))
    columns = np.array([np.concatenate([B.real.ravel(), B.imag.ravel()]) for B in basis]).T
    target = np.concatenate([H_prime.real.ravel(), H_prime.imag.ravel()])
    coeffs, *_ = np.linalg.lstsq(columns, target, rcond=None)

    alpha = float(coeffs[0])
    beta, gamma = _unpack(coeffs[1:], n) if n else (np.zeros(0, complex), np.zeros((0, 0), complex))
    decomposition = build_decomposition(H_prime, L, alpha, beta, gamma)
    residual = float(np.linalg.norm(decomposition.G))
    hls = residual <= SPAN_TOL * max(1.0, float(np.linalg.norm(H_prime)))
    return SpanProjection(decomposition=decomposition, G0=decomposition.G, residual_norm=residual, hls=hls)


def channel_expectation(rho, A_ops: Sequence[np.ndarray]) -> float:
    """Σ_j ⟨A_j†A_j⟩."""
    rho = np.asarray(rho, dtype=complex)
    return float(sum(np.trace(rho @ A.conj().T @ A).real for A in A_ops))


def bound_coefficients(rho, decomp: SpanDecomposition, rank_tol: float = settings.RANK_TOL) -> Tuple[float, float]:
    """(𝓕_G, Σ_j⟨A_j†A_j⟩) on ρ; the rate bound is 2√(𝓕_G·𝓕) + 4Σ⟨A†A⟩ for any 𝓕."""
    rho = as_operator(rho)
    if rho.shape != decomp.G.shape:
        raise DimensionMismatchError(f"rho {rho.shape} vs decomposition {decomp.G.shape}")
    fg = max(qfi_wrt_operator(rho, decomp.G, rank_tol), 0.0)
    return fg, channel_expectation(rho, decomp.A_ops)


def rate_bound(rho, qfi_value: float, decomp: SpanDecomposition, rank_tol: float = settings.RANK_TOL) -> float:
    """4(√(𝓕_G·𝓕/4) + Σ_j⟨A_j†A_j⟩) for a given decomposition."""
    if qfi_value < 0:
        raise DomainError(f"qfi_value must be ≥ 0, got {qfi_value}")
    fg, channel = bound_coefficients(rho, decomp, rank_tol)
    return 4.0 * (np.sqrt(fg * qfi_value / 4.0) + channel)


@dataclass(frozen=True)
class OptimizedBound:
    decomposition: SpanDecomposition
    bound: float
    converged: bool

    def __iter__(self):
        yield self.decomposition
        yield self.bound


class _BoundObjective:
    """Bound as a function of the real (β, γ) parameters for fixed ρ and 𝓕."""

    def __init__(self, rho, qfi_value, H_prime, L, rank_tol):
        self.n = len(L)
        self.H_prime = H_prime
        self.qfi_value = qfi_value
        self.fg = GeneratorQfi(rho, rank_tol)
        self.basis = _span_basis(L) if self.n else np.zeros((0,) + H_prime.shape)
        self.means = np.array([np.trace(rho @ Lk) for Lk in L], dtype=complex).reshape(self.n)
        self.second = np.array(
            [[np.trace(rho @ Lk.conj().T @ Ll) for Ll in L] for Lk in L], dtype=complex,
        ).reshape(self.n, self.n)

    def remainder(self, theta):
        return self.H_prime - np.tensordot(theta, self.basis, axes=1)

    def __call__(self, theta):
        beta, gamma = _unpack(theta, self.n)
        gm = gamma @ self.means
        channel = np.sum(np.abs(beta) ** 2) + 2.0 * np.sum(np.conj(beta) * gm).real
        channel += np.einsum("jk,kl,jl->", gamma.conj(), self.second, gamma).real
        fg = self.fg(self.remainder(theta))
        return 4.0 * (np.sqrt(max(fg, 0.0) * self.qfi_value / 4.0) + channel)


def optimize_rate_bound(
    rho,
    qfi_value: float,
    H_prime,
    L: Sequence[np.ndarray],
    rank_tol: float = settings.RANK_TOL,
    max_iter: int = settings.OPTIMIZER_MAX_ITER,
) -> OptimizedBound:
    """
    Minimize the rate bound over (β, γ).

    Nelder-Mead runs from three starts: zero coefficients, the full projection
    and their midpoint. Every evaluated point is feasible, so the best value found
    is a valid bound even when the search does not converge.

    Returns:
        OptimizedBound(decomposition, bound, converged); unpacks as (decomposition, bound)
    """
    if qfi_value < 0:
        raise DomainError(f"qfi_value must be ≥ 0, got {qfi_value}")
    rho = as_operator(rho)
    H_prime = require_hermitian(H_prime, name="H′")
    L = [as_operator(op) for op in L]
    n = len(L)
    objective = _BoundObjective(rho, qfi_value, H_prime, L, rank_tol)

    if n == 0:
        theta_best, converged = np.zeros(0), True
    else:
        projection = project_to_span(H_prime, L).decomposition
        theta_proj = _pack(projection.beta, projection.gamma)
        starts = [np.zeros(_n_params(n)), theta_proj, 0.5 * theta_proj]

        candidates = [(objective(s), s, True) for s in starts]
        scale = max(0.25 * float(np.max(np.abs(theta_proj))), 0.05)
        for s in starts:
            simplex = np.vstack([s, s + scale * np.eye(len(s))])
            result = minimize(
                objective, s, method="Nelder-Mead",
                options={
                    "initial_simplex": simplex, "maxiter": max_iter, "maxfev": 2 * max_iter,
                    "xatol": 1e-8, "fatol": 1e-10, "adaptive": len(s) > 4,
                },
            )
            candidates.append((float(result.fun), result.x, bool(result.success)))

        best_value, theta_best, _ = min(candidates, key=lambda c: c[0])
        converged = any(ok and val <= best_value + 1e-9 for val, _, ok in candidates[len(starts):])
        if not converged:
            logger.warning("⚠️ Bound optimizer did not converge; returning best feasible point")

    beta, gamma = _unpack(theta_best, n) if n else (np.zeros(0, complex), np.zeros((0, 0), complex))
    remainder = objective.remainder(theta_best)
    decomposition = build_decomposition(H_prime, L, _center_alpha(remainder), beta, gamma)
    return OptimizedBound(decomposition=decomposition, bound=float(objective(theta_best)), converged=converged)
