"""
Dense operator algebra - Hermitian eigendecomposition, commutators, norms and
matrix exponentials for the small matrices used throughout the toolkit.

All functions are pure: inputs are never modified and fresh arrays are returned.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Union

import numpy as np
from scipy.linalg import expm

from quantum_core.errors import DimensionMismatchError, DomainError, NotHermitianError

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
EIGEN_FLOOR = -1e-10

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and the unitary matrix of eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_operator(A) -> np.ndarray:
    """Return A as a finite square complex matrix or raise."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatchError(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DomainError("operator has non-finite entries")
    return M


def _check_same_shape(A: np.ndarray, B: np.ndarray):
    if A.shape != B.shape:
        raise DimensionMismatchError(f"dimension mismatch: {A.shape} vs {B.shape}")


def adjoint(A) -> np.ndarray:
    return np.asarray(A, dtype=complex).conj().T


def hermitize(A) -> np.ndarray:
    """Symmetrize (A + A†)/2."""
    M = np.asarray(A, dtype=complex)
    return 0.5 * (M + M.conj().T)


def hermiticity_defect(A) -> float:
    M = np.asarray(A, dtype=complex)
    return float(np.linalg.norm(M - M.conj().T))


def is_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    M = np.asarray(A, dtype=complex)
    scale = max(np.linalg.norm(M), 1.0)
    return hermiticity_defect(M) <= tol * scale


def require_hermitian(A, name: str = "operator", tol: float = HERMITIAN_TOL) -> np.ndarray:
    M = as_operator(A)
    defect = hermiticity_defect(M)
    if defect > tol * max(np.linalg.norm(M), 1.0):
        raise NotHermitianError(f"{name} is not Hermitian: ‖A − A†‖ = {defect:.3e}")
    return M


def commutator(A, B) -> np.ndarray:
    A, B = as_operator(A), as_operator(B)
    _check_same_shape(A, B)
    return A @ B - B @ A


def anticommutator(A, B) -> np.ndarray:
    A, B = as_operator(A), as_operator(B)
    _check_same_shape(A, B)
    return A @ B + B @ A


def trace_inner_product(A, B) -> complex:
    """tr(A†B)."""
    A, B = as_operator(A), as_operator(B)
    _check_same_shape(A, B)
    return complex(np.vdot(A, B))


def operator_norm(A) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(as_operator(A), 2))


def algebra(A, B) -> Dict[str, Union[np.ndarray, complex, float]]:
    """Bundle of the binary/unary operations used across the bounds code."""
    return {
        "commutator": commutator(A, B),
        "anticommutator": anticommutator(A, B),
        "adjoint": adjoint(as_operator(A)),
        "trace_inner_product": trace_inner_product(A, B),
        "operator_norm": operator_norm(A),
    }


def matrix_exp(A) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring Padé (scipy.linalg.expm)."""
    return expm(as_operator(A))


def _jacobi_eigh(A: np.ndarray, max_sweeps: int = 100):
    """Cyclic Jacobi sweeps for a complex Hermitian matrix."""
    M = hermitize(A).copy()
    n = M.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(M), 1e-300)

    for sweep in range(max_sweeps):
        off = np.linalg.norm(M - np.diag(np.diag(M)))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = M[p, q]
                mag = abs(b)
                if mag <= 1e-300:
                    continue
                phase = b / mag
                tau = (M[q, q].real - M[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(tau) + np.sqrt(1.0 + tau * tau))
                if tau < 0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # D·R with D = diag(1, conj(phase)) makes the pivot real first
                U = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                M[:, idx] = M[:, idx] @ U
                M[idx, :] = U.conj().T @ M[idx, :]
                M[p, q] = M[q, p] = 0.0
                V[:, idx] = V[:, idx] @ U
    else:
        logger.warning("⚠️ Jacobi eigensolver hit %d sweeps without converging", max_sweeps)

    vals = np.real(np.diag(M))
    order = np.argsort(vals)
    return vals[order], V[:, order]


def eig_hermitian(A, method: str = "eigh") -> SpectralDecomposition:
    """
    Hermitian eigendecomposition with ascending eigenvalues.

    Args:
        A: Hermitian matrix (checked to 1e-12 relative)
        method: "eigh" (LAPACK) or "jacobi" (cyclic Jacobi sweeps)

    Returns:
        SpectralDecomposition with V Λ V† = A
    """
    M = require_hermitian(A)
    if method == "eigh":
        vals, vecs = np.linalg.eigh(hermitize(M))
    elif method == "jacobi":
        vals, vecs = _jacobi_eigh(M)
    else:
        raise DomainError(f"unknown eigensolver method '{method}'")
    return SpectralDecomposition(eigenvalues=np.asarray(vals, dtype=float), eigenvectors=vecs)


def validate_density(rho, name: str = "rho") -> np.ndarray:
    """Check trace and positivity of a density operator; returns the Hermitian part."""
    M = require_hermitian(rho, name=name, tol=1e-9)
    tr = np.trace(M).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise DomainError(f"{name} has trace {tr:.12f}, expected 1")
    smallest = np.linalg.eigvalsh(hermitize(M))[0]
    if smallest < EIGEN_FLOOR:
        raise DomainError(f"{name} has negative eigenvalue {smallest:.3e}")
    return hermitize(M)


def expectation(rho, A) -> complex:
    return complex(np.trace(np.asarray(rho) @ np.asarray(A)))


def purity(rho) -> float:
    R = np.asarray(rho)
    return float(np.real(np.vdot(R, R)))


def ket_to_density(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())
