"""Classical Fisher information of discrete measurement distributions."""
import logging
from typing import Optional, Tuple

import numpy as np

import settings
from quantum_core.errors import DimensionMismatchError, DomainError

logger = logging.getLogger(__name__)

PROBABILITY_TOL = 1e-9
DERIVATIVE_SUM_TOL = 1e-8


def classical_fi(
    probabilities,
    derivatives,
    curvatures=None,
    rank_tol: float = settings.RANK_TOL,
) -> float:
    """
    Σ_k (p′_k)²/p_k over outcomes with p_k > rank_tol.

    Args:
        probabilities: outcome probabilities p_k
        derivatives: ∂p_k/∂g
        curvatures: optional ∂²p_k/∂g²; outcomes with p_k ≤ rank_tol then
            contribute 2p″_k, the g → 0 limit of (p′)²/p for a vanishing outcome

    Returns:
        Classical Fisher information (≥ 0)
    """
    p = np.asarray(probabilities, dtype=float)
    dp = np.asarray(derivatives, dtype=float)
    if p.shape != dp.shape:
        raise DimensionMismatchError(f"{p.shape} probabilities vs {dp.shape} derivatives")
    if np.any(p < -PROBABILITY_TOL):
        raise DomainError(f"negative probability {p.min():.3e}")
    if abs(p.sum() - 1.0) > PROBABILITY_TOL:
        logger.warning("⚠️ Probabilities sum to %.12f", p.sum())
    if abs(dp.sum()) > DERIVATIVE_SUM_TOL:
        logger.warning("⚠️ Probability derivatives sum to %.3e", dp.sum())

    live = p > rank_tol
    value = float(np.sum(dp[live] ** 2 / p[live]))
    if curvatures is not None:
        d2p = np.asarray(curvatures, dtype=float)
        value += float(np.sum(2.0 * np.clip(d2p[~live], 0.0, None)))
    return value


def fock_distribution(rho, rho_prime, rho_second=None) -> Tuple[np.ndarray, np.ndarray, Optional[np.ndarray]]:
    """Photon-number distribution and its g-derivatives from the density-matrix diagonals."""
    p = np.clip(np.real(np.diag(rho)), 0.0, None)
    dp = np.real(np.diag(rho_prime))
    d2p = None if rho_second is None else np.real(np.diag(rho_second))
    return p, dp, d2p
