"""
Qubit scenarios

- dephasing_qubit: H = gεσ_z with dephasing √γσ_z (H′ inside the Lindblad span)
- magnitude_dephasing_qubit: the dephasing strength itself depends on g
- dephasing_direction_demo: the dephasing axis rotates with g, so Ḟ is not
  bounded uniformly in the SLD
"""
import logging
import math
from typing import Optional

import numpy as np

from dynamics.model import ParamModel, linear_model
from fisher.rate import qfi_rate
from quantum_core.errors import DimensionMismatchError, DomainError
from quantum_core.linalg import PAULI_I, PAULI_Y, PAULI_Z, validate_density

logger = logging.getLogger(__name__)


def _check_rate(gamma_d: float):
    if gamma_d < 0 or not math.isfinite(gamma_d):
        raise DomainError(f"dephasing rate must be finite and ≥ 0, got {gamma_d}")


def dephasing_qubit(epsilon: float, gamma_d: float) -> ParamModel:
    """ρ̇ = −igε[σ_z, ρ] + γ(σ_zρσ_z − ρ)."""
    _check_rate(gamma_d)
    lindblads = [math.sqrt(gamma_d) * PAULI_Z] if gamma_d > 0 else []
    return linear_model(
        "dephasing_qubit",
        np.zeros((2, 2), dtype=complex),
        epsilon * PAULI_Z,
        lindblads,
    )


def dephasing_closed_form(epsilon: float, gamma_d: float, t):
    """𝓕(t) = 4ε²t²e^{−4γt} for |+⟩ at g = 0."""
    t = np.asarray(t, dtype=float)
    return 4.0 * epsilon ** 2 * t ** 2 * np.exp(-4.0 * gamma_d * t)


def magnitude_dephasing_qubit(gamma_d: float, f_prime: float) -> ParamModel:
    """L(g) = (1 + f′g)√γσ_z with no Hamiltonian; Ḟ ≤ 4γ(f′)² at g = 0."""
    _check_rate(gamma_d)
    root = math.sqrt(gamma_d)
    zero = np.zeros((2, 2), dtype=complex)
    return ParamModel(
        dim=2,
        hamiltonian=lambda t, g: zero,
        hamiltonian_deriv=lambda t, g: zero,
        lindblads=(lambda t, g: (1.0 + f_prime * g) * root * PAULI_Z,),
        lindblad_derivs=(lambda t, g: f_prime * root * PAULI_Z,),
        name="magnitude_dephasing_qubit",
    )


def direction_dephasing_qubit(gamma_d: float, H_prime: Optional[np.ndarray] = None) -> ParamModel:
    """L(g) = √γ(cos g σ_z + sin g σ_y) and H = g·H′."""
    _check_rate(gamma_d)
    root = math.sqrt(gamma_d)
    Hp = np.zeros((2, 2), dtype=complex) if H_prime is None else np.asarray(H_prime, dtype=complex)
    if Hp.shape != (2, 2):
        raise DimensionMismatchError(f"H′ must be 2×2, got {Hp.shape}")
    return ParamModel(
        dim=2,
        hamiltonian=lambda t, g: g * Hp,
        hamiltonian_deriv=lambda t, g: Hp,
        lindblads=(lambda t, g: root * (math.cos(g) * PAULI_Z + math.sin(g) * PAULI_Y),),
        lindblad_derivs=(lambda t, g: root * (-math.sin(g) * PAULI_Z + math.cos(g) * PAULI_Y),),
        name="direction_dephasing_qubit",
    )


def dephasing_direction_demo(
    gamma_d: float,
    rho,
    lambda_scale: float,
    H_prime: Optional[np.ndarray] = None,
    alpha: float = 0.0,
) -> float:
    """
    Ḟ at g = 0 with the imposed 𝓛 = αI + βσ_z (β = lambda_scale).

    Equals 2β(i tr(ρ[H′,σ_z]) + 2γ tr(ρσ_y)), linear in β, so no 𝓛-independent
    bound exists once ⟨σ_y⟩ ≠ 0.
    """
    rho = validate_density(rho)
    if rho.shape != (2, 2):
        raise DimensionMismatchError(f"expected a qubit state, got shape {rho.shape}")
    model = direction_dephasing_qubit(gamma_d, H_prime)
    sld = alpha * PAULI_I + lambda_scale * PAULI_Z
    return qfi_rate(rho, sld, model, 0.0, 0.0)
