"""Truncated Fock-space operators for a single bosonic mode."""
from typing import Tuple

import numpy as np

from quantum_core.errors import DomainError
from quantum_core.linalg import matrix_exp


def _check_n_max(n_max: int):
    if n_max < 2:
        raise DomainError(f"Fock truncation n_max must be ≥ 2, got {n_max}")


def annihilation(n_max: int) -> np.ndarray:
    """a on span{|0⟩, …, |n_max−1⟩}."""
    _check_n_max(n_max)
    return np.diag(np.sqrt(np.arange(1, n_max, dtype=float)), k=1).astype(complex)


def creation(n_max: int) -> np.ndarray:
    return annihilation(n_max).conj().T


def number_operator(n_max: int) -> np.ndarray:
    _check_n_max(n_max)
    return np.diag(np.arange(n_max, dtype=float)).astype(complex)


def fock_ket(n: int, n_max: int) -> np.ndarray:
    if not 0 <= n < n_max:
        raise DomainError(f"Fock level {n} outside truncation {n_max}")
    psi = np.zeros(n_max, dtype=complex)
    psi[n] = 1.0
    return psi


def displacement(beta: complex, n_max: int) -> np.ndarray:
    """D(β) = exp(βa† − β*a)."""
    a = annihilation(n_max)
    return matrix_exp(beta * a.conj().T - np.conj(beta) * a)


def squeeze_operator(xi: complex, n_max: int) -> np.ndarray:
    """S(ξ) = exp(½(ξ*a² − ξa†²)); real ξ > 0 amplifies the p quadrature by e^{2ξ}."""
    a = annihilation(n_max)
    ad = a.conj().T
    return matrix_exp(0.5 * (np.conj(xi) * a @ a - xi * ad @ ad))


def quadratures(phase: float, n_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Rotated quadratures (x̃, p̃) with p̃ = i(e^{iφ}a† − e^{−iφ}a)/√2.

    With φ = arg ε the linear forcing iεa† + h.c. equals √2|ε|·p̃.
    """
    a = annihilation(n_max)
    ad = a.conj().T
    e = np.exp(1j * phase)
    x = (e * ad + np.conj(e) * a) / np.sqrt(2.0)
    p = 1j * (e * ad - np.conj(e) * a) / np.sqrt(2.0)
    return x, p
