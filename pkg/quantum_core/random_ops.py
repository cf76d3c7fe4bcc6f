"""Seeded random operators and states for property suites."""
from typing import Optional

import numpy as np
from scipy.stats import unitary_group

from quantum_core.linalg import hermitize


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_operator(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Complex Ginibre matrix with entries of variance scale²."""
    re = rng.standard_normal((dim, dim))
    im = rng.standard_normal((dim, dim))
    return scale * (re + 1j * im) / np.sqrt(2.0)


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return hermitize(random_operator(dim, rng, scale))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=rng)


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_density(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> np.ndarray:
    """Random density matrix of the given rank (full rank by default)."""
    rank = dim if rank is None else rank
    X = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = X @ X.conj().T
    return hermitize(rho / np.trace(rho).real)
