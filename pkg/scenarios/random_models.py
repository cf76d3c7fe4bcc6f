"""Seeded random models and starting states for the bound-dominance property suite."""
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from dynamics.model import ParamModel, linear_model
from quantum_core.errors import DomainError
from quantum_core.random_ops import random_density, random_hermitian, random_operator, random_pure_state

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RandomInstance:
    model: ParamModel
    H_prime: np.ndarray
    lindblads: List[np.ndarray]
    rho0: np.ndarray


def random_param_model(
    dim: int,
    n_lindblads: int,
    rng: np.random.Generator,
    noise_scale: float = 0.5,
    name: Optional[str] = None,
) -> ParamModel:
    """H = H0 + g·H1 with random Hermitian H0, H1 and g-independent Ginibre Lindblad operators."""
    if dim < 2 or n_lindblads < 0:
        raise DomainError(f"need dim ≥ 2 and n_lindblads ≥ 0, got {dim}, {n_lindblads}")
    H0 = random_hermitian(dim, rng)
    H1 = random_hermitian(dim, rng)
    Ls = [random_operator(dim, rng, noise_scale) for _ in range(n_lindblads)]
    return linear_model(name or f"random[d={dim},n={n_lindblads}]", H0, H1, Ls)


def random_instance(rng: np.random.Generator, max_dim: int = 4, max_lindblads: int = 3) -> RandomInstance:
    """Model of random size plus a pure or mixed (possibly rank-deficient) start."""
    dim = int(rng.integers(2, max_dim + 1))
    n_lindblads = int(rng.integers(1, max_lindblads + 1))
    model = random_param_model(dim, n_lindblads, rng)
    if rng.random() < 0.5:
        rho0 = random_pure_state(dim, rng)
    else:
        rho0 = random_density(dim, rng, rank=int(rng.integers(1, dim + 1)))
    _, H_prime, Ls, _ = model.generators(0.0, 0.0)
    return RandomInstance(model=model, H_prime=H_prime, lindblads=Ls, rho0=rho0)
