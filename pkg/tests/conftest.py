import numpy as np
import pytest

from quantum_core.linalg import PAULI_I, PAULI_X
from quantum_core.random_ops import make_rng


@pytest.fixture
def rng():
    return make_rng(20240601)


@pytest.fixture
def plus_state():
    return 0.5 * (PAULI_I + PAULI_X)


@pytest.fixture
def t_short():
    return np.linspace(0.0, 1.0, 11)
