from .errors import (
    ToolkitError, DimensionMismatchError, NotHermitianError, DomainError, ModelError,
    InconsistentDerivativeError, PropagationError, TruncationLeakageError, ConfigError, BoundViolationError,
)
from .linalg import (
    SpectralDecomposition, PAULI_I, PAULI_X, PAULI_Y, PAULI_Z,
    as_operator, adjoint, hermitize, is_hermitian, require_hermitian, commutator,
    anticommutator, trace_inner_product, operator_norm, algebra, matrix_exp,
    eig_hermitian, validate_density, expectation, purity, ket_to_density,
)
from .fock import (
    annihilation, creation, number_operator, fock_ket, displacement, squeeze_operator,
    quadratures,
)
from .random_ops import (
    make_rng, random_operator, random_hermitian, random_unitary, random_pure_state,
    random_density,
)

__all__ = [
    "ToolkitError", "DimensionMismatchError", "NotHermitianError", "DomainError",
    "ModelError", "InconsistentDerivativeError", "PropagationError",
    "TruncationLeakageError", "ConfigError", "BoundViolationError",
    "SpectralDecomposition", "PAULI_I", "PAULI_X", "PAULI_Y", "PAULI_Z",
    "as_operator", "adjoint", "hermitize", "is_hermitian", "require_hermitian",
    "commutator", "anticommutator", "trace_inner_product", "operator_norm", "algebra",
    "matrix_exp", "eig_hermitian", "validate_density", "expectation", "purity",
    "ket_to_density",
    "annihilation", "creation", "number_operator", "fock_ket", "displacement",
    "squeeze_operator", "quadratures",
    "make_rng", "random_operator", "random_hermitian", "random_unitary",
    "random_pure_state", "random_density",
]
