import numpy as np
import pytest
from numpy.testing import assert_allclose

from quantum_core.errors import DimensionMismatchError, DomainError, NotHermitianError
from quantum_core.fock import annihilation, creation, displacement, fock_ket, number_operator, quadratures
from quantum_core.linalg import (
    PAULI_X, PAULI_Y, PAULI_Z, algebra, commutator, eig_hermitian, ket_to_density, matrix_exp, operator_norm,
    purity, require_hermitian, validate_density,
)
from quantum_core.random_ops import (
    random_density, random_hermitian, random_operator, random_pure_state, random_unitary,
)


def test_pauli_commutator():
    assert_allclose(commutator(PAULI_X, PAULI_Y), 2j * PAULI_Z, atol=1e-15)


def test_algebra_bundle():
    out = algebra(PAULI_X, PAULI_Z)
    assert set(out) == {"commutator", "anticommutator", "adjoint", "trace_inner_product", "operator_norm"}
    assert_allclose(out["anticommutator"], np.zeros((2, 2)), atol=1e-15)
    assert out["trace_inner_product"] == 0
    assert out["operator_norm"] == pytest.approx(1.0)


def test_commutator_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        commutator(PAULI_X, np.eye(3))


def test_require_hermitian_rejects_nilpotent():
    with pytest.raises(NotHermitianError):
        require_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


@pytest.mark.parametrize("dim", [2, 3, 5, 6])
def test_jacobi_matches_eigh(rng, dim):
    A = random_hermitian(dim, rng)
    ref = eig_hermitian(A)
    jac = eig_hermitian(A, method="jacobi")
    assert_allclose(jac.eigenvalues, ref.eigenvalues, atol=1e-10)
    assert_allclose(jac.reconstruct(), A, atol=1e-10)
    V = jac.eigenvectors
    assert_allclose(V.conj().T @ V, np.eye(dim), atol=1e-10)


def test_eig_hermitian_unknown_method():
    with pytest.raises(DomainError):
        eig_hermitian(PAULI_Z, method="qr")


def test_validate_density_rejects_bad_trace():
    with pytest.raises(DomainError):
        validate_density(np.eye(2, dtype=complex))


def test_validate_density_rejects_negative_eigenvalue():
    with pytest.raises(DomainError):
        validate_density(np.diag([1.5, -0.5]).astype(complex))


def test_random_states_are_valid(rng):
    for rank in (1, 2, 4):
        rho = random_density(4, rng, rank=rank)
        validate_density(rho)
        assert np.linalg.matrix_rank(rho, tol=1e-10) == rank
    pure = random_pure_state(3, rng)
    assert purity(pure) == pytest.approx(1.0)


def test_random_unitary(rng):
    U = random_unitary(4, rng)
    assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-12)


def test_annihilation_lowers_fock_state():
    a = annihilation(6)
    assert_allclose(a @ fock_ket(3, 6), np.sqrt(3) * fock_ket(2, 6))
    assert_allclose(creation(6) @ fock_ket(2, 6), np.sqrt(3) * fock_ket(3, 6))
    assert_allclose(np.diag(number_operator(6)).real, np.arange(6))


def test_fock_ket_outside_truncation():
    with pytest.raises(DomainError):
        fock_ket(6, 6)


def test_coherent_state_mean():
    alpha = 1.0 + 0.5j
    n_max = 30
    rho = ket_to_density(displacement(alpha, n_max) @ fock_ket(0, n_max))
    assert np.trace(rho @ annihilation(n_max)) == pytest.approx(alpha, abs=1e-8)


def test_quadratures_of_vacuum():
    n_max = 12
    x, p = quadratures(0.3, n_max)
    vac = ket_to_density(fock_ket(0, n_max))
    assert np.trace(vac @ x @ x).real == pytest.approx(0.5)
    assert np.trace(vac @ p @ p).real == pytest.approx(0.5)
    # [x, p] = i away from the truncation edge
    c = commutator(x, p)
    assert_allclose(np.diag(c)[:-1], 1j * np.ones(n_max - 1), atol=1e-12)


def test_matrix_exp_of_anti_hermitian_is_unitary(rng):
    U = matrix_exp(-1j * random_hermitian(4, rng, scale=2.0))
    assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-12)
    assert_allclose(matrix_exp(np.zeros((3, 3))), np.eye(3), atol=0)


def test_displacements_compose_up_to_a_phase():
    n_max = 40
    beta, delta = 0.6 + 0.2j, -0.3 + 0.5j
    vacuum = fock_ket(0, n_max)
    lhs = displacement(beta, n_max) @ displacement(delta, n_max) @ vacuum
    phase = np.exp(1j * np.imag(beta * np.conj(delta)))
    rhs = phase * displacement(beta + delta, n_max) @ vacuum
    assert_allclose(lhs[:20], rhs[:20], atol=1e-10)


def test_operator_norm_is_unitarily_invariant(rng):
    A = random_operator(4, rng)
    U = random_unitary(4, rng)
    assert operator_norm(U @ A @ U.conj().T) == pytest.approx(operator_norm(A), rel=1e-12)
