import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dynamics.propagation import propagate
from fisher.classical import classical_fi, fock_distribution
from fisher.rate import annotate, qfi_rate, qfi_samples
from fisher.sld import GeneratorQfi, qfi, qfi_wrt_operator, solve_sld, variance
from quantum_core.errors import DimensionMismatchError, DomainError, InconsistentDerivativeError
from quantum_core.linalg import PAULI_I, PAULI_X, PAULI_Z, ket_to_density
from quantum_core.random_ops import random_density, random_hermitian, random_pure_state
from scenarios.qubit import dephasing_qubit


def test_sld_of_mixed_qubit():
    rho = np.diag([0.75, 0.25]).astype(complex)
    sld = solve_sld(rho, PAULI_X / 8.0)
    assert_allclose(sld.operator, PAULI_X / 4.0, atol=1e-14)
    assert sld.qfi == pytest.approx(1.0 / 16.0)
    assert sld.kernel_dim == 0


def test_sld_of_pure_state_is_twice_rho_prime(rng):
    dim = 4
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    phi = np.zeros(dim, dtype=complex)
    phi[1:] = rng.normal(size=dim - 1) + 1j * rng.normal(size=dim - 1)
    rho = ket_to_density(psi)
    rho_prime = np.outer(phi, psi.conj()) + np.outer(psi, phi.conj())
    sld = solve_sld(rho, rho_prime)
    assert_allclose(sld.operator, 2.0 * rho_prime, atol=1e-12)
    assert sld.qfi == pytest.approx(4.0 * np.vdot(phi, phi).real)
    assert sld.kernel_dim == dim - 1


def test_kernel_weight_is_inconsistent():
    rho = np.diag([1.0, 0.0, 0.0]).astype(complex)
    rho_prime = np.zeros((3, 3), dtype=complex)
    rho_prime[1, 2] = rho_prime[2, 1] = 1e-3
    with pytest.raises(InconsistentDerivativeError):
        solve_sld(rho, rho_prime)


def test_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        qfi(np.eye(2) / 2, np.zeros((3, 3)))


@pytest.mark.parametrize("A, expected", [(PAULI_X, 4.0), (PAULI_I, 0.0), (PAULI_Z, 0.0)])
def test_qfi_wrt_operator_on_ground_qubit(A, expected):
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert qfi_wrt_operator(rho, A) == pytest.approx(expected, abs=1e-12)


def test_qfi_wrt_operator_vanishes_on_maximally_mixed(rng):
    assert qfi_wrt_operator(np.eye(3) / 3, random_hermitian(3, rng)) == pytest.approx(0.0, abs=1e-14)


def test_qfi_wrt_operator_matches_sld_solution(rng):
    rho = random_density(3, rng)
    A = random_hermitian(3, rng)
    rho_prime = 1j * (rho @ A - A @ rho)
    assert qfi_wrt_operator(rho, A) == pytest.approx(qfi(rho, rho_prime), rel=1e-10)
    assert GeneratorQfi(rho)(A) == pytest.approx(qfi(rho, rho_prime), rel=1e-10)


def test_generator_qfi_facts(rng):
    for _ in range(50):
        dim = int(rng.integers(2, 5))
        rho = random_density(dim, rng)
        A, B = random_hermitian(dim, rng), random_hermitian(dim, rng)
        a, b = rng.normal(), rng.normal()
        fa, fb = qfi_wrt_operator(rho, A), qfi_wrt_operator(rho, B)
        assert qfi_wrt_operator(rho, a * A + b * np.eye(dim)) == pytest.approx(a * a * fa, rel=1e-9, abs=1e-12)
        assert math.sqrt(qfi_wrt_operator(rho, A + B)) <= math.sqrt(fa) + math.sqrt(fb) + 1e-8
        assert fa <= 4.0 * variance(rho, A) + 1e-8
        pure = random_pure_state(dim, rng)
        assert qfi_wrt_operator(pure, A) == pytest.approx(4.0 * variance(pure, A), abs=1e-8)


def test_rate_vanishes_for_zero_sld(plus_state):
    model = dephasing_qubit(1.0, 1.0)
    assert qfi_rate(plus_state, np.zeros((2, 2)), model, 0.0, 0.0) == 0.0


def test_dephasing_rate_matches_derivative_of_closed_form(plus_state):
    model = dephasing_qubit(1.0, 1.0)
    t = np.array([0.0, 0.25, 0.5, 1.0])
    points = annotate(propagate(model, plus_state, np.zeros((2, 2)), 0.0, t), model, 0.0)
    # d/dt 4t²e^{−4t}
    expected = (8.0 * t - 16.0 * t ** 2) * np.exp(-4.0 * t)
    assert_allclose([p.qfi_rate for p in points], expected, atol=1e-6)
    assert points[0].qfi == 0.0


def test_qfi_samples_with_generator(plus_state):
    model = dephasing_qubit(1.0, 1.0)
    t = np.linspace(0.0, 1.0, 3)
    samples = qfi_samples(propagate(model, plus_state, np.zeros((2, 2)), 0.0, t), model, 0.0, generator=PAULI_Z)
    assert [s.t for s in samples] == pytest.approx(list(t))
    # |+⟩ dephases toward I/2, where 𝓕_{σz} = 4e^{−4t}
    assert samples[-1].fg == pytest.approx(4.0 * math.exp(-4.0), rel=1e-6)


def test_classical_fi_examples():
    assert classical_fi([1.0, 0.0], [0.0, 0.0]) == 0.0
    assert classical_fi([0.5, 0.5], [0.1, -0.1]) == pytest.approx(0.04)
    # the vanishing outcome only counts through its curvature
    assert classical_fi([1.0, 0.0], [0.0, 0.0], [-0.2, 0.2]) == pytest.approx(0.4)


def test_classical_fi_rejects_negative_probability():
    with pytest.raises(DomainError):
        classical_fi([1.1, -0.1], [0.0, 0.0])


def test_classical_below_quantum(rng):
    for _ in range(20):
        rho = random_density(3, rng)
        A = random_hermitian(3, rng)
        rho_prime = 1j * (rho @ A - A @ rho)
        p, dp, _ = fock_distribution(rho, rho_prime)
        assert classical_fi(p, dp) <= qfi(rho, rho_prime) + 1e-10
