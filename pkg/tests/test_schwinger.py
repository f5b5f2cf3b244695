import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.stats import binom

from nsqueeze import DomainError
from nsqueeze.etastate import eta_state
from nsqueeze.fock import NPhotonState
from nsqueeze.schwinger import (
    build_operators,
    expectation,
    output_distribution,
    rotate,
    rotated_j2,
    variance,
)

from conftest import full_space_j_operators, random_state

PAULI_X = np.array([[0, 1], [1, 0]])
PAULI_Y = np.array([[0, -1j], [1j, 0]])
PAULI_Z = np.array([[1, 0], [0, -1]])


def comm(a, b):
    return a @ b - b @ a


def test_spin_half():
    ops = build_operators(1)
    np.testing.assert_allclose(ops.j1, PAULI_Z / 2, atol=1e-15)
    np.testing.assert_allclose(ops.j2, PAULI_X / 2, atol=1e-15)
    np.testing.assert_allclose(ops.j3, PAULI_Y / 2, atol=1e-15)


def test_n3_matrix_elements():
    ops = build_operators(3)
    assert ops.j2[0, 1].real == pytest.approx(0.5 * math.sqrt(3), abs=1e-15)
    assert ops.j2[1, 2].real == pytest.approx(1.0, abs=1e-15)
    assert ops.j2[0, 1] == ops.j2[1, 0]


@pytest.mark.parametrize("n", range(1, 13))
def test_matches_full_fock_space_construction(n):
    ops = build_operators(n)
    j1, j2, j3 = full_space_j_operators(n)
    np.testing.assert_allclose(ops.j1, j1, atol=1e-13)
    np.testing.assert_allclose(ops.j2, j2, atol=1e-13)
    np.testing.assert_allclose(ops.j3, j3, atol=1e-13)


@pytest.mark.parametrize("n", [1, 2, 3, 8, 17, 32, 64])
def test_su2_algebra(n):
    ops = build_operators(n)
    j1, j2, j3 = ops.j1, ops.j2, ops.j3
    for m in (j1, j2, j3):
        assert np.max(np.abs(m - m.conj().T)) < 1e-14
    assert np.max(np.abs(comm(j1, j2) - 1j * j3)) < 1e-12
    assert np.max(np.abs(comm(j2, j3) - 1j * j1)) < 1e-12
    assert np.max(np.abs(comm(j3, j1) - 1j * j2)) < 1e-12
    casimir = (n / 2) * (n / 2 + 1) * np.eye(n + 1)
    assert np.max(np.abs(ops.casimir() - casimir)) < 1e-10


@pytest.mark.parametrize("n", [1, 5, 12])
def test_pair_number_and_j1(n):
    ops = build_operators(n)
    np.testing.assert_array_equal(np.diag(ops.j1).real, n / 2 - np.arange(n + 1))
    np.testing.assert_array_equal(np.diag(ops.pair_number).real, np.arange(n + 1))
    np.testing.assert_allclose(ops.pair_number, n / 2 * np.eye(n + 1) - ops.j1, atol=1e-15)


def test_n_zero_rejected():
    with pytest.raises(ValueError):
        build_operators(0)
    with pytest.raises(ValueError):
        build_operators(201)


def test_operators_immutable():
    with pytest.raises(ValueError):
        build_operators(4).j2[0, 1] = 0


@pytest.mark.parametrize("n", [1, 2, 8, 13, 32])
def test_j2_spectrum(n):
    spec = build_operators(n).j2_spectrum()
    np.testing.assert_allclose(spec.eigenvalues, np.arange(n + 1) - n / 2, atol=1e-10)
    assert np.max(np.abs(spec.reconstruct() - build_operators(n).j2)) < 1e-10
    v = spec.eigenvectors
    assert np.max(np.abs(v.conj().T @ v - np.eye(n + 1))) < 1e-12


def test_j2_eigenvalues_n8_dense_solve():
    vals = np.linalg.eigvalsh(build_operators(8).j2)
    np.testing.assert_allclose(vals, np.arange(-4, 5), atol=1e-10)


def test_expectation_fock_state():
    for n in (1, 4, 9):
        ops = build_operators(n)
        s = NPhotonState.fock(n)
        assert expectation(ops.j1, s) == pytest.approx(n / 2, abs=1e-14)
        assert expectation(ops.j2, s) == pytest.approx(0, abs=1e-14)
        assert expectation(ops.j3, s) == pytest.approx(0, abs=1e-14)
        assert variance(ops.j2, s) == pytest.approx(n / 4, abs=1e-14)
        assert variance(ops.j3, s) == pytest.approx(n / 4, abs=1e-14)


def test_expectation_n3_eta_third():
    # |3;0> - sqrt(2! 3! / 1!) (1/18) |1;2>, evaluated with full-space matrices
    j1, j2, _ = full_space_j_operators(3)
    psi = np.array([1.0, 0.0, -math.sqrt(12) / 18, 0.0])
    psi /= np.linalg.norm(psi)
    j1_mean = psi @ j1.real @ psi
    dj2_sq = psi @ j2.real @ j2.real @ psi - (psi @ j2.real @ psi) ** 2
    # by hand: weights 27/28 and 1/28 on |3;0>, |1;2>
    assert j1_mean == pytest.approx(10 / 7, abs=1e-14)
    assert dj2_sq == pytest.approx(13 / 28, abs=1e-14)
    assert dj2_sq == pytest.approx(0.46425, abs=1e-4)
    assert 3 * dj2_sq / j1_mean**2 == pytest.approx(0.68, abs=0.01)

    ops = build_operators(3)
    s = eta_state(3, 1 / 3)
    assert expectation(ops.j1, s) == pytest.approx(j1_mean, abs=1e-12)
    assert variance(ops.j2, s) == pytest.approx(dj2_sq, abs=1e-12)


def test_expectation_errors():
    ops = build_operators(3)
    with pytest.raises(ValueError):
        expectation(ops.j2, NPhotonState.fock(4))
    non_hermitian = np.diag(np.ones(3), 1).astype(complex) * 1j
    psi = np.ones(4) / 2
    with pytest.raises(DomainError):
        expectation(non_hermitian, psi)


@given(st.floats(min_value=-10, max_value=10), st.integers(min_value=1, max_value=32), st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_variance_non_negative(phi, n, seed):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, n)
    ops = build_operators(n)
    assert variance(rotated_j2(ops, phi), psi) >= -1e-12


def test_rotated_j2_limits():
    ops = build_operators(6)
    np.testing.assert_array_equal(rotated_j2(ops, 0.0), ops.j2)
    assert np.max(np.abs(rotated_j2(ops, math.pi / 2) - ops.j1)) < 1e-14


@given(st.floats(min_value=-2 * math.pi, max_value=2 * math.pi), st.integers(min_value=1, max_value=16))
@settings(max_examples=40, deadline=None)
def test_rotated_j2_spectrum_invariant(phi, n):
    vals = np.linalg.eigvalsh(rotated_j2(build_operators(n), phi))
    np.testing.assert_allclose(vals, np.arange(n + 1) - n / 2, atol=1e-10)


@given(st.floats(min_value=-2 * math.pi, max_value=2 * math.pi), st.integers(min_value=1, max_value=32), st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_heisenberg_schrodinger_agreement(phi, n, seed):
    rng = np.random.default_rng(seed)
    ops = build_operators(n)
    psi = random_state(rng, n)
    heisenberg = expectation(rotated_j2(ops, phi), psi)
    # independent route: matrix exponential instead of the J3 eigenbasis
    rotated = expm(-1j * phi * ops.j3) @ psi
    assert expectation(ops.j2, rotated) == pytest.approx(heisenberg, abs=1e-10)
    state = NPhotonState(n, psi)
    schrodinger = rotate(state, phi, ops)
    assert expectation(ops.j2, schrodinger) == pytest.approx(expectation(rotated_j2(ops, phi), state), abs=1e-10)


@pytest.mark.parametrize("n", [2, 8, 21, 32])
def test_phase_derivative_is_j1(n):
    rng = np.random.default_rng(n)
    ops = build_operators(n)
    for psi in (random_state(rng, n), eta_state(n, 0.4).amps):
        h = 1e-4
        plus = expectation(ops.j2, expm(-1j * h * ops.j3) @ psi)
        minus = expectation(ops.j2, expm(1j * h * ops.j3) @ psi)
        assert (plus - minus) / (2 * h) == pytest.approx(expectation(ops.j1, psi), abs=1e-6)


def test_output_distribution_fock_quarter_period():
    n = 6
    p = output_distribution(NPhotonState.fock(n), math.pi / 2)
    assert p[-1] == pytest.approx(1.0, abs=1e-12)
    assert build_operators(n).m_values[-1] == n / 2


@pytest.mark.parametrize("n", [1, 4, 8, 15])
def test_output_distribution_fock_binomial(n):
    # brute force: project |N;0> onto each J2 eigenvector from a plain eigensolve
    vals, vecs = np.linalg.eigh(full_space_j_operators(n)[1])
    brute = np.abs(vecs[0, :]) ** 2
    p = output_distribution(NPhotonState.fock(n), 0.0)
    np.testing.assert_allclose(p, brute, atol=1e-12)
    np.testing.assert_allclose(p, binom.pmf(np.arange(n + 1), n, 0.5), atol=1e-12)


@given(st.floats(min_value=0, max_value=2 * math.pi), st.integers(min_value=1, max_value=32), st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_output_distribution_moments(phi, n, seed):
    rng = np.random.default_rng(seed)
    ops = build_operators(n)
    state = NPhotonState(n, random_state(rng, n))
    p = output_distribution(state, phi, ops)
    assert p.sum() == pytest.approx(1.0, abs=1e-10)
    assert np.dot(ops.m_values, p) == pytest.approx(expectation(rotated_j2(ops, phi), state), abs=1e-10)


def test_output_distribution_follows_sine_and_narrows():
    n = 8
    ops = build_operators(n)
    squeezed, coherent = eta_state(n, 0.85), eta_state(n, 0.0)
    j1 = expectation(ops.j1, squeezed)
    for phi in np.linspace(0, 2 * math.pi, 21):
        p = output_distribution(squeezed, phi, ops)
        assert np.dot(ops.m_values, p) == pytest.approx(j1 * math.sin(phi), abs=1e-10)

    def spread(state, phi):
        p = output_distribution(state, phi, ops)
        mean = np.dot(ops.m_values, p)
        return np.dot((ops.m_values - mean) ** 2, p)

    assert spread(squeezed, 0.0) < 0.5 * spread(coherent, 0.0)
    # the squeezed state broadens at the quarter period where the unsqueezed one is sharp
    assert spread(squeezed, math.pi / 2) > spread(coherent, math.pi / 2)
