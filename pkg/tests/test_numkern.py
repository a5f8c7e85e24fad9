"""Numeric kernel: tolerances, Hermitian checks, psd order, roots, sampling."""

import numpy as np
import pytest

from effectkit.errors import DimensionError, HermiticityViolation, NotPositiveSemidefinite
from effectkit.numkern import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_complex_matrix,
    eig_hermitian,
    frobenius,
    haar_unitary,
    hermitize,
    mat_sqrt,
    pinv_sqrt,
    psd_leq,
    random_effect,
    random_ray,
    require_hermitian,
)


def test_tolerance_defaults():
    assert DEFAULT_TOL.eps_psd == 1e-9
    assert DEFAULT_TOL.eps_rank == 1e-8
    assert DEFAULT_TOL.eps_eq == 1e-9
    assert DEFAULT_TOL.eps_herm == 1e-10


def test_tolerance_scaled():
    tol = DEFAULT_TOL.scaled(10.0)
    assert tol.eps_psd == pytest.approx(1e-8)
    assert tol.eps_rank == pytest.approx(1e-7)
    with pytest.raises(ValueError):
        DEFAULT_TOL.scaled(0.0)
    with pytest.raises(ValueError):
        DEFAULT_TOL.scaled(-1.0)


def test_tolerance_bounds_enforced():
    with pytest.raises(ValueError):
        ToleranceConfig(eps_psd=0.0)
    with pytest.raises(ValueError):
        ToleranceConfig(eps_rank=1e-2)


def test_as_complex_matrix_rejects_nonsquare():
    with pytest.raises(DimensionError):
        as_complex_matrix(np.zeros((2, 3)))
    with pytest.raises(DimensionError):
        as_complex_matrix(np.zeros(4))


def test_require_hermitian_accepts_and_rejects():
    M = np.array([[1.0, 2.0 + 1e-13j], [2.0 - 1e-13j, 3.0]])
    H = require_hermitian(M)
    assert frobenius(H - H.conj().T) == 0.0
    with pytest.raises(HermiticityViolation):
        require_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eig_hermitian_known_matrix():
    # rank-one projection onto (1,1)/sqrt(2): spectrum {0, 1}
    dec = eig_hermitian(np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex))
    w, V = dec.eigenvalues, dec.eigenvectors
    assert np.allclose(w, [0.0, 1.0], atol=1e-14)
    recon = (V * w) @ V.conj().T
    assert frobenius(recon - np.array([[0.5, 0.5], [0.5, 0.5]])) < 1e-14


def test_psd_leq_basic():
    A = np.diag([0.2, 0.3]).astype(complex)
    B = np.diag([0.4, 0.3]).astype(complex)
    assert psd_leq(A, B)
    assert not psd_leq(B, A)
    # order is reflexive up to tolerance
    assert psd_leq(A, A)


def test_psd_leq_non_comparable():
    A = np.diag([0.6, 0.1]).astype(complex)
    B = np.diag([0.1, 0.6]).astype(complex)
    assert not psd_leq(A, B)
    assert not psd_leq(B, A)


def test_psd_leq_dimension_mismatch():
    with pytest.raises(DimensionError):
        psd_leq(np.eye(2, dtype=complex), np.eye(3, dtype=complex))


def test_psd_leq_tolerance_slack():
    # a violation below the relative slack still counts as ordered
    A = np.diag([0.5 + 1e-12, 0.5]).astype(complex)
    B = np.diag([0.5, 0.5]).astype(complex)
    assert psd_leq(A, B)


def test_mat_sqrt_squares_back():
    rng = np.random.default_rng(11)
    for _ in range(5):
        M = random_effect(3, rng)
        S = mat_sqrt(M)
        assert frobenius(S @ S - M) < 1e-12


def test_pinv_sqrt_on_singular():
    M = np.diag([1.0, 0.25, 0.0]).astype(complex)
    S = pinv_sqrt(M)
    assert np.allclose(np.diag(S).real, [1.0, 2.0, 0.0], atol=1e-14)


def test_pinv_sqrt_rejects_negative():
    with pytest.raises(NotPositiveSemidefinite):
        pinv_sqrt(np.diag([1.0, -0.5]).astype(complex))


def test_haar_unitary_is_unitary_and_seeded():
    for n in (2, 3, 5):
        U = haar_unitary(n, 123)
        assert frobenius(U.conj().T @ U - np.eye(n)) < 1e-13
    assert np.array_equal(haar_unitary(4, 7), haar_unitary(4, 7))
    assert not np.array_equal(haar_unitary(4, 7), haar_unitary(4, 8))


def test_haar_unitary_accepts_generator():
    rng = np.random.default_rng(3)
    U1 = haar_unitary(3, rng)
    U2 = haar_unitary(3, rng)
    # consecutive draws from one stream differ
    assert frobenius(U1 - U2) > 1e-3


def test_random_effect_spectrum():
    rng = np.random.default_rng(5)
    for _ in range(10):
        M = random_effect(4, rng)
        w = np.linalg.eigvalsh(M)
        assert w[0] >= -1e-12
        assert w[-1] <= 1.0 + 1e-12
        assert frobenius(M - M.conj().T) < 1e-14


def test_random_ray_normalized():
    rng = np.random.default_rng(9)
    v = random_ray(6, rng)
    assert abs(np.linalg.norm(v) - 1.0) < 1e-14


def test_hermitize_idempotent():
    rng = np.random.default_rng(2)
    G = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    H = hermitize(G)
    assert frobenius(H - H.conj().T) == 0.0
    assert frobenius(hermitize(H) - H) == 0.0
