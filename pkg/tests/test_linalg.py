import numpy as np
import pytest

from pseudospec.linalg import (
    SingularMatrixError,
    eigen_decompose,
    eigenvalues,
    fro,
    inverse,
    numerical_rank,
)


def random_similarity(rng, n, spread=(0.5, 2.0)):
    """Well-conditioned random change of basis."""
    q1, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    q2, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    s = rng.uniform(*spread, size=n)
    return q1 @ np.diag(s) @ q2


def test_eigen_decompose_diagonal():
    pairs = eigen_decompose(np.diag([1.0, 2.0]))
    got = sorted(pairs, key=lambda p: p.value.real)
    assert abs(got[0].value - 1.0) < 1e-14
    assert abs(got[1].value - 2.0) < 1e-14
    assert np.allclose(np.abs(got[0].vector), [1, 0])
    assert np.allclose(np.abs(got[1].vector), [0, 1])


def test_eigen_decompose_nilpotent_block():
    pairs = eigen_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert len(pairs) == 2
    for p in pairs:
        assert abs(p.value) < 1e-8
        assert abs(np.linalg.norm(p.vector) - 1.0) < 1e-12


def assert_multiset_close(got, want, tol):
    got = list(got)
    for w in want:
        j = int(np.argmin([abs(g - w) for g in got]))
        assert abs(got[j] - w) < tol, f"no eigenvalue near {w}"
        got.pop(j)
    assert not got


def test_eigen_decompose_construct_then_recover():
    rng = np.random.default_rng(7)
    lam = np.array([1.0, -2.0, 0.5 + 1j, 0.5 - 1j, 3.0, -0.25j])
    A = random_similarity(rng, 6)
    M = A @ np.diag(lam) @ np.linalg.inv(A)
    assert_multiset_close(eigenvalues(M), lam, 1e-8)


def test_eigen_pairs_satisfy_residual():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = rng.integers(2, 9)
        M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        for value, vector in eigen_decompose(M):
            assert np.linalg.norm(M @ vector - value * vector) <= 1e-8 * fro(M)


def test_eigen_decompose_rejects_non_square():
    with pytest.raises(ValueError):
        eigen_decompose(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigen_decompose(np.array([[np.nan, 0], [0, 1]]))


def test_numerical_rank_basics():
    assert numerical_rank(np.eye(3), 1e-10) == 3
    assert numerical_rank(np.array([[0.0, 1.0], [0.0, 0.0]]), 1e-10) == 1
    assert numerical_rank(np.zeros((4, 4))) == 0


def test_numerical_rank_of_squared_defective_hamiltonian():
    # two-level scattering generator at x=0, k=1, v=2: exactly nilpotent,
    # so the squared shifted matrix has rank 0 and kernel dimension 2
    H = np.array([[1.0, 1.0], [-1.0, -1.0]])
    assert numerical_rank(H @ H, 1e-10) == 0
    assert 2 - numerical_rank(H @ H, 1e-10) == 2


def test_numerical_rank_monotone_under_zero_padding():
    rng = np.random.default_rng(11)
    for _ in range(25):
        m, n = rng.integers(1, 7, size=2)
        M = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
        r = numerical_rank(M)
        padded = np.zeros((m + 2, n + 1), dtype=complex)
        padded[:m, :n] = M
        assert numerical_rank(padded) <= r


def test_inverse_identity_and_frozen_example():
    assert np.allclose(inverse(np.eye(2)), np.eye(2))
    F = np.array([[1.0, 1.0], [-1.0, 0.0]])
    assert np.max(np.abs(inverse(F) - np.array([[0.0, -1.0], [1.0, 1.0]]))) < 1e-14


def test_inverse_residual_random():
    rng = np.random.default_rng(5)
    M = random_similarity(rng, 8)
    assert fro(M @ inverse(M) - np.eye(8)) < 1e-10


def test_inverse_involution_property():
    rng = np.random.default_rng(9)
    for _ in range(10):
        M = random_similarity(rng, 5)
        c = np.linalg.cond(M)
        assert fro(inverse(inverse(M)) - M) <= 1e-9 * c**2 * max(fro(M), 1.0)


def test_inverse_rejects_singular_with_condition_estimate():
    with pytest.raises(SingularMatrixError) as err:
        inverse(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert err.value.cond_estimate > 1e12
