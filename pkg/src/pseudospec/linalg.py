"""Dense complex linear algebra kernel.

Everything downstream (Jordan structure, symmetry synthesis, certificates)
is built on the four primitives here: eigendecomposition, numerical rank,
inversion, and Frobenius norms.  All operators are dense complex numpy
arrays; tolerances are relative unless stated otherwise.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

EPS = float(np.finfo(np.float64).eps)

#: smallest-to-largest singular value ratio below which a matrix is treated
#: as singular by :func:`inverse`
SINGULARITY_CUTOFF = 1e3 * EPS


class EigensolveError(RuntimeError):
    """The QR iteration failed to converge."""


class SingularMatrixError(np.linalg.LinAlgError):
    """Input is singular to working tolerance.  Carries a condition estimate."""

    def __init__(self, message: str, cond_estimate: float = float("inf")):
        super().__init__(message)
        self.cond_estimate = cond_estimate


def as_matrix(M, square: bool = False) -> np.ndarray:
    """Validate and return ``M`` as a 2-d complex ndarray with finite entries."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got array of shape {A.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.size and not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite (no NaN or Inf)")
    return A


def fro(M) -> float:
    """Frobenius norm, the norm every relative tolerance refers to."""
    return float(np.linalg.norm(M, "fro"))


def cond(M) -> float:
    """2-norm condition number; ``inf`` for a singular matrix."""
    s = np.linalg.svd(as_matrix(M), compute_uv=False)
    if s.size == 0 or s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


class EigenPair(NamedTuple):
    value: complex
    vector: np.ndarray  # unit Euclidean norm


def eigen_decompose(M) -> list[EigenPair]:
    """Full eigendecomposition of a square complex matrix.

    Returns one (value, unit vector) pair per row.  For defective input the
    vectors may (nearly) repeat; resolving that into Jordan chains is the
    job of :mod:`pseudospec.blockdiag`.  Backed by the LAPACK Hessenberg/QR
    triangularization, which stays stable on defective matrices.
    """
    A = as_matrix(M, square=True)
    try:
        values, vectors = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:  # non-convergence is reported, never silent
        raise EigensolveError(f"eigenvalue iteration did not converge: {exc}") from exc
    pairs = []
    for i in range(A.shape[0]):
        v = vectors[:, i]
        nrm = np.linalg.norm(v)
        if nrm == 0.0:
            raise EigensolveError("eigensolver returned a zero vector")
        pairs.append(EigenPair(complex(values[i]), v / nrm))
    return pairs


def eigenvalues(M) -> np.ndarray:
    A = as_matrix(M, square=True)
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise EigensolveError(f"eigenvalue iteration did not converge: {exc}") from exc


def numerical_rank(M, tol_rank: float | None = None) -> int:
    """Number of singular values above ``tol_rank`` times the largest one.

    The default tolerance is the usual rank-revealing convention
    ``max(rows, cols) * machine epsilon``.  The zero matrix has rank 0.
    """
    A = as_matrix(M)
    if tol_rank is None:
        tol_rank = max(A.shape) * EPS
    if tol_rank < 0:
        raise ValueError("tol_rank must be non-negative")
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol_rank * s[0]))


def inverse(M) -> np.ndarray:
    """Matrix inverse with an explicit singularity check.

    Raises :class:`SingularMatrixError` (carrying the condition estimate)
    when the smallest singular value is below ``SINGULARITY_CUTOFF`` times
    the largest.
    """
    A = as_matrix(M, square=True)
    if A.size == 0:
        return A.copy()
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= SINGULARITY_CUTOFF * s[0] or s[0] == 0.0:
        est = float("inf") if s[-1] == 0.0 else float(s[0] / s[-1])
        raise SingularMatrixError(
            f"matrix is singular to working tolerance (cond >= {est:.3e})", est
        )
    return np.linalg.inv(A)
