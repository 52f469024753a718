"""Exact algebra of antilinear operators.

An antilinear operator is represented by its matrix part ``K`` and acts as
``v -> K @ conj(v)``.  Under this representation, frozen once and used
everywhere:

* composition with a linear map ``M``:  ``M . L`` has matrix ``M K``,
  ``L . M`` has matrix ``K conj(M)``;
* composing two antilinear operators gives a *linear* map ``K1 conj(K2)``;
* the adjoint defined by ``<xi | L^+ zeta> = <zeta | L xi>`` has matrix
  ``K^T`` (plain transpose, no conjugation);
* the inverse has matrix ``conj(K^{-1})``.

Hermitian therefore means ``K == K^T``, involution means
``K conj(K) == I``, antiunitary means ``K`` unitary.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, fro, inverse


@dataclass(frozen=True)
class AntilinearOp:
    """Antilinear operator ``v -> matrix @ conj(v)``."""

    matrix: np.ndarray

    def __post_init__(self):
        K = as_matrix(self.matrix, square=True)
        object.__setattr__(self, "matrix", K)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        return apply(self, v)


def conjugation(dim: int) -> AntilinearOp:
    """Componentwise complex conjugation (matrix part is the identity)."""
    return AntilinearOp(np.eye(dim))


def apply(L: AntilinearOp, v) -> np.ndarray:
    vec = np.asarray(v, dtype=complex)
    if vec.shape != (L.dim,):
        raise ValueError(f"dimension mismatch: operator is {L.dim}, vector is {vec.shape}")
    return L.matrix @ np.conj(vec)


def compose_antilinear_antilinear(L1: AntilinearOp, L2: AntilinearOp) -> np.ndarray:
    """The linear map ``v -> L1(L2(v))``; two antilinears compose to a linear."""
    if L1.dim != L2.dim:
        raise ValueError("dimension mismatch")
    return L1.matrix @ np.conj(L2.matrix)


def compose_linear_antilinear(M, L: AntilinearOp) -> AntilinearOp:
    A = as_matrix(M, square=True)
    if A.shape[0] != L.dim:
        raise ValueError("dimension mismatch")
    return AntilinearOp(A @ L.matrix)


def compose_antilinear_linear(L: AntilinearOp, M) -> AntilinearOp:
    A = as_matrix(M, square=True)
    if A.shape[0] != L.dim:
        raise ValueError("dimension mismatch")
    return AntilinearOp(L.matrix @ np.conj(A))


def adjoint(L: AntilinearOp) -> AntilinearOp:
    return AntilinearOp(L.matrix.T)


def inverse_antilinear(L: AntilinearOp) -> AntilinearOp:
    return AntilinearOp(np.conj(inverse(L.matrix)))


def is_hermitian(L: AntilinearOp, tol: float = 1e-10) -> tuple[bool, float]:
    """Hermiticity test.  Returns (verdict, residual ``|K - K^T| / |K|``)."""
    scale = fro(L.matrix)
    res = 0.0 if scale == 0.0 else fro(L.matrix - L.matrix.T) / scale
    return res <= tol, res


def is_involution(L: AntilinearOp, tol: float = 1e-10) -> tuple[bool, float]:
    """Involution test.  Returns (verdict, residual ``|K conj(K) - I|``)."""
    res = fro(L.matrix @ np.conj(L.matrix) - np.eye(L.dim))
    return res <= tol, res


def is_antiunitary(L: AntilinearOp, tol: float = 1e-10) -> tuple[bool, float]:
    """Antiunitarity test.  Returns (verdict, residual ``|K^+ K - I|``)."""
    res = fro(L.matrix.conj().T @ L.matrix - np.eye(L.dim))
    return res <= tol, res
