"""Synthesis of the symmetry witnesses attached to a block-diagonalization.

The constructions all live in the canonical chain basis produced by
:mod:`pseudospec.blockdiag` and are exact permutation-level identities
there:

* ``S`` flips every chain end to end, slot ``(n, a, i) -> (n, a, p-i+1)``;
* ``tau0 = S . conjugation`` relates ``H0`` to its adjoint;
* ``tau = inv(A tau0 A^+)`` relates any block-diagonalizable ``H`` to its
  adjoint, pairing or not;
* ``C0`` fixes real-class slots and swaps conjugate-paired clusters, and
  exists precisely when the spectrum passes the pairing test;
* ``eta0 = S C0`` and ``X0 = eta0 . tau0`` commute into the generalized
  time-reversal witness ``X = A X0 inv(A)`` with ``X^2 = 1`` and
  ``[H, X] = 0``;
* ``eta = inv(A)^+ eta0 inv(A)`` is a Hermitian metric with
  ``H^+ eta = eta H``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .antilinear import AntilinearOp, compose_antilinear_antilinear, conjugation
from .blockdiag import BlockDiagonalization, SpectralTable
from .linalg import inverse

DEFAULT_REAL_TOL = 1e-8
DEFAULT_PAIR_TOL = 1e-8


class PairingError(ValueError):
    """The spectrum fails the conjugate-pairing test; the requested operator
    does not exist."""


@dataclass(frozen=True)
class SpectralLabeling:
    """Cluster indices split into the real class, conjugate pairs
    (plus-index first, ``Im E > 0``), and unpaired complex leftovers."""

    real_clusters: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    unpaired: tuple[int, ...]


@dataclass(frozen=True)
class PairingReport:
    ok: bool
    detail: str | None = None


@dataclass(frozen=True)
class SymmetryOperators:
    S: np.ndarray
    Theta: AntilinearOp
    tau0: AntilinearOp
    tau: AntilinearOp
    C0: np.ndarray
    eta0: np.ndarray
    X0: AntilinearOp
    X: AntilinearOp
    eta: np.ndarray


def classify_spectrum(
    table: SpectralTable,
    real_tol: float = DEFAULT_REAL_TOL,
    pair_tol: float = DEFAULT_PAIR_TOL,
) -> SpectralLabeling:
    """Split clusters into real / paired / unpaired classes.

    A cluster is real when ``|Im E| <= real_tol * (1 + |E|)``; this is
    decided before pairing, so a coalescing pair sitting on the real axis is
    classified real even though a conjugate candidate exists.  Remaining
    clusters are matched greedily to their nearest conjugate within
    ``pair_tol * (1 + |E|)``, ties broken by smaller cluster index.
    """
    real = []
    plus = []
    minus = []
    for n, c in enumerate(table.clusters):
        if abs(c.value.imag) <= real_tol * (1.0 + abs(c.value)):
            real.append(n)
        elif c.value.imag > 0:
            plus.append(n)
        else:
            minus.append(n)

    pairs = []
    used = set()
    for n in plus:
        target = np.conj(table.clusters[n].value)
        best = None
        best_dist = None
        for m in minus:
            if m in used:
                continue
            dist = abs(table.clusters[m].value - target)
            if best is None or dist < best_dist:
                best, best_dist = m, dist
        if best is not None and best_dist <= pair_tol * (1.0 + abs(table.clusters[n].value)):
            pairs.append((n, best))
            used.add(best)

    paired = {n for p in pairs for n in p}
    unpaired = tuple(n for n in plus + minus if n not in paired)
    return SpectralLabeling(tuple(real), tuple(pairs), tuple(sorted(unpaired)))


def check_pairing(labeling: SpectralLabeling, table: SpectralTable) -> PairingReport:
    """Pairing test: every complex cluster has a conjugate partner with the
    same geometric multiplicity and the same Jordan dimensions."""
    if labeling.unpaired:
        n = labeling.unpaired[0]
        return PairingReport(
            False,
            f"cluster {n} at E={table.clusters[n].value:.6g} has no conjugate partner",
        )
    for n, m in labeling.pairs:
        cn, cm = table.clusters[n], table.clusters[m]
        if cn.p_list != cm.p_list:
            return PairingReport(
                False,
                f"conjugate pair ({n}, {m}) has mismatched Jordan dimensions "
                f"{list(cn.p_list)} vs {list(cm.p_list)}",
            )
    return PairingReport(True, None)


def _chain_offsets(table: SpectralTable) -> list[list[int]]:
    """Starting slot of chain (n, a) in the canonical basis."""
    offsets = []
    col = 0
    for c in table.clusters:
        row = []
        for p in c.p_list:
            row.append(col)
            col += p
        offsets.append(row)
    return offsets


def build_S(table: SpectralTable) -> np.ndarray:
    """Chain-reversal permutation: slot (n, a, i) -> (n, a, p-i+1).

    Hermitian, unitary, and involutive exactly; it is the identity precisely
    when every chain has length 1.
    """
    dim = table.dimension
    S = np.zeros((dim, dim))
    for offs, c in zip(_chain_offsets(table), table.clusters):
        for start, p in zip(offs, c.p_list):
            for i in range(p):
                S[start + p - 1 - i, start + i] = 1.0
    return S


def build_Theta(dim: int) -> AntilinearOp:
    """Componentwise conjugation in the canonical basis."""
    return conjugation(dim)


def build_tau0(table: SpectralTable) -> AntilinearOp:
    """``tau0 = S . conjugation``: a Hermitian unitary antilinear involution."""
    return AntilinearOp(build_S(table))


def build_tau(bd: BlockDiagonalization) -> AntilinearOp:
    """Antilinear Hermitian bijection with ``H^+ tau = tau H``.

    Defined as the inverse of ``A tau0 A^+`` whose matrix part is
    ``A S A^T``; no spectral pairing is needed, so this witness exists for
    every block-diagonalizable input.  The matrix part is symmetrized to
    keep Hermiticity exact against inversion round-off.
    """
    W = bd.A @ build_S(bd.table) @ bd.A.T
    K = np.conj(inverse(W))
    return AntilinearOp((K + K.T) / 2.0)


def build_C0(labeling: SpectralLabeling, table: SpectralTable) -> np.ndarray:
    """Pair-swap permutation: identity on real-class slots, slot
    ``(nu, a, i) <-> (-nu, a, i)`` for conjugate pairs, chains aligned in
    descending-length order.  Raises :class:`PairingError` when the pairing
    test fails, since then no such operator exists."""
    report = check_pairing(labeling, table)
    if not report.ok:
        raise PairingError(report.detail)
    dim = table.dimension
    offsets = _chain_offsets(table)
    C = np.zeros((dim, dim))
    for n in labeling.real_clusters:
        for start, p in zip(offsets[n], table.clusters[n].p_list):
            for i in range(p):
                C[start + i, start + i] = 1.0
    for n, m in labeling.pairs:
        for sa, sb, p in zip(offsets[n], offsets[m], table.clusters[n].p_list):
            for i in range(p):
                C[sb + i, sa + i] = 1.0
                C[sa + i, sb + i] = 1.0
    return C


def build_eta0(S: np.ndarray, C0: np.ndarray) -> np.ndarray:
    """``eta0 = S C0``; Hermitian unitary involution since ``[C0, S] = 0``."""
    return S @ C0


def build_X0(eta0: np.ndarray, tau0: AntilinearOp) -> AntilinearOp:
    """``X0 = eta0 . tau0``: antilinear involution commuting with ``H0``."""
    return AntilinearOp(eta0 @ tau0.matrix)


def build_X(bd: BlockDiagonalization, X0: AntilinearOp) -> AntilinearOp:
    """Similarity lift ``X = A X0 inv(A)`` (antilinear, so the inverse
    factor enters conjugated): involution commuting with ``H``."""
    return AntilinearOp(bd.A @ X0.matrix @ np.conj(inverse(bd.A)))


def build_metric_eta(bd: BlockDiagonalization, eta0: np.ndarray) -> np.ndarray:
    """Hermitian invertible metric ``eta = inv(A)^+ eta0 inv(A)`` with
    ``H^+ eta = eta H``; Hermiticity is exact by construction."""
    Ainv = inverse(bd.A)
    M = Ainv.conj().T @ eta0 @ Ainv
    return (M + M.conj().T) / 2.0


def gamma_from_tau_X(tau: AntilinearOp, X: AntilinearOp) -> np.ndarray:
    """Linear automorphism ``gamma = tau . X`` with ``H^+ gamma = gamma H``;
    in general not Hermitian."""
    return compose_antilinear_antilinear(tau, X)


def synthesize_operators(
    bd: BlockDiagonalization,
    labeling: SpectralLabeling | None = None,
    real_tol: float = DEFAULT_REAL_TOL,
    pair_tol: float = DEFAULT_PAIR_TOL,
) -> SymmetryOperators:
    """Build the full witness set for a paired spectrum.

    Raises :class:`PairingError` when the pairing test fails.
    """
    if labeling is None:
        labeling = classify_spectrum(bd.table, real_tol, pair_tol)
    S = build_S(bd.table)
    Theta = build_Theta(bd.table.dimension)
    tau0 = build_tau0(bd.table)
    tau = build_tau(bd)
    C0 = build_C0(labeling, bd.table)
    eta0 = build_eta0(S, C0)
    X0 = build_X0(eta0, tau0)
    X = build_X(bd, X0)
    eta = build_metric_eta(bd, eta0)
    return SymmetryOperators(S, Theta, tau0, tau, C0, eta0, X0, X, eta)
