"""Jordan structure of dense complex matrices.

Given a square complex ``H`` this module computes eigenvalue clusters,
Jordan chains of generalized eigenvectors, the change of basis ``A`` with
``H = A H0 inv(A)``, the exactly block-Jordan ``H0``, and the biorthonormal
complement ``inv(A)^+``.

Canonical ordering, frozen so downstream operators are reproducible:

* clusters are sorted by ``(Re E, Im E)``;
* chains within a cluster by descending length, ties broken by the index of
  the largest-magnitude entry of the chain head;
* within a chain the label ``i`` runs from the eigenvector (head, ``i = 1``)
  up the chain, so that ``(H - E) v_i = v_{i-1}``.

Each chain is rescaled as a whole so that its head has unit norm with the
first significant component real positive.  That fixes the per-chain scale
and phase; the residual in-chain mixing freedom is resolved
deterministically by the top-down construction below.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import EPS, as_matrix, cond, eigenvalues, fro, inverse

DEFAULT_TOL = 1e-8
DEFAULT_COND_LIMIT = 1e12

#: residual norm below which a candidate chain top is considered linearly
#: dependent on the structure already built (a staircase inconsistency)
_INDEPENDENCE_CUTOFF = 1e-8


class JordanStructureError(RuntimeError):
    """Rank staircase or chain construction is inconsistent at tolerance."""


class IllConditionedBasisError(RuntimeError):
    """The Jordan basis is too ill-conditioned to certify anything."""


@dataclass(frozen=True)
class EigenCluster:
    """One distinct eigenvalue with its Jordan data.

    ``p_list`` holds the Jordan dimensions (chain lengths), sorted
    descending; its length is the geometric multiplicity and its sum the
    algebraic multiplicity.
    """

    value: complex
    p_list: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.p_list)

    @property
    def algebraic(self) -> int:
        return sum(self.p_list)


@dataclass(frozen=True)
class SpectralTable:
    clusters: tuple[EigenCluster, ...]
    cluster_tol: float
    merge_warning: bool = False

    @property
    def dimension(self) -> int:
        return sum(c.algebraic for c in self.clusters)

    def labels(self) -> list[tuple[int, int, int]]:
        """Canonical (cluster, chain, index) label of every basis slot."""
        out = []
        for n, c in enumerate(self.clusters):
            for a, p in enumerate(c.p_list):
                out.extend((n, a, i) for i in range(1, p + 1))
        return out


@dataclass(frozen=True)
class ClusteredSpectrum:
    """Eigenvalue clusters before any Jordan analysis."""

    centers: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    tol: float
    merge_warning: bool


@dataclass(frozen=True)
class BlockDiagonalization:
    """The triple (A, H0, table); columns of A are the Jordan basis in
    canonical label order and H0 is exactly block-Jordan."""

    A: np.ndarray
    H0: np.ndarray
    table: SpectralTable
    label_order: tuple[tuple[int, int, int], ...]
    recon_residual: float  # |H - A H0 inv(A)| / |H|

    @property
    def cond_A(self) -> float:
        return cond(self.A)


def cluster_eigenvalues(raw, tol: float) -> ClusteredSpectrum:
    """Greedy union-find clustering of raw eigenvalues.

    Two values join a cluster when they are within the absolute tolerance
    ``tol`` of each other; cluster centers are the member means.  Input is
    sorted lexicographically by (Re, Im) first, so the result does not
    depend on the eigensolver's output order.  If everything merges into a
    single cluster whose spread exceeds ``1e3 * tol`` the result carries a
    warning flag instead of failing.
    """
    vals = np.asarray(raw, dtype=complex).ravel()
    if vals.size == 0:
        raise ValueError("cannot cluster an empty eigenvalue list")
    if tol < 0:
        raise ValueError("tol must be non-negative")
    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    n = vals.size

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if vals[j].real - vals[i].real > tol:
                break  # sorted by real part; no later value can be closer
            if abs(vals[i] - vals[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    centers = []
    counts = []
    for root in groups:
        members = vals[groups[root]]
        centers.append(complex(np.mean(members)))
        counts.append(len(members))
    order = sorted(range(len(centers)), key=lambda i: (centers[i].real, centers[i].imag))
    centers = [centers[i] for i in order]
    counts = [counts[i] for i in order]

    spread = float(np.abs(vals[:, None] - vals[None, :]).max())
    warning = len(centers) == 1 and n > 1 and spread > 1e3 * tol
    return ClusteredSpectrum(tuple(centers), tuple(counts), tol, warning)


def _kernel_staircase(N: np.ndarray, tol: float, parent_scale: float):
    """Kernel bases and dimensions of N, N^2, ... until they stabilize.

    Rank decisions on the l-th power use an absolute singular value cutoff
    built from the effective scale ``s = max(smax(N), floor)`` with
    ``floor = 64 n eps * parent_scale``: the true scale of N^l decays like
    a power while float noise stays near ``n eps * parent_scale * s^(l-1)``,
    so a threshold relative to ``smax(N^l)`` alone would misread exactly
    nilpotent powers, and one without the parent floor would misread a
    fully degenerate cluster, where N itself is pure round-off.
    """
    n = N.shape[0]
    smax = float(np.linalg.norm(N, 2))
    floor = 64 * n * EPS * parent_scale
    s_eff = max(smax, floor)
    kernels = {0: np.zeros((n, 0), dtype=complex)}
    dims = [0]
    if s_eff == 0.0:
        kernels[1] = np.eye(n, dtype=complex)
        return kernels, [0, n], 1

    P = np.eye(n, dtype=complex)
    l = 0
    while True:
        l += 1
        P = P @ N
        cutoff = max((tol * s_eff) ** l, floor * s_eff ** (l - 1))
        u, s, vh = np.linalg.svd(P)
        k = int(np.count_nonzero(s <= cutoff))
        if l == 1 and k == 0:
            raise JordanStructureError(
                "no numerical kernel at the given cluster center; "
                "the center is not an eigenvalue at this tolerance"
            )
        kernels[l] = vh[n - k:, :].conj().T if k else np.zeros((n, 0), dtype=complex)
        dims.append(k)
        if k == dims[l - 1]:
            return kernels, dims, l - 1
        if l > n:
            raise JordanStructureError("kernel staircase failed to stabilize")


def jordan_chains(H, center, tol: float = DEFAULT_TOL) -> list[list[np.ndarray]]:
    """Jordan chains of ``H`` at an eigenvalue cluster center.

    Returns a list of chains, each chain a list ``[v_1, ..., v_p]`` with
    ``(H - E) v_1 ~ 0`` and ``(H - E) v_i = v_{i-1}`` exactly by
    construction for ``i >= 2``.  Chains are built top-down: a basis of
    ``ker N^l`` modulo ``ker N^{l-1}`` and the already-descended tops is
    picked at the largest power first, then descendants are generated by
    applying ``N``.
    """
    A = as_matrix(H, square=True)
    n = A.shape[0]
    N = A - complex(center) * np.eye(n)
    parent_scale = float(np.linalg.norm(A, 2))
    kernels, dims, q = _kernel_staircase(N, tol, parent_scale)

    increments = [dims[l] - dims[l - 1] for l in range(1, q + 1)]
    for l in range(1, q):
        if increments[l] > increments[l - 1]:
            raise JordanStructureError(
                f"kernel dimensions are inconsistent at power {l + 1}: "
                f"increment grew from {increments[l - 1]} to {increments[l]}"
            )

    # top-down selection of chain tops
    tops: list[tuple[int, np.ndarray]] = []
    for l in range(q, 0, -1):
        want = increments[l - 1] - (increments[l] if l < q else 0)
        if want == 0:
            continue
        blocks = [kernels[l - 1]]
        for p, t in tops:
            v = t
            for _ in range(p - l):
                v = N @ v
            blocks.append(v[:, None])
        existing = np.hstack(blocks)
        Q = None
        if existing.shape[1]:
            Q, _ = np.linalg.qr(existing)
        cands = kernels[l].copy()
        for _ in range(want):
            resid = cands if Q is None else cands - Q @ (Q.conj().T @ cands)
            norms = np.linalg.norm(resid, axis=0)
            j = int(np.argmax(norms))
            if norms[j] < _INDEPENDENCE_CUTOFF:
                raise JordanStructureError(
                    f"could not find an independent chain top at power {l}"
                )
            new = resid[:, j] / norms[j]
            tops.append((l, new))
            Q = new[:, None] if Q is None else np.hstack([Q, new[:, None]])

    floor = 64 * n * EPS * parent_scale
    s_eff = max(float(np.linalg.norm(N, 2)), floor)
    head_cutoff = 10 * max(tol * s_eff, floor)  # matches the kernel cutoff at power 1
    chains: list[list[np.ndarray]] = []
    for p, t in tops:
        chain = [t]
        for _ in range(p - 1):
            chain.append(N @ chain[-1])
        chain.reverse()  # head first
        head = chain[0]
        hnorm = float(np.linalg.norm(head))
        if hnorm == 0.0 or float(np.linalg.norm(N @ head)) > head_cutoff:
            raise JordanStructureError("chain head failed the eigenvector residual check")
        scale = 1.0 / hnorm
        mags = np.abs(head)
        sig = np.nonzero(mags > 1e-12 * mags.max())[0][0]
        pivot = head[sig] * scale
        scale *= np.conj(pivot) / abs(pivot)
        chains.append([scale * v for v in chain])

    chains.sort(key=lambda c: (-len(c), int(np.argmax(np.abs(c[0])))))
    return chains


def block_diagonalize(
    H,
    tol: float = DEFAULT_TOL,
    cond_limit: float = DEFAULT_COND_LIMIT,
) -> BlockDiagonalization:
    """Full Jordan decomposition ``H = A H0 inv(A)`` in canonical order.

    ``tol`` is relative to ``|H|_F`` and controls both eigenvalue clustering
    and rank decisions.  Raises :class:`JordanStructureError` when the
    staircase is inconsistent (including a cluster whose chain census does
    not reproduce its eigenvalue count) and
    :class:`IllConditionedBasisError` when ``cond(A)`` exceeds
    ``cond_limit``.
    """
    A_in = as_matrix(H, square=True)
    n = A_in.shape[0]
    if n == 0:
        raise ValueError("cannot decompose an empty matrix")
    scale = fro(A_in)
    skel = cluster_eigenvalues(eigenvalues(A_in), tol * scale if scale else tol)

    clusters = []
    chain_sets = []
    for center, count in zip(skel.centers, skel.multiplicities):
        chains = jordan_chains(A_in, center, tol)
        alg = sum(len(c) for c in chains)
        if alg != count:
            raise JordanStructureError(
                f"cluster at {center}: staircase algebraic multiplicity {alg} "
                f"disagrees with the clustered eigenvalue count {count}"
            )
        clusters.append(EigenCluster(center, tuple(len(c) for c in chains)))
        chain_sets.append(chains)

    table = SpectralTable(tuple(clusters), skel.tol, skel.merge_warning)

    columns = []
    labels = []
    H0 = np.zeros((n, n), dtype=complex)
    col = 0
    for nidx, (cluster, chains) in enumerate(zip(clusters, chain_sets)):
        for aidx, chain in enumerate(chains):
            start = col
            for i, v in enumerate(chain, start=1):
                columns.append(v)
                labels.append((nidx, aidx, i))
                H0[col, col] = cluster.value
                if i >= 2:
                    H0[col - 1, col] = 1.0
                col += 1
            assert col - start == len(chain)
    A = np.column_stack(columns)

    cA = cond(A)
    if not np.isfinite(cA) or cA > cond_limit:
        raise IllConditionedBasisError(
            f"Jordan basis condition number {cA:.3e} exceeds limit {cond_limit:.1e}"
        )
    recon = fro(A_in - A @ H0 @ inverse(A)) / (scale if scale else 1.0)
    return BlockDiagonalization(A, H0, table, tuple(labels), recon)


def biorthonormal_complement(bd: BlockDiagonalization) -> np.ndarray:
    """Columns are the dual basis: ``inv(A)^+`` applied to the canonical
    basis, biorthonormal to the Jordan basis and complete."""
    return inverse(bd.A).conj().T
