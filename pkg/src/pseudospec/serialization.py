"""Stable JSON wire formats.

Matrices travel as ``{"rows": r, "cols": c, "entries": [[re, im], ...]}``
in row-major order; complex numbers are always [re, im] pairs, never
strings.  Serialization is deterministic (fixed key order, shortest
round-trip float formatting) so identical inputs produce byte-identical
documents, and parse -> serialize round-trips are lossless.
"""
from __future__ import annotations

import json

import numpy as np

from .certify import Certificate, PSEUDO_HERMITIAN


class FormatError(ValueError):
    """Malformed document."""


def matrix_to_doc(M) -> dict:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise FormatError(f"expected a 2-d matrix, got shape {A.shape}")
    entries = [[float(z.real), float(z.imag)] for z in A.ravel()]
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]), "entries": entries}


def matrix_from_doc(doc) -> np.ndarray:
    if not isinstance(doc, dict):
        raise FormatError("matrix document must be a JSON object")
    for key in ("rows", "cols", "entries"):
        if key not in doc:
            raise FormatError(f"matrix document is missing the '{key}' field")
    rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows <= 0 or cols <= 0:
        raise FormatError("'rows' and 'cols' must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise FormatError(
            f"'entries' must hold exactly rows*cols = {rows * cols} pairs, "
            f"got {len(entries) if isinstance(entries, list) else type(entries).__name__}"
        )
    flat = []
    for i, pair in enumerate(entries):
        if (not isinstance(pair, list)) or len(pair) != 2:
            raise FormatError(f"entry {i} is not a [re, im] pair")
        re, im = pair
        if not all(isinstance(p, (int, float)) and np.isfinite(p) for p in (re, im)):
            raise FormatError(f"entry {i} is not finite")
        flat.append(complex(re, im))
    return np.array(flat, dtype=complex).reshape(rows, cols)


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(
                f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    return matrix_from_doc(doc)


def dump_matrix(M, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(matrix_to_doc(M)))
        fh.write("\n")


def _complex_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def certificate_to_doc(cert: Certificate) -> dict:
    doc: dict = {"verdict": cert.verdict}
    table = []
    if cert.table is not None:
        for c in cert.table.clusters:
            table.append({"E": _complex_pair(c.value), "d": c.d, "p_list": list(c.p_list)})
    doc["spectral_table"] = table
    pairing: dict = {"ok": bool(cert.pairing_ok)}
    if cert.labeling is not None:
        pairing["real_clusters"] = list(cert.labeling.real_clusters)
        pairing["pairs"] = [list(p) for p in cert.labeling.pairs]
        pairing["unpaired"] = list(cert.labeling.unpaired)
    if cert.diagnostics is not None:
        pairing["detail"] = cert.diagnostics
    doc["pairing"] = pairing
    doc["residuals"] = {k: float(v) for k, v in sorted(cert.residuals.items())}
    doc["tolerances"] = {k: float(v) for k, v in cert.tolerances.items()}
    if np.isfinite(cert.cond_A):
        doc["cond_A"] = float(cert.cond_A)
    if cert.verdict == PSEUDO_HERMITIAN and cert.witnesses is not None:
        w = cert.witnesses
        doc["witnesses"] = {
            "S": matrix_to_doc(w.S),
            "Theta": matrix_to_doc(w.Theta.matrix),
            "tau0": matrix_to_doc(w.tau0.matrix),
            "tau": matrix_to_doc(w.tau.matrix),
            "C0": matrix_to_doc(w.C0),
            "eta0": matrix_to_doc(w.eta0),
            "X0": matrix_to_doc(w.X0.matrix),
            "X": matrix_to_doc(w.X.matrix),
            "eta": matrix_to_doc(w.eta),
        }
    return doc


def dumps_canonical(doc) -> str:
    """Deterministic JSON text: insertion-ordered keys, 2-space indent,
    shortest round-trip float repr (at most 17 significant digits)."""
    return json.dumps(doc, indent=2, allow_nan=False)
