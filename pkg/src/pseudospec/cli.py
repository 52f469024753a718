"""Command line surface: ``analyze``, ``scatter-sweep``, ``model-sweep``.

Exit codes of ``analyze``: 0 pseudo-Hermitian, 1 not, 2 inconclusive,
3 input error.  Sweep commands emit CSV with a fixed column order; float
cells use shortest round-trip repr, so identical inputs give byte-identical
output.  ``PSEUDOSPEC_THREADS`` caps internal parallelism of the sweeps
(0 or unset = auto); rows are always assembled in input order.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .certify import (
    INCONCLUSIVE,
    NOT_PSEUDO_HERMITIAN,
    PSEUDO_HERMITIAN,
    ToleranceProfile,
    decide,
)
from .scattering import (
    EP_CLUSTER_TOL,
    PotentialSpec,
    RectangularBarrier,
    SampledPotential,
    evolve_transfer,
    hamiltonian_at,
)
from .serialization import FormatError, certificate_to_doc, dumps_canonical, load_matrix
from .truncated import ModelSpec, build_H, closed_form_X, exceptional_set

EXIT_PSEUDO_HERMITIAN = 0
EXIT_NOT_PSEUDO_HERMITIAN = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3

_VERDICT_EXIT = {
    PSEUDO_HERMITIAN: EXIT_PSEUDO_HERMITIAN,
    NOT_PSEUDO_HERMITIAN: EXIT_NOT_PSEUDO_HERMITIAN,
    INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

RESIDUAL_COLUMNS = (
    "anti_ph",
    "X_involution",
    "X_commute",
    "eta_hermitian",
    "eta_intertwine",
    "gamma_intertwine",
    "reconstruction",
)


def _thread_count() -> int:
    raw = os.environ.get("PSEUDOSPEC_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit(f"PSEUDOSPEC_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise SystemExit("PSEUDOSPEC_THREADS must be non-negative")
    return n if n > 0 else (os.cpu_count() or 1)


def _parallel_map(fn, items):
    workers = _thread_count()
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path, header, rows):
    out = open(path, "w", newline="", encoding="utf-8") if path else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(c) for c in row])
    finally:
        if path:
            out.close()


def cmd_analyze(args) -> int:
    try:
        H = load_matrix(args.input)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    profile = ToleranceProfile(
        cluster_tol=args.tol_cluster, real_tol=args.tol_real, pair_tol=args.tol_pair
    )
    try:
        cert = decide(H, profile)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    text = dumps_canonical(certificate_to_doc(cert))
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        print(text)
    return _VERDICT_EXIT[cert.verdict]


def _parse_potential(text: str):
    kind, _, rest = text.partition(":")
    if kind == "rectangular":
        parts = rest.split(",")
        if len(parts) != 3:
            raise SystemExit("rectangular potential needs v0,x_start,x_end")
        v0, a, b = (float(p) for p in parts)
        return RectangularBarrier(v0, a, b)
    if kind == "sampled":
        xs, vs = [], []
        with open(rest, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                x, v = line.replace(",", " ").split()
                xs.append(float(x))
                vs.append(float(v))
        return SampledPotential(tuple(xs), tuple(vs))
    raise SystemExit(f"unknown potential kind {kind!r}")


def _scatter_header():
    cols = ["x", "k"]
    for i in (1, 2):
        for j in (1, 2):
            cols += [f"re_U{i}{j}", f"im_U{i}{j}"]
    cols += ["det_drift", "verdict"]
    cols += [f"res_{name}" for name in RESIDUAL_COLUMNS]
    return cols


def cmd_scatter_sweep(args) -> int:
    try:
        potential = _parse_potential(args.potential)
        spec = PotentialSpec(potential, args.k)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    x_lo, x_hi = args.x_range
    if not x_lo < x_hi:
        print("error: x-range must be increasing", file=sys.stderr)
        return EXIT_INPUT_ERROR
    xs = np.linspace(x_lo, x_hi, args.samples)
    total = x_hi - x_lo
    profile = ToleranceProfile(cluster_tol=EP_CLUSTER_TOL)

    def one(x):
        if x > x_lo:
            steps = max(1, round(args.steps * (x - x_lo) / total))
            res = evolve_transfer(spec, x_lo, x, steps)
            U, drift = res.U, res.det_drift
        else:
            U, drift = np.eye(2, dtype=complex), 0.0
        cert = decide(hamiltonian_at(x, spec), profile)
        row = [float(x), float(spec.k)]
        for i in range(2):
            for j in range(2):
                row += [float(U[i, j].real), float(U[i, j].imag)]
        row += [float(drift), cert.verdict]
        row += [float(cert.residuals.get(name, np.nan)) for name in RESIDUAL_COLUMNS]
        return row

    rows = _parallel_map(one, xs)
    _write_csv(args.csv_out, _scatter_header(), rows)
    return 0


def _model_header(L: int, compare: bool):
    cols = ["varpi", "regime_real_count", "is_exceptional"]
    for i in range(2 * L):
        cols += [f"re_E{i + 1}", f"im_E{i + 1}"]
    cols += ["p_lists", "cond_A", "verdict"]
    cols += [f"res_{name}" for name in RESIDUAL_COLUMNS]
    if compare:
        cols.append("X_closed_form_dev")
    return cols


def cmd_model_sweep(args) -> int:
    try:
        lambdas = tuple(float(p) for p in args.lambdas.split(","))
        ModelSpec(lambdas, 1.0)  # validates the lambda list
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    lo, hi = args.varpi_range
    samples = np.linspace(lo, hi, args.samples)
    if np.any(samples <= 0):
        print("error: varpi must stay positive over the sweep", file=sys.stderr)
        return EXIT_INPUT_ERROR
    eps_set = np.sqrt(lambdas)

    def one(varpi):
        spec = ModelSpec(lambdas, float(varpi))
        H = build_H(spec)
        near_ep = bool(np.min(np.abs(varpi - eps_set)) < 1e-6)
        # clustering must absorb the sqrt(eps) scatter of a coalescing pair
        profile = ToleranceProfile(cluster_tol=1e-6 if near_ep else 1e-8)
        cert = decide(H, profile)
        row = [float(varpi)]
        if cert.table is not None and cert.labeling is not None:
            real_count = sum(
                cert.table.clusters[n].algebraic for n in cert.labeling.real_clusters
            )
            evs = [c.value for c in cert.table.clusters for _ in range(c.algebraic)]
            p_lists = ";".join(
                "+".join(str(p) for p in c.p_list) for c in cert.table.clusters
            )
        else:
            real_count, evs, p_lists = -1, [0j] * (2 * spec.L), ""
        row += [real_count, int(near_ep)]
        for z in evs:
            row += [float(z.real), float(z.imag)]
        row += [p_lists, float(cert.cond_A) if np.isfinite(cert.cond_A) else float("inf")]
        row += [cert.verdict]
        row += [float(cert.residuals.get(name, np.nan)) for name in RESIDUAL_COLUMNS]
        if args.compare_closed_form:
            if cert.witnesses is not None:
                dev = float(
                    np.max(np.abs(cert.witnesses.X.matrix - closed_form_X(spec).matrix))
                )
            else:
                dev = float("nan")
            row.append(dev)
        return row

    rows = _parallel_map(one, samples)
    _write_csv(args.csv_out, _model_header(len(lambdas), args.compare_closed_form), rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudospec",
        description="Block-diagonalization and pseudo-Hermiticity certificates "
        "for dense complex operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="certify a matrix from a JSON file")
    p.add_argument("input", help="path to a matrix JSON document")
    p.add_argument("--tol-cluster", type=float, default=1e-8)
    p.add_argument("--tol-pair", type=float, default=1e-8)
    p.add_argument("--tol-real", type=float, default=1e-8)
    p.add_argument("--json-out", default=None, help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scatter-sweep", help="transfer-matrix sweep of a 1-d potential")
    p.add_argument("--potential", required=True,
                   help="rectangular:v0,x_start,x_end or sampled:path")
    p.add_argument("--k", type=float, required=True, help="wavenumber")
    p.add_argument("--x-range", type=float, nargs=2, required=True, metavar=("XMIN", "XMAX"))
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--steps", type=int, default=2000, help="integrator steps over the full range")
    p.add_argument("--csv-out", default=None)
    p.set_defaults(func=cmd_scatter_sweep)

    p = sub.add_parser("model-sweep", help="parameter sweep of the two-band lattice model")
    p.add_argument("--lambdas", required=True, help="comma-separated increasing positive list")
    p.add_argument("--varpi-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--csv-out", default=None)
    p.add_argument("--compare-closed-form", action="store_true")
    p.set_defaults(func=cmd_model_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry_point() -> None:
    sys.exit(main())
