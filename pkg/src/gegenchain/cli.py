"""Command-line front end.

Examples::

    gegenchain table1 --n-max 9 --a 1
    gegenchain fig1 --samples 241 --format csv
    gegenchain dump p2 --n 6 --a 2 --out p2.json
    gegenchain residual --input p2.json
    gegenchain boundary --n 7 --a 1 --max-negatives 2

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .chain import build_hamiltonian, build_hermitian_partner
from .dieudonne import residual, solve_banded
from .gegenbauer import gegenbauer_zeros
from .metrics import p1, p2, p_longrange_n4, p_longrange_n8, theta0
from .numerics import NonConvergenceError
from .positivity import NoBoundaryError, NonMonotoneInertiaError, boundary, eigencurves, positivity_record

FORMAT_VERSION = "1.0.0"
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

SELECTORS = ("hamiltonian", "theta0", "p1", "p2", "plongrange", "partner", "zeros", "banded")


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


def _num(x):
    """JSON-safe float: infinities become the strings "inf"/"-inf"."""
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _envelope(command: str, params: dict, payload, provenance: dict) -> dict:
    return {
        "command": command,
        "format_version": FORMAT_VERSION,
        "index_base": 0,
        "params": params,
        "payload": payload,
        "provenance": provenance,
        "version": __version__,
    }


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in r])
    return buf.getvalue()


# --------------------------------------------------------------------------
# table1


def _record_row(args) -> list:
    n, a, tol = args
    rec = positivity_record(n, a, tol)
    return [n, rec.g_boundary, rec.g_prime, rec.g_double_prime]


def cmd_table1(n_max: int, a: float, tol: float = 1e-9, jobs: int = 1) -> dict:
    if n_max < 1:
        raise UsageError("--n-max must be >= 1")
    if tol <= 0:
        raise UsageError("--tol must be positive")
    tasks = [(n, a, tol) for n in range(1, n_max + 1)]
    if jobs > 1 and n_max > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_record_row, tasks))
    else:
        rows = [_record_row(t) for t in tasks]
    payload = {
        "columns": ["N", "G", "G_prime", "G_double_prime"],
        "rows": [[r[0]] + [_num(v) for v in r[1:]] for r in rows],
    }
    return _envelope(
        "table1",
        {"n_max": n_max, "a": a, "tol": tol},
        payload,
        {"rows": "boundaries G, G', G'' of the positivity domain of Theta_0 + g P_1"},
    )


# --------------------------------------------------------------------------
# fig1


def cmd_fig1(samples: int = 241, g_min: float = -1.2, g_max: float = 1.2, a: float = 1.0, n: int = 3) -> dict:
    if samples < 2:
        raise UsageError("--samples must be >= 2")
    curve = eigencurves(n, a, g_min, g_max, samples)
    cols = ["g"] + [f"p{i + 1}" for i in range(n)]
    rows = [[float(g)] + [float(v) for v in t] for g, t in zip(curve.g_samples, curve.eigenvalue_tracks)]
    return _envelope(
        "fig1",
        {"samples": samples, "g_min": g_min, "g_max": g_max, "a": a, "n": n},
        {"columns": cols, "rows": rows},
        {"rows": "eigenvalues p(g) of Theta_0 + g P_1, ascending"},
    )


# --------------------------------------------------------------------------
# dump


def _matrix_payload(m: np.ndarray, symmetric: bool) -> dict:
    n = m.shape[0]
    entries = []
    for i in range(n):
        for j in range(i if symmetric else 0, n):
            if m[i, j] != 0.0:
                entries.append([i, j, float(m[i, j])])
    return {"kind": "matrix", "shape": [n, n], "symmetric": symmetric, "entries": entries}


def _dump_object(obj: str, n: int, a: float, k: int | None):
    if obj == "hamiltonian":
        return _matrix_payload(build_hamiltonian(n, a).dense(), False), "chain Hamiltonian H"
    if obj == "theta0":
        return _matrix_payload(theta0(n, a).dense(), True), "diagonal metric Theta_0"
    if obj == "p1":
        return _matrix_payload(p1(n, a).dense(), True), "tridiagonal pseudometric P_1"
    if obj == "p2":
        return _matrix_payload(p2(n, a).dense(), True), "pentadiagonal pseudometric P_2"
    if obj == "plongrange":
        if n == 4:
            return _matrix_payload(p_longrange_n4(a).dense(), True), "long-range pseudometric P_3 at N=4"
        if n == 8:
            return _matrix_payload(p_longrange_n8(a).dense(), True), "long-range pseudometric P_7 at N=8"
        raise UsageError("plongrange is tabulated for --n 4 or --n 8; use 'banded --k N-1' otherwise")
    if obj == "partner":
        return _matrix_payload(build_hermitian_partner(n, a).dense(), True), "Hermitian partner h_0"
    if obj == "zeros":
        sd = gegenbauer_zeros(n, a)
        return {"kind": "spectrum", "energies": [float(e) for e in sd.energies]}, "zeros of G(N, a, x)"
    if obj == "banded":
        if k is None:
            raise UsageError("banded requires --k")
        if not 0 <= k <= n - 1:
            raise UsageError(f"--k must lie in [0, {n - 1}]")
        sols = solve_banded(build_hamiltonian(n, a), k)
        if not sols:
            raise NumericalFailure(f"no band-{k} solution at N={n}, a={a}")
        return _matrix_payload(sols[0].dense(), True), f"banded pseudometric P_{k} from the nullspace solver"
    raise UsageError(f"unknown object {obj!r}; valid selectors: {', '.join(SELECTORS)}")


def cmd_dump(obj: str, n: int, a: float, k: int | None = None) -> dict:
    if n < 1:
        raise UsageError("--n must be >= 1")
    payload, what = _dump_object(obj, n, a, k)
    params = {"object": obj, "n": n, "a": a}
    if k is not None:
        params["k"] = k
    return _envelope("dump", params, payload, {"payload": what})


def matrix_from_payload(payload: dict) -> np.ndarray:
    n = payload["shape"][0]
    m = np.zeros((n, n))
    for i, j, v in payload["entries"]:
        m[i, j] = v
        if payload.get("symmetric"):
            m[j, i] = v
    return m


# --------------------------------------------------------------------------
# residual / boundary


def cmd_residual(envelope: dict | None = None, obj: str | None = None, n: int = 3, a: float = 1.0, k=None) -> dict:
    if envelope is None:
        if obj is None:
            raise UsageError("residual needs --input or an object selector")
        envelope = cmd_dump(obj, n, a, k)
    params = envelope["params"]
    payload = envelope["payload"]
    if payload.get("kind") != "matrix" or not payload.get("symmetric"):
        raise UsageError("residual needs a dumped symmetric matrix")
    m = matrix_from_payload(payload)
    h = build_hamiltonian(m.shape[0], float(params["a"]))
    r = residual(h, m)
    return _envelope(
        "residual",
        {"object": params.get("object"), "n": m.shape[0], "a": params["a"]},
        {"residual": float(r), "degenerate": r.degenerate},
        {"residual": "relative infinity-norm residual of H^T P - P H"},
    )


def cmd_boundary(n: int, a: float, max_negatives: int = 0, tol: float = 1e-9) -> dict:
    g = boundary(n, a, max_negatives, tol)
    return _envelope(
        "boundary",
        {"n": n, "a": a, "max_negatives": max_negatives, "tol": tol},
        {"g": g},
        {"g": "edge of the region where Theta_0 + g P_1 has at most max_negatives negative eigenvalues"},
    )


# --------------------------------------------------------------------------
# rendering


def render(env: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(env, indent=2, sort_keys=True, allow_nan=False) + "\n"
    payload = env["payload"]
    if "columns" in payload:
        return _csv(payload["columns"], payload["rows"])
    if payload.get("kind") == "matrix":
        return _csv(["row", "col", "value"], payload["entries"])
    if payload.get("kind") == "spectrum":
        return _csv(["index", "energy"], list(enumerate(payload["energies"])))
    return _csv(list(payload), [list(payload.values())])


def _common(p: argparse.ArgumentParser, n_default: int | None = 3) -> None:
    p.add_argument("--a", type=float, default=1.0, help="Gegenbauer parameter a > 0")
    if n_default is not None:
        p.add_argument("--n", type=int, default=n_default, help="matrix dimension N")
    p.add_argument("--tol", type=float, default=1e-9, help="bisection tolerance on g")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for table1")
    p.add_argument("--out", type=Path, default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gegenchain", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="positivity boundaries G, G', G'' for N = 1..n_max")
    _common(p, n_default=None)
    p.add_argument("--n-max", type=int, default=9, help="largest N in the table")

    p = sub.add_parser("fig1", help="eigenvalue curves of Theta_1(g)")
    _common(p)
    p.add_argument("--samples", type=int, default=241, help="number of g grid points")
    p.add_argument("--g-min", type=float, default=-1.2)
    p.add_argument("--g-max", type=float, default=1.2)

    p = sub.add_parser("dump", help="serialize a matrix or spectrum")
    _common(p)
    p.add_argument("object", help=f"one of: {', '.join(SELECTORS)}")
    p.add_argument("--k", type=int, default=None, help="band for the 'banded' selector")

    p = sub.add_parser("residual", help="Dieudonne residual of a dumped or built pseudometric")
    _common(p)
    p.add_argument("object", nargs="?", default=None, help="selector to build when --input is absent")
    p.add_argument("--k", type=int, default=None, help="band for the 'banded' selector")
    p.add_argument("--input", type=Path, default=None, help="JSON written by 'dump'")

    p = sub.add_parser("boundary", help="single positivity boundary")
    _common(p)
    p.add_argument("--max-negatives", type=int, choices=(0, 1, 2), default=0, help="0 for G, 1 for G', 2 for G''")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "table1":
            env = cmd_table1(args.n_max, args.a, args.tol, max(1, args.jobs))
        elif args.command == "fig1":
            env = cmd_fig1(args.samples, args.g_min, args.g_max, args.a, args.n)
        elif args.command == "dump":
            env = cmd_dump(args.object, args.n, args.a, args.k)
        elif args.command == "residual":
            loaded = json.loads(args.input.read_text()) if args.input else None
            env = cmd_residual(loaded, args.object, args.n, args.a, args.k)
        else:
            env = cmd_boundary(args.n, args.a, args.max_negatives, args.tol)
    except (UsageError, ValueError, OSError) as exc:
        print(f"gegenchain: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, NoBoundaryError, NonMonotoneInertiaError, NonConvergenceError) as exc:
        print(f"gegenchain: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = render(env, args.format)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0
