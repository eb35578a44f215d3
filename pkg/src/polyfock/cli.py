"""Command line front end.

Every command is a thin wrapper over the library: the CLI parses arguments,
calls the same public functions a script would, and serializes the result.
JSON is the canonical output format (complex numbers as [re, im] pairs);
CSV is available for matrix payloads only.  Exit codes: 0 success, 1
verification failure or I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .kernels import (
    KernelSpec,
    kernel_F,
    kernel_G,
    kernel_H,
    kernel_S,
    kernel_true_poly,
)
from .multiindex import build_index_table
from .spectral import R_F_kernel_image
from . import symbols
from .symbols import VerticalSymbol, gamma_toeplitz
from .verify import SUITES, SuiteConfig, run_suite


def _complex_pairs(values: np.ndarray) -> list:
    """Nested lists with a trailing [re, im] axis replacing complex entries."""
    arr = np.asarray(values, dtype=complex)
    stacked = np.stack((arr.real, arr.imag), axis=-1)
    return stacked.tolist()


def _parse_xi_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--xi-grid expects lo:hi:count, got {text!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("--xi-grid count must be at least 1")
    return np.linspace(lo, hi, count)


def _parse_floats(text: str) -> list[float]:
    return [float(piece) for piece in text.split(",") if piece != ""]


def _parse_symbol(text: str, n: int) -> VerticalSymbol:
    """Symbol mini-language: const:c | poly:c0,c1,... | sign[:axis] |
    box:lo,hi | gausspoly:c0,...;center;halfwidth."""
    kind, _, rest = text.partition(":")
    if kind == "const":
        return symbols.constant(float(rest or "1"), n=n)
    if kind == "poly":
        coeffs = _parse_floats(rest)
        if not coeffs:
            raise ValueError("poly symbol needs coefficients, e.g. poly:0,1")
        return symbols.polynomial(coeffs, n=n)
    if kind == "sign":
        axis = int(rest) if rest else 0
        return symbols.sign(axis, n=n)
    if kind == "box":
        bounds = _parse_floats(rest)
        if len(bounds) != 2:
            raise ValueError("box symbol needs lo,hi")
        return symbols.box([bounds[0]] * n, [bounds[1]] * n, n=n)
    if kind == "gausspoly":
        pieces = rest.split(";")
        if len(pieces) != 3:
            raise ValueError("gausspoly symbol needs coeffs;center;halfwidth")
        return symbols.gaussian_poly(_parse_floats(pieces[0]),
                                     float(pieces[1]), float(pieces[2]), n=n)
    raise ValueError(f"unknown symbol kind {kind!r}")


def _load_points(path: str, space: str, n: int) -> dict[str, np.ndarray]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    keys = ("z", "w") if space in ("F", "S", "true") else ("x", "y", "u", "v")
    out = {}
    for key in keys:
        if key not in raw:
            raise ValueError(f"points file {path} is missing field {key!r}")
        arr = np.asarray(raw[key], dtype=float)
        if space in ("F", "S", "true"):
            if arr.ndim == 2 and n == 1 and arr.shape[-1] == 2:
                arr = arr[:, None, :]
            if arr.ndim != 3 or arr.shape[-1] != 2 or arr.shape[-2] != n:
                raise ValueError(
                    f"field {key!r} in {path} must be shaped (count, {n}, 2) as [re, im]")
            out[key] = arr[..., 0] + 1j * arr[..., 1]
        else:
            if arr.ndim == 1 and n == 1:
                arr = arr[:, None]
            if arr.ndim != 2 or arr.shape[-1] != n:
                raise ValueError(f"field {key!r} in {path} must be shaped (count, {n})")
            out[key] = arr
    counts = {val.shape[0] for val in out.values()}
    if len(counts) != 1:
        raise ValueError(f"point arrays in {path} have mismatched lengths")
    return out


def _default_points(space: str, n: int, seed: int, count: int = 8) -> dict[str, np.ndarray]:
    rng = np.random.default_rng(seed)
    if space in ("F", "S", "true"):
        return {
            "z": rng.uniform(-1, 1, (count, n)) + 1j * rng.uniform(-1, 1, (count, n)),
            "w": rng.uniform(-1, 1, (count, n)) + 1j * rng.uniform(-1, 1, (count, n)),
        }
    return {key: rng.uniform(-1, 1, (count, n)) for key in ("x", "y", "u", "v")}


def _points_payload(points: dict[str, np.ndarray]) -> dict:
    payload = {}
    for key, val in points.items():
        payload[key] = _complex_pairs(val) if np.iscomplexobj(val) else val.tolist()
    return payload


# ---------------------------------------------------------------------------
# result builders (shared by the printing commands and `emit`)
# ---------------------------------------------------------------------------

def _build_indices(args) -> dict:
    table = build_index_table(args.n, args.m)
    return {
        "n": table.n,
        "m": table.m,
        "d": table.d,
        "indices": [{"position": j, "index": list(table.phi(j))}
                    for j in range(1, table.d + 1)],
    }


def _build_kernel(args) -> dict:
    n, m = args.n, args.m
    points = (_load_points(args.points, args.space, n) if args.points
              else _default_points(args.space, n, args.seed))
    if args.space == "F":
        values = kernel_F(KernelSpec(n, m, args.alpha), points["z"], points["w"])
    elif args.space == "true":
        beta = [int(b) for b in args.beta.split(",")] if args.beta else [m] * n
        if len(beta) != n:
            raise ValueError(f"--beta needs {n} comma-separated entries")
        values = kernel_true_poly(KernelSpec(n, m, args.alpha), beta,
                                  points["z"], points["w"])
    elif args.space == "S":
        if args.sigma is None:
            raise ValueError("--space S requires --sigma")
        values = kernel_S(n, m, args.sigma, points["z"], points["w"])
    elif args.space == "H":
        values = kernel_H(n, m, points["x"], points["y"], points["u"], points["v"])
    else:
        values = kernel_G(n, m, points["x"], points["y"], points["u"], points["v"])
    out = {
        "space": args.space,
        "n": n,
        "m": m,
        "points": _points_payload(points),
        "values": _complex_pairs(values),
    }
    if args.space in ("F", "true"):
        out["alpha"] = args.alpha
    if args.space == "S":
        out["sigma"] = args.sigma
    if args.space == "true":
        out["beta"] = beta
    return out


def _build_fiber(args) -> dict:
    xi = np.asarray(_parse_floats(args.xi), dtype=float)
    if xi.shape != (args.n,):
        raise ValueError(f"--xi needs {args.n} comma-separated entries")
    kind, _, rest = (args.input or "").partition(":")
    if kind != "kernel" or not rest.startswith("iy="):
        raise ValueError("--input supports kernel:iy=y1,...,yn (kernel section at iy)")
    y = np.asarray(_parse_floats(rest[3:]), dtype=float)
    if y.shape != (args.n,):
        raise ValueError(f"kernel:iy= needs {args.n} comma-separated entries")
    fiber = R_F_kernel_image(KernelSpec(args.n, args.m, args.alpha), y, xi)
    return {
        "n": args.n,
        "m": args.m,
        "alpha": args.alpha,
        "input": args.input,
        "xi": xi.tolist(),
        "components": _complex_pairs(fiber.components),
    }


def _build_symbol(args) -> dict:
    table = build_index_table(args.n, args.m)
    xi_grid = _parse_xi_grid(args.xi_grid)
    g = _parse_symbol(args.g, args.n)
    matrices = []
    for value in xi_grid:
        xi = np.full(args.n, value, dtype=float)
        sym = gamma_toeplitz(table, g, xi, order=args.order)
        matrices.append(_complex_pairs(sym.entries))
    return {
        "n": args.n,
        "m": args.m,
        "d": table.d,
        "g": args.g,
        "xi": xi_grid.tolist(),
        "matrices": matrices,
    }


def _symbol_csv(payload: dict) -> str:
    """CSV flattening of the gamma matrices: one row per grid point."""
    d = payload["d"]
    buf = io.StringIO()
    writer = csv.writer(buf)
    header = ["xi"]
    for r in range(d):
        for s in range(d):
            header += [f"g_{r}{s}_re", f"g_{r}{s}_im"]
    writer.writerow(header)
    for value, matrix in zip(payload["xi"], payload["matrices"]):
        row = [repr(value)]
        for r in range(d):
            for s in range(d):
                row += [repr(matrix[r][s][0]), repr(matrix[r][s][1])]
        writer.writerow(row)
    return buf.getvalue()


def _render(payload: dict, fmt: str, kind: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if kind != "symbol":
        raise ValueError("csv output is only available for symbol matrices")
    return _symbol_csv(payload)


def _write_out(text: str, path: str | None) -> int:
    if path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: could not write {path}: {exc}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_verify(args) -> int:
    config = SuiteConfig(
        n_max=args.n_max, m_max=args.m_max, p_max=args.p_max,
        alpha=args.alpha, order=args.order, seed=args.seed,
        workers=args.workers,
    )
    report = run_suite(args.suite, config)
    reports = report.suites if report.suite == "all" else (report,)
    for rep in reports:
        print(f"suite {rep.suite}  (seed={rep.params.get('seed')}, "
              f"{rep.elapsed_seconds:.1f}s)")
        for case in rep.cases:
            mark = "PASS" if case.passed else "FAIL"
            print(f"  {mark}  {case.id:<42s} max_error={case.max_error:.3e}  "
                  f"tol={case.tolerance:.1e}")
        status = "PASS" if rep.passed else "FAIL"
        print(f"suite {rep.suite}: {status} ({len(rep.cases)} cases)")
    if report.suite == "all":
        print(f"overall: {'PASS' if report.passed else 'FAIL'}")
    if args.out:
        code = _write_out(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
        if code:
            return code
    return 0 if report.passed else 1


def _make_builder_cmd(kind: str, builder):
    def cmd(args) -> int:
        payload = builder(args)
        return _write_out(_render(payload, args.format, kind), args.out)
    return cmd


def _cmd_emit(args) -> int:
    if not args.out:
        raise ValueError("emit requires --out")
    builder = {"indices": _build_indices, "kernel": _build_kernel,
               "fiber": _build_fiber, "symbol": _build_symbol}[args.kind]
    payload = builder(args)
    return _write_out(_render(payload, args.format, args.kind), args.out)


def _add_common(parser: argparse.ArgumentParser, *, n=True, m=True, alpha=False,
                sigma=False, order=False, seed=False, out=True, fmt=True):
    if n:
        parser.add_argument("--n", type=int, default=1, help="number of complex variables")
    if m:
        parser.add_argument("--m", type=int, default=1, help="order of polyanalyticity")
    if alpha:
        parser.add_argument("--alpha", type=float, default=1.0, help="weight parameter")
    if sigma:
        parser.add_argument("--sigma", type=float, default=None, help="RBF scale")
    if order:
        parser.add_argument("--order", type=int, default=None, help="quadrature order override")
    if seed:
        parser.add_argument("--seed", type=int, default=7, help="sample point seed")
    if out:
        parser.add_argument("--out", type=str, default=None, help="write to file instead of stdout")
    if fmt:
        parser.add_argument("--format", choices=("json", "csv"), default="json")


def _add_kernel_args(parser):
    parser.add_argument("--space", choices=("F", "H", "G", "S", "true"), required=True)
    _add_common(parser, alpha=True, sigma=True, seed=True)
    parser.add_argument("--points", type=str, default=None,
                        help="JSON file of evaluation points")
    parser.add_argument("--beta", type=str, default=None,
                        help="comma-separated type for --space true")


def _add_fiber_args(parser):
    _add_common(parser, alpha=True, order=True)
    parser.add_argument("--xi", type=str, required=True, help="comma-separated frequency")
    parser.add_argument("--input", type=str, required=True,
                        help="function to transform, e.g. kernel:iy=0.5")


def _add_symbol_args(parser):
    _add_common(parser, order=True)
    parser.add_argument("--g", type=str, required=True,
                        help="vertical symbol, e.g. const:1 | poly:0,1 | sign | box:-1,1")
    parser.add_argument("--xi-grid", dest="xi_grid", type=str, default="-8:8:17",
                        help="frequency grid as lo:hi:count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyfock",
        description="Polyanalytic Fock space kernels, transforms, and operator symbols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a cross-verification suite")
    p_verify.add_argument("suite", choices=SUITES + ("all",))
    p_verify.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_verify.add_argument("--m-max", dest="m_max", type=int, default=None)
    p_verify.add_argument("--p-max", dest="p_max", type=int, default=None)
    p_verify.add_argument("--alpha", type=float, default=1.0)
    p_verify.add_argument("--order", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=7)
    p_verify.add_argument("--workers", type=int, default=4)
    p_verify.add_argument("--out", type=str, default=None,
                          help="also write the JSON report here")
    p_verify.set_defaults(fn=_cmd_verify)

    p_indices = sub.add_parser("indices", help="enumerate the multi-index table")
    _add_common(p_indices)
    p_indices.set_defaults(fn=_make_builder_cmd("indices", _build_indices))

    p_kernel = sub.add_parser("kernel", help="kernel evaluation")
    kernel_sub = p_kernel.add_subparsers(dest="kernel_command", required=True)
    p_eval = kernel_sub.add_parser("eval", help="evaluate a kernel at points")
    _add_kernel_args(p_eval)
    p_eval.set_defaults(fn=_make_builder_cmd("kernel", _build_kernel))

    p_fiber = sub.add_parser("fiber", help="fiber image under the joint transform")
    _add_fiber_args(p_fiber)
    p_fiber.set_defaults(fn=_make_builder_cmd("fiber", _build_fiber))

    p_symbol = sub.add_parser("symbol", help="operator symbol on a frequency grid")
    symbol_sub = p_symbol.add_subparsers(dest="symbol_command", required=True)
    p_gamma = symbol_sub.add_parser("gamma", help="Toeplitz matrix symbol gamma_g")
    _add_symbol_args(p_gamma)
    p_gamma.set_defaults(fn=_make_builder_cmd("symbol", _build_symbol))

    p_emit = sub.add_parser("emit", help="write a payload to a file")
    emit_sub = p_emit.add_subparsers(dest="kind", required=True)
    e_indices = emit_sub.add_parser("indices")
    _add_common(e_indices)
    e_indices.set_defaults(fn=_cmd_emit, kind="indices")
    e_kernel = emit_sub.add_parser("kernel")
    _add_kernel_args(e_kernel)
    e_kernel.set_defaults(fn=_cmd_emit, kind="kernel")
    e_fiber = emit_sub.add_parser("fiber")
    _add_fiber_args(e_fiber)
    e_fiber.set_defaults(fn=_cmd_emit, kind="fiber")
    e_symbol = emit_sub.add_parser("symbol")
    _add_symbol_args(e_symbol)
    e_symbol.set_defaults(fn=_cmd_emit, kind="symbol")

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    # argparse mistakes a grid value like -8:8:64 for an option; fold the
    # value into --xi-grid= form before parsing.
    argv = list(argv)
    for i, piece in enumerate(argv[:-1]):
        if piece == "--xi-grid":
            argv[i : i + 2] = [f"--xi-grid={argv[i + 1]}"]
            break
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        parser.exit(2, f"error: {exc}\n")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
