"""Command-line front end.

Every subcommand writes rows as CSV (default) or JSON to stdout or --out.
Floats are written with repr, so identical inputs give byte-identical output.
Exit codes: 0 success, 1 a verify check failed, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import poisson as pk
from . import product as pr
from . import singular as sg
from . import spectral as sp
from ._parallel import ordered_map
from .functions import FunctionSyntaxError, bump, parse_function, parse_scalar
from .quadrature import build_circle_rule
from .special_fn import e_eval, p_eval
from .verify import SUITES, run_suites

DEFAULT_K = 1.0


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    k: float
    N: int
    m: int
    tol: float
    fmt: str

    def __post_init__(self):
        if self.k < 0:
            raise UsageError("--k must be >= 0")
        if self.N < 1:
            raise UsageError("--n-trunc must be >= 1")
        if self.m < 2:
            raise UsageError("--quad-order must be >= 2")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.m < 4 * self.N:
            warnings.warn(f"quadrature order {self.m} < 4 * n-trunc ({4 * self.N}); "
                          "coefficients may be under-resolved", RuntimeWarning, stacklevel=4)

    def rule(self):
        return build_circle_rule(self.k, max(self.m, self.N + 1))

    def analyze(self, f):
        return sp.analyze(f, self.k, self.N, self.rule())


# ---------------------------------------------------------------------------
# argument helpers


def _grid(text: str) -> np.ndarray:
    """"0.4", "0.1,0.2,pi/2" or "start:stop:count" (inclusive linspace)."""
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError(f"grid {text!r} must look like start:stop:count")
            count = int(parts[2])
            if count < 1:
                raise UsageError("grid count must be >= 1")
            return np.linspace(parse_scalar(parts[0]), parse_scalar(parts[1]), count)
        return np.array([parse_scalar(t) for t in text.split(",") if t.strip()])
    except (FunctionSyntaxError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _interval(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"interval {text!r} must look like a:b")
    a, b = (parse_scalar(p) for p in parts)
    if not a < b:
        raise UsageError("interval needs a < b")
    return a, b


def _function(text: str, k: float):
    try:
        return parse_function(text, k)
    except FunctionSyntaxError as exc:
        raise UsageError(str(exc)) from None


def _f(v) -> float:
    return float(v)


# ---------------------------------------------------------------------------
# output


def _emit(args, columns, rows, payload=None):
    """Write rows as CSV, or `payload` (default: list of row dicts) as JSON."""
    fmt = args.format
    if fmt == "json":
        data = payload if payload is not None else [dict(zip(columns, r)) for r in rows]
        text = json.dumps(data, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in r])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> RunConfig:
    k = DEFAULT_K if args.k is None else args.k
    return RunConfig(k, args.n_trunc, args.quad_order, args.tol, args.format)


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args):
    cfg = _config(args)
    xs = _grid(args.x)
    E = np.atleast_1d(e_eval(args.n, cfg.k, xs))
    P = np.atleast_1d(p_eval(abs(args.n), cfg.k, xs))
    rows = [(_f(x), _f(e.real), _f(e.imag), _f(p)) for x, e, p in zip(xs, E, P)]
    _emit(args, ["x", "re_E", "im_E", "P"], rows)
    return 0


def cmd_expand(args):
    cfg = _config(args)
    exp = cfg.analyze(_function(args.f, cfg.k))
    rows = [(int(n), _f(c.real), _f(c.imag)) for n, c in zip(exp.degrees, exp.coeffs)]
    _emit(args, ["n", "re", "im"], rows, payload=exp.to_dict())
    return 0


def _load_expansion(path: str) -> sp.SpectralExpansion:
    try:
        with open(path, encoding="utf-8") as fh:
            return sp.SpectralExpansion.from_json(fh.read())
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read expansion from {path}: {exc}") from None


def cmd_synth(args):
    exp = _load_expansion(args.coeffs)
    xs = _grid(args.x)
    vals = np.atleast_1d(exp(xs))
    _emit(args, ["x", "re", "im"], [(_f(x), _f(v.real), _f(v.imag)) for x, v in zip(xs, vals)])
    return 0


def cmd_poisson(args):
    cfg = _config(args)
    rs, xs, ys = _grid(args.r), _grid(args.x), _grid(args.y)
    if np.any(rs < 0) or np.any(rs >= 1):
        raise UsageError("--r values must lie in [0, 1)")
    rows = []
    for r in rs:
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        series = np.asarray(pk.poisson_series(r, X, Y, cfg.k, tol=min(cfg.tol, 1e-14)))
        other = np.asarray(pk.poisson_kernel(r, X, Y, cfg.k))
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                rows.append((_f(r), _f(x), _f(y), _f(series[i, j]), _f(other[i, j]),
                             _f(abs(series[i, j] - other[i, j]))))
    _emit(args, ["r", "x", "y", "value_series", "value_integral", "abs_diff"], rows)
    return 0


def cmd_translate(args):
    cfg = _config(args)
    f = _function(args.f, cfg.k)
    x = parse_scalar(args.at)
    ys = _grid(args.y)
    kern = np.atleast_1d(pr.translate(f, x, ys, cfg.k, method="kernel"))
    spec = np.atleast_1d(pr.translate_spectral(cfg.analyze(f), x, ys))
    rows = [(_f(y), _f(a.real), _f(a.imag), _f(b.real), _f(b.imag)) for y, a, b in zip(ys, kern, spec)]
    _emit(args, ["y", "re_kernel", "im_kernel", "re_spectral", "im_spectral"], rows)
    return 0


def cmd_convolve(args):
    cfg = _config(args)
    f, g = _function(args.f, cfg.k), _function(args.g, cfg.k)
    conv = pr.convolve_spectral(cfg.analyze(f), cfg.analyze(g))
    xs = _grid(args.x)
    vals = np.atleast_1d(conv(xs))
    _emit(args, ["x", "re", "im"], [(_f(x), _f(v.real), _f(v.imag)) for x, v in zip(xs, vals)])
    return 0


def _hilbert_values(cfg, f, xs, mode, support):
    if mode == "spectral":
        return list(np.atleast_1d(sp.hilbert_spectral(cfg.analyze(f))(xs)))
    if support is None:
        raise UsageError("--mode kernel needs --support a:b (or a bump-only --f)")
    if cfg.k == 0:
        raise UsageError("--mode kernel needs k > 0")

    def one(x):
        try:
            return sg.hilbert_via_kernel(f, x, cfg.k, support, m=max(cfg.m, 128))
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    return ordered_map(one, list(xs))


def cmd_hilbert(args):
    cfg = _config(args)
    support = _interval(args.support) if args.support else None
    if args.f:
        f = _function(args.f, cfg.k)
        support = support or f.support
    elif support is not None:
        a, b = support
        f = lambda t: bump(t, a, b)  # noqa: E731
    else:
        raise UsageError("give --f, --support, or both")
    xs = _grid(args.x)
    vals = _hilbert_values(cfg, f, xs, args.mode, support)
    records = [{"x": _f(x), "value_re": _f(v.real), "value_im": _f(v.imag), "mode": args.mode}
               for x, v in zip(xs, vals)]
    payload = records[0] if len(records) == 1 else records
    _emit(args, ["x", "value_re", "value_im", "mode"],
          [tuple(r.values()) for r in records], payload=payload)
    return 0


def cmd_fracint(args):
    cfg = _config(args)
    xs = _grid(args.x)
    alpha = args.alpha
    if not alpha > 0:
        raise UsageError("--alpha must be positive")

    def row(x):
        return (
            _f(x),
            _f(pr.fractional_kernel(x, cfg.k, alpha, variant="poisson", tol=cfg.tol)),
            _f(pr.fractional_kernel(x, cfg.k, alpha, variant="unit", tol=cfg.tol)),
            _f(pr.fractional_partial_sum(x, cfg.k, alpha, cfg.N)),
            _f(pr.fractional_partial_sum(x, cfg.k, alpha, cfg.N, fejer=True)),
        )

    rows = ordered_map(row, list(xs))
    _emit(args, ["x", "kernel_poisson", "kernel_unit", "partial_sum", "fejer_sum"], rows)
    return 0


def cmd_verify(args):
    try:
        checks = run_suites(args.suite, args.k)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    columns = ["suite", "name", "k", "value", "threshold", "passed", "detail"]
    rows = [tuple(c.as_dict()[col] for col in columns) for c in checks]
    failed = [c for c in checks if c.passed is False]
    payload = {
        "schema": sp.SCHEMA,
        "passed": not failed,
        "checks": [c.as_dict() for c in checks],
    }
    _emit(args, columns, rows, payload=payload)
    return 1 if failed else 0


TRANSFORMS = ("hilbert", "fracint", "poisson", "convolve", "translate")


def cmd_transform(args):
    cfg = _config(args)
    f = _function(args.f, cfg.k)
    exp = cfg.analyze(f)
    op = args.operator
    xs = _grid(args.x)
    if op == "hilbert":
        out = sp.hilbert_spectral(exp)
    elif op == "fracint":
        if not args.alpha > 0:
            raise UsageError("--alpha must be positive")
        out = sp.fractional_spectral(exp, args.alpha)
    elif op == "poisson":
        if not 0 <= args.r < 1:
            raise UsageError("--r must lie in [0, 1)")
        out = sp.poisson_extend(exp, args.r)
    elif op == "convolve":
        if not args.g:
            raise UsageError("convolve needs --g")
        out = pr.convolve_spectral(exp, cfg.analyze(_function(args.g, cfg.k)))
    else:
        out = None
        vals_out = np.atleast_1d(pr.translate_spectral(exp, parse_scalar(args.at), xs))
    if out is not None:
        vals_out = np.atleast_1d(out(xs))
    vals_in = np.atleast_1d(f(xs))
    rows = [(_f(x), _f(a.real), _f(a.imag), _f(b.real), _f(b.imag))
            for x, a, b in zip(xs, vals_in, vals_out)]
    _emit(args, ["x", "re_in", "im_in", "re_out", "im_out"], rows)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=float, default=None,
                        help=f"multiplicity k >= 0 (default {DEFAULT_K}; verify: each suite's own set)")
    common.add_argument("--n-trunc", type=int, default=sp.DEFAULT_TRUNCATION,
                        help="spectral truncation degree N")
    common.add_argument("--quad-order", type=int, default=256, help="Gauss-Jacobi order m")
    common.add_argument("--tol", type=float, default=1e-10, help="numerical tolerance")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="opdam-a1",
        description="Harmonic analysis for the trigonometric Heckman-Opdam system of type A1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate E_n and P_|n| on a grid")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--x", default="0", help="grid: value, list a,b,c, or start:stop:count")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("expand", parents=[common], help="coefficients of f in the E_n basis")
    p.add_argument("--f", required=True, help='expression such as "cos(2x) + E(-1)"')
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("synth", parents=[common], help="evaluate a JSON expansion on a grid")
    p.add_argument("--coeffs", required=True, help="JSON file written by `expand --format json`")
    p.add_argument("--x", default="-pi:pi:9")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("poisson", parents=[common], help="Poisson kernel: series vs integral form")
    p.add_argument("--r", default="0.3,0.6,0.8")
    p.add_argument("--x", default="-3:3:7")
    p.add_argument("--y", default="0.5")
    p.set_defaults(func=cmd_poisson)

    p = sub.add_parser("translate", parents=[common], help="generalized translation tau_x f(y)")
    p.add_argument("--f", required=True)
    p.add_argument("--at", default="0.7", help="translation point x")
    p.add_argument("--y", default="-3:3:7")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("convolve", parents=[common], help="convolution f * g on a grid")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--x", default="-pi:pi:9")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert transform at points x")
    p.add_argument("--f", default=None, help="function; defaults to bump on --support")
    p.add_argument("--x", default="0.1")
    p.add_argument("--mode", choices=("spectral", "kernel"), default="spectral")
    p.add_argument("--support", default=None, help="support interval a:b for kernel mode")
    p.set_defaults(func=cmd_hilbert, format=None)

    p = sub.add_parser("fracint", parents=[common], help="fractional-integral kernel report")
    p.add_argument("--alpha", type=float, default=1.5)
    p.add_argument("--x", default="0.5:3:6")
    p.set_defaults(func=cmd_fracint)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), default=None,
                   help="suite to run (repeatable; default all)")
    p.set_defaults(func=cmd_verify, format=None)

    p = sub.add_parser("transform", parents=[common], help="apply a spectral operator to f")
    p.add_argument("operator", choices=TRANSFORMS)
    p.add_argument("--f", required=True)
    p.add_argument("--g", default=None, help="second function for convolve")
    p.add_argument("--x", default="-pi:pi:9")
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--at", default="0.7", help="translation point for translate")
    p.set_defaults(func=cmd_transform)
    return parser


_JSON_DEFAULT = {"hilbert", "verify"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command in _JSON_DEFAULT else "csv"
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"opdam-a1 {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"opdam-a1 {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
