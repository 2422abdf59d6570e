"""Command line interface.

Subcommands:
  coeffs    slip-coefficient expansion V_n and the slip velocity at given q
  inverse   gradient expansion W_n and the gradient recovered from a slip value
  wall      gas velocity at the wall for given q
  profile   velocity profile U(x) on a uniform x-grid
  validate  recompute the built-in reference checks

Exit status: 0 on success, 1 on a numerical failure, 2 on bad arguments.
Identical invocations produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .forward import DiffuseLimitSingular, build_series_fwd, default_density_quad, slip_velocity
from .inverse import build_series_inv, gradient
from .kernels import KernelSuite
from .profile import full_profile, wall_velocity
from .quadrature import QuadratureError, QuadratureSpec
from .spectral import GridTooCoarse, ProblemConfig
from .validation import report_json, report_lines, run_reference_checks

__all__ = ["main"]


def _add_common(p: argparse.ArgumentParser, drive: bool = False) -> None:
    p.add_argument("--q", type=float, default=1.0, help="accommodation coefficient in [0, 1]")
    p.add_argument("--order", type=int, default=3, help="series truncation order N")
    p.add_argument("--nodes", type=int, default=None, help="quadrature nodes per panel")
    p.add_argument("--tol", type=float, default=None, help="quadrature relative tolerance")
    p.add_argument(
        "--format", choices=("table", "csv", "json"), default=None,
        help="output format (default: table on a terminal, csv otherwise)",
    )
    p.add_argument("--json", action="store_true", help="shorthand for --format json")
    p.add_argument("--out", default=None, help="write output to this file instead of stdout")
    if drive:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--gradient", type=float, default=None, help="imposed velocity gradient")
        g.add_argument("--slip", type=float, default=None, help="imposed slip velocity")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kramers", description="Slip-flow solver for the half-space shear problem"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="slip-coefficient expansion")
    _add_common(p, drive=True)

    p = sub.add_parser("inverse", help="gradient expansion from an imposed slip")
    _add_common(p, drive=True)

    p = sub.add_parser("wall", help="wall velocity")
    _add_common(p, drive=True)

    p = sub.add_parser("profile", help="velocity profile")
    _add_common(p, drive=True)
    p.add_argument("--xmax", type=float, default=10.0, help="largest x value")
    p.add_argument("--xstep", type=float, default=0.5, help="x-grid spacing")

    p = sub.add_parser("validate", help="run the reference checks")
    _add_common(p)
    return parser


def _resolve_format(args) -> str:
    if args.json:
        return "json"
    if args.format is not None:
        return args.format
    return "table" if sys.stdout.isatty() else "csv"


def _quad_override(args) -> QuadratureSpec | None:
    if args.nodes is None and args.tol is None:
        return None
    base = default_density_quad()
    kw = {}
    if args.nodes is not None:
        kw["node_count"] = args.nodes
    if args.tol is not None:
        kw["rel_tol"] = args.tol
    return replace(base, **kw)


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_out(rows, header, fmt, args) -> None:
    """rows: list of (name, value) pairs."""
    if fmt == "json":
        _emit(json.dumps({name: value for name, value in rows}, indent=2) + "\n", args)
    elif fmt == "csv":
        lines = [",".join(header)]
        lines += [f"{name},{value:.12g}" for name, value in rows]
        _emit("\n".join(lines) + "\n", args)
    else:
        width = max(len(name) for name, _ in rows)
        lines = [f"{name:<{width}s}  {value: .12g}" for name, value in rows]
        _emit("\n".join(lines) + "\n", args)


def _config(args) -> ProblemConfig:
    g_v = args.gradient
    slip = args.slip
    if g_v is None and slip is None:
        g_v = 1.0
    return ProblemConfig(q=args.q, gradient=g_v, slip=slip, order=args.order,
                         quad=_quad_override(args))


def _run(args) -> int:
    fmt = _resolve_format(args)
    if args.command == "validate":
        results = run_reference_checks()
        if fmt == "json":
            _emit(report_json(results) + "\n", args)
        else:
            _emit("\n".join(report_lines(results)) + "\n", args)
        return 0 if all(r.passed for r in results) else 1

    config = _config(args)
    kern = KernelSuite()
    grid = config.make_grid()

    if args.command == "inverse":
        if config.slip is None:
            raise SystemExit2("inverse needs --slip (the imposed slip velocity)")
        series, _ = build_series_inv(config.order, kern, grid, config.quad)
        rows = [(f"W_{n}", c) for n, c in enumerate(series.coefficients)]
        rows.append(("gradient", gradient(series, config.q, config.slip)))
        _rows_out(rows, ("quantity", "value"), fmt, args)
        return 0

    if config.gradient is None:
        raise SystemExit2(f"{args.command} needs --gradient (or no drive flag for the default 1)")
    series, densities = build_series_fwd(config.order, kern, grid, config.quad)

    if args.command == "coeffs":
        rows = [(f"V_{n}", c) for n, c in enumerate(series.coefficients)]
        rows.append(("slip_velocity", slip_velocity(series, config.q, config.gradient)))
        _rows_out(rows, ("quantity", "value"), fmt, args)
    elif args.command == "wall":
        u0 = wall_velocity(config, kern, series, densities)
        _rows_out([("wall_velocity", u0)], ("quantity", "value"), fmt, args)
    elif args.command == "profile":
        if args.xstep <= 0 or args.xmax < 0:
            raise SystemExit2("--xmax must be >= 0 and --xstep > 0")
        count = int(round(args.xmax / args.xstep)) + 1
        x_nodes = np.linspace(0.0, args.xstep * (count - 1), count)
        prof = full_profile(config, x_nodes, kern, series, densities)
        if fmt == "json":
            _emit(prof.to_json() + "\n", args)
        elif fmt == "csv":
            _emit(prof.to_csv(), args)
        else:
            header = f"{'x':>10s} {'U_total':>16s} {'U_asymptote':>16s} {'U_correction':>16s}"
            lines = [header] + [
                f"{x:10.4f} {t:16.9g} {a:16.9g} {c:16.9g}"
                for x, t, a, c in zip(prof.x_nodes, prof.total, prof.asymptote, prof.correction)
            ]
            _emit("\n".join(lines) + "\n", args)
    return 0


class SystemExit2(Exception):
    """Invalid arguments detected after parsing."""


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DiffuseLimitSingular, GridTooCoarse, QuadratureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
