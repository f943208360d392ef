"""Command line interface.

Subcommands: `centers` (JSON or CSV report for one triangle), `figure`
(SVG drawing), `verify` (randomized suites, exit 0 only if every bound
holds), `spheres3d` (check one explicit quadruple read from a file).

Exit codes: 0 success, 1 a verification bound failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .centers import soddy_line_report
from .core import DEFAULT_RTOL, GeometryError
from .figure import figure_svg
from .report import _jsonify, to_csv, to_json
from .tangency import (
    Orientation,
    Sphere,
    TangentQuadruple,
    verify_coincidence,
    weighted_center,
)
from .triangle import Triangle
from .verify import render_report, run_all


class _InputError(Exception):
    """Bad command line input; maps to exit code 2."""


def _fail(message: str) -> None:
    print(f"soddyline: error: {message}", file=sys.stderr)


def _parse_floats(text: str, count: int, what: str) -> list[float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise _InputError(f"{what} needs {count} comma-separated numbers")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise _InputError(f"{what}: {exc}") from None


def _triangle_from_args(args) -> Triangle:
    try:
        if args.vertices is not None:
            v = _parse_floats(args.vertices, 6, "--vertices")
            return Triangle(v[0:2], v[2:4], v[4:6])
        a, b, c = _parse_floats(args.sides, 3, "--sides")
        return Triangle.from_sides(a, b, c)
    except GeometryError as exc:
        raise _InputError(str(exc)) from None


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as handle:
            handle.write(text)


def _cmd_centers(args) -> int:
    if args.format == "svg":
        raise _InputError("centers emits json or csv; use the figure subcommand")
    t = _triangle_from_args(args)
    try:
        rep = soddy_line_report(t, rtol=args.tolerance)
    except GeometryError as exc:
        _fail(str(exc))
        return 1
    _emit(to_csv(rep) if args.format == "csv" else to_json(rep), args.out)
    return 0


def _cmd_figure(args) -> int:
    t = _triangle_from_args(args)
    try:
        rep = soddy_line_report(t, rtol=args.tolerance)
    except GeometryError as exc:
        _fail(str(exc))
        return 1
    _emit(figure_svg(rep), args.out)
    return 0


def _cmd_verify(args) -> int:
    results = run_all(args.seed, args.trials)
    _emit(render_report(results), args.out)
    return 0 if all(r.passed for r in results) else 1


def _parse_sphere_line(line: str, lineno: int) -> Sphere:
    fields = line.split()
    if len(fields) == 5 and fields[4] == "contains":
        orientation = Orientation.CONTAINING
        fields = fields[:4]
    elif len(fields) == 4:
        orientation = Orientation.EXTERNAL
    else:
        raise _InputError(
            f"line {lineno}: expected 'x y z r' or 'x y z r contains'"
        )
    try:
        x, y, z, r = (float(f) for f in fields)
    except ValueError as exc:
        raise _InputError(f"line {lineno}: {exc}") from None
    try:
        return Sphere((x, y, z), r, orientation)
    except GeometryError as exc:
        raise _InputError(f"line {lineno}: {exc}") from None


def _read_spheres(path: str) -> list[Sphere]:
    try:
        with open(path) as handle:
            raw = handle.readlines()
    except OSError as exc:
        raise _InputError(str(exc)) from None
    spheres = []
    for lineno, line in enumerate(raw, start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            spheres.append(_parse_sphere_line(stripped, lineno))
    if len(spheres) != 4:
        raise _InputError(f"expected 4 spheres, found {len(spheres)}")
    return spheres


def _cmd_spheres3d(args) -> int:
    spheres = _read_spheres(args.path)
    tol = args.tolerance
    payload = {
        "spheres": [
            {
                "center": [float(v) for v in s.center],
                "radius": s.radius,
                "orientation": s.orientation.value,
            }
            for s in spheres
        ],
        "tolerance": tol,
    }
    try:
        quad = TangentQuadruple(tuple(spheres), rtol=tol)
        point, residual = verify_coincidence(quad, tol)
        gap = weighted_center(quad, tol) - point
    except GeometryError as exc:
        payload["ok"] = False
        payload["reason"] = str(exc)
        _emit(_jsonify(payload) + "\n", args.out)
        _fail(str(exc))
        return 1
    payload["concurrency_point"] = [float(v) for v in point]
    payload["concurrency_residual"] = residual
    payload["weighted_center_gap"] = float(np.linalg.norm(gap))
    payload["ok"] = residual <= tol
    _emit(_jsonify(payload) + "\n", args.out)
    return 0 if payload["ok"] else 1


def _add_triangle_flags(sub) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--vertices", help="x1,y1,x2,y2,x3,y3")
    group.add_argument("--sides", help="a,b,c (canonical placement)")


def _add_common_flags(sub) -> None:
    sub.add_argument("--tolerance", type=float, default=DEFAULT_RTOL)
    sub.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soddyline",
        description="Tangent circle configurations and their triangle centers.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    centers = subs.add_parser("centers", help="report centers for one triangle")
    _add_triangle_flags(centers)
    _add_common_flags(centers)
    centers.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    centers.set_defaults(func=_cmd_centers)

    figure = subs.add_parser("figure", help="SVG drawing for one triangle")
    _add_triangle_flags(figure)
    _add_common_flags(figure)
    figure.set_defaults(func=_cmd_figure)

    verify = subs.add_parser("verify", help="run the randomized check suites")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--trials", type=int, default=1000)
    verify.add_argument("--out", default=None, help="output path (default stdout)")
    verify.set_defaults(func=_cmd_verify)

    spheres = subs.add_parser(
        "spheres3d", help="verify a quadruple from a file of 'x y z r [contains]'"
    )
    spheres.add_argument("path")
    _add_common_flags(spheres)
    spheres.set_defaults(func=_cmd_spheres3d)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        _fail(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
