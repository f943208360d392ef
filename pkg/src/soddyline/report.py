"""Serialization of a CenterReport to JSON and CSV.

Floats are written with 17 significant digits so emitted values round-trip
to the exact double; the writers below are deterministic (stable key order,
no locale, no timestamps), which makes repeated runs byte-identical.
"""

from __future__ import annotations

import json

import numpy as np

from .centers import CenterReport
from .soddy import OuterClass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _jsonify(obj) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_jsonify(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_jsonify(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _point(p) -> list:
    return [float(v) for v in p]


def _circle(center, radius) -> dict:
    return {"center": _point(center), "radius": float(radius)}


def report_dict(rep: CenterReport) -> dict:
    """Plain-data view of a CenterReport, ready for JSON or CSV emission."""
    t = rep.triangle
    oa, ob, oc = rep.circles
    if rep.outer_class is OuterClass.TANGENT_LINE:
        outer = {
            "line": {
                "normal": _point(rep.pair.outer.normal),
                "offset": float(rep.pair.outer.offset),
            }
        }
        s_prime = outer
    else:
        outer = _circle(rep.pair.outer.center, rep.pair.outer.radius)
        s_prime = _point(rep.S_prime)

    residuals = {k: float(v) for k, v in rep.concurrency_residuals.items()}
    residuals["collinearity"] = float(rep.collinearity_residual)
    residuals["decomposition"] = float(rep.decomposition_residual)

    trilinears = {
        name: None if tri is None else _point(tri)
        for name, tri in sorted(rep.trilinears.items())
    }

    return {
        "triangle": {
            "A": _point(t.A),
            "B": _point(t.B),
            "C": _point(t.C),
            "sides": [float(t.a), float(t.b), float(t.c)],
            "scale": float(t.scale),
        },
        "circles": {
            "A": _circle(oa.center, oa.radius),
            "B": _circle(ob.center, ob.radius),
            "C": _circle(oc.center, oc.radius),
        },
        "soddy": {
            "inner": _circle(rep.pair.inner.center, rep.pair.inner.radius),
            "outer": outer,
            "outer_class": rep.outer_class.value,
        },
        "centers": {
            "M": _point(rep.M),
            "M_prime": _point(rep.M_prime),
            "S": _point(rep.S),
            "S_prime": s_prime,
            "Ge": _point(rep.Ge),
            "I": _point(rep.I),
            "soddy_line_direction": None
            if rep.soddy_line_direction is None
            else _point(rep.soddy_line_direction),
        },
        "residuals": residuals,
        "cross_ratios": {
            "MMp": rep.cross_ratio_MMp,
            "SSp": rep.cross_ratio_SSp,
            "status": rep.cross_ratio_status,
        },
        "trilinears": trilinears,
    }


def to_json(rep: CenterReport) -> str:
    return _jsonify(report_dict(rep)) + "\n"


def to_csv(rep: CenterReport) -> str:
    """Flat CSV: one row per quantity (kind, name, then values)."""
    d = report_dict(rep)
    rows = [["kind", "name", "v1", "v2", "v3"]]

    for name in ("A", "B", "C"):
        rows.append(["vertex", name] + [_fmt(v) for v in d["triangle"][name]] + [""])
    rows.append(["scalar", "scale", _fmt(d["triangle"]["scale"]), "", ""])
    for name in ("A", "B", "C"):
        c = d["circles"][name]
        rows.append(
            ["circle", name]
            + [_fmt(v) for v in c["center"]]
            + [_fmt(c["radius"])]
        )
    inner = d["soddy"]["inner"]
    rows.append(
        ["circle", "soddy_inner"]
        + [_fmt(v) for v in inner["center"]]
        + [_fmt(inner["radius"])]
    )
    outer = d["soddy"]["outer"]
    if "line" in outer:
        rows.append(
            ["line", "soddy_outer"]
            + [_fmt(v) for v in outer["line"]["normal"]]
            + [_fmt(outer["line"]["offset"])]
        )
    else:
        rows.append(
            ["circle", "soddy_outer"]
            + [_fmt(v) for v in outer["center"]]
            + [_fmt(outer["radius"])]
        )
    rows.append(["scalar", "outer_class", d["soddy"]["outer_class"], "", ""])
    for name in ("M", "M_prime", "S", "Ge", "I"):
        rows.append(["point", name] + [_fmt(v) for v in d["centers"][name]] + [""])
    sp = d["centers"]["S_prime"]
    if isinstance(sp, dict):
        rows.append(["scalar", "S_prime", "line", "", ""])
    else:
        rows.append(["point", "S_prime"] + [_fmt(v) for v in sp] + [""])
    for name, val in sorted(d["residuals"].items()):
        rows.append(["residual", name, _fmt(val), "", ""])
    for name in ("MMp", "SSp"):
        val = d["cross_ratios"][name]
        rows.append(
            ["cross_ratio", name, "" if val is None else _fmt(val), "", ""]
        )
    rows.append(["scalar", "cross_ratio_status", d["cross_ratios"]["status"], "", ""])
    for name, tri in d["trilinears"].items():
        if tri is None:
            rows.append(["trilinear", name, "", "", ""])
        else:
            rows.append(["trilinear", name] + [_fmt(v) for v in tri])
    return "\n".join(",".join(r) for r in rows) + "\n"
