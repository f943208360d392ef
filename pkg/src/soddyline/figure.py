"""Static SVG rendering of a CenterReport.

The drawing shows the triangle, the three pairwise tangent vertex circles,
the inner Soddy circle, the outer solution (circle or straight line), the
three concurrent chords meeting at M, and markers for M and M'.  The y axis
is flipped so the figure matches mathematical orientation, every stroke role
has its own style class, and output is a deterministic function of the
report, so regenerated files diff cleanly.
"""

from __future__ import annotations

import numpy as np

from .centers import CenterReport
from .core import Line
from .soddy import OuterClass

_PAD = 0.08
_HUGE_OUTER_FACTOR = 4.0


def _g(v: float) -> str:
    s = format(float(v), ".9g")
    return "0" if s == "-0" else s


class _Canvas:
    """Collects SVG elements in world coordinates, flipping y on emit."""

    def __init__(self):
        self.parts: list[str] = []

    def circle(self, center, radius: float, cls: str) -> None:
        self.parts.append(
            f'<circle class="{cls}" cx="{_g(center[0])}" cy="{_g(-center[1])}" '
            f'r="{_g(radius)}"/>'
        )

    def segment(self, p, q, cls: str) -> None:
        self.parts.append(
            f'<line class="{cls}" x1="{_g(p[0])}" y1="{_g(-p[1])}" '
            f'x2="{_g(q[0])}" y2="{_g(-q[1])}"/>'
        )

    def polygon(self, points, cls: str) -> None:
        coords = " ".join(f"{_g(p[0])},{_g(-p[1])}" for p in points)
        self.parts.append(f'<polygon class="{cls}" points="{coords}"/>')

    def text(self, p, label: str, size: float) -> None:
        self.parts.append(
            f'<text class="center-label" x="{_g(p[0])}" y="{_g(-p[1])}" '
            f'font-size="{_g(size)}">{label}</text>'
        )


def _line_segment(line: Line, half_length: float) -> tuple[np.ndarray, np.ndarray]:
    return line.point_at(-half_length), line.point_at(half_length)


def _bounds(rep: CenterReport) -> tuple[np.ndarray, np.ndarray]:
    pts = [rep.triangle.A, rep.triangle.B, rep.triangle.C, rep.M, rep.M_prime,
           rep.S, rep.Ge, rep.I]
    pts.extend(rep.contacts)
    pts.extend(rep.tangencies)
    lo = np.min(np.stack(pts), axis=0)
    hi = np.max(np.stack(pts), axis=0)
    for s in (*rep.circles, rep.pair.inner):
        lo = np.minimum(lo, s.center - s.radius)
        hi = np.maximum(hi, s.center + s.radius)
    outer = rep.pair.outer
    if not outer.is_line and outer.radius <= _HUGE_OUTER_FACTOR * rep.triangle.scale:
        lo = np.minimum(lo, outer.center - outer.radius)
        hi = np.maximum(hi, outer.center + outer.radius)
    pad = _PAD * float(np.max(hi - lo))
    return lo - pad, hi + pad


_STYLE = """\
.triangle-edge {{ stroke: #444444; stroke-width: {w}; fill: none; }}
.vertex-circle {{ stroke: #1f77b4; stroke-width: {w}; fill: none; }}
.soddy-inner {{ stroke: #d62728; stroke-width: {w}; fill: none; }}
.soddy-outer {{ stroke: #9467bd; stroke-width: {w}; fill: none; }}
.tangent-line {{ stroke: #9467bd; stroke-width: {w}; fill: none; stroke-dasharray: {dash}; }}
.concurrency-line {{ stroke: #2ca02c; stroke-width: {wthin}; fill: none; }}
.center-marker {{ stroke: none; fill: #000000; }}
.center-label {{ fill: #000000; font-family: sans-serif; }}"""


def figure_svg(rep: CenterReport, width: int = 640) -> str:
    lo, hi = _bounds(rep)
    span = float(np.max(hi - lo))
    wx = float(hi[0] - lo[0])
    wy = float(hi[1] - lo[1])
    height = max(1, round(width * wy / wx))

    canvas = _Canvas()
    t = rep.triangle
    canvas.polygon((t.A, t.B, t.C), "triangle-edge")
    for s in rep.circles:
        canvas.circle(s.center, s.radius, "vertex-circle")
    canvas.circle(rep.pair.inner.center, rep.pair.inner.radius, "soddy-inner")
    outer = rep.pair.outer
    if outer.is_line:
        p, q = _line_segment(outer.as_line(), 2.0 * span)
        canvas.segment(p, q, "tangent-line")
    else:
        canvas.circle(outer.center, outer.radius, "soddy-outer")

    tbc, tac, tab = rep.contacts
    for foot, opposite in zip(rep.tangencies[:3], (tbc, tac, tab)):
        chord = Line.through(foot, opposite)
        p, q = _line_segment(chord, 2.0 * span)
        canvas.segment(p, q, "concurrency-line")

    marker = span / 120.0
    shift = np.array([1.2 * marker, 1.2 * marker])
    canvas.circle(rep.M, marker, "center-marker")
    canvas.text(rep.M + shift, "M", 5.0 * marker)
    canvas.circle(rep.M_prime, marker, "center-marker")
    canvas.text(rep.M_prime + shift, "M&#8242;", 5.0 * marker)

    style = _STYLE.format(
        w=_g(span / 300.0), wthin=_g(span / 450.0), dash=_g(span / 60.0)
    )
    view = f"{_g(lo[0])} {_g(-hi[1])} {_g(wx)} {_g(wy)}"
    body = "\n".join(canvas.parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="{view}">\n<style>\n{style}\n</style>\n'
        f"{body}\n</svg>\n"
    )
