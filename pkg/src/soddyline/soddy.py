"""Inner and outer Soddy circles of three mutually tangent circles.

The solver works in the extended curvature-center coordinates of core.py:
an oriented circle tangent to all three inputs satisfies three linear
constraints Q(v, v_i) = -1, leaving an affine line of coordinate vectors, and
the normalization Q(v, v) = 1 cuts that line in exactly two points, the inner
and outer Soddy circles.  Orientation falls out of the algebra: a Containing
outer circle arrives with negative bend, the straight-line case with bend
zero, no sign cases needed.  Circle outputs get one Newton polish step on the
three distance equations, which pins down huge near-line outer circles far
better than their raw curvature coordinates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_RTOL,
    GeneralizedCircle,
    GeometryError,
    Line,
    NotExternal,
    NotMutuallyTangent,
    circle_through_three_points,
    config_scale,
    inversive_product,
    inversive_vector,
)
from .tangency import Orientation, Sphere, tangency_point
from .triangle import Triangle, contact_points, vertex_circles

_LINE_SNAP_FACTOR = 1e-9


class OuterClass(enum.Enum):
    EXTERNALLY_TANGENT = "externally_tangent"
    CONTAINING = "containing"
    TANGENT_LINE = "tangent_line"


@dataclass(frozen=True, eq=False)
class SoddyPair:
    """Inner Soddy circle plus the outer solution and its classification."""

    inner: Sphere
    outer: GeneralizedCircle
    outer_class: OuterClass


def to_generalized_circle(s: Sphere) -> GeneralizedCircle:
    if s.dim != 2:
        raise GeometryError("only 2D spheres convert to generalized circles")
    return GeneralizedCircle.from_center_radius(
        s.center, s.radius, containing=s.orientation is Orientation.CONTAINING
    )


def to_sphere(g: GeneralizedCircle) -> Sphere:
    if g.is_line:
        raise GeometryError("a line is not a sphere")
    orientation = Orientation.CONTAINING if g.bend < 0.0 else Orientation.EXTERNAL
    return Sphere(g.center, g.radius, orientation)


def _check_external_tangent(circles, rtol: float):
    for s in circles:
        if s.dim != 2:
            raise GeometryError("soddy_circles expects 2D circles")
        if s.orientation is not Orientation.EXTERNAL:
            raise NotExternal("soddy_circles expects externally oriented circles")
    for i in range(3):
        for j in range(i + 1, 3):
            si, sj = circles[i], circles[j]
            gap = float(np.linalg.norm(si.center - sj.center)) - (si.radius + sj.radius)
            scale = float(np.linalg.norm(si.center - sj.center)) + si.radius + sj.radius
            if abs(gap) > rtol * scale:
                raise NotMutuallyTangent(
                    f"circles {i} and {j} are not externally tangent: gap {gap:.3e}"
                )


def _polish_circle(center: np.ndarray, rho: float, circles) -> tuple[np.ndarray, float]:
    """One Newton step on |x - x_i|^2 = (r_i + rho)^2, rho signed."""
    x = center.copy()
    res = np.empty(3)
    jac = np.empty((3, 3))
    for i, s in enumerate(circles):
        d = x - s.center
        res[i] = float(d @ d) - (s.radius + rho) ** 2
        jac[i, :2] = 2.0 * d
        jac[i, 2] = -2.0 * (s.radius + rho)
    try:
        delta = np.linalg.solve(jac, -res)
    except np.linalg.LinAlgError:
        return x, rho
    return x + delta[:2], rho + float(delta[2])


def soddy_circles(c1: Sphere, c2: Sphere, c3: Sphere, rtol: float = DEFAULT_RTOL) -> SoddyPair:
    """Both circles tangent to three mutually externally tangent circles.

    The inner solution always has the largest bend of the configuration.  The
    outer solution is classified by its bend sign: positive means a circle
    externally tangent to all three, negative a circle containing all three,
    and a bend within 1e-9 of zero (relative to the largest input bend) snaps
    to the common tangent line.
    """
    circles = (c1, c2, c3)
    _check_external_tangent(circles, rtol)
    vs = [inversive_vector(to_generalized_circle(s)) for s in circles]
    rows = np.array([[-v[3] / 2.0, v[1], v[2], -v[0] / 2.0] for v in vs])
    rhs = -np.ones(3)
    part, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    _, _, vt = np.linalg.svd(rows)
    null = vt[-1]
    aq = inversive_product(null, null)
    bq = 2.0 * inversive_product(part, null)
    cq = inversive_product(part, part) - 1.0
    if abs(aq) < 1e-14:
        raise NotMutuallyTangent("input circles share a common point")
    disc = bq * bq - 4.0 * aq * cq
    if disc < 0.0:
        if disc < -1e-9 * (bq * bq + abs(4.0 * aq * cq)):
            raise NotMutuallyTangent("no real tangent circle pair exists")
        disc = 0.0
    sq = math.sqrt(disc)
    qv = -0.5 * (bq + math.copysign(sq, bq))
    if qv == 0.0:
        roots = (0.0, 0.0)
    else:
        roots = (qv / aq, cq / qv)
    va = part + roots[0] * null
    vb = part + roots[1] * null
    if va[0] < vb[0]:
        va, vb = vb, va
    max_bend = max(1.0 / s.radius for s in circles)
    if va[0] <= max_bend * (1.0 - 1e-9):
        raise NotMutuallyTangent("no inner tangent circle found; inconsistent input")
    inner_center, inner_rho = _polish_circle(
        np.array([va[1], va[2]]) / va[0], 1.0 / va[0], circles
    )
    inner = Sphere(inner_center, abs(inner_rho))
    snap = _LINE_SNAP_FACTOR * max_bend
    if abs(vb[0]) < snap:
        norm = math.hypot(vb[1], vb[2])
        n = np.array([vb[1], vb[2]]) / norm
        offset = float(np.mean([float(n @ s.center) + s.radius for s in circles]))
        outer = GeneralizedCircle.line(n, offset)
        outer_class = OuterClass.TANGENT_LINE
    else:
        outer_center = np.array([vb[1], vb[2]]) / vb[0]
        outer_rho = 1.0 / vb[0]
        # The distance-equation polish is well conditioned only while the
        # circle is comparable to the configuration.  For a near-flat outer
        # the tangency residuals barely constrain the center's transverse
        # position (it moves the distances by O(delta * span / rho)), so the
        # polish would overwrite the accurate linear-solve center with noise
        # amplified by (rho / span)^2.  Keep the raw solution there.
        span = 2.0 * max(
            float(np.linalg.norm(s.center - circles[0].center)) + s.radius
            for s in circles
        )
        if abs(outer_rho) <= 100.0 * span:
            outer_center, outer_rho = _polish_circle(outer_center, outer_rho, circles)
        outer = GeneralizedCircle.from_center_radius(
            outer_center, abs(outer_rho), containing=outer_rho < 0.0
        )
        outer_class = (
            OuterClass.CONTAINING if outer_rho < 0.0 else OuterClass.EXTERNALLY_TANGENT
        )
    pair = SoddyPair(inner, outer, outer_class)
    _validate_pair(pair, circles, rtol)
    return pair


def _validate_pair(pair: SoddyPair, circles, rtol: float):
    for s in circles:
        gap_in = float(np.linalg.norm(pair.inner.center - s.center)) - (
            pair.inner.radius + s.radius
        )
        scale = s.radius + pair.inner.radius + float(
            np.linalg.norm(pair.inner.center - s.center)
        )
        if abs(gap_in) > 10.0 * rtol * scale:
            raise GeometryError("inner Soddy circle failed its tangency check")
        if pair.outer_class is OuterClass.TANGENT_LINE:
            gap_out = pair.outer.distance_to_point(s.center) - s.radius
            out_scale = s.radius
        else:
            d = float(np.linalg.norm(pair.outer.center - s.center))
            want = (
                pair.outer.radius - s.radius
                if pair.outer_class is OuterClass.CONTAINING
                else pair.outer.radius + s.radius
            )
            gap_out = d - want
            out_scale = d + s.radius + pair.outer.radius
        if abs(gap_out) > 10.0 * rtol * out_scale:
            raise GeometryError("outer Soddy solution failed its tangency check")


def soddy_tangencies(
    pair: SoddyPair, c1: Sphere, c2: Sphere, c3: Sphere, rtol: float = DEFAULT_RTOL
):
    """Tangency points of the three circles with the inner and outer solutions.

    Returns (t_1S, t_2S, t_3S, t_1S', t_2S', t_3S'); for a tangent-line outer
    the primed points are the perpendicular feet on the line.
    """
    circles = (c1, c2, c3)
    inner_pts = tuple(tangency_point(s, pair.inner, rtol) for s in circles)
    if pair.outer_class is OuterClass.TANGENT_LINE:
        n = pair.outer.normal
        outer_pts = tuple(s.center + s.radius * n for s in circles)
    else:
        outer_sphere = to_sphere(pair.outer)
        outer_pts = tuple(tangency_point(s, outer_sphere, rtol) for s in circles)
    return inner_pts + outer_pts


def construct_inner_soddy_by_inversion(t: Triangle, rtol: float = DEFAULT_RTOL) -> Sphere:
    """Inner Soddy circle built by straightedge steps, no bend algebra.

    Per vertex V: take the perpendicular to the opposite side through V, pick
    the crossing p_V with the vertex circle on the far side from that side,
    draw the line from p_V to the opposite contact point, and take its second
    crossing t_VS with the vertex circle.  The three points t_VS found this
    way are concyclic on the inner Soddy circle.
    """
    oa, ob, oc = vertex_circles(t)
    tbc, tac, tab = contact_points(t, rtol)
    opposite = {
        "A": (oa, (t.B, t.C), tbc),
        "B": (ob, (t.A, t.C), tac),
        "C": (oc, (t.A, t.B), tab),
    }
    second_points = []
    for name in ("A", "B", "C"):
        circle, (p, q), contact = opposite[name]
        v = circle.center
        side_dir = (q - p) / float(np.linalg.norm(q - p))
        n = np.array([-side_dir[1], side_dir[0]])
        if float(n @ (v - p)) < 0.0:
            n = -n
        far = v + circle.radius * n
        chord = Line.through(far, contact, rtol)
        # far lies on the circle, so the second crossing solves a linear foot.
        s = -2.0 * float(chord.direction @ (far - v))
        second_points.append(chord.point_at(s))
    g = circle_through_three_points(*second_points, rtol=rtol)
    if g.is_line:
        raise GeometryError("inversion construction degenerated to a line")
    return Sphere(g.center, g.radius)
