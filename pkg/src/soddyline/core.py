"""Planar primitives: points, lines, oriented circles, inversion, cross-ratios.

Circles and lines share one representation, curvature-center coordinates:
a circle of signed bend k (negative when the circle is oriented to contain
its tangent partners) is stored as (bend, bend * center); a line is the
bend-zero member with a unit normal and a signed offset from the origin.
Most operations here work on the extended coordinate vector
(A, z, C) = (bend, bend * center, bend * (|center|^2 - radius^2)), scaled so
|z|^2 - A*C = 1.  In those coordinates circle inversion is linear and exactly
involutive, and oriented tangency of two circles is the bilinear condition
Q(v1, v2) = -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_RTOL = 1e-9


class GeometryError(ValueError):
    """Base class for geometric failures in this package."""


class ParallelLines(GeometryError):
    """Two lines that should intersect are parallel within tolerance."""


class NotCollinear(GeometryError):
    """Points that were required to be collinear are not."""


class CoincidentPoints(GeometryError):
    """Distinct points were required but two of them coincide."""


class CenterImage(GeometryError):
    """The center of an inversion has no image point."""


class NotTangent(GeometryError):
    """Two spheres are not tangent in the configuration claimed."""


class DegenerateBendSum(GeometryError):
    """A bend-weighted average has a vanishing weight sum."""


class CoincidentTangencies(GeometryError):
    """An opposite pair of tangency points coincides; the line is undefined."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class Unrealizable(GeometryError):
    """No placement realizes the requested tangent configuration."""


class DegenerateTriangle(GeometryError):
    """Triangle is degenerate (zero or near-zero normalized area)."""


class NotMutuallyTangent(GeometryError):
    """Three circles are not mutually tangent within tolerance."""


class NotExternal(GeometryError):
    """An operation requires externally oriented spheres."""


def as_point(p, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite float vector of length 2 or 3."""
    a = np.asarray(p, dtype=float)
    if a.ndim != 1 or a.shape[0] not in (2, 3):
        raise GeometryError(f"point must have 2 or 3 coordinates, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise GeometryError(f"expected a {dim}D point, got {a.shape[0]}D")
    if not np.all(np.isfinite(a)):
        raise GeometryError("point coordinates must be finite")
    return a


def config_scale(*points) -> float:
    """Diameter of the bounding box of the given points (tolerance scale)."""
    pts = np.vstack([np.atleast_2d(np.asarray(p, dtype=float)) for p in points])
    ext = pts.max(axis=0) - pts.min(axis=0)
    diam = float(np.linalg.norm(ext))
    if diam > 0.0:
        return diam
    m = float(np.max(np.abs(pts))) if pts.size else 0.0
    return max(1.0, m)


def _unit(v: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise GeometryError("cannot normalize a zero vector")
    return v / n


def perp(v: np.ndarray) -> np.ndarray:
    """Counterclockwise perpendicular of a 2D vector."""
    return np.array([-v[1], v[0]])


def cross2(a: np.ndarray, b: np.ndarray) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


@dataclass(frozen=True, eq=False)
class Line:
    """Line through `anchor` with unit `direction` (2D or 3D)."""

    anchor: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        a = as_point(self.anchor)
        d = np.asarray(self.direction, dtype=float)
        if d.shape != a.shape:
            raise GeometryError("line anchor and direction dimensions differ")
        if not np.all(np.isfinite(d)):
            raise GeometryError("line direction must be finite")
        n = float(np.linalg.norm(d))
        if n < 1e-300:
            raise GeometryError("line direction must be nonzero")
        object.__setattr__(self, "anchor", a)
        object.__setattr__(self, "direction", d / n)

    @classmethod
    def through(cls, p, q, rtol: float = DEFAULT_RTOL) -> "Line":
        p = as_point(p)
        q = as_point(q)
        if float(np.linalg.norm(q - p)) <= rtol * config_scale(p, q):
            raise CoincidentPoints("cannot draw a line through coincident points")
        return cls(p, q - p)

    @property
    def dim(self) -> int:
        return self.anchor.shape[0]

    def param_of(self, p) -> float:
        """Signed parameter of the projection of p onto the line."""
        return float((as_point(p, self.dim) - self.anchor) @ self.direction)

    def point_at(self, s: float) -> np.ndarray:
        return self.anchor + s * self.direction

    def distance_to(self, p) -> float:
        v = as_point(p, self.dim) - self.anchor
        w = v - (v @ self.direction) * self.direction
        return float(np.linalg.norm(w))


@dataclass(frozen=True, eq=False)
class GeneralizedCircle:
    """Oriented circle or line in curvature-center coordinates.

    bend != 0: circle with center scaled_center / bend and radius 1 / |bend|;
    a negative bend orients the circle to contain its tangent partners.
    bend == 0: the line {x : scaled_center . x = line_offset} with
    scaled_center a unit normal.
    """

    bend: float
    scaled_center: np.ndarray
    line_offset: float = 0.0

    def __post_init__(self):
        z = np.asarray(self.scaled_center, dtype=float)
        if z.shape != (2,) or not np.all(np.isfinite(z)):
            raise GeometryError("scaled_center must be a finite 2D vector")
        b = float(self.bend)
        if not math.isfinite(b) or not math.isfinite(float(self.line_offset)):
            raise GeometryError("bend and line_offset must be finite")
        if b == 0.0:
            n = float(np.linalg.norm(z))
            if n < 1e-12:
                raise GeometryError("a line needs a nonzero normal")
            z = z / n
            object.__setattr__(self, "line_offset", float(self.line_offset) / n)
        object.__setattr__(self, "bend", b)
        object.__setattr__(self, "scaled_center", z)

    @classmethod
    def from_center_radius(cls, center, radius: float, containing: bool = False) -> "GeneralizedCircle":
        c = as_point(center, 2)
        r = float(radius)
        if not (math.isfinite(r) and r > 0.0):
            raise GeometryError("radius must be finite and positive")
        k = -1.0 / r if containing else 1.0 / r
        return cls(k, k * c)

    @classmethod
    def line(cls, normal, offset: float) -> "GeneralizedCircle":
        return cls(0.0, as_point(normal, 2), float(offset))

    @property
    def is_line(self) -> bool:
        return self.bend == 0.0

    @property
    def center(self) -> np.ndarray:
        if self.is_line:
            raise GeometryError("a line has no center")
        return self.scaled_center / self.bend

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return 1.0 / abs(self.bend)

    @property
    def normal(self) -> np.ndarray:
        if not self.is_line:
            raise GeometryError("not a line")
        return self.scaled_center

    @property
    def offset(self) -> float:
        if not self.is_line:
            raise GeometryError("not a line")
        return self.line_offset

    def as_line(self) -> Line:
        """Anchor-direction form of a bend-zero generalized circle."""
        n = self.normal
        return Line(self.line_offset * n, perp(n))

    def distance_to_point(self, p) -> float:
        """Unsigned distance from p to the circle or line as a point set."""
        p = as_point(p, 2)
        if self.is_line:
            return abs(float(self.scaled_center @ p) - self.line_offset)
        return abs(float(np.linalg.norm(p - self.center)) - self.radius)


@dataclass(frozen=True, eq=False)
class InversionMap:
    """Inversion x -> center + power * (x - center) / |x - center|^2."""

    center: np.ndarray
    power: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center, 2))
        p = float(self.power)
        if not (math.isfinite(p) and p > 0.0):
            raise GeometryError("inversion power must be finite and positive")
        object.__setattr__(self, "power", p)


# -- inversive coordinate vectors -------------------------------------------

def inversive_vector(g: GeneralizedCircle) -> np.ndarray:
    """Extended coordinates (A, zx, zy, C) with |z|^2 - A*C = 1."""
    if g.is_line:
        n = g.scaled_center
        return np.array([0.0, n[0], n[1], 2.0 * g.line_offset])
    a = g.bend
    z = g.scaled_center
    c = (float(z @ z) - 1.0) / a
    return np.array([a, z[0], z[1], c])


def inversive_product(u: np.ndarray, v: np.ndarray) -> float:
    """Bilinear form Q; Q(v, v) = 1 for any circle/line, Q = -1 at tangency."""
    return float(u[1] * v[1] + u[2] * v[2] - 0.5 * (u[0] * v[3] + u[3] * v[0]))


def circle_from_inversive(v: np.ndarray, bend_snap: float = 0.0) -> GeneralizedCircle:
    """Rebuild a GeneralizedCircle from (A, zx, zy, C), renormalizing scale."""
    norm2 = float(v[1] * v[1] + v[2] * v[2] - v[0] * v[3])
    if norm2 <= 0.0:
        raise GeometryError("coordinate vector does not describe a real circle")
    v = v / math.sqrt(norm2)
    a = float(v[0])
    if abs(a) <= bend_snap:
        n = np.array([v[1], v[2]])
        return GeneralizedCircle(0.0, n, float(v[3]) / 2.0)
    return GeneralizedCircle(a, np.array([v[1], v[2]]))


def _translate_inversive(v: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Coordinates of the same circle after translating geometry by t."""
    a = v[0]
    z = v[1:3]
    c = v[3]
    z2 = z + a * t
    c2 = c + 2.0 * float(z @ t) + a * float(t @ t)
    return np.array([a, z2[0], z2[1], c2])


# -- operations ---------------------------------------------------------------

def intersect_lines(l1: Line, l2: Line, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Intersection point of two 2D lines; ParallelLines if none."""
    if l1.dim != 2 or l2.dim != 2:
        raise GeometryError("intersect_lines expects 2D lines")
    denom = cross2(l1.direction, l2.direction)
    if abs(denom) < rtol:
        raise ParallelLines("lines are parallel within tolerance")
    delta = l2.anchor - l1.anchor
    s = cross2(delta, l2.direction) / denom
    p = l1.point_at(s)
    scale = config_scale(l1.anchor, l2.anchor, p)
    if l1.distance_to(p) > 1e-6 * scale or l2.distance_to(p) > 1e-6 * scale:
        raise GeometryError("intersection failed its own consistency check")
    return p


def nearest_point_to_lines(lines, rtol: float = DEFAULT_RTOL) -> tuple[np.ndarray, float]:
    """Least-squares nearest point to n lines and the max distance to them.

    Works in 2D and 3D.  Raises ParallelLines when the normal system is
    singular within tolerance, which happens exactly when every direction is
    parallel to every other; a coincident pair of lines crossed by a third is
    fine and keeps the point well defined.
    """
    lines = list(lines)
    dim = lines[0].dim
    for li in lines:
        if li.dim != dim:
            raise GeometryError("lines of mixed dimension")
    eye = np.eye(dim)
    mat = np.zeros((dim, dim))
    rhs = np.zeros(dim)
    for li in lines:
        proj = eye - np.outer(li.direction, li.direction)
        mat += proj
        rhs += proj @ li.anchor
    vals = np.linalg.eigvalsh(mat)
    if vals[0] <= max(rtol, 1e-12) * vals[-1]:
        raise ParallelLines("all line directions are parallel within tolerance")
    p = np.linalg.solve(mat, rhs)
    worst = max(li.distance_to(p) for li in lines)
    return p, worst


def concurrency_point(l1: Line, l2: Line, l3: Line, rtol: float = DEFAULT_RTOL) -> tuple[np.ndarray, float]:
    """Least-squares concurrency point of three lines.

    The residual is the maximum distance from the point to the lines,
    relative to the bounding box of the three anchors.
    """
    p, worst = nearest_point_to_lines((l1, l2, l3), rtol)
    scale = config_scale(l1.anchor, l2.anchor, l3.anchor)
    return p, worst / scale


def cross_ratio(p1, p2, p3, p4, rtol: float = DEFAULT_RTOL) -> float:
    """Cross-ratio (p1,p2; p3,p4) of four distinct collinear points.

    Computed from signed parameters s_i along the common line as
    (s1-s3)(s2-s4) / ((s1-s4)(s2-s3)).
    """
    pts = [as_point(p) for p in (p1, p2, p3, p4)]
    dim = pts[0].shape[0]
    for p in pts:
        if p.shape[0] != dim:
            raise GeometryError("points of mixed dimension")
    scale = config_scale(*pts)
    gaps = {
        (i, j): float(np.linalg.norm(pts[j] - pts[i]))
        for i in range(4)
        for j in range(i + 1, 4)
    }
    if min(gaps.values()) <= rtol * scale:
        raise CoincidentPoints("cross-ratio needs four distinct points")
    i, j = max(gaps, key=gaps.get)
    axis = _unit(pts[j] - pts[i])
    base = pts[i]
    s = np.array([float((p - base) @ axis) for p in pts])
    for p, si in zip(pts, s):
        off = p - base - si * axis
        if float(np.linalg.norm(off)) > rtol * scale:
            raise NotCollinear("the four points are not collinear within tolerance")
    num = (s[0] - s[2]) * (s[1] - s[3])
    den = (s[0] - s[3]) * (s[1] - s[2])
    if den == 0.0:
        raise CoincidentPoints("cross-ratio denominator vanished")
    return float(num / den)


def invert(m: InversionMap, obj, rtol: float = DEFAULT_RTOL):
    """Image of a point or GeneralizedCircle under the inversion m.

    Point through the center: CenterImage.  A circle through the center maps
    to a line (snapped exactly to bend zero); otherwise kind is preserved.
    The same orientation transport makes invert an exact involution and
    preserves oriented tangency.
    """
    if isinstance(obj, GeneralizedCircle):
        v = inversive_vector(obj)
        v = _translate_inversive(v, -m.center)
        # v[3] = 0 exactly when the translated circle passes through the origin.
        if not obj.is_line:
            gap = obj.distance_to_point(m.center)
            span = config_scale(m.center, obj.center) + obj.radius
            if gap <= rtol * span:
                v[3] = 0.0
        v = np.array([v[3] / m.power, v[1], v[2], v[0] * m.power])
        v = _translate_inversive(v, m.center)
        return circle_from_inversive(v)
    p = as_point(obj, 2)
    d = p - m.center
    r2 = float(d @ d)
    if r2 <= (rtol * math.sqrt(m.power)) ** 2:
        raise CenterImage("the inversion center has no image")
    return m.center + (m.power / r2) * d


def circle_through_three_points(p1, p2, p3, rtol: float = DEFAULT_RTOL) -> GeneralizedCircle:
    """Circle through three points, or the line through them when collinear.

    Circles come back with positive bend (plain, non-containing orientation).
    """
    a, b, c = (as_point(p, 2) for p in (p1, p2, p3))
    scale = config_scale(a, b, c)
    if (
        float(np.linalg.norm(b - a)) <= rtol * scale
        or float(np.linalg.norm(c - a)) <= rtol * scale
        or float(np.linalg.norm(c - b)) <= rtol * scale
    ):
        raise CoincidentPoints("need three distinct points")
    area2 = cross2(b - a, c - a)
    if abs(area2) <= rtol * scale * scale:
        pts = sorted((a, b, c), key=lambda p: float((p - a) @ _unit(b - a)))
        direction = _unit(pts[-1] - pts[0])
        n = perp(direction)
        return GeneralizedCircle.line(n, float(n @ a))
    # Perpendicular-bisector equations 2(b-a).x = |b|^2-|a|^2 etc.
    mat = np.array([2.0 * (b - a), 2.0 * (c - a)])
    rhs = np.array([float(b @ b - a @ a), float(c @ c - a @ a)])
    center = np.linalg.solve(mat, rhs)
    radius = float(
        (np.linalg.norm(a - center) + np.linalg.norm(b - center) + np.linalg.norm(c - center)) / 3.0
    )
    return GeneralizedCircle.from_center_radius(center, radius)
