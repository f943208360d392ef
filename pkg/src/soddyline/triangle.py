"""Triangles, their vertex circles, incircle contact points, and Gergonne point.

Every triangle carries three mutually tangent vertex circles: the circle at A
has radius s - a (s the semiperimeter), and cyclically, which is exactly what
makes each pair tangent on the side joining their vertices, at the incircle
contact point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_RTOL,
    DegenerateTriangle,
    GeometryError,
    Line,
    as_point,
    config_scale,
    cross2,
    nearest_point_to_lines,
)
from .tangency import Sphere, tangency_point

_DEGENERACY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Triangle:
    """Triangle with vertices A, B, C; side a = |BC|, b = |CA|, c = |AB|."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, as_point(getattr(self, name), 2))
        longest = max(self.a, self.b, self.c)
        if longest == 0.0 or abs(2.0 * self.signed_area) / longest**2 <= _DEGENERACY_TOL:
            raise DegenerateTriangle("triangle has near-zero normalized area")

    @classmethod
    def from_sides(cls, a: float, b: float, c: float) -> "Triangle":
        """Canonical placement: C at the origin, B on the positive x axis,
        A in the upper half plane."""
        a, b, c = float(a), float(b), float(c)
        if min(a, b, c) <= 0.0 or not all(math.isfinite(v) for v in (a, b, c)):
            raise DegenerateTriangle("side lengths must be finite and positive")
        ax = (a * a + b * b - c * c) / (2.0 * a)
        aysq = b * b - ax * ax
        if aysq <= 0.0:
            raise DegenerateTriangle("side lengths violate the triangle inequality")
        return cls(np.array([ax, math.sqrt(aysq)]), np.array([a, 0.0]), np.array([0.0, 0.0]))

    @property
    def a(self) -> float:
        return float(np.linalg.norm(self.B - self.C))

    @property
    def b(self) -> float:
        return float(np.linalg.norm(self.C - self.A))

    @property
    def c(self) -> float:
        return float(np.linalg.norm(self.A - self.B))

    @property
    def signed_area(self) -> float:
        return 0.5 * cross2(self.B - self.A, self.C - self.A)

    @property
    def area(self) -> float:
        return abs(self.signed_area)

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.A, self.B, self.C])

    @property
    def scale(self) -> float:
        return config_scale(self.A, self.B, self.C)

    @property
    def inradius(self) -> float:
        return 2.0 * self.area / (self.a + self.b + self.c)


def vertex_circles(t: Triangle) -> tuple[Sphere, Sphere, Sphere]:
    """Mutually tangent circles centered at the vertices.

    Radii are (-a+b+c)/2, (a-b+c)/2, (a+b-c)/2, so each pair is externally
    tangent on the connecting side.
    """
    a, b, c = t.a, t.b, t.c
    ra = (-a + b + c) / 2.0
    rb = (a - b + c) / 2.0
    rc = (a + b - c) / 2.0
    if min(ra, rb, rc) <= _DEGENERACY_TOL * max(a, b, c):
        raise DegenerateTriangle("vertex circle radii collapse for this triangle")
    return (Sphere(t.A, ra), Sphere(t.B, rb), Sphere(t.C, rc))


def incenter(t: Triangle) -> np.ndarray:
    """Incenter (a*A + b*B + c*C) / (a + b + c)."""
    a, b, c = t.a, t.b, t.c
    return (a * t.A + b * t.B + c * t.C) / (a + b + c)


def contact_points(t: Triangle, rtol: float = DEFAULT_RTOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Incircle contact points (t_BC, t_AC, t_AB) as vertex-circle tangencies."""
    oa, ob, oc = vertex_circles(t)
    return (
        tangency_point(ob, oc, rtol),
        tangency_point(oa, oc, rtol),
        tangency_point(oa, ob, rtol),
    )


def gergonne_point(t: Triangle, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Gergonne point as the reciprocal-radius weighted vertex average.

    Cross-checked against the concurrency of the contact cevians
    A t_BC, B t_AC, C t_AB; the two constructions must agree.
    """
    oa, ob, oc = vertex_circles(t)
    wa, wb, wc = 1.0 / oa.radius, 1.0 / ob.radius, 1.0 / oc.radius
    ge = (wa * t.A + wb * t.B + wc * t.C) / (wa + wb + wc)
    tbc, tac, tab = contact_points(t, rtol)
    cevians = (
        Line.through(t.A, tbc),
        Line.through(t.B, tac),
        Line.through(t.C, tab),
    )
    p, _ = nearest_point_to_lines(cevians, rtol)
    if float(np.linalg.norm(p - ge)) > max(rtol, 1e-10) * t.scale:
        raise GeometryError(
            "Gergonne constructions disagree beyond tolerance; triangle data "
            "is inconsistent"
        )
    return ge
