"""Mutually tangent spheres in 2D or 3D and their tangency-point geometry.

A sphere carries a signed bend: +1/r for the plain (External) orientation,
-1/r when the sphere is oriented to contain its tangent partners
(Containing).  For a quadruple of mutually tangent spheres the six tangency
points split into three opposite pairs; the three lines through opposite
pairs meet in one point, the bend-weighted average of the centers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_RTOL,
    CoincidentTangencies,
    DegenerateBendSum,
    GeometryError,
    Line,
    NotTangent,
    Unrealizable,
    as_point,
    config_scale,
    nearest_point_to_lines,
)


class Orientation(enum.Enum):
    EXTERNAL = "external"
    CONTAINING = "containing"


@dataclass(frozen=True, eq=False)
class Sphere:
    """Circle (2D) or sphere (3D) with positive radius and an orientation."""

    center: np.ndarray
    radius: float
    orientation: Orientation = Orientation.EXTERNAL

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0.0):
            raise GeometryError("sphere radius must be finite and positive")
        object.__setattr__(self, "radius", r)
        if not isinstance(self.orientation, Orientation):
            raise GeometryError("orientation must be an Orientation value")

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    @property
    def bend(self) -> float:
        return signed_bend(self)


def signed_bend(s: Sphere) -> float:
    """Signed bend: 1/r for External spheres, -1/r for Containing ones."""
    if s.orientation is Orientation.CONTAINING:
        return -1.0 / s.radius
    return 1.0 / s.radius


def _pair_scale(si: Sphere, sj: Sphere) -> float:
    return float(np.linalg.norm(si.center - sj.center)) + si.radius + sj.radius


def _expected_center_gap(si: Sphere, sj: Sphere) -> float:
    """Center distance required for tangency under the claimed orientations."""
    ei = si.orientation is Orientation.EXTERNAL
    ej = sj.orientation is Orientation.EXTERNAL
    if ei and ej:
        return si.radius + sj.radius
    if not ei and not ej:
        raise NotTangent("two Containing spheres cannot be tangent partners")
    big, small = (si, sj) if not ei else (sj, si)
    if big.radius <= small.radius:
        raise NotTangent("a Containing sphere must be larger than its partner")
    return big.radius - small.radius


def tangency_point(si: Sphere, sj: Sphere, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Tangency point (R_i x_i + R_j x_j) / (R_i + R_j) of two tangent spheres."""
    if si.dim != sj.dim:
        raise GeometryError("spheres of mixed dimension")
    scale = _pair_scale(si, sj)
    expected = _expected_center_gap(si, sj)
    actual = float(np.linalg.norm(si.center - sj.center))
    if abs(actual - expected) > rtol * scale:
        raise NotTangent(
            f"center distance {actual:.17g} does not match the tangency "
            f"distance {expected:.17g}"
        )
    ri = signed_bend(si)
    rj = signed_bend(sj)
    if abs(ri + rj) <= rtol * max(abs(ri), abs(rj)):
        raise DegenerateBendSum("bend sum vanishes for this pair")
    return (ri * si.center + rj * sj.center) / (ri + rj)


_OPPOSITE_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True, eq=False)
class TangentQuadruple:
    """Four mutually tangent spheres, at most one of them Containing."""

    spheres: tuple[Sphere, Sphere, Sphere, Sphere]
    rtol: float = field(default=DEFAULT_RTOL, repr=False)

    def __post_init__(self):
        spheres = tuple(self.spheres)
        if len(spheres) != 4:
            raise GeometryError("a tangent quadruple needs exactly four spheres")
        dim = spheres[0].dim
        if any(s.dim != dim for s in spheres):
            raise GeometryError("spheres of mixed dimension")
        containing = [s for s in spheres if s.orientation is Orientation.CONTAINING]
        if len(containing) > 1:
            raise GeometryError("at most one sphere may be Containing")
        for i in range(4):
            for j in range(i + 1, 4):
                si, sj = spheres[i], spheres[j]
                expected = _expected_center_gap(si, sj)
                actual = float(np.linalg.norm(si.center - sj.center))
                if abs(actual - expected) > self.rtol * _pair_scale(si, sj):
                    raise NotTangent(
                        f"spheres {i} and {j} are not tangent: center distance "
                        f"{actual:.17g}, required {expected:.17g}"
                    )
        object.__setattr__(self, "spheres", spheres)

    @property
    def dim(self) -> int:
        return self.spheres[0].dim

    @property
    def pair_partition(self):
        """The three ways to split indices 0..3 into opposite pairs."""
        return _OPPOSITE_PAIRS


def _tangency_table(q, rtol: float = DEFAULT_RTOL):
    """Tangency points for the three opposite-pair partitions of q."""
    s = q.spheres
    table = []
    for (i, j), (k, l) in _OPPOSITE_PAIRS:
        ta = tangency_point(s[i], s[j], rtol)
        tb = tangency_point(s[k], s[l], rtol)
        table.append((ta, tb))
    return table


def quadruple_scale(q) -> float:
    """Diameter of a ball enclosing every sphere of the quadruple."""
    centers = np.array([s.center for s in q.spheres])
    mid = centers.mean(axis=0)
    return 2.0 * max(
        float(np.linalg.norm(s.center - mid)) + s.radius for s in q.spheres
    )


def weighted_center(q, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Bend-weighted average of the four centers."""
    bends = np.array([signed_bend(s) for s in q.spheres])
    total = float(bends.sum())
    if abs(total) <= rtol * float(np.max(np.abs(bends))):
        raise DegenerateBendSum("bend sum of the quadruple vanishes")
    centers = np.array([s.center for s in q.spheres])
    return (bends[:, None] * centers).sum(axis=0) / total


def opposite_tangency_lines(q, rtol: float = DEFAULT_RTOL) -> tuple[Line, Line, Line]:
    """The three lines through opposite pairs of tangency points."""
    scale = quadruple_scale(q)
    lines = []
    for ta, tb in _tangency_table(q, rtol):
        if float(np.linalg.norm(tb - ta)) <= rtol * scale:
            raise CoincidentTangencies(
                "opposite tangency points coincide; the line is undefined",
                point=ta,
            )
        lines.append(Line.through(ta, tb))
    return tuple(lines)


def verify_coincidence(q, rtol: float = DEFAULT_RTOL) -> tuple[np.ndarray, float]:
    """Concurrency point of the opposite-tangency lines and its residual.

    The residual is the largest distance from the least-squares point to the
    three lines, relative to the bounding box of the six tangency points.
    When a pair of opposite tangency points coincides the shared point is
    returned with residual 0.  The point is also checked against the
    bend-weighted center of the quadruple.
    """
    try:
        lines = opposite_tangency_lines(q, rtol)
        table = _tangency_table(q, rtol)
    except CoincidentTangencies as exc:
        return exc.point, 0.0
    p, worst = nearest_point_to_lines(lines, rtol)
    pts = [t for pair in table for t in pair]
    scale = config_scale(*pts)
    residual = worst / scale
    m = weighted_center(q, rtol)
    if float(np.linalg.norm(p - m)) > max(rtol, residual * 10.0) * scale:
        raise GeometryError(
            "concurrency point does not match the bend-weighted center; "
            "the quadruple is not tangent to working precision"
        )
    return p, residual


# -- seeded generators --------------------------------------------------------

def _trilaterate_canonical(radii: np.ndarray) -> tuple[np.ndarray, float]:
    """Centers of four externally tangent spheres in a canonical frame.

    Spheres 1..3 sit in the z=0 plane; the returned zsq is the squared height
    of sphere 4 above it (negative means the distances are inconsistent).
    """
    r1, r2, r3, r4 = radii
    d12, d13, d23 = r1 + r2, r1 + r3, r2 + r3
    d14, d24, d34 = r1 + r4, r2 + r4, r3 + r4
    x = np.zeros((4, 3))
    x[1, 0] = d12
    x3 = (d13 * d13 - d23 * d23 + d12 * d12) / (2.0 * d12)
    y3sq = d13 * d13 - x3 * x3
    if y3sq < -1e-12 * d13 * d13:
        raise Unrealizable("first three radii admit no planar placement")
    y3 = math.sqrt(max(y3sq, 0.0))
    x[2, 0] = x3
    x[2, 1] = y3
    x4 = (d14 * d14 - d24 * d24 + d12 * d12) / (2.0 * d12)
    y4 = (d14 * d14 - d34 * d34 + x3 * x3 + y3 * y3 - 2.0 * x4 * x3) / (2.0 * y3)
    zsq = d14 * d14 - x4 * x4 - y4 * y4
    x[3, 0] = x4
    x[3, 1] = y4
    return x, float(zsq)


def random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Seeded random rotation matrix with determinant +1."""
    if dim == 2:
        theta = rng.uniform(0.0, 2.0 * math.pi)
        c, s = math.cos(theta), math.sin(theta)
        return np.array([[c, -s], [s, c]])
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, -1] = -q[:, -1]
    return q


def generate_tangent_spheres(radii, dimension: int, seed: int) -> TangentQuadruple:
    """Externally tangent quadruple with the given radii, randomly placed.

    Centers come from trilateration of the pairwise distances r_i + r_j, so
    this construction is independent of any concurrency machinery.  In 3D any
    positive radii are realizable and the seed picks one of the two mirror
    placements; in 2D the radii must already satisfy the planar closing
    condition, otherwise Unrealizable is raised.
    """
    r = np.asarray(radii, dtype=float)
    if r.shape != (4,) or not np.all(np.isfinite(r)) or np.any(r <= 0.0):
        raise GeometryError("need four finite positive radii")
    if dimension not in (2, 3):
        raise GeometryError("dimension must be 2 or 3")
    x, zsq = _trilaterate_canonical(r)
    d14sq = (r[0] + r[3]) ** 2
    rng = np.random.default_rng(seed)
    if dimension == 2:
        if abs(zsq) > 1e-9 * d14sq:
            raise Unrealizable(
                "these radii close up only out of plane; no 2D placement exists"
            )
        centers = x[:, :2]
    else:
        if zsq < -1e-9 * d14sq:
            raise Unrealizable("distance constraints are inconsistent")
        x[3, 2] = math.copysign(math.sqrt(max(zsq, 0.0)), rng.choice([-1.0, 1.0]))
        centers = x
    rot = random_rotation(rng, dimension)
    span = float(r.sum())
    shift = rng.uniform(-2.0 * span, 2.0 * span, size=dimension)
    centers = centers @ rot.T + shift
    spheres = tuple(Sphere(c, float(ri)) for c, ri in zip(centers, r))
    return TangentQuadruple(spheres)


def _enclosing_sphere(
    centers2: np.ndarray, radii: np.ndarray, height: float
) -> tuple[np.ndarray, float] | None:
    """Sphere tangent to three coplanar spheres and containing them.

    Solves |x4 - xi| = rho - r_i with the center lifted `height` out of the
    plane.  The pairwise differences are linear in (in-plane center, rho); the
    remaining quadratic picks out the enclosing solution, when one exists.
    """
    x1, x2, x3 = centers2
    r1, r2, r3 = radii
    b = 2.0 * np.array([x2 - x1, x3 - x1])
    det = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
    if abs(det) < 1e-300:
        return None
    inv = np.array([[b[1, 1], -b[0, 1]], [-b[1, 0], b[0, 0]]]) / det
    const = np.array(
        [
            float(x2 @ x2 - x1 @ x1) - r2 * r2 + r1 * r1,
            float(x3 @ x3 - x1 @ x1) - r3 * r3 + r1 * r1,
        ]
    )
    lin = np.array([2.0 * (r2 - r1), 2.0 * (r3 - r1)])
    p0 = inv @ const
    p1 = inv @ lin
    aq = float(p1 @ p1) - 1.0
    bq = 2.0 * float(p1 @ (p0 - x1)) + 2.0 * r1
    cq = float((p0 - x1) @ (p0 - x1)) + height * height - r1 * r1
    disc = bq * bq - 4.0 * aq * cq
    if disc < 0.0:
        return None
    roots = []
    if abs(aq) < 1e-14:
        if bq != 0.0:
            roots.append(-cq / bq)
    else:
        sq = math.sqrt(disc)
        qv = -0.5 * (bq + math.copysign(sq, bq))
        if qv != 0.0:
            roots.extend((qv / aq, cq / qv))
    floor = float(np.max(radii)) + abs(height)
    good = [rho for rho in roots if rho > floor * (1.0 + 1e-12)]
    if not good:
        return None
    rho = min(good)
    center = p0 + rho * p1
    for xi, ri in zip(centers2, radii):
        want = rho - ri
        got = math.hypot(float(np.linalg.norm(center - xi)), height)
        if abs(got - want) > 1e-9 * (rho + ri):
            return None
    return center, rho


def generate_containing_quadruple(
    radii, seed: int, height_fraction: float | None = None
) -> TangentQuadruple:
    """3D quadruple of three external spheres inside one Containing sphere.

    The three given radii are placed mutually tangent in a plane and the
    enclosing sphere is solved from its three internal-tangency distance
    equations, with its center lifted out of the plane by a seeded height.
    Raises Unrealizable when no enclosing sphere exists for these radii.
    """
    r = np.asarray(radii, dtype=float)
    if r.shape != (3,) or not np.all(np.isfinite(r)) or np.any(r <= 0.0):
        raise GeometryError("need three finite positive radii")
    rng = np.random.default_rng(seed)
    quad = np.append(r, 1.0)
    x, _ = _trilaterate_canonical(quad)
    centers2 = x[:3, :2]
    if height_fraction is None:
        height_fraction = float(rng.uniform(0.0, 0.5))
    h = height_fraction * float(r.mean())
    sol = None
    for attempt_h in (h, h / 2.0, 0.0):
        sol = _enclosing_sphere(centers2, r, attempt_h)
        if sol is not None:
            h = attempt_h
            break
    if sol is None:
        raise Unrealizable("no enclosing sphere exists for these radii")
    center2, rho = sol
    centers = np.zeros((4, 3))
    centers[:3, :2] = centers2
    centers[3, :2] = center2
    centers[3, 2] = h
    rot = random_rotation(rng, 3)
    span = float(r.sum() + rho)
    shift = rng.uniform(-2.0 * span, 2.0 * span, size=3)
    centers = centers @ rot.T + shift
    spheres = [Sphere(centers[i], float(r[i])) for i in range(3)]
    spheres.append(Sphere(centers[3], float(rho), Orientation.CONTAINING))
    order = rng.permutation(4)
    return TangentQuadruple(tuple(spheres[i] for i in order))
