"""Centers on the Soddy line: M, M', S, S', the Gergonne point, the incenter.

M is the concurrency point of the three lines through opposite tangency
points of (vertex circles + inner Soddy circle); M' plays the same role for
the outer solution.  Both coincide with the bend-weighted center average of
their quadruple, lie on the Soddy line through the incenter I and the
Gergonne point Ge, and form harmonic ranges (M, M'; Ge, I) and
(S, S'; Ge, I) with cross-ratio -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_RTOL,
    GeometryError,
    Line,
    config_scale,
    cross_ratio,
    nearest_point_to_lines,
)
from .tangency import (
    Sphere,
    TangentQuadruple,
    signed_bend,
    verify_coincidence,
)
from .triangle import Triangle, contact_points, gergonne_point, incenter, vertex_circles
from .soddy import (
    OuterClass,
    SoddyPair,
    soddy_circles,
    soddy_tangencies,
    to_sphere,
)

_NEAR_EQUILATERAL_FACTOR = 1e-6


@dataclass(frozen=True, eq=False)
class _Configuration:
    """Shared construction data for one triangle."""

    triangle: Triangle
    circles: tuple[Sphere, Sphere, Sphere]
    contacts: tuple[np.ndarray, np.ndarray, np.ndarray]
    pair: SoddyPair
    tangencies: tuple

    @classmethod
    def build(cls, t: Triangle, rtol: float) -> "_Configuration":
        circles = vertex_circles(t)
        contacts = contact_points(t, rtol)
        pair = soddy_circles(*circles, rtol=rtol)
        tang = soddy_tangencies(pair, *circles, rtol=rtol)
        return cls(t, circles, contacts, pair, tang)


def _coincidence_from_quadruple(circles, fourth: Sphere, rtol: float):
    quad = TangentQuadruple((*circles, fourth), rtol=rtol)
    return verify_coincidence(quad, rtol)


def _line_case_concurrency(conf: _Configuration, rtol: float):
    """Concurrency point when the outer solution is a straight line.

    The outer 'tangency points' are the perpendicular feet of the vertex
    circle centers on the line; the three lines to the opposite contact
    points still concur.  The point is the flat limit of the bend-weighted
    center average: as the outer circle flattens, its bend goes to zero but
    bend*center tends to the line's unit normal n (pointing away from the
    circles), so the average becomes (sum R_i x_i + n) / (sum R_i).
    """
    tbc, tac, tab = conf.contacts
    fa, fb, fc = conf.tangencies[3:]
    lines = (
        Line.through(fa, tbc, rtol),
        Line.through(fb, tac, rtol),
        Line.through(fc, tab, rtol),
    )
    p, worst = nearest_point_to_lines(lines, rtol)
    scale = config_scale(fa, fb, fc, tbc, tac, tab)
    return p, worst / scale


def _line_case_weighted_limit(conf: _Configuration) -> np.ndarray:
    bends = [signed_bend(s) for s in conf.circles]
    total = sum(bends)
    acc = conf.pair.outer.normal.copy()
    for s, b in zip(conf.circles, bends):
        acc += b * s.center
    return acc / total


def center_M(t: Triangle, rtol: float = DEFAULT_RTOL) -> tuple[np.ndarray, float]:
    """Concurrency center for the inner Soddy quadruple, with residual."""
    conf = _Configuration.build(t, rtol)
    return _coincidence_from_quadruple(conf.circles, conf.pair.inner, rtol)


def center_M_prime(t: Triangle, rtol: float = DEFAULT_RTOL) -> tuple[np.ndarray, float]:
    """Concurrency center for the outer Soddy quadruple, with residual.

    Works for all three outer classes.  In the tangent-line case the point is
    the flat limit of the weighted center average, used as the cross-check.
    """
    conf = _Configuration.build(t, rtol)
    if conf.pair.outer_class is OuterClass.TANGENT_LINE:
        p, residual = _line_case_concurrency(conf, rtol)
        limit = _line_case_weighted_limit(conf)
        if float(np.linalg.norm(p - limit)) > max(rtol, 1e-9) * t.scale:
            raise GeometryError(
                "tangent-line concurrency disagrees with its weighted limit"
            )
        return p, residual
    outer_sphere = to_sphere(conf.pair.outer)
    return _coincidence_from_quadruple(conf.circles, outer_sphere, rtol)


def soddy_centers(t: Triangle, rtol: float = DEFAULT_RTOL):
    """(S, S'): inner Soddy center and outer center or line marker.

    S is cross-checked as the concurrency of the vertex-to-tangency cevians.
    For a tangent-line outer the GeneralizedCircle line is returned for S'.
    """
    conf = _Configuration.build(t, rtol)
    s_point = conf.pair.inner.center
    _check_cevians(conf, s_point, conf.tangencies[:3], rtol)
    if conf.pair.outer_class is OuterClass.TANGENT_LINE:
        return s_point, conf.pair.outer
    return s_point, conf.pair.outer.center


def _check_cevians(conf: _Configuration, point: np.ndarray, tangencies, rtol: float):
    """Require `point` to sit on all three vertex-to-tangency lines."""
    t = conf.triangle
    for vertex, tang in zip((t.A, t.B, t.C), tangencies):
        line = Line.through(vertex, tang, rtol)
        span = float(np.linalg.norm(point - vertex)) + t.scale
        if line.distance_to(point) > max(rtol, 1e-9) * span:
            raise GeometryError("cevian concurrency check failed")


def _cevian_residual(conf: _Configuration, point: np.ndarray, tangencies) -> float:
    t = conf.triangle
    worst = 0.0
    for vertex, tang in zip((t.A, t.B, t.C), tangencies):
        line = Line.through(vertex, tang)
        span = float(np.linalg.norm(point - vertex)) + t.scale
        worst = max(worst, line.distance_to(point) / span)
    return worst


def _witness_from_configuration(conf: _Configuration, idx: int, rtol: float):
    t = conf.triangle
    circle = conf.circles[idx]
    t_vs = conf.tangencies[idx]
    contact = conf.contacts[idx]
    others = [p for i, p in enumerate((t.A, t.B, t.C)) if i != idx]
    side_dir = others[1] - others[0]
    side_dir = side_dir / float(np.linalg.norm(side_dir))
    n = np.array([-side_dir[1], side_dir[0]])
    if float(n @ (circle.center - others[0])) < 0.0:
        n = -n
    p = circle.center + circle.radius * n
    perpendicular = Line(circle.center, n)
    chord = Line.through(t_vs, contact, rtol)
    d_perp = perpendicular.distance_to(p)
    d_chord = chord.distance_to(p)
    d_circle = abs(float(np.linalg.norm(p - circle.center)) - circle.radius)
    return p, (d_perp, d_chord, d_circle)


def altitude_coincidence_witness(
    t: Triangle, vertex: str, rtol: float = DEFAULT_RTOL
) -> tuple[np.ndarray, tuple[float, float, float]]:
    """Witness point where perpendicular, tangency chord, and circle meet.

    For the chosen vertex V: the perpendicular to the opposite side through V,
    the line joining the inner-Soddy tangency t_VS to the opposite contact
    point, and the vertex circle around V all pass through one point p, taken
    on the far side of V from the opposite side.  Returns p and the three
    absolute distances (to the perpendicular, to the chord, and from the
    circle), each of which should vanish to tolerance.
    """
    if vertex not in ("A", "B", "C"):
        raise GeometryError("vertex must be 'A', 'B' or 'C'")
    conf = _Configuration.build(t, rtol)
    return _witness_from_configuration(conf, "ABC".index(vertex), rtol)


def trilinear_coords(t: Triangle, p) -> np.ndarray:
    """Signed distances from p to sides BC, CA, AB, positive on the vertex side.

    These are exact trilinears: a*alpha + b*beta + c*gamma = 2*area holds
    identically.
    """
    p = np.asarray(p, dtype=float)
    out = np.empty(3)
    sides = ((t.B, t.C, t.A), (t.C, t.A, t.B), (t.A, t.B, t.C))
    for i, (q1, q2, opp) in enumerate(sides):
        d = q2 - q1
        d = d / float(np.linalg.norm(d))
        n = np.array([-d[1], d[0]])
        if float(n @ (opp - q1)) < 0.0:
            n = -n
        out[i] = float(n @ (p - q1))
    return out


def normalized_trilinears(tri: np.ndarray) -> np.ndarray:
    """Scale a trilinear triple so its first nonzero component is 1."""
    for v in tri:
        if abs(v) > 1e-300:
            return tri / v
    return tri


@dataclass(frozen=True, eq=False)
class CenterReport:
    """Everything soddy_line_report computes for one triangle."""

    triangle: Triangle
    circles: tuple[Sphere, Sphere, Sphere]
    pair: SoddyPair
    tangencies: tuple
    contacts: tuple
    M: np.ndarray
    M_prime: np.ndarray
    S: np.ndarray
    S_prime: np.ndarray | None
    Ge: np.ndarray
    I: np.ndarray
    outer_class: OuterClass
    concurrency_residuals: dict = field(default_factory=dict)
    soddy_line_direction: np.ndarray | None = None
    collinearity_residual: float = 0.0
    decomposition_residual: float = 0.0
    cross_ratio_MMp: float | None = None
    cross_ratio_SSp: float | None = None
    cross_ratio_status: str = "ok"
    trilinears: dict = field(default_factory=dict)


def soddy_line_report(t: Triangle, rtol: float = DEFAULT_RTOL) -> CenterReport:
    """Compute all six centers and verify the relations among them.

    Reports concurrency residuals, collinearity along the Soddy line, both
    cross-ratios (harmonic, -1), and the decomposition of M as a weighted
    average of Ge and S.  Near-equilateral triangles (|Ge - I| below 1e-6 of
    scale) and tangent-line outers get a degenerate-marker status instead of
    cross-ratios.
    """
    conf = _Configuration.build(t, rtol)
    scale = t.scale
    ge = gergonne_point(t, rtol)
    inc = incenter(t)
    m, res_m = _coincidence_from_quadruple(conf.circles, conf.pair.inner, rtol)
    s_point = conf.pair.inner.center
    res_s = _cevian_residual(conf, s_point, conf.tangencies[:3])
    _check_cevians(conf, s_point, conf.tangencies[:3], rtol)

    tangent_line = conf.pair.outer_class is OuterClass.TANGENT_LINE
    if tangent_line:
        m_prime, res_mp = _line_case_concurrency(conf, rtol)
        limit = _line_case_weighted_limit(conf)
        if float(np.linalg.norm(m_prime - limit)) > max(rtol, 1e-9) * scale:
            raise GeometryError(
                "tangent-line concurrency disagrees with its weighted limit"
            )
        s_prime = None
        res_sp = None
    else:
        outer_sphere = to_sphere(conf.pair.outer)
        m_prime, res_mp = _coincidence_from_quadruple(conf.circles, outer_sphere, rtol)
        s_prime = conf.pair.outer.center
        res_sp = _cevian_residual(conf, s_prime, conf.tangencies[3:])

    near_equilateral = float(np.linalg.norm(ge - inc)) < _NEAR_EQUILATERAL_FACTOR * scale
    on_line = [m, m_prime, s_point] + ([] if s_prime is None else [s_prime])
    if near_equilateral:
        direction = None
        collinearity = max(float(np.linalg.norm(p - inc)) for p in on_line) / scale
    else:
        axis = Line.through(inc, ge)
        direction = axis.direction.copy()
        if direction[0] < 0.0 or (direction[0] == 0.0 and direction[1] < 0.0):
            direction = -direction
        collinearity = max(axis.distance_to(p) for p in on_line) / scale

    if near_equilateral:
        status = "condition_limited"
        cr_mmp = cr_ssp = None
    elif tangent_line:
        # S' sits at infinity, so its cross-ratio degenerates; the limit
        # statement is that S is the midpoint of Ge and I, which we check.
        # The (M, M'; Ge, I) ratio stays well defined.
        status = "tangent_line"
        cr_mmp = cross_ratio(m, m_prime, ge, inc, rtol)
        cr_ssp = None
        midpoint_gap = float(np.linalg.norm(s_point - 0.5 * (ge + inc)))
        if abs(cr_mmp + 1.0) > 1e-6 or midpoint_gap > 1e-6 * scale:
            raise GeometryError("harmonic range check failed beyond tolerance")
    else:
        status = "ok"
        cr_mmp = cross_ratio(m, m_prime, ge, inc, rtol)
        cr_ssp = cross_ratio(s_point, s_prime, ge, inc, rtol)
        if abs(cr_mmp + 1.0) > 1e-6 or abs(cr_ssp + 1.0) > 1e-6:
            raise GeometryError("harmonic range check failed beyond tolerance")

    bends = [signed_bend(s) for s in conf.circles]
    bend_sum = sum(bends)
    inner_bend = signed_bend(conf.pair.inner)
    recomposed = (bend_sum * ge + inner_bend * s_point) / (bend_sum + inner_bend)
    decomposition = float(np.linalg.norm(m - recomposed)) / scale
    if decomposition > 1e-8:
        raise GeometryError("weighted decomposition of M failed beyond tolerance")

    if collinearity > 1e-7:
        raise GeometryError("Soddy line collinearity failed beyond tolerance")

    residuals = {"M": res_m, "M_prime": res_mp, "S_cevians": res_s}
    if res_sp is not None:
        residuals["S_prime_cevians"] = res_sp

    points = {"M": m, "M_prime": m_prime, "S": s_point, "Ge": ge, "I": inc}
    if s_prime is not None:
        points["S_prime"] = s_prime
    trilinears = {
        name: normalized_trilinears(trilinear_coords(t, p)) for name, p in points.items()
    }
    if s_prime is None:
        trilinears["S_prime"] = None

    return CenterReport(
        triangle=t,
        circles=conf.circles,
        pair=conf.pair,
        tangencies=conf.tangencies,
        contacts=conf.contacts,
        M=m,
        M_prime=m_prime,
        S=s_point,
        S_prime=s_prime,
        Ge=ge,
        I=inc,
        outer_class=conf.pair.outer_class,
        concurrency_residuals=residuals,
        soddy_line_direction=direction,
        collinearity_residual=collinearity,
        decomposition_residual=decomposition,
        cross_ratio_MMp=cr_mmp,
        cross_ratio_SSp=cr_ssp,
        cross_ratio_status=status,
        trilinears=trilinears,
    )
