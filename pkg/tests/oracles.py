"""Independent reference constructions for the test suite.

Every frozen expected value in the tests is recomputed here by a route that
shares no code with the library: closed-form bend arithmetic over the
complex numbers, direct nonlinear least squares on tangency distance
equations, elementary bisector and cevian intersections, and exact rational
arithmetic for the fixtures whose data stays rational.  A test that pins a
literal also asserts the literal against the matching oracle, so a typo in
either place fails loudly.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
from scipy.optimize import least_squares


def descartes_bends(k1: float, k2: float, k3: float) -> tuple[float, float]:
    """Both bends tangent to three mutually tangent circles (inner, other)."""
    s = k1 + k2 + k3
    root = 2.0 * math.sqrt(k1 * k2 + k2 * k3 + k3 * k1)
    return s + root, s - root


def complex_descartes(centers, radii):
    """Both tangent solutions as (bend, center|unit normal) pairs.

    Bend and bend-scaled center satisfy the same quadratic; the complex
    square root leaves a sign pairing ambiguity, which is settled by picking
    the pairing with the smaller worst tangency-distance error.  A zero bend
    reports the line's unit away normal in place of a center.
    """
    z = [complex(c[0], c[1]) for c in centers]
    k = [1.0 / r for r in radii]
    bend_root = 2.0 * math.sqrt(k[0] * k[1] + k[1] * k[2] + k[2] * k[0])
    kz = [ki * zi for ki, zi in zip(k, z)]
    center_root = 2.0 * cmath.sqrt(
        kz[0] * kz[1] + kz[1] * kz[2] + kz[2] * kz[0]
    )
    bend_sum = k[0] + k[1] + k[2]
    kz_sum = kz[0] + kz[1] + kz[2]

    def tangency_error(bend: float, scaled: complex) -> float:
        if bend == 0.0:
            n = np.array([scaled.real, scaled.imag])
            offs = [float(n @ np.asarray(c)) + r for c, r in zip(centers, radii)]
            return max(offs) - min(offs)
        center = scaled / bend
        worst = 0.0
        for c, r in zip(centers, radii):
            d = abs(center - complex(c[0], c[1]))
            expected = abs(r + 1.0 / bend)
            worst = max(worst, abs(d - expected))
        return worst

    pairings = []
    for sign in (1.0, -1.0):
        sol = []
        for bend_s, scaled_s in ((1.0, sign), (-1.0, -sign)):
            bend = bend_sum + bend_s * bend_root
            scaled = kz_sum + scaled_s * center_root
            sol.append((bend, scaled))
        err = max(tangency_error(b, s) for b, s in sol)
        pairings.append((err, sol))
    _, sol = min(pairings, key=lambda item: item[0])

    out = []
    for bend, scaled in sol:
        if abs(bend) < 1e-13 * bend_sum:
            out.append((0.0, np.array([scaled.real, scaled.imag])))
        else:
            center = scaled / bend
            out.append((bend, np.array([center.real, center.imag])))
    return out


def tangent_center_least_squares(centers, radii, rho: float) -> np.ndarray:
    """Center of the tangent circle of signed radius rho (negative: contains).

    Minimizes the squared tangency-distance defects from several starts and
    keeps the best root; refuses to answer unless the fit is essentially
    exact.
    """
    centers = [np.asarray(c, dtype=float) for c in centers]
    expected = [abs(rho + r) if rho > 0 else abs(abs(rho) - r) for r in radii]

    def residual(x):
        return [np.linalg.norm(x - c) - e for c, e in zip(centers, expected)]

    centroid = sum(centers) / 3.0
    scale = max(np.linalg.norm(c - centroid) for c in centers) + max(radii)
    starts = [centroid] + centers
    starts += [centroid + scale * np.array(d) for d in
               ((1, 0), (-1, 0), (0, 1), (0, -1))]
    best = None
    for x0 in starts:
        fit = least_squares(residual, x0, method="lm")
        cost = float(np.linalg.norm(fit.fun))
        if best is None or cost < best[0]:
            best = (cost, fit.x)
    cost, x = best
    if cost > 1e-9 * scale:
        raise AssertionError(f"least-squares oracle did not converge: {cost}")
    return x


def tangent_line_to_three(centers, radii) -> tuple[np.ndarray, float]:
    """Line n.x = d tangent to three circles with all circles on -n's side.

    From the tangency conditions n.c_i + r_i = d the pairwise differences
    give two linear equations for the unit normal.
    """
    c = [np.asarray(p, dtype=float) for p in centers]
    mat = np.array([c[1] - c[0], c[2] - c[0]])
    rhs = np.array([radii[0] - radii[1], radii[0] - radii[2]])
    n = np.linalg.solve(mat, rhs)
    norm = float(np.linalg.norm(n))
    if abs(norm - 1.0) > 1e-9:
        raise AssertionError(f"no common tangent line: |n| = {norm}")
    n = n / norm
    offsets = [float(n @ ci) + ri for ci, ri in zip(c, radii)]
    if max(offsets) - min(offsets) > 1e-9:
        raise AssertionError("tangent line offsets disagree")
    return n, float(np.mean(offsets))


def bisector_incenter(A, B, C) -> np.ndarray:
    """Incenter as the intersection of two interior angle bisectors."""
    A, B, C = (np.asarray(p, dtype=float) for p in (A, B, C))

    def unit(v):
        return v / np.linalg.norm(v)

    da = unit(B - A) + unit(C - A)
    db = unit(A - B) + unit(C - B)
    mat = np.array([da, -db]).T
    s = np.linalg.solve(mat, B - A)
    p = A + s[0] * da
    dc = unit(A - C) + unit(B - C)
    cross = dc[0] * (p - C)[1] - dc[1] * (p - C)[0]
    if abs(cross) > 1e-9 * np.linalg.norm(p - C):
        raise AssertionError("third bisector misses the intersection")
    return p


def perpendicular_foot(p, a, b) -> np.ndarray:
    """Foot of the perpendicular from p onto the line through a and b."""
    p, a, b = (np.asarray(v, dtype=float) for v in (p, a, b))
    d = (b - a) / np.linalg.norm(b - a)
    return a + float((p - a) @ d) * d


def contact_cevian_point(A, B, C) -> np.ndarray:
    """Concurrency of the vertex-to-incircle-contact cevians.

    Contact points come from perpendicular feet of the bisector incenter, so
    this route never touches circle tangency code.
    """
    A, B, C = (np.asarray(p, dtype=float) for p in (A, B, C))
    inc = bisector_incenter(A, B, C)
    fa = perpendicular_foot(inc, B, C)
    fb = perpendicular_foot(inc, A, C)
    fc = perpendicular_foot(inc, A, B)
    da = fa - A
    db = fb - B
    mat = np.array([da, -db]).T
    s = np.linalg.solve(mat, B - A)
    p = A + s[0] * da
    dc = fc - C
    cross = dc[0] * (p - C)[1] - dc[1] * (p - C)[0]
    if abs(cross) > 1e-9 * np.linalg.norm(p - C):
        raise AssertionError("third contact cevian misses the intersection")
    return p


# -- exact rational fixtures --------------------------------------------------

def _frac_point(x, y) -> tuple[Fraction, Fraction]:
    return (Fraction(x), Fraction(y))


def rational_345_fixture() -> dict:
    """Exact values for the right triangle (0,0), (3,0), (0,4).

    Vertex circle radii are (1, 2, 3); the bend discriminant is a perfect
    square, so the whole construction stays inside the rationals and every
    expected value is a pair of Fractions.
    """
    A = _frac_point(0, 0)
    B = _frac_point(3, 0)
    C = _frac_point(0, 4)
    sides = (Fraction(5), Fraction(4), Fraction(3))
    radii = (Fraction(1), Fraction(2), Fraction(3))
    k = tuple(1 / r for r in radii)
    disc = k[0] * k[1] + k[1] * k[2] + k[2] * k[0]
    assert disc == 1
    bend_sum = sum(k)
    inner_bend = bend_sum + 2
    outer_bend = bend_sum - 2
    assert inner_bend == Fraction(23, 6) and outer_bend == Fraction(-1, 6)

    # complex Descartes over Q[i], done on real/imag parts separately
    kz = [(ki * zi[0], ki * zi[1]) for ki, zi in zip(k, (A, B, C))]
    prod_sum_re = sum(
        kz[i][0] * kz[j][0] - kz[i][1] * kz[j][1]
        for i, j in ((0, 1), (1, 2), (2, 0))
    )
    prod_sum_im = sum(
        kz[i][0] * kz[j][1] + kz[i][1] * kz[j][0]
        for i, j in ((0, 1), (1, 2), (2, 0))
    )
    assert (prod_sum_re, prod_sum_im) == (0, 2)  # sqrt(2i) = 1 + i
    root = (Fraction(1), Fraction(1))
    kz_sum = (sum(p[0] for p in kz), sum(p[1] for p in kz))
    inner_scaled = (kz_sum[0] + 2 * root[0], kz_sum[1] + 2 * root[1])
    outer_scaled = (kz_sum[0] - 2 * root[0], kz_sum[1] - 2 * root[1])
    S = (inner_scaled[0] / inner_bend, inner_scaled[1] / inner_bend)
    S_prime = (outer_scaled[0] / outer_bend, outer_scaled[1] / outer_bend)

    def weighted(points, weights):
        total = sum(weights)
        return (
            sum(w * p[0] for w, p in zip(weights, points)) / total,
            sum(w * p[1] for w, p in zip(weights, points)) / total,
        )

    Ge = weighted((A, B, C), k)
    I = weighted((A, B, C), sides)
    M = weighted((A, B, C, S), (*k, inner_bend))
    M_prime = weighted((A, B, C, S_prime), (*k, outer_bend))

    def cross_ratio_x(p1, p2, p3, p4):
        # projecting collinear points onto the x axis is an affine map of
        # the line parameter, so it leaves the cross-ratio unchanged; the
        # common line here is not vertical
        s = [p[0] for p in (p1, p2, p3, p4)]
        return ((s[0] - s[2]) * (s[1] - s[3])) / ((s[0] - s[3]) * (s[1] - s[2]))

    assert cross_ratio_x(M, M_prime, Ge, I) == -1
    assert cross_ratio_x(S, S_prime, Ge, I) == -1

    return {
        "radii": radii,
        "inner_bend": inner_bend,
        "outer_bend": outer_bend,
        "S": S,
        "S_prime": S_prime,
        "Ge": Ge,
        "I": I,
        "M": M,
        "M_prime": M_prime,
    }


def rational_tangent_line_fixture() -> dict:
    """Exact values for the triangle (-1,0), (1,0), (0,-3/4).

    Vertex radii are (1, 1, 1/4); the outer bend vanishes, so the second
    solution is the horizontal line y = -1 and the concurrency point keeps
    the finite limit (sum k_i z_i + n) / sum k_i.
    """
    A = _frac_point(-1, 0)
    B = _frac_point(1, 0)
    C = (Fraction(0), Fraction(-3, 4))
    sides = (Fraction(5, 4), Fraction(5, 4), Fraction(2))
    radii = (Fraction(1), Fraction(1), Fraction(1, 4))
    k = tuple(1 / r for r in radii)
    assert k[0] * k[1] + k[1] * k[2] + k[2] * k[0] == 9
    bend_sum = sum(k)
    inner_bend = bend_sum + 6
    outer_bend = bend_sum - 6
    assert inner_bend == 12 and outer_bend == 0

    kz_sum = (
        sum(ki * zi[0] for ki, zi in zip(k, (A, B, C))),
        sum(ki * zi[1] for ki, zi in zip(k, (A, B, C))),
    )
    assert kz_sum == (0, -3)
    # sqrt of sum k_i k_j z_i z_j = sqrt(-1) = i; pairing fixed by tangency
    inner_scaled = (kz_sum[0], kz_sum[1] - 2)
    normal = (kz_sum[0], kz_sum[1] + 2)  # bend 0: scaled center is the normal
    assert normal == (0, -1)
    S = (inner_scaled[0] / inner_bend, inner_scaled[1] / inner_bend)
    offset = normal[0] * A[0] + normal[1] * A[1] + radii[0]
    assert offset == 1  # the line y = -1

    def weighted(points, weights):
        total = sum(weights)
        return (
            sum(w * p[0] for w, p in zip(weights, points)) / total,
            sum(w * p[1] for w, p in zip(weights, points)) / total,
        )

    Ge = weighted((A, B, C), k)
    I = weighted((A, B, C), sides)
    M = weighted((A, B, C, S), (*k, inner_bend))
    M_prime = (
        (kz_sum[0] + normal[0]) / bend_sum,
        (kz_sum[1] + normal[1]) / bend_sum,
    )

    def cross_ratio_y(p1, p2, p3, p4):
        s = [p[1] for p in (p1, p2, p3, p4)]
        return ((s[0] - s[2]) * (s[1] - s[3])) / ((s[0] - s[3]) * (s[1] - s[2]))

    assert cross_ratio_y(M, M_prime, Ge, I) == -1
    assert S == ((Ge[0] + I[0]) / 2, (Ge[1] + I[1]) / 2)

    return {
        "radii": radii,
        "inner_bend": inner_bend,
        "S": S,
        "line_normal": normal,
        "line_offset": offset,
        "Ge": Ge,
        "I": I,
        "M": M,
        "M_prime": M_prime,
    }
