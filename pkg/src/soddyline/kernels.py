"""Batch kernels for the fuzz-verification suites.

Two kernels, each in two implementations that produce identical results:

* a per-trial loop compiled with numba's @njit when numba is importable and
  SODDYLINE_DISABLE_NUMBA is unset,
* a vectorized pure-numpy twin used as the fallback path.

quadruple_positions lays out four mutually externally tangent spheres in
canonical position from their radii (trilateration of the center tetrahedron
from pairwise distances r_i + r_j).  coincidence_metrics takes arbitrary
quadruple arrays (2D data padded to z = 0) and measures, per trial, the worst
relative tangency-distance error, the concurrency residual of the three
opposite-tangency lines, and the relative gap between the concurrency point
and the bend-weighted center average.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .core import GeometryError

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# index into _PAIRS: partitions pairing each tangency with its opposite
_PARTITIONS = ((0, 5), (1, 4), (2, 3))

_REALIZABLE_TOL = 1e-9


def _positions_loop(radii: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = radii.shape[0]
    coords = np.zeros((n, 4, 3))
    ok = np.ones(n, dtype=np.bool_)
    for t in range(n):
        r1 = radii[t, 0]
        r2 = radii[t, 1]
        r3 = radii[t, 2]
        r4 = radii[t, 3]
        d12 = r1 + r2
        d13 = r1 + r3
        d14 = r1 + r4
        d23 = r2 + r3
        d24 = r2 + r4
        d34 = r3 + r4
        x2 = d12
        x3 = (d12 * d12 + d13 * d13 - d23 * d23) / (2.0 * d12)
        y3 = math.sqrt(max(d13 * d13 - x3 * x3, 0.0))
        x4 = (d12 * d12 + d14 * d14 - d24 * d24) / (2.0 * d12)
        y4 = (d13 * d13 + d14 * d14 - d34 * d34 - 2.0 * x3 * x4) / (2.0 * y3)
        zsq = d14 * d14 - x4 * x4 - y4 * y4
        if zsq < -_REALIZABLE_TOL * d14 * d14:
            ok[t] = False
            continue
        coords[t, 1, 0] = x2
        coords[t, 2, 0] = x3
        coords[t, 2, 1] = y3
        coords[t, 3, 0] = x4
        coords[t, 3, 1] = y4
        coords[t, 3, 2] = math.sqrt(max(zsq, 0.0))
    return coords, ok


def _positions_numpy(radii: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r1, r2, r3, r4 = (radii[:, i] for i in range(4))
    d12, d13, d14 = r1 + r2, r1 + r3, r1 + r4
    d23, d24, d34 = r2 + r3, r2 + r4, r3 + r4
    x3 = (d12 ** 2 + d13 ** 2 - d23 ** 2) / (2.0 * d12)
    y3 = np.sqrt(np.maximum(d13 ** 2 - x3 ** 2, 0.0))
    x4 = (d12 ** 2 + d14 ** 2 - d24 ** 2) / (2.0 * d12)
    y4 = (d13 ** 2 + d14 ** 2 - d34 ** 2 - 2.0 * x3 * x4) / (2.0 * y3)
    zsq = d14 ** 2 - x4 ** 2 - y4 ** 2
    ok = zsq >= -_REALIZABLE_TOL * d14 ** 2
    z4 = np.sqrt(np.maximum(zsq, 0.0))
    coords = np.zeros((radii.shape[0], 4, 3))
    coords[:, 1, 0] = d12
    coords[:, 2, 0] = x3
    coords[:, 2, 1] = y3
    coords[:, 3, 0] = x4
    coords[:, 3, 1] = y4
    coords[:, 3, 2] = z4
    coords[~ok] = 0.0
    return coords, ok


def _metrics_loop(coords: np.ndarray, radii: np.ndarray, signs: np.ndarray):
    n = coords.shape[0]
    tang = np.zeros(n)
    conc = np.zeros(n)
    match = np.zeros(n)
    points = np.zeros((n, 3))
    averages = np.zeros((n, 3))
    tpts = np.zeros((6, 3))
    amat = np.zeros((3, 3))
    bvec = np.zeros(3)
    for t in range(n):
        worst = 0.0
        for p in range(6):
            i, j = _PAIRS[p]
            dx = coords[t, i, 0] - coords[t, j, 0]
            dy = coords[t, i, 1] - coords[t, j, 1]
            dz = coords[t, i, 2] - coords[t, j, 2]
            dist = math.sqrt(dx * dx + dy * dy + dz * dz)
            expected = abs(signs[t, i] * radii[t, i] + signs[t, j] * radii[t, j])
            scale = dist + radii[t, i] + radii[t, j]
            err = abs(dist - expected) / scale
            if err > worst:
                worst = err
            ki = signs[t, i] / radii[t, i]
            kj = signs[t, j] / radii[t, j]
            ks = ki + kj
            for a in range(3):
                tpts[p, a] = (ki * coords[t, i, a] + kj * coords[t, j, a]) / ks
        tang[t] = worst

        ksum = 0.0
        for i in range(4):
            ksum += signs[t, i] / radii[t, i]
        for a in range(3):
            acc = 0.0
            for i in range(4):
                acc += (signs[t, i] / radii[t, i]) * coords[t, i, a]
            averages[t, a] = acc / ksum

        span = 0.0
        for a in range(3):
            lo = tpts[0, a]
            hi = tpts[0, a]
            for p in range(1, 6):
                if tpts[p, a] < lo:
                    lo = tpts[p, a]
                if tpts[p, a] > hi:
                    hi = tpts[p, a]
            span += (hi - lo) * (hi - lo)
        span = math.sqrt(span)
        if span == 0.0:
            span = 1.0

        for a in range(3):
            bvec[a] = 0.0
            for b in range(3):
                amat[a, b] = 0.0
        for part in range(3):
            pa, pb = _PARTITIONS[part]
            ux = tpts[pb, 0] - tpts[pa, 0]
            uy = tpts[pb, 1] - tpts[pa, 1]
            uz = tpts[pb, 2] - tpts[pa, 2]
            un = math.sqrt(ux * ux + uy * uy + uz * uz)
            ux /= un
            uy /= un
            uz /= un
            amat[0, 0] += 1.0 - ux * ux
            amat[0, 1] += -ux * uy
            amat[0, 2] += -ux * uz
            amat[1, 0] += -uy * ux
            amat[1, 1] += 1.0 - uy * uy
            amat[1, 2] += -uy * uz
            amat[2, 0] += -uz * ux
            amat[2, 1] += -uz * uy
            amat[2, 2] += 1.0 - uz * uz
            dax = tpts[pa, 0]
            day = tpts[pa, 1]
            daz = tpts[pa, 2]
            dot = ux * dax + uy * day + uz * daz
            bvec[0] += dax - dot * ux
            bvec[1] += day - dot * uy
            bvec[2] += daz - dot * uz
        sol = np.linalg.solve(amat, bvec)
        worst = 0.0
        for part in range(3):
            pa, pb = _PARTITIONS[part]
            ux = tpts[pb, 0] - tpts[pa, 0]
            uy = tpts[pb, 1] - tpts[pa, 1]
            uz = tpts[pb, 2] - tpts[pa, 2]
            un = math.sqrt(ux * ux + uy * uy + uz * uz)
            ux /= un
            uy /= un
            uz /= un
            wx = sol[0] - tpts[pa, 0]
            wy = sol[1] - tpts[pa, 1]
            wz = sol[2] - tpts[pa, 2]
            dot = wx * ux + wy * uy + wz * uz
            px = wx - dot * ux
            py = wy - dot * uy
            pz = wz - dot * uz
            dist = math.sqrt(px * px + py * py + pz * pz)
            if dist > worst:
                worst = dist
        conc[t] = worst / span
        gx = sol[0] - averages[t, 0]
        gy = sol[1] - averages[t, 1]
        gz = sol[2] - averages[t, 2]
        match[t] = math.sqrt(gx * gx + gy * gy + gz * gz) / span
        points[t, 0] = sol[0]
        points[t, 1] = sol[1]
        points[t, 2] = sol[2]
    return tang, conc, match, points, averages


def _metrics_numpy(coords: np.ndarray, radii: np.ndarray, signs: np.ndarray):
    n = coords.shape[0]
    bends = signs / radii
    ksum = bends.sum(axis=1)
    averages = (bends[:, :, None] * coords).sum(axis=1) / ksum[:, None]

    tpts = np.empty((n, 6, 3))
    tang = np.zeros(n)
    for p, (i, j) in enumerate(_PAIRS):
        delta = coords[:, i, :] - coords[:, j, :]
        dist = np.linalg.norm(delta, axis=1)
        expected = np.abs(signs[:, i] * radii[:, i] + signs[:, j] * radii[:, j])
        scale = dist + radii[:, i] + radii[:, j]
        tang = np.maximum(tang, np.abs(dist - expected) / scale)
        ks = bends[:, i] + bends[:, j]
        tpts[:, p, :] = (
            bends[:, i, None] * coords[:, i, :] + bends[:, j, None] * coords[:, j, :]
        ) / ks[:, None]

    span = np.linalg.norm(tpts.max(axis=1) - tpts.min(axis=1), axis=1)
    span = np.where(span == 0.0, 1.0, span)

    eye = np.eye(3)
    amat = np.zeros((n, 3, 3))
    bvec = np.zeros((n, 3))
    dirs = np.empty((n, 3, 3))
    anchors = np.empty((n, 3, 3))
    for part, (pa, pb) in enumerate(_PARTITIONS):
        u = tpts[:, pb, :] - tpts[:, pa, :]
        u = u / np.linalg.norm(u, axis=1)[:, None]
        proj = eye[None, :, :] - u[:, :, None] * u[:, None, :]
        amat += proj
        bvec += np.einsum("nab,nb->na", proj, tpts[:, pa, :])
        dirs[:, part, :] = u
        anchors[:, part, :] = tpts[:, pa, :]
    sol = np.linalg.solve(amat, bvec[:, :, None])[:, :, 0]

    w = sol[:, None, :] - anchors
    dots = np.einsum("npa,npa->np", w, dirs)
    perp = w - dots[:, :, None] * dirs
    conc = np.linalg.norm(perp, axis=2).max(axis=1) / span
    match = np.linalg.norm(sol - averages, axis=1) / span
    return tang, conc, match, sol, averages


def _numba_enabled() -> bool:
    if os.environ.get("SODDYLINE_DISABLE_NUMBA", "").strip() not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _numba_enabled()

if NUMBA_ENABLED:
    from numba import njit

    _positions_jit = njit(cache=True)(_positions_loop)
    _metrics_jit = njit(cache=True)(_metrics_loop)
else:
    _positions_jit = None
    _metrics_jit = None


def active_backend() -> str:
    """Name of the kernel backend in use: 'numba' or 'numpy'."""
    return "numba" if NUMBA_ENABLED else "numpy"


def quadruple_positions(radii) -> tuple[np.ndarray, np.ndarray]:
    """Canonical centers for externally tangent quadruples, plus a mask.

    radii is (n, 4) positive.  Returns coords (n, 4, 3) and a boolean mask of
    trials whose center tetrahedron closes in three dimensions; rows with a
    False mask hold zeros.
    """
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    # the compiled path skips bounds checks, so reject bad shapes up front
    if radii.ndim != 2 or radii.shape[1] != 4:
        raise GeometryError("radii must have shape (n, 4)")
    if not np.all(np.isfinite(radii)) or np.any(radii <= 0.0):
        raise GeometryError("radii must be finite and positive")
    if NUMBA_ENABLED:
        return _positions_jit(radii)
    return _positions_numpy(radii)


def coincidence_metrics(coords, radii, signs):
    """Per-trial residuals for the opposite-tangency concurrency statement.

    coords is (n, 4, 3) centers (pad z = 0 for planar data), radii (n, 4)
    positive, signs (n, 4) in {+1, -1} with -1 marking a containing sphere.
    Returns (tangency_err, concurrency_res, match_res, points, averages):
    worst relative tangency-distance error over the six pairs, max distance
    from the least-squares concurrency point to the three opposite-tangency
    lines relative to the tangency bounding box, relative distance between
    that point and the bend-weighted center average, and both points.
    """
    coords = np.ascontiguousarray(coords, dtype=np.float64)
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    signs = np.ascontiguousarray(signs, dtype=np.float64)
    n = coords.shape[0] if coords.ndim == 3 else -1
    if coords.shape != (n, 4, 3) or radii.shape != (n, 4) or signs.shape != (n, 4):
        raise GeometryError(
            "need coords (n, 4, 3), radii (n, 4) and signs (n, 4)"
        )
    if NUMBA_ENABLED:
        return _metrics_jit(coords, radii, signs)
    return _metrics_numpy(coords, radii, signs)
