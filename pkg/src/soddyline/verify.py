"""Seeded property-verification suites over random configurations.

Each suite samples configurations, measures worst-case residuals, and compares
them against fixed bounds.  Trials are mutually independent; the heavy suites
hand whole batches to the kernels module, the rest run the object layer
directly.  Everything is driven by one integer seed so repeated runs produce
identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Line, nearest_point_to_lines
from .tangency import (
    Orientation,
    Sphere,
    TangentQuadruple,
    quadruple_scale,
    signed_bend,
    verify_coincidence,
)
from .triangle import Triangle, contact_points, gergonne_point, vertex_circles
from .soddy import OuterClass, construct_inner_soddy_by_inversion, soddy_circles
from .centers import (
    _Configuration,
    _witness_from_configuration,
    soddy_line_report,
)
from .kernels import active_backend, coincidence_metrics, quadruple_positions

RADII_LOW = 0.1
RADII_HIGH = 10.0


@dataclass
class SuiteResult:
    """Worst-case metrics of one suite against its bounds."""

    name: str
    trials: int
    metrics: dict
    bounds: dict
    counts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.metrics[k] <= self.bounds[k] for k in self.bounds)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{self.name:<22}", f"trials={self.trials:<6d}", status]
        parts += [f"{k}={self.metrics[k]:.3e}" for k in sorted(self.metrics)]
        parts += [f"{k}={self.counts[k]}" for k in sorted(self.counts)]
        return "  ".join(parts)


# -- samplers ------------------------------------------------------------------

def sample_radii(rng, n: int, low: float = RADII_LOW, high: float = RADII_HIGH):
    return 10.0 ** rng.uniform(math.log10(low), math.log10(high), size=(n, 3))


def triangle_from_radii(radii, rng=None) -> Triangle:
    """Triangle whose vertex circles have the given radii (always realizable)."""
    r1, r2, r3 = float(radii[0]), float(radii[1]), float(radii[2])
    t = Triangle.from_sides(r2 + r3, r1 + r3, r1 + r2)
    if rng is not None:
        t = random_similarity(rng, t)
    return t


def random_similarity(rng, t: Triangle, reflect_chance: float = 0.25) -> Triangle:
    theta = rng.uniform(0.0, 2.0 * math.pi)
    s = 10.0 ** rng.uniform(-0.5, 0.5)
    rot = np.array(
        [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    )
    if rng.random() < reflect_chance:
        rot = rot @ np.diag([1.0, -1.0])
    shift = rng.uniform(-5.0, 5.0, size=2)
    return Triangle(*(s * (rot @ v) + shift for v in t.vertices))


def near_tangent_line_radii(rng, n: int):
    """Vertex radii a hair away from the flat-outer (tangent line) boundary.

    The outer solution's bend vanishes exactly when the third bend equals
    (sqrt(k1) + sqrt(k2))^2; perturbing that by 1e-6..1e-4 on either side
    yields huge containing or huge externally tangent outers.
    """
    rows = np.empty((n, 3))
    for i in range(n):
        r1, r2 = 10.0 ** rng.uniform(-0.5, 0.5, size=2)
        k3 = (math.sqrt(1.0 / r1) + math.sqrt(1.0 / r2)) ** 2
        eps = 10.0 ** rng.uniform(-6.0, -4.0)
        sign = 1.0 if i % 2 == 0 else -1.0
        rows[i] = (r1, r2, 1.0 / (k3 * (1.0 + sign * eps)))
    return rows


def _batch_rotations(rng, n: int) -> np.ndarray:
    g = rng.standard_normal((n, 3, 3))
    q, r = np.linalg.qr(g)
    diag = np.einsum("nii->ni", r)
    signs = np.where(diag < 0.0, -1.0, 1.0)
    q = q * signs[:, None, :]
    det = np.linalg.det(q)
    q[:, :, 0] *= det[:, None]
    return q


def _external_batch(rng, n: int):
    """Rejection-sample n realizable external quadruples (coords, radii)."""
    coords_parts, radii_parts = [], []
    remaining = n
    while remaining > 0:
        m = remaining + remaining // 2 + 16
        cand = 10.0 ** rng.uniform(-1.0, 1.0, size=(m, 4))
        coords, ok = quadruple_positions(cand)
        take = min(remaining, int(ok.sum()))
        idx = np.nonzero(ok)[0][:take]
        coords_parts.append(coords[idx])
        radii_parts.append(cand[idx])
        remaining -= take
    return np.concatenate(coords_parts), np.concatenate(radii_parts)


def _containing_batch(rng, n: int):
    """n quadruples whose fourth sphere contains the other three.

    Three spheres are laid out mutually tangent in the z = 0 plane; the
    enclosing sphere's center sits at a sampled height above that plane and
    its in-plane position and radius solve the tangency distance equations
    directly (two linear differences plus one quadratic).
    """
    coords_parts, radii_parts = [], []
    remaining = n
    rounds = 0
    while remaining > 0:
        rounds += 1
        if rounds > 200:
            raise RuntimeError("containing-quadruple sampling starved")
        m = remaining * 2 + 16
        r = 10.0 ** rng.uniform(-1.0, 1.0, size=(m, 3))
        h = rng.uniform(0.0, 0.5) * r.min(axis=1) * rng.uniform(0.2, 1.0, size=m)
        d12 = r[:, 0] + r[:, 1]
        d13 = r[:, 0] + r[:, 2]
        d23 = r[:, 1] + r[:, 2]
        x3 = (d12 ** 2 + d13 ** 2 - d23 ** 2) / (2.0 * d12)
        y3 = np.sqrt(np.maximum(d13 ** 2 - x3 ** 2, 0.0))
        # centers p1=(0,0), p2=(d12,0), p3=(x3,y3); center c = u + rho*v
        # from the pairwise differences of |c - p_i|^2 + h^2 = (rho - r_i)^2
        ux = (d12 ** 2 - r[:, 1] ** 2 + r[:, 0] ** 2) / (2.0 * d12)
        vx = (r[:, 1] - r[:, 0]) / d12
        rhs3 = (x3 ** 2 + y3 ** 2 - r[:, 2] ** 2 + r[:, 0] ** 2) / 2.0
        uy = (rhs3 - x3 * ux) / y3
        vy = ((r[:, 2] - r[:, 0]) - x3 * vx) / y3
        aq = vx ** 2 + vy ** 2 - 1.0
        bq = 2.0 * (ux * vx + uy * vy + r[:, 0])
        cq = ux ** 2 + uy ** 2 + h ** 2 - r[:, 0] ** 2
        disc = bq ** 2 - 4.0 * aq * cq
        valid = disc >= 0.0
        sq = np.sqrt(np.maximum(disc, 0.0))
        with np.errstate(divide="ignore", invalid="ignore"):
            qv = -0.5 * (bq + np.copysign(sq, bq))
            roots = np.stack([qv / aq, cq / qv])
        rho_min = r.max(axis=1) + np.abs(h)
        roots = np.where(np.isfinite(roots) & (roots > rho_min), roots, np.inf)
        rho = roots.min(axis=0)
        valid &= np.isfinite(rho)
        rho = np.where(valid, rho, 1.0)
        cx = ux + rho * vx
        cy = uy + rho * vy
        centers = np.zeros((m, 4, 3))
        centers[:, 1, 0] = d12
        centers[:, 2, 0] = x3
        centers[:, 2, 1] = y3
        centers[:, 3, 0] = cx
        centers[:, 3, 1] = cy
        centers[:, 3, 2] = h
        for i in range(3):
            gap = np.linalg.norm(centers[:, 3] - centers[:, i], axis=1) - (rho - r[:, i])
            valid &= np.abs(gap) <= 1e-9 * (rho + r[:, i])
        take = min(remaining, int(valid.sum()))
        idx = np.nonzero(valid)[0][:take]
        coords_parts.append(centers[idx])
        radii_parts.append(np.column_stack([r[idx], rho[idx]]))
        remaining -= take
    return np.concatenate(coords_parts), np.concatenate(radii_parts)


# -- suites --------------------------------------------------------------------

def run_sphere_concurrency(seed_seq, trials: int) -> SuiteResult:
    """Random 3D quadruples: tangency, opposite-line concurrency, center match."""
    rng = np.random.default_rng(seed_seq)
    total = 10 * trials
    n_con = total // 4
    n_ext = total - n_con
    coords_e, radii_e = _external_batch(rng, n_ext)
    coords_c, radii_c = _containing_batch(rng, n_con)
    coords = np.concatenate([coords_e, coords_c])
    radii = np.concatenate([radii_e, radii_c])
    signs = np.ones((total, 4))
    signs[n_ext:, 3] = -1.0

    rot = _batch_rotations(rng, total)
    shift = rng.uniform(-20.0, 20.0, size=(total, 1, 3))
    coords = np.einsum("nab,nib->nia", rot, coords) + shift

    tang, conc, match, points, _ = coincidence_metrics(coords, radii, signs)

    object_gap = 0.0
    for i in rng.choice(total, size=min(16, total), replace=False):
        spheres = tuple(
            Sphere(
                coords[i, j],
                radii[i, j],
                Orientation.CONTAINING if signs[i, j] < 0 else Orientation.EXTERNAL,
            )
            for j in range(4)
        )
        quad = TangentQuadruple(spheres)
        p, _res = verify_coincidence(quad)
        gap = float(np.linalg.norm(p - points[i])) / quadruple_scale(quad)
        object_gap = max(object_gap, gap)

    return SuiteResult(
        name="sphere-concurrency",
        trials=total,
        metrics={
            "tangency": float(tang.max()),
            "concurrency": float(conc.max()),
            "center_match": float(match.max()),
            "object_gap": object_gap,
        },
        bounds={
            "tangency": 1e-8,
            "concurrency": 1e-8,
            "center_match": 1e-8,
            "object_gap": 1e-8,
        },
        counts={"external": n_ext, "containing": n_con},
    )


def run_triangle_quadruples(seed_seq, trials: int) -> SuiteResult:
    """Triangle vertex circles + each Soddy circle, through the same metrics."""
    rng = np.random.default_rng(seed_seq)
    rows_coords, rows_radii, rows_signs = [], [], []
    tangent_lines = 0
    for radii in sample_radii(rng, trials):
        t = triangle_from_radii(radii, rng)
        circles = vertex_circles(t)
        pair = soddy_circles(*circles)
        base_centers = [c.center for c in circles]
        base_radii = [c.radius for c in circles]
        rows_coords.append(base_centers + [pair.inner.center])
        rows_radii.append(base_radii + [pair.inner.radius])
        rows_signs.append((1.0, 1.0, 1.0, 1.0))
        if pair.outer_class is OuterClass.TANGENT_LINE:
            tangent_lines += 1
            continue
        sign = -1.0 if pair.outer_class is OuterClass.CONTAINING else 1.0
        rows_coords.append(base_centers + [pair.outer.center])
        rows_radii.append(base_radii + [pair.outer.radius])
        rows_signs.append((1.0, 1.0, 1.0, sign))

    coords = np.zeros((len(rows_coords), 4, 3))
    coords[:, :, :2] = np.asarray(rows_coords)
    radii_arr = np.asarray(rows_radii)
    signs = np.asarray(rows_signs)
    tang, conc, match, _, _ = coincidence_metrics(coords, radii_arr, signs)
    return SuiteResult(
        name="triangle-quadruples",
        trials=trials,
        metrics={
            "tangency": float(tang.max()),
            "concurrency": float(conc.max()),
            "center_match": float(match.max()),
        },
        bounds={"tangency": 1e-8, "concurrency": 1e-8, "center_match": 1e-8},
        counts={"quadruples": len(rows_coords), "tangent_line_outers": tangent_lines},
    )


def _report_triangles(rng, trials: int):
    """Triangle mix for the Soddy-line suites: random, balanced, near-flat."""
    n_near = 10 if trials >= 100 else 0
    n_balanced = trials // 8 if trials >= 80 else 0
    n_random = trials - n_near - n_balanced
    rows = list(sample_radii(rng, n_random))
    rows += list(10.0 ** rng.uniform(-0.25, 0.25, size=(n_balanced, 3)))
    rows += list(near_tangent_line_radii(rng, n_near))
    return [triangle_from_radii(r, rng) for r in rows]


def run_soddy_line_harmonics(seed_seq, trials: int) -> SuiteResult:
    """Collinearity, harmonic cross-ratios, decomposition, dual-path match."""
    rng = np.random.default_rng(seed_seq)
    worst = {
        "cross_ratio": 0.0,
        "collinearity": 0.0,
        "decomposition": 0.0,
        "dual_match": 0.0,
    }
    counts = {"containing": 0, "tangent_line": 0, "condition_limited": 0}
    for t in _report_triangles(rng, trials):
        rep = soddy_line_report(t)
        if rep.outer_class is OuterClass.CONTAINING:
            counts["containing"] += 1
        if rep.cross_ratio_status == "tangent_line":
            counts["tangent_line"] += 1
        if rep.cross_ratio_status == "condition_limited":
            counts["condition_limited"] += 1
            continue
        for cr in (rep.cross_ratio_MMp, rep.cross_ratio_SSp):
            if cr is not None:
                worst["cross_ratio"] = max(worst["cross_ratio"], abs(cr + 1.0))
        worst["collinearity"] = max(worst["collinearity"], rep.collinearity_residual)
        worst["decomposition"] = max(worst["decomposition"], rep.decomposition_residual)

        bends = [signed_bend(c) for c in rep.circles]
        scale = t.scale
        inner_avg = sum(
            b * c.center for b, c in zip(bends, rep.circles)
        ) + signed_bend(rep.pair.inner) * rep.pair.inner.center
        inner_avg = inner_avg / (sum(bends) + signed_bend(rep.pair.inner))
        gap = float(np.linalg.norm(rep.M - inner_avg)) / scale
        worst["dual_match"] = max(worst["dual_match"], gap)
        if rep.outer_class is OuterClass.TANGENT_LINE:
            outer_avg = sum(b * c.center for b, c in zip(bends, rep.circles))
            outer_avg = (outer_avg + rep.pair.outer.normal) / sum(bends)
        else:
            k = rep.pair.outer.bend
            outer_avg = sum(b * c.center for b, c in zip(bends, rep.circles))
            outer_avg = (outer_avg + k * rep.pair.outer.center) / (sum(bends) + k)
        gap = float(np.linalg.norm(rep.M_prime - outer_avg)) / scale
        worst["dual_match"] = max(worst["dual_match"], gap)

    return SuiteResult(
        name="soddy-line-harmonics",
        trials=trials,
        metrics=worst,
        bounds={
            "cross_ratio": 1e-7,
            "collinearity": 1e-8,
            "decomposition": 1e-9,
            "dual_match": 1e-9,
        },
        counts=counts,
    )


def run_altitude_coincidence(seed_seq, trials: int) -> SuiteResult:
    """Perpendicular / tangency-chord / vertex-circle triple coincidence."""
    rng = np.random.default_rng(seed_seq)
    worst = 0.0
    for radii in sample_radii(rng, trials):
        t = triangle_from_radii(radii, rng)
        conf = _Configuration.build(t, 1e-9)
        for idx in range(3):
            _p, dists = _witness_from_configuration(conf, idx, 1e-9)
            worst = max(worst, max(dists) / t.scale)
    return SuiteResult(
        name="altitude-coincidence",
        trials=trials,
        metrics={"witness": worst},
        bounds={"witness": 1e-8},
        counts={"vertices": 3 * trials},
    )


def run_dual_construction(seed_seq, trials: int) -> SuiteResult:
    """Straightedge-style construction against the algebraic Soddy solve."""
    rng = np.random.default_rng(seed_seq)
    worst_soddy = 0.0
    worst_ge = 0.0
    for radii in sample_radii(rng, trials):
        t = triangle_from_radii(radii, rng)
        scale = t.scale
        built = construct_inner_soddy_by_inversion(t)
        pair = soddy_circles(*vertex_circles(t))
        gap = float(np.linalg.norm(built.center - pair.inner.center))
        gap = max(gap, abs(built.radius - pair.inner.radius))
        worst_soddy = max(worst_soddy, gap / scale)

        ge = gergonne_point(t)
        tbc, tac, tab = contact_points(t)
        cevians = (
            Line.through(t.A, tbc),
            Line.through(t.B, tac),
            Line.through(t.C, tab),
        )
        cev_pt, _ = nearest_point_to_lines(cevians)
        worst_ge = max(worst_ge, float(np.linalg.norm(ge - cev_pt)) / scale)
    return SuiteResult(
        name="dual-construction",
        trials=trials,
        metrics={"soddy_gap": worst_soddy, "gergonne_gap": worst_ge},
        bounds={"soddy_gap": 1e-8, "gergonne_gap": 1e-10},
        counts={},
    )


def run_invariance(seed_seq, trials: int) -> SuiteResult:
    """Vertex-permutation invariance and similarity equivariance of M, M'."""
    rng = np.random.default_rng(seed_seq)
    n = max(trials // 10, 10)
    worst_perm = 0.0
    worst_sim = 0.0
    perms = ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    for radii in sample_radii(rng, n):
        t = triangle_from_radii(radii, rng)
        scale = t.scale
        rep = soddy_line_report(t)
        verts = t.vertices

        perm = perms[rng.integers(len(perms))]
        tp = Triangle(*(verts[i] for i in perm))
        rep_p = soddy_line_report(tp)
        gap = max(
            float(np.linalg.norm(rep.M - rep_p.M)),
            float(np.linalg.norm(rep.M_prime - rep_p.M_prime)),
        )
        worst_perm = max(worst_perm, gap / scale)

        theta = rng.uniform(0.0, 2.0 * math.pi)
        s = 10.0 ** rng.uniform(-1.0, 1.0)
        rot = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
        )
        if rng.random() < 0.5:
            rot = rot @ np.diag([1.0, -1.0])
        shift = rng.uniform(-10.0, 10.0, size=2)

        def fwd(p):
            return s * (rot @ p) + shift

        ts = Triangle(*(fwd(v) for v in verts))
        rep_s = soddy_line_report(ts)
        pairs = (
            (rep.M, rep_s.M),
            (rep.M_prime, rep_s.M_prime),
            (rep.S, rep_s.S),
            (rep.Ge, rep_s.Ge),
            (rep.I, rep_s.I),
        )
        if rep.S_prime is not None and rep_s.S_prime is not None:
            pairs += ((rep.S_prime, rep_s.S_prime),)
        for a, b in pairs:
            # a far-away outer center is determined to precision relative to
            # its distance, so normalize each point by its own magnitude
            ref = max(scale, float(np.linalg.norm(a - rep.I)))
            gap = float(np.linalg.norm(fwd(a) - b)) / (s * ref)
            worst_sim = max(worst_sim, gap)

    return SuiteResult(
        name="invariance",
        trials=n,
        metrics={"permutation": worst_perm, "similarity": worst_sim},
        bounds={"permutation": 1e-10, "similarity": 1e-9},
        counts={},
    )


_SUITES = (
    run_sphere_concurrency,
    run_triangle_quadruples,
    run_soddy_line_harmonics,
    run_altitude_coincidence,
    run_dual_construction,
    run_invariance,
)


def run_all(seed: int, trials: int) -> list[SuiteResult]:
    """Run every suite with independent seed streams derived from one seed."""
    children = np.random.SeedSequence(seed).spawn(len(_SUITES))
    return [suite(child, trials) for suite, child in zip(_SUITES, children)]


def render_report(results) -> str:
    lines = [f"kernel backend: {active_backend()}"]
    lines += [r.summary_line() for r in results]
    overall = "PASS" if all(r.passed for r in results) else "FAIL"
    lines.append(f"overall: {overall}")
    return "\n".join(lines) + "\n"
