"""Acceptance gate: nine numbered criteria at pinned tolerances.

Each criterion is one test (criterion 7 is two: the tangent-line behavior
that holds, and the coincidence claim that does not).  Every test prints a
single `criterion N: PASS/FAIL` line with its measured worst values, then
asserts the same bounds, so the printed line and the test outcome cannot
disagree.  Seeds are fixed; reruns are byte-for-byte repeatable.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

import oracles
from soddyline.centers import altitude_coincidence_witness, soddy_line_report
from soddyline.core import Line, nearest_point_to_lines
from soddyline.kernels import coincidence_metrics, quadruple_positions
from soddyline.soddy import (
    OuterClass,
    construct_inner_soddy_by_inversion,
    soddy_circles,
)
from soddyline.triangle import (
    Triangle,
    contact_points,
    gergonne_point,
    vertex_circles,
)
from soddyline.verify import (
    run_invariance,
    run_sphere_concurrency,
    run_triangle_quadruples,
    sample_radii,
    triangle_from_radii,
)


def _criterion(num, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"criterion {num}: {status}  {detail}")


def _t345() -> Triangle:
    # canonical placement: A = (0,4), B = (3,0), C = (0,0), vertex radii (3,2,1)
    return Triangle.from_sides(3.0, 4.0, 5.0)


def _t_flat() -> Triangle:
    return Triangle((-1.0, 0.0), (1.0, 0.0), (0.0, -0.75))


def test_criterion_1_spatial_quadruples_concur():
    """10,000 seeded 3D quadruples: tangency, concurrency, weighted center."""
    warm_radii = np.ones((4, 4))
    warm_coords, _ = quadruple_positions(warm_radii)
    coincidence_metrics(warm_coords, warm_radii, np.ones((4, 4)))

    start = time.perf_counter()
    result = run_sphere_concurrency(np.random.SeedSequence(42), 1000)
    elapsed = time.perf_counter() - start

    assert result.trials == 10_000
    assert result.counts["containing"] == 2500
    assert result.counts["external"] == 7500
    worst = max(result.metrics.values())
    ok = worst <= 1e-8 and elapsed < 5.0
    _criterion(1, ok, f"10000 quadruples, worst residual {worst:.3e} "
                      f"(bound 1e-8), {elapsed:.2f}s (bound 5s)")
    assert result.metrics["tangency"] <= 1e-8
    assert result.metrics["concurrency"] <= 1e-8
    assert result.metrics["center_match"] <= 1e-8
    assert result.metrics["object_gap"] <= 1e-8
    assert elapsed < 5.0


def test_criterion_2_planar_quadruples_concur():
    """1,000 triangles, vertex circles plus each Soddy circle, same bounds."""
    result = run_triangle_quadruples(np.random.SeedSequence(43), 1000)
    assert result.trials == 1000
    n_quads = result.counts["quadruples"]
    assert n_quads + result.counts["tangent_line_outers"] == 2000
    assert n_quads >= 2 * 1000 - 2
    worst = max(result.metrics.values())
    ok = worst <= 1e-8
    _criterion(2, ok, f"{n_quads} planar quadruples, worst residual "
                      f"{worst:.3e} (bound 1e-8)")
    assert result.metrics["tangency"] <= 1e-8
    assert result.metrics["concurrency"] <= 1e-8
    assert result.metrics["center_match"] <= 1e-8


def test_criterion_3_right_triangle_fixture():
    """Pinned rational values on the (0,0)-(3,0)-(0,4) triangle, 1e-9 absolute."""
    t = _t345()
    fx = oracles.rational_345_fixture()
    circles = vertex_circles(t)
    assert [c.radius for c in circles] == [3.0, 2.0, 1.0]

    # recompute both tangent circles straight from the distance equations
    centers = [c.center for c in circles]
    radii = [c.radius for c in circles]
    inner_c = oracles.tangent_center_least_squares(centers, radii, 6.0 / 23.0)
    outer_c = oracles.tangent_center_least_squares(centers, radii, -6.0)
    assert np.allclose(inner_c, [float(f) for f in fx["S"]], atol=1e-9)
    assert np.allclose(outer_c, [float(f) for f in fx["S_prime"]], atol=1e-9)

    rep = soddy_line_report(t)
    assert rep.outer_class is OuterClass.CONTAINING
    checks = {
        "inner center": (rep.pair.inner.center, fx["S"]),
        "inner radius": (rep.pair.inner.radius, 1 / fx["inner_bend"]),
        "outer center": (rep.pair.outer.center, fx["S_prime"]),
        "outer radius": (rep.pair.outer.radius, -1 / fx["outer_bend"]),
        "M": (rep.M, fx["M"]),
        "M_prime": (rep.M_prime, fx["M_prime"]),
        "Ge": (rep.Ge, fx["Ge"]),
        "I": (rep.I, fx["I"]),
    }
    worst = 0.0
    for got, want in checks.values():
        want = np.asarray(want, dtype=float)
        worst = max(worst, float(np.max(np.abs(np.asarray(got) - want))))
    ok = worst <= 1e-9
    _criterion(3, ok, f"8 pinned values on the 3-4-5 fixture, worst absolute "
                      f"error {worst:.3e} (bound 1e-9)")
    for name, (got, want) in checks.items():
        want = np.asarray(want, dtype=float)
        assert np.allclose(got, want, rtol=0.0, atol=1e-9), name


def test_criterion_4_harmonic_ranges():
    """Both cross-ratios within 1e-7 of -1 over 1,000 generic triangles."""
    rng = np.random.default_rng(44)
    worst_cr = 0.0
    worst_col = 0.0
    counted = 0
    attempts = 0
    while counted < 1000:
        attempts += 1
        assert attempts < 20_000, "sampler starved"
        radii = sample_radii(rng, 1)[0]
        if float(radii.max() / radii.min()) < 1.05:
            continue  # skip near-equilateral draws
        rep = soddy_line_report(triangle_from_radii(radii, rng))
        if rep.cross_ratio_status != "ok":
            continue
        counted += 1
        worst_cr = max(worst_cr, abs(rep.cross_ratio_MMp + 1.0),
                       abs(rep.cross_ratio_SSp + 1.0))
        worst_col = max(worst_col, rep.collinearity_residual)
    ok = worst_cr <= 1e-7 and worst_col <= 1e-8
    _criterion(4, ok, f"{counted} triangles, worst |cross-ratio + 1| "
                      f"{worst_cr:.3e} (bound 1e-7), worst collinearity "
                      f"{worst_col:.3e} of scale (bound 1e-8)")
    assert worst_cr <= 1e-7
    assert worst_col <= 1e-8


def test_criterion_5_vertex_witness_points():
    """Perpendicular, tangency chord, and vertex circle concur at each vertex."""
    rng = np.random.default_rng(45)
    worst = 0.0
    for radii in sample_radii(rng, 1000):
        t = triangle_from_radii(radii, rng)
        for vertex in "ABC":
            _p, dists = altitude_coincidence_witness(t, vertex)
            worst = max(worst, max(dists) / t.scale)

    p, dists = altitude_coincidence_witness(_t345(), "A")
    pin_err = float(np.max(np.abs(p - np.array([0.0, 7.0]))))
    ok = worst <= 1e-8 and pin_err <= 1e-9
    _criterion(5, ok, f"3000 witnesses, worst relative residual {worst:.3e} "
                      f"(bound 1e-8); pinned point (0,7) error {pin_err:.3e} "
                      f"(bound 1e-9)")
    assert worst <= 1e-8
    assert max(dists) <= 1e-8 * _t345().scale
    assert pin_err <= 1e-9


def test_criterion_6_dual_route_agreement():
    """Inversion vs algebraic inner circle; weighted vs cevian Gergonne point."""
    rng = np.random.default_rng(46)
    worst_soddy = 0.0
    worst_ge = 0.0
    for radii in sample_radii(rng, 1000):
        t = triangle_from_radii(radii, rng)
        built = construct_inner_soddy_by_inversion(t)
        pair = soddy_circles(*vertex_circles(t))
        gap = max(float(np.linalg.norm(built.center - pair.inner.center)),
                  abs(built.radius - pair.inner.radius))
        worst_soddy = max(worst_soddy, gap / t.scale)

        ge = gergonne_point(t)
        tbc, tac, tab = contact_points(t)
        cevians = (Line.through(t.A, tbc), Line.through(t.B, tac),
                   Line.through(t.C, tab))
        cev_pt, _ = nearest_point_to_lines(cevians)
        worst_ge = max(worst_ge, float(np.linalg.norm(ge - cev_pt)) / t.scale)
    ok = worst_soddy <= 1e-8 and worst_ge <= 1e-10
    _criterion(6, ok, f"1000 triangles, worst inner-circle gap {worst_soddy:.3e} "
                      f"(bound 1e-8), worst Gergonne gap {worst_ge:.3e} "
                      f"(bound 1e-10)")
    assert worst_soddy <= 1e-8
    assert worst_ge <= 1e-10


def test_criterion_7_tangent_line_outer():
    """Radii (1, 1, 1/4): the outer solution is the line y = -1 and M' keeps
    its finite flat-limit value with the opposite tangency lines concurrent."""
    fx = oracles.rational_tangent_line_fixture()
    t = _t_flat()
    assert [c.radius for c in vertex_circles(t)] == [1.0, 1.0, 0.25]
    rep = soddy_line_report(t)
    assert rep.outer_class is OuterClass.TANGENT_LINE

    line_err = max(
        float(np.max(np.abs(rep.pair.outer.normal - np.array([0.0, -1.0])))),
        abs(float(rep.pair.outer.offset) - 1.0),
    )
    mp_err = float(np.max(np.abs(
        rep.M_prime - np.asarray(fx["M_prime"], dtype=float))))
    conc = rep.concurrency_residuals["M_prime"]
    ok = line_err <= 1e-9 and mp_err <= 1e-9 and conc <= 1e-8
    _criterion("7 (tangent line)", ok,
               f"line y=-1 error {line_err:.3e} (bound 1e-9), flat-limit M' "
               f"error {mp_err:.3e} (bound 1e-9), concurrency {conc:.3e}")
    assert line_err <= 1e-9
    assert mp_err <= 1e-9
    assert conc <= 1e-8


@pytest.mark.xfail(
    strict=True,
    reason="the flat-outer limit keeps the unit-normal term: M' = "
    "(sum k_i x_i + n) / sum k_i = (0, -2/3), while the contact cevians "
    "meet at Ge = (0, -1/2); the gap is exactly 1/6, far above 1e-9",
)
def test_criterion_7_m_prime_meets_gergonne():
    """Radii (1, 1, 1/4): claimed M' = Ge within 1e-9 in the flat case."""
    rep = soddy_line_report(_t_flat())
    gap = float(np.linalg.norm(rep.M_prime - rep.Ge))
    _criterion("7 (M' = Ge)", gap <= 1e-9,
               f"measured |M' - Ge| = {gap:.12g} (bound 1e-9); M' = "
               f"{rep.M_prime.tolist()}, Ge = {rep.Ge.tolist()}")
    assert gap <= 1e-9


def test_criterion_8_invariance():
    """Vertex permutations fix M and M'; similarities commute with centers."""
    result = run_invariance(np.random.SeedSequence(47), 1000)
    worst_perm = result.metrics["permutation"]
    worst_sim = result.metrics["similarity"]

    # exhaustively on the fixture: all six vertex orders agree
    base = soddy_line_report(_t345())
    verts = _t345().vertices
    fix_perm = 0.0
    for order in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1),
                  (2, 1, 0)):
        rep = soddy_line_report(Triangle(*(verts[i] for i in order)))
        fix_perm = max(fix_perm,
                       float(np.linalg.norm(rep.M - base.M)),
                       float(np.linalg.norm(rep.M_prime - base.M_prime)))
    fix_perm /= _t345().scale
    ok = worst_perm <= 1e-10 and fix_perm <= 1e-10 and worst_sim <= 1e-9
    _criterion(8, ok, f"worst permutation drift {max(worst_perm, fix_perm):.3e} "
                      f"(bound 1e-10), worst similarity drift {worst_sim:.3e} "
                      f"(bound 1e-9)")
    assert worst_perm <= 1e-10
    assert fix_perm <= 1e-10
    assert worst_sim <= 1e-9


def test_criterion_9_cli_determinism():
    """`verify --trials 1000 --seed 42` exits 0 and repeats byte-identically."""
    cmd = [sys.executable, "-m", "soddyline.cli",
           "verify", "--trials", "1000", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    ok = (first.returncode == 0 and second.returncode == 0
          and first.stdout == second.stdout and first.stdout != b"")
    _criterion(9, ok, f"exit codes ({first.returncode}, {second.returncode}), "
                      f"{len(first.stdout)} bytes, "
                      f"{'identical' if first.stdout == second.stdout else 'diverged'}")
    assert first.returncode == 0, first.stdout.decode() + first.stderr.decode()
    assert second.returncode == 0
    assert first.stdout == second.stdout
    assert b"overall: PASS" in first.stdout
