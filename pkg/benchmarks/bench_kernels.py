"""Timing comparison of the compiled and vectorized kernel backends.

Runs both the trilateration kernel and the coincidence-metric kernel through
the numba-compiled loop and the pure-numpy twin on the same inputs, checks
they agree, and prints the speedup.  Usage:

    python3 benchmarks/bench_kernels.py [n_quadruples]
"""

from __future__ import annotations

import sys
import time

import numpy as np

from soddyline import kernels


def _time(fn, *args, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    if not kernels.NUMBA_ENABLED:
        print("numba backend is disabled; nothing to compare")
        return 0

    rng = np.random.default_rng(2024)
    radii = 10.0 ** rng.uniform(-1.0, 1.0, size=(n, 4))

    kernels._positions_jit(radii[:8])  # warm the JIT before timing
    t_jit = _time(kernels._positions_jit, radii)
    t_np = _time(kernels._positions_numpy, radii)
    cj, mj = kernels._positions_jit(radii)
    cn, mn = kernels._positions_numpy(radii)
    assert np.array_equal(mj, mn)
    assert np.allclose(cj[mj], cn[mn], rtol=0, atol=1e-12)
    print(f"positions  n={n}  numba {t_jit * 1e3:8.2f} ms  "
          f"numpy {t_np * 1e3:8.2f} ms  speedup {t_np / t_jit:5.2f}x")

    coords = cj[mj]
    good = radii[mj]
    signs = np.ones_like(good)

    kernels._metrics_jit(coords[:8], good[:8], signs[:8])
    t_jit = _time(kernels._metrics_jit, coords, good, signs)
    t_np = _time(kernels._metrics_numpy, coords, good, signs)
    rj = kernels._metrics_jit(coords, good, signs)
    rn = kernels._metrics_numpy(coords, good, signs)
    for a, b in zip(rj, rn):
        assert np.allclose(a, b, rtol=0, atol=1e-12)
    print(f"metrics    n={coords.shape[0]}  numba {t_jit * 1e3:8.2f} ms  "
          f"numpy {t_np * 1e3:8.2f} ms  speedup {t_np / t_jit:5.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
