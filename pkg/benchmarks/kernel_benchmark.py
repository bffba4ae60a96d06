"""Compare the compiled and pure-python RK4 kernels on one hot workload.

The workload mirrors the simulator accuracy check: the rational catalog
member on the annulus [0.5, 5] with exact Dirichlet boundary values,
advanced to t = 0.5 at the stability-limited step size.  Both kernels run
the identical step sequence; the script reports wall time, steps/second,
the speedup, and the max disagreement between the two final states.

Usage:
    python3 benchmarks/kernel_benchmark.py [--grid-points N] [--t-end T]
                                           [--repeats R]
"""

import argparse
import math
import statistics
import time

import numpy as np

from radialheat import backend, canonical_entry, field_from_entry
from radialheat.simulator import BoundaryMode, SimConfig, stable_dt


def _stage_boundaries(entry, t0, dt, nsteps, r_min, r_max):
    times = t0 + 0.5 * dt * np.arange(2 * nsteps + 1)
    lo = np.array([entry.evaluate(t, r_min).u for t in times])
    hi = np.array([entry.evaluate(t, r_max).u for t in times])
    return lo, hi


def _run_once(kernel, u0, lo, hi, r_min, dr, P, dt, nsteps):
    u = u0.copy()
    t0 = time.perf_counter()
    done, status = kernel.rk4_advance(u, r_min, dr, P.n, P.q, P.k,
                                      dt, nsteps, lo, hi, 1e6)
    elapsed = time.perf_counter() - t0
    assert (done, status) == (nsteps, 0), (done, status)
    return elapsed, u


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid-points", type=int, default=450)
    ap.add_argument("--t-end", type=float, default=0.5)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    entry = canonical_entry("USOL6")
    r_min, r_max, J = 0.5, 5.0, args.grid_points
    cfg = SimConfig(params=entry.params, r_min=r_min, r_max=r_max, J=J,
                    t_end=args.t_end,
                    boundary=BoundaryMode("DIRICHLET_EXACT", entry))
    dt_cap = stable_dt(cfg)
    nsteps = math.ceil(args.t_end / dt_cap)
    dt = args.t_end / nsteps
    u0 = field_from_entry(entry, 0.0, r_min, r_max, J).values
    lo, hi = _stage_boundaries(entry, 0.0, dt, nsteps, r_min, r_max)

    names = backend.available_backends()
    print(f"workload: J={J}, {nsteps} RK4 steps, dt={dt:.3e}, "
          f"backends: {', '.join(names)}")
    results = {}
    for name in names:
        kernel = backend.get_kernel(name)
        times = []
        final = None
        for _ in range(args.repeats):
            elapsed, final = _run_once(kernel, u0, lo, hi, r_min,
                                       cfg.dr, entry.params, dt, nsteps)
            times.append(elapsed)
        best = min(times)
        results[name] = (best, final)
        print(f"  {name:10s} best {best:8.4f}s  median "
              f"{statistics.median(times):8.4f}s  "
              f"{nsteps / best:12.0f} steps/s")
    if "compiled" in results and "python" in results:
        speedup = results["python"][0] / results["compiled"][0]
        diff = float(np.max(np.abs(results["python"][1]
                                   - results["compiled"][1])))
        print(f"  speedup (python/compiled): {speedup:.1f}x, "
              f"final-state max diff {diff:.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
