"""Benchmark the Monte Carlo stepping kernel: numba @njit vs pure numpy.

Both backends consume identical pre-generated random streams and return
identical estimates; this script times them on the acceptance-sized
workload.  Run:

    python benchmarks/bench_mc.py [--paths 100000] [--dt 1e-3] [--t 1.0]

The numpy fallback is what `CONEWALKS_NO_NUMBA=1` selects at runtime; here
both are timed in-process.  The numba number excludes JIT compilation
(a warmup call is made first).
"""

from __future__ import annotations

import argparse
import math
import time

from conewalks.continuum import QUADRANT
from conewalks import montecarlo as mc


def run(backend: str, paths: int, dt: float, t: float, seed: int) -> tuple[float, float]:
    import os

    if backend == "numpy":
        os.environ["CONEWALKS_NO_NUMBA"] = "1"
    else:
        os.environ.pop("CONEWALKS_NO_NUMBA", None)
    start = time.perf_counter()
    result = mc.mc_survival(
        QUADRANT, (math.sqrt(2.0), math.pi / 4), t=t, paths=paths, dt=dt, seed=seed
    )
    elapsed = time.perf_counter() - start
    assert result.backend == backend
    return result.estimate, elapsed


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--paths", type=int, default=100_000)
    parser.add_argument("--dt", type=float, default=1e-3)
    parser.add_argument("--t", type=float, default=1.0)
    parser.add_argument("--seed", type=int, default=20240801)
    args = parser.parse_args()

    # warm up the JIT so the numba timing reflects steady state
    mc.mc_survival(QUADRANT, (1.0, 0.7), t=0.01, paths=256, dt=1e-3, seed=0)

    est_nb, t_nb = run("numba", args.paths, args.dt, args.t, args.seed)
    est_np, t_np = run("numpy", args.paths, args.dt, args.t, args.seed)

    steps = int(round(args.t / args.dt))
    work = args.paths * steps
    print(f"workload: {args.paths} paths x {steps} steps = {work:.2e} path-steps")
    print(f"numba  : {t_nb:8.3f} s   ({work / t_nb:.2e} path-steps/s)   estimate {est_nb}")
    print(f"numpy  : {t_np:8.3f} s   ({work / t_np:.2e} path-steps/s)   estimate {est_np}")
    print(f"speedup: {t_np / t_nb:.2f}x  (identical estimates: {est_nb == est_np})")


if __name__ == "__main__":
    main()
