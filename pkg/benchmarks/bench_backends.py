"""Time the compiled and pure-numpy kernels on the same streams.

    python3 benchmarks/bench_backends.py [--trials N] [--repeat R]

Both backends must return identical counts; the script exits nonzero otherwise.
"""
import argparse
import math
import sys
import time

import numpy as np

from ppparq.sim import get_kernels
from ppparq.sim.rng import TAG_ARQ, TAG_INTERFERENCE, TAG_OUTAGE, stream_key


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=50_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args(argv)

    lam, beta, m = 0.1, 1.0, 5
    geo = (1.0 / (lam * math.pi), 100.0**2, 2.0)
    scale = 1.0 / beta
    n = args.trials
    cases = {
        "outage_count": lambda k: k.outage_count(np.uint64(stream_key(args.seed, TAG_OUTAGE)), n, *geo, scale),
        "arq": lambda k: tuple(k.arq(np.uint64(stream_key(args.seed, TAG_ARQ)), n, m, *geo, scale)),
        "interference": lambda k: k.interference(np.uint64(stream_key(args.seed, TAG_INTERFERENCE)), n // 10, *geo)[1].sum(),
    }
    nb, npk = get_kernels("numba"), get_kernels("numpy")
    for fn in cases.values():  # compile outside the timed region
        fn(nb)

    print(f"{'kernel':<14}{'numba [s]':>12}{'numpy [s]':>12}{'ratio':>8}  same")
    ok = True
    for name, fn in cases.items():
        t_nb, r_nb = best_of(lambda: fn(nb), args.repeat)
        t_np, r_np = best_of(lambda: fn(npk), args.repeat)
        same = bool(np.all(np.asarray(r_nb) == np.asarray(r_np)))
        ok &= same
        print(f"{name:<14}{t_nb:>12.3f}{t_np:>12.3f}{t_np / t_nb:>8.2f}  {same}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
