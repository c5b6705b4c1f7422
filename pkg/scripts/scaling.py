"""Wall time of both constructions on uniform random points.

    python3 scripts/scaling.py --sizes 1000 2000 5000 10000 --repeat 2
"""
import argparse
import time

import numpy as np

from minmaxpoly.geometry import PointSet
from minmaxpoly.polygonize import construct_edgewise, construct_onion


def best_time(fn, s, repeat):
    out = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        c = fn(s)
        out.append(time.perf_counter() - t0)
    return min(out), c


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 2000, 5000, 10000])
    ap.add_argument("--repeat", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    warm = PointSet.from_xy(np.random.default_rng(0).uniform(0, 1, (50, 2)))
    construct_edgewise(warm)
    construct_onion(warm)
    print(f"{'n':>7} {'m':>4} {'r':>7} {'d':>5} {'edgewise s':>11} {'onion s':>9} {'onion ratio':>12}")
    prev = None
    for n in args.sizes:
        s = PointSet.from_xy(np.random.default_rng([args.seed, n]).uniform(0, 1, (n, 2)))
        te, _ = best_time(construct_edgewise, s, args.repeat)
        to, c = best_time(construct_onion, s, args.repeat)
        ratio = f"{to / prev:.2f}" if prev else "-"
        print(f"{n:>7} {c.hull.m:>4} {c.hull.r:>7} {c.peeling.d:>5} {te:>11.3f} {to:>9.3f} {ratio:>12}")
        prev = to


if __name__ == "__main__":
    main()
