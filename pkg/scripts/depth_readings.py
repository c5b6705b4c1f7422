"""Peeling depth under the per-edge and the single-global-hit readings.

    python3 scripts/depth_readings.py --n 20 50 200 1000 --trials 20
"""
import argparse

import numpy as np

from minmaxpoly.geometry import PointSet, convex_hull
from minmaxpoly.polygonize import construct_onion


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[20, 50, 200, 1000])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'n':>6} {'mean m':>7} {'mean r':>8} {'per-edge d':>11} {'global d':>9} "
          f"{'global bound kept':>18}")
    for n in args.n:
        rows = []
        for i in range(args.trials):
            s = PointSet.from_xy(np.random.default_rng([args.seed, n, i]).uniform(0, 1, (n, 2)))
            h = convex_hull(s)
            per_edge = construct_onion(s)
            glob = construct_onion(s, global_hit=True)
            rows.append((h.m, h.r, per_edge.peeling.d, glob.peeling.d, glob.report.satisfied))
        a = np.array(rows, dtype=float)
        print(f"{n:>6} {a[:, 0].mean():>7.1f} {a[:, 1].mean():>8.1f} {a[:, 2].mean():>11.2f} "
              f"{a[:, 3].mean():>9.2f} {int(a[:, 4].sum()):>14}/{args.trials}")


if __name__ == "__main__":
    main()
