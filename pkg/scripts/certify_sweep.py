"""Certify seeded random instances and summarise the gap to each bound.

    python3 scripts/certify_sweep.py --trials 200 --n-min 5 --n-max 9 --seed 0
"""
import argparse
import math
from collections import defaultdict

from minmaxpoly.cli import certify_trials


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--n-min", type=int, default=5)
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    doc = certify_trials(args.n_min, args.n_max, args.trials, args.seed)
    by_n = defaultdict(list)
    for t in doc["trials"]:
        by_n[t["n"]].append(t)
    print(f"{'n':>3} {'trials':>7} {'mean r':>7} {'mean d':>7} {'min gap rm/pi':>14} "
          f"{'min gap dm/pi':>14} {'onion-theta/pi':>15}")
    for n in sorted(by_n):
        ts = by_n[n]
        rad = lambda t, key: t[key]["radians"]
        print(f"{n:>3} {len(ts):>7} {sum(t['r'] for t in ts) / len(ts):>7.2f} "
              f"{sum(t['d'] for t in ts) / len(ts):>7.2f} "
              f"{min(rad(t, 'rm_bound') - rad(t, 'theta') for t in ts) / math.pi:>14.6f} "
              f"{min(rad(t, 'dm_bound') - rad(t, 'theta') for t in ts) / math.pi:>14.6f} "
              f"{max(rad(t, 'onion_max') - rad(t, 'theta') for t in ts) / math.pi:>15.6f}")
    print(f"failed trials: {doc['failed'] or 'none'}")


if __name__ == "__main__":
    main()
