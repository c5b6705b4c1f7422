"""Regular k-gon plus centre: brute-force optimum against both bounds.

    python3 scripts/tightness.py --k-max 9
"""
import argparse
import math

from minmaxpoly.cli import InstanceSpec, generate
from minmaxpoly.oracle import certify_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-min", type=int, default=3)
    ap.add_argument("--k-max", type=int, default=8, help="at most 9 (oracle limit n = 10)")
    args = ap.parse_args()
    print(f"{'k':>3} {'polygons':>9} {'theta/pi':>12} {'d*m bound/pi':>13} {'gap':>10} "
          f"{'edgewise/pi':>12} {'onion/pi':>10}")
    for k in range(args.k_min, args.k_max + 1):
        s = generate(InstanceSpec(shape="regular-center", n=k + 1, k=k))
        rep = certify_bounds(s)
        print(f"{k:>3} {rep.count:>9} {rep.theta / math.pi:>12.9f} {rep.bound_dm / math.pi:>13.9f} "
              f"{rep.bound_dm - rep.theta:>10.1e} {rep.edgewise_max / math.pi:>12.9f} "
              f"{rep.onion_max / math.pi:>10.9f}")


if __name__ == "__main__":
    main()
