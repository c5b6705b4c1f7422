"""SVG figures: the tight hexagon, a crowded single edge, and a layered peeling.

    python3 scripts/figures.py --out figures
"""
import argparse
from pathlib import Path

from minmaxpoly.cli import InstanceSpec, generate, render_svg
from minmaxpoly.geometry import PointSet
from minmaxpoly.polygonize import construct_onion


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cases = {
        "hexagon_center": generate(InstanceSpec(shape="regular-center", n=7, k=6)),
        # six points inside the bottom edge's beta_max segment
        "one_edge_chain": PointSet.from_xy([(0, 0), (4, 0), (4, 4), (0, 4), (0.9, 0.4), (1.6, 0.9),
                                            (2.3, 0.3), (3.1, 0.8), (2.0, 1.6), (1.2, 1.3)]),
        "regular_random_60": generate(InstanceSpec(shape="regular-random", n=60, k=7, seed=3)),
        "random_40": generate(InstanceSpec(shape="random", n=40, seed=1)),
    }
    for name, s in cases.items():
        c = construct_onion(s)
        path = out / f"{name}.svg"
        path.write_text(render_svg(s, c.polygon, hull=True, segments=True, layers=c.peeling))
        print(f"{path}: n={s.n} m={c.hull.m} d={c.peeling.d} "
              f"max angle {c.report.max_angle:.6f} <= {c.report.bound_value:.6f}")


if __name__ == "__main__":
    main()
