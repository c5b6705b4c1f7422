"""Command line front end: generate instances, run constructions, certify.

    minmaxpoly gen --shape regular-center --n 7 --seed 1 --out hex.csv
    minmaxpoly run --in hex.csv --algo all --svg hex.svg --json hex.json
    minmaxpoly certify --n-max 9 --trials 200 --seed 0

Exit codes: 0 all asserted bounds hold, 1 a bound or certification check
failed, 2 bad input, 3 internal geometry diagnostic.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .geometry import (
    ANGLE_TOL,
    DegenerateInput,
    DuplicatePoint,
    GeometryError,
    PointSet,
    Polygon,
    convex_hull,
    is_simple,
)
from .oracle import MAX_N, CertificationFailure, OracleError, certify_bounds, enumerate_polygonizations
from .polygonize import (
    PolygonizationError,
    angle_bound,
    beta_max,
    construct_edgewise,
    construct_onion,
    onion_depth,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_BOUND, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
SHAPES = ("random", "regular-center", "regular-random")
_SHAPE_ALIASES = {
    "random-uniform": "random",
    "regular-plus-center": "regular-center",
    "regular-plus-random-interior": "regular-random",
}


class ParseError(ValueError):
    def __init__(self, path, line: int | None, msg: str):
        self.path, self.line = str(path), line
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {msg}")


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InstanceSpec:
    """Either a point file or a seeded generator."""

    path: str | None = None
    shape: str | None = None
    n: int = 0
    seed: int = 0
    k: int | None = None  # hull size for the regular shapes
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 1.0, 1.0)

    def __post_init__(self):
        if (self.path is None) == (self.shape is None):
            raise ValueError("give exactly one of path or shape")
        if self.shape is not None:
            shape = _SHAPE_ALIASES.get(self.shape, self.shape)
            if shape not in SHAPES:
                raise ValueError(f"unknown shape {self.shape!r}")
            object.__setattr__(self, "shape", shape)

    @property
    def label(self) -> str:
        if self.path is not None:
            return Path(self.path).name
        k = f" k={self.k}" if self.k is not None else ""
        return f"{self.shape} n={self.n}{k} seed={self.seed}"


def _parse_float(text: str, path, line: int) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParseError(path, line, f"not a number: {text.strip()!r}") from None
    if not math.isfinite(v):
        raise ParseError(path, line, f"non-finite coordinate {text.strip()!r}")
    return v


def _check_duplicates(coords, where, path):
    seen: dict[tuple[float, float], int] = {}
    for i, p in enumerate(coords):
        if p in seen:
            j = seen[p]
            raise DuplicatePoint(
                j, i, f"{path}: {where[i]} repeats {where[j]} (point {p[0]!r}, {p[1]!r})")
        seen[p] = i


def read_points(path) -> PointSet:
    """Read CSV (two numbers per line, ``#`` comments) or a JSON [[x, y], ...] array."""
    path = Path(path)
    text = path.read_text()
    coords: list[tuple[float, float]] = []
    where: list[str] = []
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(path, exc.lineno, exc.msg) from None
        if not isinstance(data, list):
            raise ParseError(path, None, "expected a JSON array of [x, y] pairs")
        for i, item in enumerate(data):
            if not (isinstance(item, list) and len(item) == 2
                    and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
                raise ParseError(path, None, f"entry {i} is not an [x, y] pair of numbers")
            x, y = float(item[0]), float(item[1])
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ParseError(path, None, f"entry {i} has a non-finite coordinate")
            coords.append((x, y))
            where.append(f"entry {i}")
    else:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p for p in line.replace(",", " ").split()]
            if len(parts) != 2:
                raise ParseError(path, lineno, f"expected two numbers, got {len(parts)}")
            coords.append((_parse_float(parts[0], path, lineno), _parse_float(parts[1], path, lineno)))
            where.append(f"line {lineno}")
    _check_duplicates(coords, where, path)
    if len(coords) < 3:
        raise DegenerateInput(f"{path}: need at least 3 points, got {len(coords)}")
    return PointSet.from_xy(coords)


def write_points(path, s: PointSet, comment: str | None = None):
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(s.xy.tolist()) + "\n")
        return
    lines = [f"# {comment}"] if comment else []
    lines += [f"{p.x!r},{p.y!r}" for p in s.points]
    path.write_text("\n".join(lines) + "\n")


def generate(spec: InstanceSpec) -> PointSet:
    """Seeded instance; the same spec always yields the same points."""
    x0, y0, x1, y1 = spec.bbox
    rng = np.random.default_rng(spec.seed)
    if spec.shape == "random":
        if spec.n < 3:
            raise ValueError("random instances need n >= 3")
        xy = np.column_stack([rng.uniform(x0, x1, spec.n), rng.uniform(y0, y1, spec.n)])
        return PointSet.from_xy(xy)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    radius = min(x1 - x0, y1 - y0) / 2
    if spec.shape == "regular-center":
        k = spec.k if spec.k is not None else spec.n - 1
        if k < 3:
            raise ValueError("regular-center needs at least 3 polygon vertices")
        ring = [(cx + radius * math.cos(2 * math.pi * i / k), cy + radius * math.sin(2 * math.pi * i / k))
                for i in range(k)]
        return PointSet.from_xy(ring + [(cx, cy)])
    k = spec.k if spec.k is not None else 6
    if k < 3 or spec.n < k:
        raise ValueError("regular-random needs k >= 3 and n >= k")
    ring = [(cx + radius * math.cos(2 * math.pi * i / k), cy + radius * math.sin(2 * math.pi * i / k))
            for i in range(k)]
    # uniform in a disc strictly inside the polygon's incircle
    inner_r = 0.95 * radius * math.cos(math.pi / k)
    rho = inner_r * np.sqrt(rng.uniform(0, 1, spec.n - k))
    phi = rng.uniform(0, 2 * math.pi, spec.n - k)
    inner = np.column_stack([cx + rho * np.cos(phi), cy + rho * np.sin(phi)])
    return PointSet.from_xy(ring + inner.tolist())


def ingest(source) -> PointSet:
    """PointSet from a path, an InstanceSpec or an existing PointSet.

    Degenerate (all collinear) sets are rejected here rather than later.
    """
    if isinstance(source, PointSet):
        s = source
    elif isinstance(source, InstanceSpec):
        s = read_points(source.path) if source.path is not None else generate(source)
    else:
        s = read_points(source)
    convex_hull(s)
    return s


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def angle_entry(value: float) -> dict:
    """Radians to 9 decimals plus the same angle as a multiple of pi."""
    return {"radians": round(value, 9), "pi": round(value / math.pi, 9)}


@dataclass
class AlgoResult:
    name: str
    bound_kind: str
    k: int
    bound: float
    max_angle: float
    satisfied: bool
    asserted: bool
    simple: bool
    chain: list[int]
    rehomed: int = 0
    lemma_violations: int = 0

    def to_dict(self) -> dict:
        return {
            "bound_kind": self.bound_kind,
            "k": self.k,
            "bound": angle_entry(self.bound),
            "max_angle": angle_entry(self.max_angle),
            "satisfied": self.satisfied,
            "asserted": self.asserted,
            "simple": self.simple,
            "rehomed_points": self.rehomed,
            "lemma_violations": self.lemma_violations,
            "chain": self.chain,
        }


@dataclass
class OracleResult:
    theta: float | None = None
    count: int = 0
    best_chain: list[int] | None = None
    within_rm: bool = True
    within_dm: bool = True
    sandwich: bool = True
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        return self.skipped is not None or (self.within_rm and self.within_dm and self.sandwich)

    def to_dict(self) -> dict:
        if self.skipped is not None:
            return {"skipped": self.skipped}
        return {
            "theta": angle_entry(self.theta),
            "count": self.count,
            "best_chain": self.best_chain,
            "theta_within_rm_bound": self.within_rm,
            "theta_within_dm_bound": self.within_dm,
            "algorithms_not_below_theta": self.sandwich,
        }


@dataclass
class RunReport:
    label: str
    n: int
    m: int
    r: int
    d: int
    boundary_points: list[int]
    algorithms: dict[str, AlgoResult] = field(default_factory=dict)
    oracle: OracleResult | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        algos = all(a.satisfied and a.simple for a in self.algorithms.values() if a.asserted)
        return algos and (self.oracle is None or self.oracle.ok)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "instance": {
                "label": self.label,
                "n": self.n,
                "m": self.m,
                "r": self.r,
                "d": self.d,
                "boundary_points": self.boundary_points,
                "boundary_flag": bool(self.boundary_points),
                "rm_bound": angle_entry(angle_bound(self.r, self.m)),
                "dm_bound": angle_entry(angle_bound(self.d, self.m)),
            },
            "algorithms": {k: v.to_dict() for k, v in sorted(self.algorithms.items())},
            "ok": self.ok,
        }
        if self.oracle is not None:
            out["oracle"] = self.oracle.to_dict()
        if timing:
            out["timings_s"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


def _algo_result(name: str, c, s: PointSet, asserted: bool = True) -> AlgoResult:
    rep = c.report
    return AlgoResult(
        name=name, bound_kind=rep.bound_kind, k=rep.k, bound=rep.bound_value,
        max_angle=rep.max_angle, satisfied=rep.satisfied, asserted=asserted,
        simple=is_simple(c.polygon, s), chain=list(c.polygon.chain),
        rehomed=len(c.rehomed), lemma_violations=len(c.lemma_violations()),
    )


ALGOS = ("edgewise", "onion", "oracle", "all")


def run(source, algo: str = "all", global_hit: bool = False, label: str | None = None,
        keep: dict | None = None) -> RunReport:
    """Run the requested constructions and/or the oracle on one instance.

    ``keep``, when given, receives the Construction objects and the oracle
    enumeration by name (for rendering).
    """
    if algo not in ALGOS:
        raise ValueError(f"algo must be one of {ALGOS}")
    t0 = time.perf_counter()
    s = ingest(source)
    if label is None:
        label = source.label if isinstance(source, InstanceSpec) else (
            Path(source).name if isinstance(source, (str, Path)) else "points")
    timings = {"ingest": time.perf_counter() - t0}
    t0 = time.perf_counter()
    hull = convex_hull(s)
    depth = onion_depth(s).d
    timings["hull_and_depth"] = time.perf_counter() - t0
    report = RunReport(label, s.n, hull.m, hull.r, depth, list(hull.boundary), timings=timings)
    keep = keep if keep is not None else {}

    jobs = []
    if algo in ("edgewise", "all"):
        jobs.append(("edgewise", lambda: construct_edgewise(s), True))
    if algo in ("onion", "all"):
        jobs.append(("onion", lambda: construct_onion(s), True))
    if global_hit and algo in ("onion", "all"):
        jobs.append(("onion_global_hit", lambda: construct_onion(s, global_hit=True), False))
    for name, fn, asserted in jobs:
        t0 = time.perf_counter()
        c = fn()
        timings[name] = time.perf_counter() - t0
        keep[name] = c
        report.algorithms[name] = _algo_result(name, c, s, asserted)

    if algo in ("oracle", "all"):
        if s.n > MAX_N and algo == "all":
            report.oracle = OracleResult(skipped=f"n = {s.n} exceeds the oracle limit {MAX_N}")
        else:
            t0 = time.perf_counter()
            enum = enumerate_polygonizations(s)
            timings["oracle"] = time.perf_counter() - t0
            keep["oracle"] = enum
            theta = enum.theta
            asserted = [a for a in report.algorithms.values() if a.asserted]
            report.oracle = OracleResult(
                theta=theta, count=enum.count, best_chain=list(enum.best_chain),
                within_rm=theta <= angle_bound(hull.r, hull.m) + ANGLE_TOL,
                within_dm=theta <= angle_bound(depth, hull.m) + ANGLE_TOL,
                sandwich=all(a.max_angle >= theta - ANGLE_TOL for a in asserted),
            )
    return report


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_LAYER_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                 "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _num(v: float) -> str:
    return format(v + 0.0, ".9g")


def arc_path(a, b, beta: float) -> tuple[str, float]:
    """SVG path of the arc of measure beta on the left of a -> b, and its radius.

    Drawing coordinates flip y. The arc runs from a to b with increasing
    SVG angle, which puts it on the left of a -> b in the original frame.
    """
    chord = math.dist(a, b)
    radius = chord / (2 * math.sin(beta / 2))
    large = 1 if beta > math.pi else 0
    d = (f"M {_num(a[0])} {_num(-a[1])} "
         f"A {_num(radius)} {_num(radius)} 0 {large} 1 {_num(b[0])} {_num(-b[1])}")
    return d, radius


def render_svg(s: PointSet, p: Polygon | None, hull: bool = False, segments: bool = False,
               layers=None, width: int = 800) -> str:
    """Polygon drawing with optional hull, beta_max arcs and layer colours.

    ``layers`` is an OnionPeeling (or any object with ``layers`` of
    (edge, point) claims per round).
    """
    xy = s.xy
    lo, hi = xy.min(axis=0), xy.max(axis=0)
    w, h = float(hi[0] - lo[0]), float(hi[1] - lo[1])
    pad = 0.05 * max(w, h, 1e-12)
    vb = (float(lo[0]) - pad, -float(hi[1]) - pad, w + 2 * pad, h + 2 * pad)
    unit = max(vb[2], vb[3])
    stroke = unit / 400
    height = max(1, round(width * vb[3] / vb[2]))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{" ".join(_num(v) for v in vb)}">',
    ]
    ch = convex_hull(s) if (hull or segments) else None
    if segments:
        beta = beta_max(ch.m)
        out.append(f'<g id="major-segments" fill="#1f77b4" fill-opacity="0.06" stroke="#1f77b4" '
                   f'stroke-width="{_num(stroke * 0.6)}">')
        for a, b in ch.edges:
            d, _ = arc_path(s[a], s[b], beta)
            out.append(f'<path class="major-segment" d="{d} Z"/>')
        out.append("</g>")
    if hull:
        pts = " ".join(f"{_num(s[v].x)},{_num(-s[v].y)}" for v in ch.vertices)
        out.append(f'<polygon id="hull" points="{pts}" fill="none" stroke="#555555" '
                   f'stroke-width="{_num(stroke)}" stroke-dasharray="{_num(stroke * 4)}"/>')
    if p is not None:
        d = "M " + " L ".join(f"{_num(s[v].x)} {_num(-s[v].y)}" for v in p.chain) + " Z"
        out.append(f'<path id="polygon" d="{d}" fill="#f2c14e" fill-opacity="0.25" '
                   f'stroke="#222222" stroke-width="{_num(stroke * 1.5)}"/>')
    color = {}
    if layers is not None:
        for t, layer in enumerate(layers.layers):
            for _, pt in layer:
                color[pt] = _LAYER_COLORS[t % len(_LAYER_COLORS)]
    out.append('<g id="points">')
    for i, q in enumerate(s.points):
        fill = color.get(i, "#222222")
        out.append(f'<circle cx="{_num(q.x)}" cy="{_num(-q.y)}" r="{_num(stroke * 3)}" fill="{fill}">'
                   f'<title>{escape(str(i))}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

def _cmd_gen(args) -> int:
    spec = InstanceSpec(shape=args.shape, n=args.n, seed=args.seed, k=args.k)
    s = generate(spec)
    write_points(args.out, s, comment=spec.label)
    print(f"wrote {s.n} points to {args.out}")
    return EXIT_OK


def _run_one(path: str, algo: str, global_hit: bool) -> RunReport:
    return run(InstanceSpec(path=path), algo, global_hit)


def _summary(rep: RunReport) -> str:
    lines = [f"{rep.label}: n={rep.n} m={rep.m} r={rep.r} d={rep.d}"
             + (f" boundary_points={len(rep.boundary_points)}" if rep.boundary_points else "")]
    for name, a in sorted(rep.algorithms.items()):
        flag = "ok" if a.satisfied else ("FAIL" if a.asserted else "over")
        lines.append(f"  {name:<17} max {a.max_angle:.9f} ({a.max_angle / math.pi:.9f} pi) "
                     f"<= {a.bound_kind} bound {a.bound:.9f} ({a.bound / math.pi:.9f} pi) [{flag}]"
                     + (f" rehomed={a.rehomed}" if a.rehomed else ""))
    if rep.oracle is not None:
        if rep.oracle.skipped:
            lines.append(f"  oracle skipped: {rep.oracle.skipped}")
        else:
            th = rep.oracle.theta
            lines.append(f"  oracle theta {th:.9f} ({th / math.pi:.9f} pi) over {rep.oracle.count} "
                         f"polygons [{'ok' if rep.oracle.ok else 'FAIL'}]")
    for k, v in sorted(rep.timings.items()):
        lines.append(f"  time {k}: {v:.3f} s")
    return "\n".join(lines)


def _cmd_run(args) -> int:
    paths = args.inp
    if len(paths) > 1 and not args.batch:
        print("several --in files need --batch", file=sys.stderr)
        return EXIT_INPUT
    if args.batch:
        if args.svg:
            print("--svg is not available with --batch", file=sys.stderr)
            return EXIT_INPUT
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(_run_one, paths, [args.algo] * len(paths),
                                        [args.onion_global_hit] * len(paths)))
        else:
            reports = [_run_one(p, args.algo, args.onion_global_hit) for p in paths]
        for rep in reports:
            print(_summary(rep))
        doc = {"schema_version": SCHEMA_VERSION,
               "instances": [r.to_dict(args.timing) for r in reports],
               "ok": all(r.ok for r in reports)}
        if args.json:
            Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return EXIT_OK if doc["ok"] else EXIT_BOUND
    keep: dict = {}
    rep = run(InstanceSpec(path=paths[0]), args.algo, args.onion_global_hit, keep=keep)
    print(_summary(rep))
    if args.json:
        Path(args.json).write_text(rep.to_json(args.timing))
    if args.svg:
        s = ingest(InstanceSpec(path=paths[0]))
        chosen = keep.get("onion") or keep.get("edgewise")
        if chosen is not None:
            poly = chosen.polygon
        else:
            poly = keep["oracle"].best
        layers = keep["onion"].peeling if "onion" in keep else onion_depth(s)
        Path(args.svg).write_text(render_svg(s, poly, hull=True, segments=True, layers=layers))
    return EXIT_OK if rep.ok else EXIT_BOUND


def trial_instance(seed: int, i: int, n_min: int, n_max: int) -> PointSet:
    """Instance i of a certification sweep: rng seed (seed, i) picks n, then the points."""
    rng = np.random.default_rng([seed, i])
    n = int(rng.integers(n_min, n_max + 1))
    return PointSet.from_xy(rng.uniform(0, 1, (n, 2)))


def certify_trials(n_min: int, n_max: int, trials: int, seed: int, keep: list | None = None) -> dict:
    """Certify seeded random instances; ``keep`` collects the Certification records."""
    results = []
    failures = []
    for i in range(trials):
        s = trial_instance(seed, i, n_min, n_max)
        n = s.n
        rep = certify_bounds(s, strict=False)
        if keep is not None:
            keep.append(rep)
        entry = {
            "trial": i, "n": n, "m": rep.m, "r": rep.r, "d": rep.d,
            "theta": angle_entry(rep.theta),
            "rm_bound": angle_entry(rep.bound_rm), "dm_bound": angle_entry(rep.bound_dm),
            "edgewise_max": angle_entry(rep.edgewise_max), "onion_max": angle_entry(rep.onion_max),
            "polygons": rep.count, "passed": rep.passed,
        }
        if not rep.passed:
            entry["failures"] = rep.failures
            entry["points"] = s.xy.tolist()
            failures.append(i)
        results.append(entry)
    return {"schema_version": SCHEMA_VERSION, "seed": seed, "n_min": n_min, "n_max": n_max,
            "trials": results, "failed": failures, "ok": not failures}


def _cmd_certify(args) -> int:
    if args.n_max > MAX_N:
        print(f"--n-max must be at most {MAX_N}", file=sys.stderr)
        return EXIT_INPUT
    if not 3 <= args.n_min <= args.n_max:
        print("need 3 <= --n-min <= --n-max", file=sys.stderr)
        return EXIT_INPUT
    doc = certify_trials(args.n_min, args.n_max, args.trials, args.seed)
    gaps = [t["dm_bound"]["radians"] - t["theta"]["radians"] for t in doc["trials"]]
    print(f"certified {len(doc['trials']) - len(doc['failed'])}/{len(doc['trials'])} instances "
          f"(n in {args.n_min}..{args.n_max}, seed {args.seed}); "
          f"smallest gap to the d*m bound {min(gaps):.9f} rad")
    for i in doc["failed"]:
        print(f"  trial {i} FAILED: {doc['trials'][i]['failures']}")
    if args.json:
        Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if doc["ok"] else EXIT_BOUND


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minmaxpoly", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="write a seeded instance")
    g.add_argument("--shape", required=True, choices=SHAPES + tuple(_SHAPE_ALIASES))
    g.add_argument("--n", type=int, required=True, help="total number of points")
    g.add_argument("--k", type=int, help="hull size for regular shapes")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    r = sub.add_parser("run", help="polygonize an instance and report bounds")
    r.add_argument("--in", dest="inp", nargs="+", required=True, metavar="FILE")
    r.add_argument("--algo", choices=ALGOS, default="all")
    r.add_argument("--onion-global-hit", action="store_true",
                   help="also run the single-global-hit peeling (bound reported, not asserted)")
    r.add_argument("--svg")
    r.add_argument("--json")
    r.add_argument("--timing", action="store_true", help="include timings in the JSON report")
    r.add_argument("--batch", action="store_true", help="process several --in files")
    r.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
    r.set_defaults(func=_cmd_run)

    c = sub.add_parser("certify", help="check bounds against the brute-force optimum")
    c.add_argument("--n-min", type=int, default=5)
    c.add_argument("--n-max", type=int, default=9)
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json")
    c.set_defaults(func=_cmd_certify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GeometryError, OracleError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PolygonizationError as exc:
        print(f"internal geometry diagnostic: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CertificationFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
