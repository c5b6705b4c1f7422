"""Brute-force ground truth for tiny point sets.

Every simple polygon through the points is enumerated once, as the cyclic
chain that starts at point 0 and whose second index is below its last. The
optimum theta is the smallest largest-interior-angle over all of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import (
    ANGLE_TOL,
    PointSet,
    Polygon,
    convex_hull,
    is_simple,
    orientation,
    segments_intersect,
)
from .polygonize import Construction, angle_bound, construct_edgewise, construct_onion

MAX_N = 10
DEFAULT_CAP = 50_000_000


class OracleError(ValueError):
    pass


class TooLarge(OracleError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"enumeration is limited to n <= {MAX_N}, got n = {n}")


class CapExceeded(OracleError):
    def __init__(self, partial: "PolygonizationEnumeration"):
        self.partial = partial
        super().__init__(
            f"search cap {partial.cap} reached after {partial.count} polygons; result is partial"
        )


class CertificationFailure(AssertionError):
    """A bound or sandwich check failed; carries the offending instance."""

    def __init__(self, report: "Certification"):
        self.report = report
        self.instance = report.source.xy.tolist()
        super().__init__(f"certification failed ({'; '.join(report.failures)}) on {self.instance}")


@dataclass
class PolygonizationEnumeration:
    source: PointSet
    count: int = 0
    theta: float = math.inf
    best_chain: tuple[int, ...] | None = None  # canonical form
    nodes: int = 0  # partial chains expanded
    cap: int = DEFAULT_CAP
    complete: bool = True

    @property
    def best(self) -> Polygon | None:
        if self.best_chain is None:
            return None
        return Polygon.from_chain(self.best_chain, self.source)

    def offer(self, chain: tuple[int, ...], gamma: float):
        self.count += 1
        if (gamma, chain) < (self.theta, self.best_chain or ()):
            self.theta, self.best_chain = gamma, chain

    def merge(self, other: "PolygonizationEnumeration") -> "PolygonizationEnumeration":
        """Combine two disjoint parts of one enumeration (order-independent)."""
        out = PolygonizationEnumeration(self.source, cap=self.cap)
        out.count = self.count + other.count
        out.nodes = self.nodes + other.nodes
        out.complete = self.complete and other.complete
        for part in (self, other):
            if part.best_chain is not None:
                if out.best_chain is None or (part.theta, part.best_chain) < (out.theta, out.best_chain):
                    out.theta, out.best_chain = part.theta, part.best_chain
        return out


def canonical(chain) -> tuple[int, ...]:
    """Rotate to start at the smallest index, reflect so chain[1] < chain[-1]."""
    chain = [int(i) for i in chain]
    k = chain.index(min(chain))
    chain = chain[k:] + chain[:k]
    if len(chain) > 2 and chain[1] > chain[-1]:
        chain = chain[:1] + chain[:0:-1]
    return tuple(chain)


def max_interior_angle(chain, s: PointSet) -> float:
    return Polygon.from_chain(chain, s).max_angle(s)


def _folds(u, v, w) -> bool:
    # u-v and v-w overlap beyond v
    return orientation(u, v, w) == 0 and (u[0] - v[0]) * (w[0] - v[0]) + (u[1] - v[1]) * (w[1] - v[1]) > 0


def enumerate_polygonizations(s: PointSet, cap: int = DEFAULT_CAP,
                              second: int | None = None) -> PolygonizationEnumeration:
    """All simple polygonizations of ``s``, each counted once.

    ``cap`` bounds the number of partial chains expanded. ``second`` fixes
    the chain's second vertex, which splits the search into independent
    parts that :meth:`PolygonizationEnumeration.merge` recombines.
    """
    n = s.n
    if n > MAX_N:
        raise TooLarge(n)
    pts = s.points
    out = PolygonizationEnumeration(s, cap=cap)
    chain = [0]
    used = [False] * n
    used[0] = True

    def crosses(a: int, b: int, skip_first: bool) -> bool:
        # new edge a-b against every earlier edge not adjacent to it
        pa, pb = pts[a], pts[b]
        lo = 1 if skip_first else 0
        for i in range(lo, len(chain) - 2):
            if segments_intersect(pa, pb, pts[chain[i]], pts[chain[i + 1]]):
                return True
        return False

    def close():
        last = chain[-1]
        if chain[1] > last:
            return
        if _folds(pts[chain[-2]], pts[last], pts[0]) or _folds(pts[last], pts[0], pts[chain[1]]):
            return
        if crosses(last, 0, skip_first=True):
            return
        cyc = tuple(chain)
        poly = Polygon.from_chain(cyc, s)
        if is_simple(poly, s):
            out.offer(cyc, poly.max_angle(s))

    def grow():
        out.nodes += 1
        if out.nodes > cap:
            out.complete = False
            raise CapExceeded(out)
        if len(chain) == n:
            close()
            return
        last = chain[-1]
        for v in range(1, n):
            if used[v]:
                continue
            if len(chain) == 1 and second is not None and v != second:
                continue
            if len(chain) >= 2 and _folds(pts[chain[-2]], pts[last], pts[v]):
                continue
            if crosses(last, v, skip_first=False):
                continue
            used[v] = True
            chain.append(v)
            grow()
            chain.pop()
            used[v] = False

    grow()
    return out


@dataclass
class Certification:
    source: PointSet
    m: int
    r: int
    d: int
    theta: float
    count: int
    bound_rm: float
    bound_dm: float
    edgewise_max: float
    onion_max: float
    failures: list[str] = field(default_factory=list)
    edgewise: Construction | None = field(default=None, repr=False)
    onion: Construction | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return not self.failures


def certify_bounds(s: PointSet, cap: int = DEFAULT_CAP, strict: bool = True) -> Certification:
    """Check theta against both bounds and sandwich both constructions.

    Raises CertificationFailure when ``strict`` and any check fails.
    """
    hull = convex_hull(s)
    enum = enumerate_polygonizations(s, cap)
    edge = construct_edgewise(s)
    onion = construct_onion(s)
    d = onion.peeling.d
    rep = Certification(
        source=s, m=hull.m, r=hull.r, d=d, theta=enum.theta, count=enum.count,
        bound_rm=angle_bound(hull.r, hull.m), bound_dm=angle_bound(d, hull.m),
        edgewise_max=edge.report.max_angle, onion_max=onion.report.max_angle,
        edgewise=edge, onion=onion,
    )
    checks = [
        (enum.count >= 1, "no simple polygonization found"),
        (rep.theta <= rep.bound_rm + ANGLE_TOL, "theta exceeds the r*m bound"),
        (rep.theta <= rep.bound_dm + ANGLE_TOL, "theta exceeds the d*m bound"),
        (rep.edgewise_max >= rep.theta - ANGLE_TOL, "edgewise beats the optimum"),
        (rep.onion_max >= rep.theta - ANGLE_TOL, "onion beats the optimum"),
        (rep.edgewise_max <= rep.bound_rm + ANGLE_TOL, "edgewise exceeds the r*m bound"),
        (rep.onion_max <= rep.bound_dm + ANGLE_TOL, "onion exceeds the d*m bound"),
        (d <= hull.r, "depth exceeds r"),
    ]
    rep.failures = [msg for ok, msg in checks if not ok]
    if strict and rep.failures:
        raise CertificationFailure(rep)
    return rep
