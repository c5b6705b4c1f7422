"""Sweep-arc polygonization with min-max angle guarantees.

Three constructions share one insertion engine:

* :func:`sweep_arc_chain` grows the chain of a single hull edge;
* :func:`polygonize_edgewise` sweeps hull edges one after another, each
  taking every still-free inner point inside its major segment;
* :func:`polygonize_onion` expands all arcs together, one hit per edge per
  round (angular onion peeling).

An arc on edge (c1, c2) meets point x at measure ``2 * (pi - angle(c1, x, c2))``
so sweeping is just sorting by descending subtended angle. The sweeps inside
one polygonization share the pool of free inner points and the growing
polygon, so they run sequentially; independent runs may go in parallel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    ANGLE_TOL,
    LEFT,
    Hull,
    NotInterior,
    Point,
    PointSet,
    Polygon,
    _ORIENT_BOUND,
    _between,
    convex_hull,
    orient,
    orient_array,
    orientation,
    triangle_clear,
)
from . import _kernels
from .spatial import Grid

TWO_PI = 2.0 * math.pi


class PolygonizationError(RuntimeError):
    """Internal geometry diagnostic; the construction could not proceed."""


class NoVisibleEdge(PolygonizationError):
    def __init__(self, point: int, edge: tuple[int, int], chain: list[int]):
        self.point = point
        self.edge = edge
        self.chain = list(chain)
        super().__init__(
            f"no chain edge of hull edge {edge} is visible from point {point} "
            f"(chain {self.chain})"
        )


class UnclaimedPoint(PolygonizationError):
    def __init__(self, points: list[int]):
        self.points = list(points)
        super().__init__(f"inner points {self.points} lie in no major segment")


def beta_max(m: int) -> float:
    return TWO_PI - 4.0 * math.pi / m


def angle_bound(k: int, m: int) -> float:
    """Upper bound 2pi - 2pi/(k*m) on the largest angle; pi when k == 0."""
    if k <= 0:
        return math.pi
    return TWO_PI - TWO_PI / (k * m)


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Insertion:
    point: int
    a: int
    b: int
    beta: float  # angle a-x-b of the replaced edge
    t: int  # chain length before the insertion

    def lemma_bound(self, m: int) -> float:
        return TWO_PI / ((self.t + 1) * m)

    def satisfies(self, m: int) -> bool:
        return self.beta >= self.lemma_bound(m) - ANGLE_TOL


@dataclass
class SweepState:
    edge: tuple[int, int]
    m: int
    measure: float = 0.0
    chain: list[int] = field(default_factory=list)
    pending: list[int] = field(default_factory=list)
    insertions: list[Insertion] = field(default_factory=list)

    @property
    def last_insertion(self) -> Insertion | None:
        return self.insertions[-1] if self.insertions else None

    @property
    def path(self) -> list[int]:
        return [self.edge[0], *self.chain, self.edge[1]]

    def lemma_violations(self) -> list[Insertion]:
        return [ins for ins in self.insertions if not ins.satisfies(self.m)]


@dataclass(frozen=True)
class OnionPeeling:
    layers: tuple[tuple[tuple[int, int], ...], ...]  # per round: (edge, point)
    mode: str = "per-edge"

    @property
    def d(self) -> int:
        return len(self.layers)

    def claims(self) -> dict[int, int]:
        return {pt: j for layer in self.layers for j, pt in layer}


@dataclass(frozen=True)
class BoundReport:
    bound_kind: str  # "r*m" or "d*m"
    k: int
    m: int
    bound_value: float
    max_angle: float
    theta: float | None = None

    @property
    def satisfied(self) -> bool:
        return self.max_angle <= self.bound_value + ANGLE_TOL


@dataclass(frozen=True)
class Infeasible:
    bound: float


@dataclass
class Construction:
    """Everything a polygonization run produced, for reports and checks."""

    polygon: Polygon
    hull: Hull
    sweeps: list[SweepState]
    report: BoundReport
    peeling: OnionPeeling | None = None
    rehomed: list[tuple[int, int, int]] = field(default_factory=list)

    def insertions(self) -> list[Insertion]:
        return [ins for sw in self.sweeps for ins in sw.insertions]

    def lemma_violations(self) -> list[Insertion]:
        return [ins for sw in self.sweeps for ins in sw.lemma_violations()]


# ---------------------------------------------------------------------------
# insertion engine
# ---------------------------------------------------------------------------

# rehoming first searches this many cells around a point, plus every edge
# longer than _LONG_CELLS cells
_NEAR_CELLS = 6
_LONG_CELLS = 3


class _TriangleTest:
    """Obstruction test for one non-degenerate triangle a-x-b.

    Segments are separated from the triangle by one of its side lines or by
    their own line; segments sharing a or b only block if they enter the
    triangle's corner cone there.
    """

    def __init__(self, pts, ends, ia: int, ix: int, ib: int):
        a, p, b = pts[ia], pts[ix], pts[ib]
        if orientation(a, p, b) < 0:
            a, b, ia, ib = b, a, ib, ia
        self.pts, self.ends = pts, ends
        self.ia, self.ix, self.ib = ia, ix, ib
        self.a, self.p, self.b = a, p, b
        self.sides = ((a, p), (p, b), (b, a))
        self.box = (min(a.x, p.x, b.x), max(a.x, p.x, b.x), min(a.y, p.y, b.y), max(a.y, p.y, b.y))
        self.cache: dict[int, tuple[int, int, int]] = {}

    def signs(self, v: int) -> tuple[int, int, int]:
        got = self.cache.get(v)
        if got is None:
            qx, qy = self.pts[v]
            got = []
            for (ux, uy), (wx, wy) in self.sides:
                # float filter first, exact only when it cannot decide
                detleft = (wx - ux) * (qy - uy)
                detright = (wy - uy) * (qx - ux)
                det = detleft - detright
                bound = _ORIENT_BOUND * (abs(detleft) + abs(detright))
                if det > bound:
                    got.append(1)
                elif -det > bound:
                    got.append(-1)
                else:
                    got.append(orient(ux, uy, wx, wy, qx, qy))
            got = self.cache[v] = tuple(got)
        return got

    def _corner(self, anchor: int, other: int) -> bool:
        s1, s2, s3 = self.signs(other)
        q = self.pts[other]
        a, p, b = self.a, self.p, self.b
        if anchor == self.ia:
            # cone at a: left of a->x and left of b->a
            if s1 > 0 and s3 > 0:
                return True
            if s1 == 0 and (q.x - a.x) * (p.x - a.x) + (q.y - a.y) * (p.y - a.y) > 0:
                return True
            return s3 == 0 and (q.x - a.x) * (b.x - a.x) + (q.y - a.y) * (b.y - a.y) > 0
        if s2 > 0 and s3 > 0:
            return True
        if s2 == 0 and (q.x - b.x) * (p.x - b.x) + (q.y - b.y) * (p.y - b.y) > 0:
            return True
        return s3 == 0 and (q.x - b.x) * (a.x - b.x) + (q.y - b.y) * (a.y - b.y) > 0

    def blocker(self, segs, waiting, skip: int) -> int | None:
        """First obstruction found: segment id, or ``~q`` for waiting point q."""
        pts = self.pts
        lox, hix, loy, hiy = self.box
        for q in waiting:
            if q == self.ix:
                continue
            qx, qy = pts[q]
            if qx < lox or qx > hix or qy < loy or qy > hiy:
                continue
            s1, s2, s3 = self.signs(q)
            if s1 >= 0 and s2 >= 0 and s3 >= 0:
                return ~q
        ends = self.ends
        ia, ib = self.ia, self.ib
        a, p, b = self.a, self.p, self.b
        for k in segs:
            if k == skip:
                continue
            u, w = int(ends[k, 0]), int(ends[k, 1])
            if u == ia or u == ib or w == ia or w == ib:
                anchor, other = (u, w) if u in (ia, ib) else (w, u)
                if other not in (ia, ib) and self._corner(anchor, other):
                    return k
                continue
            (ux, uy), (wx, wy) = pts[u], pts[w]
            if ((ux < lox and wx < lox) or (ux > hix and wx > hix)
                    or (uy < loy and wy < loy) or (uy > hiy and wy > hiy)):
                continue
            su, sw = self.signs(u), self.signs(w)
            if (su[0] < 0 and sw[0] < 0) or (su[1] < 0 and sw[1] < 0) or (su[2] < 0 and sw[2] < 0):
                continue
            qu, qw = pts[u], pts[w]
            o1 = orient(qu.x, qu.y, qw.x, qw.y, a.x, a.y)
            o2 = orient(qu.x, qu.y, qw.x, qw.y, p.x, p.y)
            o3 = orient(qu.x, qu.y, qw.x, qw.y, b.x, b.y)
            if (o1 > 0 and o2 > 0 and o3 > 0) or (o1 < 0 and o2 < 0 and o3 < 0):
                continue
            return k
        return None


class _Builder:
    """Chains of all hull edges growing inside one polygon.

    A point x may replace chain edge a-b only if triangle a-x-b touches no
    other edge of the polygon under construction and holds no point that is
    still waiting to be placed. Every insertion therefore keeps the polygon
    simple and keeps all waiting points inside it.
    """

    def __init__(self, s: PointSet, edges: list[tuple[int, int]], m: int, depth: int,
                 closing: tuple[int, int] | None = None):
        self.s = s
        self.m = m
        self.depth = max(depth, 1)
        self.grid = Grid(s.xy)
        self.xs, self.ys = np.ascontiguousarray(s.xy[:, 0]), np.ascontiguousarray(s.xy[:, 1])
        self.status = np.empty(0, dtype=np.int8)
        # live chain edges longer than _LONG_CELLS grid cells
        self.long: set[int] = set()
        cap = len(edges) + 2 * s.n + 2
        self.ends = np.zeros((cap, 2), dtype=np.int64)
        self.seg_xy = np.zeros((4, cap))  # rows: ax, ay, bx, by
        self.owner = np.full(cap, -1, dtype=np.int64)
        self.alive = np.zeros(cap, dtype=bool)
        self.size = 0
        self.states = [SweepState(edge=e, m=m) for e in edges]
        # chain j is paths[j][:lens[j]]; buffers grow by doubling
        self.lens = [2] * len(edges)
        self.paths = [np.array(e + (0,) * 6, dtype=np.int64) for e in map(tuple, edges)]
        self.seg_ids = [np.zeros(8, dtype=np.int64) for _ in edges]
        self.path_xy = [np.zeros((2, 8)) for _ in edges]  # rows: x, y
        for j, e in enumerate(edges):
            self.seg_ids[j][0] = self._add(*e, j)
            self.path_xy[j][:, :2] = s.xy[list(e)].T
        if closing is not None:
            # fixed obstacle, never replaced
            self._add(*closing, -1)
        self.free = np.zeros(s.n, dtype=bool)
        self.rehomed: list[tuple[int, int, int]] = []  # (point, claimed, used)

    def _add(self, i: int, j: int, owner: int) -> int:
        k = self.size
        self.ends[k] = (i, j)
        self.seg_xy[:2, k] = self.s.xy[i]
        self.seg_xy[2:, k] = self.s.xy[j]
        self.owner[k] = owner
        self.alive[k] = True
        self.size += 1
        self.grid.add_segment(k, i, j)
        if owner >= 0 and np.hypot(*(self.s.xy[i] - self.s.xy[j])) > _LONG_CELLS * self.grid.h:
            self.long.add(k)
        return k

    def _kill(self, k: int):
        self.alive[k] = False
        self.grid.remove_segment(k)
        self.long.discard(k)

    def set_free(self, idx):
        for i in np.asarray(idx, dtype=np.int64).tolist():
            if not self.free[i]:
                self.free[i] = True
                self.grid.add_point(i)

    # -- visibility ---------------------------------------------------------

    def _obstruction(self, ia: int, ix: int, ib: int, skip: int):
        """What obstructs triangle a-x-b (edge ``skip`` is a-b itself)?

        Returns None when clear, a segment id, ``~q`` for a waiting point q,
        or True for an obstructed degenerate triangle. Cells around x are
        searched first; most obstructions sit there.
        """
        pts = self.s.points
        a, p, b = pts[ia], pts[ix], pts[ib]
        box = (min(a.x, b.x, p.x), max(a.x, b.x, p.x), min(a.y, b.y, p.y), max(a.y, b.y, p.y))
        if orientation(a, p, b) == 0:
            segs, waiting = self.grid.query(*box)
            segs.discard(skip)
            obstacles = [(pts[self.ends[k, 0]], pts[self.ends[k, 1]]) for k in segs]
            # a waiting point elsewhere on a-b ends up on a-x or x-b, which it
            # later splits at angle pi, so it does not obstruct
            return None if triangle_clear(a, p, b, obstacles) else True
        grid = self.grid
        if orientation(a, p, b) < 0:
            ia, ib = ib, ia
        test = [None]
        home = grid.cell_of(p.x, p.y)
        lo, hi = grid.cell_of(box[0], box[2]), grid.cell_of(box[1], box[3])
        if hi[0] - lo[0] <= 2 and hi[1] - lo[1] <= 2:
            # small box: one pass over all of it
            return self._blocker(test, grid.window(*box), ia, ix, ib, skip)
        found = self._blocker(test, grid.window(*box, near=home), ia, ix, ib, skip)
        if found is None:
            found = self._blocker(test, grid.window(*box, exclude=home), ia, ix, ib, skip)
        return found

    def _blocker(self, test: list, window, ia: int, ix: int, ib: int, skip: int):
        """Compiled scan of one grid window; exact re-test where the filter is unsure."""
        g = self.grid
        if len(self.status) < len(g.seg_buf) + len(g.pt_buf):
            self.status = np.empty(len(g.seg_buf) + len(g.pt_buf), dtype=np.int8)
        hit, ns, nw = _kernels.box_status(
            g.seg_head, g.ent_next, g.ent_item, g.pt_head, g.pt_next, g.seg_mark,
            g.next_stamp(), g.ny, *window, g.seg_buf, g.pt_buf,
            self.xs, self.ys, self.ends, ia, ix, ib, skip, self.status)
        if hit >= 0:
            return ~int(g.pt_buf[hit]) if hit < nw else int(g.seg_buf[hit - nw])
        unsure = np.flatnonzero(self.status[: nw + ns] == 2)
        if not unsure.size:
            return None
        if test[0] is None:
            test[0] = _TriangleTest(self.s.points, self.ends, ia, ix, ib)
        pts = [int(g.pt_buf[u]) for u in unsure if u < nw]
        ids = [int(g.seg_buf[u - nw]) for u in unsure if u >= nw]
        return test[0].blocker(ids, pts, skip)

    def _also_blocks(self, found, x: int, coords, dead: np.ndarray):
        """Mark in ``dead`` the triangles a[i]-x-b[i] the obstruction surely blocks.

        Conservative: a waiting point strictly inside, or a segment properly
        crossing a side through x.
        """
        if found is True or not len(dead):
            return
        xy = self.s.xy
        px, py = xy[x]
        if found < 0:
            qx, qy = xy[~found]
            rx, ry = qx, qy
        else:
            (qx, qy), (rx, ry) = xy[self.ends[found]]
        _kernels.also_blocks(*coords, px, py, qx, qy, rx, ry, found < 0, dead)

    def _scan_clear(self, x: int, ua, ub, sids, coords, dead) -> int | None:
        """``_first_clear`` by compiled scans over every live item."""
        segs = np.flatnonzero(self.alive[: self.size])
        waiting = np.flatnonzero(self.free)
        out = np.empty(len(segs) + len(waiting), dtype=np.int8)
        coords = tuple(np.ascontiguousarray(c) for c in coords)
        start = 0
        while True:
            i, sure = _kernels.first_clear(self.xs, self.ys, self.ends, segs, waiting, ua, ub,
                                           x, sids, coords, dead, start, out)
            if i < 0:
                return None
            if sure or self._obstruction(int(ua[i]), x, int(ub[i]), int(sids[i])) is None:
                return i
            start = i + 1

    def _first_clear(self, x: int, ua: np.ndarray, ub: np.ndarray, sids, coords,
                     dead) -> int | None:
        """Index of the first clear triangle ua[i]-x-ub[i] in order.

        ``dead`` marks triangles already known to be obstructed; it is updated.
        """
        for i in range(len(ua)):
            if dead[i]:
                continue
            found = self._obstruction(int(ua[i]), x, int(ub[i]), int(sids[i]))
            if found is None:
                return i
            self._also_blocks(found, x, [c[i + 1:] for c in coords], dead[i + 1:])
        return None

    def _facing(self, ua: np.ndarray, ub: np.ndarray, x: int, floor, coords):
        """Edges ua[i]-ub[i] facing x with subtended angle >= floor[i].

        Returns (cand, beta): candidate indices in edge order and their
        subtended angles.
        """
        xy = self.s.xy
        px, py = xy[x]
        k = len(ua)
        idx, beta = np.empty(k, dtype=np.int64), np.empty(k)
        got = _kernels.facing(*coords, px, py, floor, idx, beta)
        idx, beta = idx[:got], beta[:got]
        unsure = np.flatnonzero(idx < 0)
        if unsure.size:
            keep = np.ones(got, dtype=bool)
            for u in unsure.tolist():
                e = -1 - int(idx[u])
                idx[u] = e
                (ax, ay), (bx, by) = xy[ua[e]], xy[ub[e]]
                side = orient(ax, ay, bx, by, px, py)
                # x on the open edge: splitting it is always allowed
                keep[u] = (side == LEFT or (side == 0 and _between(ax, ay, bx, by, px, py))) \
                    and beta[u] >= floor[e]
            idx, beta = idx[keep], beta[keep]
        return idx, beta

    def _widest_clear(self, x: int, ua: np.ndarray, ub: np.ndarray, sids, floor, coords,
                      scan: bool = False):
        """Index of the widest unobstructed edge facing x, with its angle.

        ``coords`` holds contiguous (ax, ay, bx, by) arrays of the edges.
        Ties go to the lower index. The single widest edge is tried before
        anything is sorted, since it is usually clear. With ``scan`` the
        rest are checked against every item in compiled code, which pays off
        for the long, far-reaching candidate lists of a search over all chains.
        """
        cand, beta = self._facing(ua, ub, x, floor, coords)
        if cand.size == 0:
            return None
        best = int(np.argmax(beta))
        top = int(cand[best])
        found = self._obstruction(int(ua[top]), x, int(ub[top]), int(sids[top]))
        if found is None:
            return top, float(beta[best])
        rank = np.argsort(-beta, kind="stable")
        rank = rank[rank != best]
        order = cand[rank]
        sub = [c[order] for c in coords]
        dead = np.zeros(len(order), dtype=bool)
        self._also_blocks(found, x, sub, dead)
        if scan:
            i = self._scan_clear(x, ua[order], ub[order], sids[order], sub, dead)
        else:
            i = self._first_clear(x, ua[order], ub[order], sids[order], sub, dead)
        if i is None:
            return None
        return int(order[i]), float(beta[rank[i]])

    def need(self, j: int) -> float:
        """Smallest admissible angle for the next insertion into chain j."""
        k = min(len(self.states[j].chain) + 1, self.depth)
        return TWO_PI / (k * self.m) - ANGLE_TOL

    def best_in_chain(self, j: int, x: int, floor: float = 0.0) -> tuple[int, float] | None:
        """Widest visible edge of chain j, ignoring edges narrower than floor."""
        n = self.lens[j]
        path = self.paths[j][:n]
        px, py = self.path_xy[j][:, :n]
        return self._widest_clear(x, path[:-1], path[1:], self.seg_ids[j][: n - 1],
                                  np.full(n - 1, floor), (px[:-1], py[:-1], px[1:], py[1:]))

    def _floors(self, sids: np.ndarray, admissible: bool) -> np.ndarray:
        owner = self.owner[sids]
        if admissible:
            lengths = np.fromiter(self.lens, np.int64, len(self.lens)) - 2
            k = np.minimum(lengths + 1, self.depth)
            floor = (TWO_PI / (k * self.m) - ANGLE_TOL)[owner]
        else:
            floor = np.zeros(len(sids))
        # replaced edges and the fixed closing edge are never candidates
        floor[~self.alive[sids] | (owner < 0)] = np.inf
        return floor

    def _widest_nearby(self, x: int, admissible: bool) -> tuple[int, float] | None:
        """(segment id, angle) of the widest visible edge, if the edges near x settle it.

        An edge whose midpoint lies at distance at least rho from x subtends
        at most 2 atan(L / (2 rho)), L its length. Edges within rho of x and
        all long edges are examined; when the widest of them beats that
        bound for the short edges further out and is clear, it is the answer.
        """
        g = self.grid
        px, py = self.s.xy[x]
        rho = _NEAR_CELLS * g.h
        near, _ = g.gather(*g.window(px - rho, px + rho, py - rho, py + rho))
        sids = np.union1d(near, np.fromiter(self.long, np.int64, len(self.long)))
        floor = self._floors(sids, admissible)
        ends = self.ends[sids]
        coords = tuple(np.ascontiguousarray(c) for c in self.seg_xy[:, sids])
        cand, beta = self._facing(ends[:, 0], ends[:, 1], x, floor, coords)
        if cand.size == 0:
            return None
        best = int(np.argmax(beta))
        if beta[best] <= 2 * math.atan(0.5 * _LONG_CELLS / _NEAR_CELLS) + ANGLE_TOL:
            return None
        top = int(cand[best])
        sid = int(sids[top])
        if self._obstruction(int(ends[top, 0]), x, int(ends[top, 1]), sid) is not None:
            return None
        return sid, float(beta[best])

    def best_anywhere(self, x: int, admissible: bool = True) -> tuple[int, int, float] | None:
        """Widest visible edge over all chains."""
        got = self._widest_nearby(x, admissible)
        if got is None:
            n = self.size
            ends = self.ends[:n]
            got = self._widest_clear(x, ends[:, 0], ends[:, 1], np.arange(n),
                                     self._floors(np.arange(n), admissible),
                                     tuple(self.seg_xy[:, :n]), scan=True)
        if got is None:
            return None
        sid = got[0]
        j = int(self.owner[sid])
        return j, int(np.flatnonzero(self.seg_ids[j][: self.lens[j] - 1] == sid)[0]), got[1]

    # -- insertion ----------------------------------------------------------

    def place(self, x: int, j: int, measure: float, fallback: bool = True,
              force: bool = False) -> bool:
        """Insert x, claimed by edge j, following the sweep-arc rule.

        The claimed chain is tried first. If it has no visible edge wide
        enough, the widest visible edge of any chain that meets its own chain's
        guarantee is used. Returns False (nothing inserted) when neither
        exists; with ``force`` the widest visible edge is taken regardless and
        only a point with no visible edge at all raises NoVisibleEdge.
        """
        st = self.states[j]
        own = self.best_in_chain(j, x, self.need(j) if fallback and not force else 0.0)
        if own is not None and (own[1] >= self.need(j) or not fallback):
            self._insert(j, own[0], own[1], x, measure)
            return True
        if not fallback:
            raise NoVisibleEdge(x, st.edge, st.chain)
        alt = self.best_anywhere(x, admissible=True)
        if alt is None and force:
            alt = self.best_anywhere(x, admissible=False)
            if own is not None and (alt is None or own[1] >= alt[2]):
                alt = (j, *own)
            if alt is None:
                raise NoVisibleEdge(x, st.edge, st.chain)
        if alt is None:
            return False
        jj, pos, beta = alt
        if jj != j:
            self.rehomed.append((x, j, jj))
        self._insert(jj, pos, beta, x, measure)
        return True

    def _insert(self, j: int, pos: int, beta: float, x: int, measure: float):
        st = self.states[j]
        path = self.paths[j]
        a, b = int(path[pos]), int(path[pos + 1])
        st.insertions.append(Insertion(x, a, b, beta, len(st.chain)))
        st.chain.insert(pos, x)
        st.measure = max(st.measure, measure)
        if self.free[x]:
            self.free[x] = False
            self.grid.remove_point(x)
        n = self.lens[j]
        if n == len(path):
            path = self.paths[j] = np.concatenate([path, np.zeros(n, dtype=np.int64)])
            self.seg_ids[j] = np.concatenate([self.seg_ids[j], np.zeros(n, dtype=np.int64)])
            self.path_xy[j] = np.concatenate([self.path_xy[j], np.zeros((2, n))], axis=1)
        ids = self.seg_ids[j]
        self._kill(int(ids[pos]))
        ids[pos + 2:n] = ids[pos + 1:n - 1].copy()
        ids[pos] = self._add(a, x, j)
        ids[pos + 1] = self._add(x, b, j)
        path[pos + 2:n + 1] = path[pos + 1:n].copy()
        path[pos + 1] = x
        pxy = self.path_xy[j]
        pxy[:, pos + 2:n + 1] = pxy[:, pos + 1:n].copy()
        pxy[:, pos + 1] = self.s.xy[x]
        self.lens[j] = n + 1


def _edge_angles(s: PointSet, edge: tuple[int, int], idx: np.ndarray) -> np.ndarray:
    xy = s.xy
    a, b = xy[edge[0]], xy[edge[1]]
    p = xy[idx]
    u = a - p
    v = b - p
    return np.arctan2(np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]), (u * v).sum(axis=1))


def _sweep_order(s: PointSet, edge: tuple[int, int], m: int, idx: np.ndarray):
    """Members of the closed beta_max segment, ordered by meeting measure.

    Returns (points, measures). Ties: nearer the chord midpoint, then index.
    """
    if idx.size == 0:
        return idx, np.empty(0)
    ang = _edge_angles(s, edge, idx)
    inside = ang >= TWO_PI / m - ANGLE_TOL
    idx, ang = idx[inside], ang[inside]
    measure = 2.0 * (math.pi - ang)
    mid = (s.xy[edge[0]] + s.xy[edge[1]]) / 2
    dist = np.hypot(*(s.xy[idx] - mid).T)
    order = np.lexsort((idx, dist, measure))
    return idx[order], measure[order]


def sweep_arc_chain(s: PointSet, edge: tuple[int, int], pts, m: int) -> SweepState:
    """Build the chain c1, s1, ..., sk, c2 through ``pts`` on one edge.

    Every point must lie in the edge's beta_max major segment (interior
    side is to the left of c1 -> c2). Points enter by increasing arc
    measure, each replacing the visible chain edge it sees widest.
    """
    pts = np.asarray(sorted(set(int(p) for p in pts)), dtype=np.int64)
    order, measures = _sweep_order(s, edge, m, pts)
    if order.size != pts.size:
        missing = sorted(set(pts.tolist()) - set(order.tolist()))
        raise ValueError(f"points {missing} are outside the beta_max segment of {edge}")
    edge = (int(edge[0]), int(edge[1]))
    builder = _Builder(s, [edge], m, len(pts), closing=(edge[1], edge[0]))
    state = builder.states[0]
    state.pending = order.tolist()
    builder.set_free(order)
    for x, meas in zip(order.tolist(), measures.tolist()):
        builder.place(x, 0, meas, fallback=False)
        state.pending.remove(x)
    return state


# ---------------------------------------------------------------------------
# full constructions
# ---------------------------------------------------------------------------

def _drain(builder: _Builder, waiting: list, final: bool = False):
    """Retry deferred points until no more fit; ``final`` forces the rest."""
    while waiting:
        rest = [item for item in waiting if not builder.place(*item)]
        if len(rest) == len(waiting):
            if not final:
                break
            builder.place(*rest.pop(0), force=True)
        waiting[:] = rest


def _assemble(hull: Hull, builder: _Builder) -> Polygon:
    chain: list[int] = []
    for j, v in enumerate(hull.vertices):
        chain.append(v)
        chain.extend(builder.states[j].chain)
    return Polygon(tuple(chain))


def _check_complete(s: PointSet, poly: Polygon):
    if sorted(poly.chain) != list(range(s.n)):
        raise PolygonizationError("assembled polygon does not visit every point once")


def construct_edgewise(s: PointSet, fallback: bool = True) -> Construction:
    hull = convex_hull(s)
    m = hull.m
    builder = _Builder(s, hull.edges, m, hull.r)
    free = np.asarray(hull.inner, dtype=np.int64)
    builder.set_free(free)
    waiting: list = []
    for j, e in enumerate(hull.edges):
        order, measures = _sweep_order(s, e, m, free)
        for x, meas in zip(order.tolist(), measures.tolist()):
            if not builder.place(x, j, meas, fallback):
                waiting.append((x, j, meas))
        if order.size:
            free = np.setdiff1d(free, order, assume_unique=True)
        _drain(builder, waiting)
    if free.size:
        raise UnclaimedPoint(free.tolist())
    _drain(builder, waiting, final=True)
    poly = _assemble(hull, builder)
    _check_complete(s, poly)
    report = BoundReport("r*m", hull.r, m, angle_bound(hull.r, m), poly.max_angle(s))
    return Construction(poly, hull, builder.states, report, rehomed=builder.rehomed)


def _peel(s: PointSet, hull: Hull, global_hit: bool = False):
    """Run the concurrent arc expansion; yields rounds of (edge, point, measure)."""
    m = hull.m
    free_idx = np.asarray(hull.inner, dtype=np.int64)
    members = [_sweep_order(s, e, m, free_idx) for e in hull.edges]
    claimed = np.zeros(s.n, dtype=bool)
    ptr = [0] * m
    remaining = hull.r
    rounds = []
    while remaining:
        hits: dict[int, tuple[float, int]] = {}
        for j in range(m):
            pts_j, meas_j = members[j]
            k = ptr[j]
            while k < len(pts_j) and claimed[pts_j[k]]:
                k += 1
            ptr[j] = k
            if k == len(pts_j):
                continue
            pt = int(pts_j[k])
            key = (float(meas_j[k]), j)
            if pt not in hits or key < hits[pt]:
                hits[pt] = key
        if not hits:
            raise UnclaimedPoint([i for i in hull.inner if not claimed[i]])
        if global_hit:
            pt, (meas, j) = min(hits.items(), key=lambda kv: kv[1])
            layer = [(j, pt, meas)]
        else:
            layer = sorted((j, pt, meas) for pt, (meas, j) in hits.items())
        for j, pt, _ in layer:
            claimed[pt] = True
        remaining -= len(layer)
        rounds.append(layer)
    return rounds


def onion_depth(s: PointSet, global_hit: bool = False) -> OnionPeeling:
    """Layers of the angular onion peeling without building a polygon."""
    hull = convex_hull(s)
    rounds = _peel(s, hull, global_hit)
    return OnionPeeling(
        tuple(tuple((j, pt) for j, pt, _ in layer) for layer in rounds),
        "global-hit" if global_hit else "per-edge",
    )


def construct_onion(s: PointSet, global_hit: bool = False, fallback: bool = True) -> Construction:
    hull = convex_hull(s)
    rounds = _peel(s, hull, global_hit)
    builder = _Builder(s, hull.edges, hull.m, len(rounds))
    builder.set_free(hull.inner)
    waiting: list = []
    for layer in rounds:
        for j, pt, meas in layer:
            if not builder.place(pt, j, meas, fallback):
                waiting.append((pt, j, meas))
        _drain(builder, waiting)
    _drain(builder, waiting, final=True)
    poly = _assemble(hull, builder)
    _check_complete(s, poly)
    peeling = OnionPeeling(
        tuple(tuple((j, pt) for j, pt, _ in layer) for layer in rounds),
        "global-hit" if global_hit else "per-edge",
    )
    d = peeling.d
    report = BoundReport("d*m", d, hull.m, angle_bound(d, hull.m), poly.max_angle(s))
    return Construction(poly, hull, builder.states, report, peeling, builder.rehomed)


def polygonize_edgewise(s: PointSet) -> tuple[Polygon, BoundReport]:
    c = construct_edgewise(s)
    return c.polygon, c.report


def polygonize_onion(s: PointSet, global_hit: bool = False) -> tuple[Polygon, OnionPeeling, BoundReport]:
    c = construct_onion(s, global_hit)
    return c.polygon, c.peeling, c.report


# ---------------------------------------------------------------------------
# covering edge and corollaries
# ---------------------------------------------------------------------------

def find_covering_edge(hull: Hull, s: PointSet, x) -> int:
    """Hull edge seeing ``x`` under the widest angle (lowest index on ties)."""
    pts = s.points
    x = Point(float(x[0]), float(x[1]))
    for a, b in hull.edges:
        if orientation(pts[a], pts[b], x) != LEFT:
            raise NotInterior(f"{tuple(x)} is not strictly inside the hull")
    xy = s.xy
    best, best_ang = 0, -1.0
    for j, (a, b) in enumerate(hull.edges):
        u = xy[a] - x
        v = xy[b] - x
        ang = math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])
        if ang > best_ang:
            best, best_ang = j, ang
    return best


def onion_bound(s: PointSet) -> float:
    hull = convex_hull(s)
    return angle_bound(onion_depth(s).d, hull.m)


def alpha_polygon(s: PointSet, alpha: float) -> Polygon | Infeasible:
    """Polygon with every angle <= alpha when alpha beats the onion bound."""
    if not 0 < alpha < TWO_PI:
        raise ValueError("alpha must lie in (0, 2pi)")
    c = construct_onion(s)
    if alpha > c.report.bound_value:
        return c.polygon
    return Infeasible(c.report.bound_value)


def coverage_path_feasible(s: PointSet, max_turn: float) -> tuple[bool, Polygon | None]:
    if not 0 < max_turn < TWO_PI:
        raise ValueError("max_turn must lie in (0, 2pi)")
    c = construct_onion(s)
    if max_turn > c.report.bound_value:
        return True, c.polygon
    return False, None
