"""Planar primitives: exact orientation, convex hull, angles, arc segments.

Orientation and every predicate built on it (hull, simplicity, visibility)
are exact: a floating point filter decides easy cases and the rest is
recomputed with rationals. Angles are plain floating point; comparisons on
angles use ``ANGLE_TOL``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

ANGLE_TOL = 1e-9

LEFT = 1
RIGHT = -1
COLLINEAR = 0

# Shewchuk's ccwerrboundA for the two-product determinant.
_EPS = 2.0**-53
_ORIENT_BOUND = (3.0 + 16.0 * _EPS) * _EPS


class GeometryError(ValueError):
    pass


class DuplicatePoint(GeometryError):
    def __init__(self, first: int, second: int, msg: str | None = None):
        self.first = first
        self.second = second
        super().__init__(msg or f"points {first} and {second} coincide")


class DegenerateInput(GeometryError):
    pass


class CoincidentPoint(GeometryError):
    pass


class WrongSide(GeometryError):
    pass


class NotInterior(GeometryError):
    pass


class Point(NamedTuple):
    x: float
    y: float


# ---------------------------------------------------------------------------
# orientation
# ---------------------------------------------------------------------------

def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Sign of (b - a) x (c - a) on raw coordinates; exact."""
    detleft = (bx - ax) * (cy - ay)
    detright = (by - ay) * (cx - ax)
    det = detleft - detright
    bound = _ORIENT_BOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return LEFT
    if -det > bound:
        return RIGHT
    return _orient_exact(ax, ay, bx, by, cx, cy)


def orientation(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> int:
    """Return LEFT (+1), RIGHT (-1) or COLLINEAR (0) for the turn a -> b -> c.

    Collinear is reported only when the cross product is exactly zero.
    """
    return orient(a[0], a[1], b[0], b[1], c[0], c[1])


def orient_array(ax, ay, bx, by, cx, cy) -> np.ndarray:
    """Vectorised :func:`orient`; uncertain entries are redone exactly."""
    dx1, dy2, dy1, dx2 = bx - ax, cy - ay, by - ay, cx - ax
    detleft = dx1 * dy2
    detright = dy1 * dx2
    det = detleft - detright
    bound = _ORIENT_BOUND * (np.abs(detleft) + np.abs(detright))
    out = np.where(det > bound, 1, np.where(-det > bound, -1, 0)).astype(np.int8)
    # a zero difference on each side makes both products exactly zero
    exact_zero = ((dx1 == 0) | (dy2 == 0)) & ((dy1 == 0) | (dx2 == 0))
    unsure = np.flatnonzero((np.abs(det) <= bound) & ~exact_zero)
    if unsure.size:
        bc = np.broadcast_arrays(ax, ay, bx, by, cx, cy)
        for k in unsure:
            out.flat[k] = _orient_exact(*(float(v.flat[k]) for v in bc))
    return out


def _between(ax, ay, bx, by, px, py) -> bool:
    # p is known collinear with a, b; closed-segment containment
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def segments_intersect(p1, p2, q1, q2) -> bool:
    """Closed segments p1p2 and q1q2 share at least one point."""
    o1 = orientation(p1, p2, q1)
    o2 = orientation(p1, p2, q2)
    o3 = orientation(q1, q2, p1)
    o4 = orientation(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _between(*p1, *p2, *q1):
        return True
    if o2 == 0 and _between(*p1, *p2, *q2):
        return True
    if o3 == 0 and _between(*q1, *q2, *p1):
        return True
    if o4 == 0 and _between(*q1, *q2, *p2):
        return True
    return False


# ---------------------------------------------------------------------------
# point sets and hulls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointSet:
    points: tuple[Point, ...]
    xy: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(Point(float(p[0]), float(p[1])) for p in self.points)
        if len(pts) < 3:
            raise DegenerateInput(f"need at least 3 points, got {len(pts)}")
        seen: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise GeometryError(f"point {i} has a non-finite coordinate")
            if p in seen:
                raise DuplicatePoint(seen[p], i)
            seen[p] = i
        object.__setattr__(self, "points", pts)
        xy = np.array(pts, dtype=float)
        xy.setflags(write=False)
        object.__setattr__(self, "xy", xy)

    @classmethod
    def from_xy(cls, coords: Iterable[Sequence[float]]) -> "PointSet":
        return cls(tuple(Point(float(x), float(y)) for x, y in coords))

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]


@dataclass(frozen=True)
class Hull:
    """Strictly convex hull, vertices counter-clockwise.

    ``inner`` holds every non-corner point, including those lying on an
    open hull edge (listed again in ``boundary``).
    """

    vertices: tuple[int, ...]
    inner: tuple[int, ...]
    boundary: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def r(self) -> int:
        return len(self.inner)

    @property
    def edges(self) -> list[tuple[int, int]]:
        v = self.vertices
        return [(v[j], v[(j + 1) % len(v)]) for j in range(len(v))]

    def edge(self, j: int) -> tuple[int, int]:
        v = self.vertices
        return v[j], v[(j + 1) % len(v)]


def convex_hull(s: PointSet) -> Hull:
    """Andrew's monotone chain with exact turns; collinear points dropped."""
    pts = s.points
    order = sorted(range(len(pts)), key=lambda i: pts[i])

    def half(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and orientation(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = half(order)
    upper = half(reversed(order))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        raise DegenerateInput("all points are collinear")
    on_hull = set(verts)
    inner = tuple(i for i in range(len(pts)) if i not in on_hull)
    idx = np.asarray(inner, dtype=np.int64)
    qx, qy = s.xy[idx, 0], s.xy[idx, 1]
    on_edge = np.zeros(len(idx), dtype=bool)
    m = len(verts)
    for j in range(m):
        (ax, ay), (bx, by) = pts[verts[j]], pts[verts[(j + 1) % m]]
        hit = orient_array(ax, ay, bx, by, qx, qy) == 0
        hit &= (np.minimum(ax, bx) <= qx) & (qx <= np.maximum(ax, bx))
        hit &= (np.minimum(ay, by) <= qy) & (qy <= np.maximum(ay, by))
        on_edge |= hit
    return Hull(tuple(verts), inner, tuple(idx[on_edge].tolist()))


# ---------------------------------------------------------------------------
# angles
# ---------------------------------------------------------------------------

def subtended_angle(a: Sequence[float], x: Sequence[float], b: Sequence[float]) -> float:
    """Undirected angle a-x-b in [0, pi]."""
    ux, uy = a[0] - x[0], a[1] - x[1]
    vx, vy = b[0] - x[0], b[1] - x[1]
    if (ux == 0 and uy == 0) or (vx == 0 and vy == 0):
        raise CoincidentPoint("apex coincides with a chord endpoint")
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


def turn_angle(u: Sequence[float], v: Sequence[float], w: Sequence[float]) -> float:
    """Counter-clockwise angle at v from direction v->w to v->u, in [0, 2pi).

    For a counter-clockwise polygon with consecutive vertices u, v, w this is
    the interior angle at v.
    """
    ax, ay = w[0] - v[0], w[1] - v[1]
    bx, by = u[0] - v[0], u[1] - v[1]
    ang = math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    return ang + 2 * math.pi if ang < 0 else ang


def signed_area(chain: Sequence[int], s: PointSet) -> float:
    pts = s.points
    k = len(chain)
    return 0.5 * math.fsum(
        pts[chain[i]].x * pts[chain[(i + 1) % k]].y - pts[chain[(i + 1) % k]].x * pts[chain[i]].y
        for i in range(k)
    )


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    """Closed chain of point indices, counter-clockwise."""

    chain: tuple[int, ...]

    @classmethod
    def from_chain(cls, chain: Iterable[int], s: PointSet) -> "Polygon":
        """Build a polygon, reversing the chain if it runs clockwise."""
        chain = tuple(int(i) for i in chain)
        if signed_area(chain, s) < 0:
            chain = chain[:1] + chain[:0:-1]
        return cls(chain)

    def __len__(self) -> int:
        return len(self.chain)

    def edges(self) -> list[tuple[int, int]]:
        c = self.chain
        return [(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    def angles(self, s: PointSet) -> list[float]:
        return [interior_angle(self, s, i) for i in range(len(self.chain))]

    def max_angle(self, s: PointSet) -> float:
        return max(self.angles(s))


def interior_angle(p: Polygon, s: PointSet, i: int) -> float:
    """Interior angle at chain position ``i`` of a counter-clockwise polygon."""
    c = p.chain
    k = len(c)
    pts = s.points
    return turn_angle(pts[c[(i - 1) % k]], pts[c[i]], pts[c[(i + 1) % k]])


def is_simple(p: Polygon, s: PointSet) -> bool:
    """Exact simplicity test.

    Candidate edge pairs are pruned by bounding boxes (sorted on min x); the
    survivors are checked with exact orientation.
    """
    c = p.chain
    k = len(c)
    if k < 3 or len(set(c)) != k:
        return False
    pts = s.points
    xy = s.xy[list(c)]
    nxt = np.roll(xy, -1, axis=0)
    minx = np.minimum(xy[:, 0], nxt[:, 0])
    maxx = np.maximum(xy[:, 0], nxt[:, 0])
    miny = np.minimum(xy[:, 1], nxt[:, 1])
    maxy = np.maximum(xy[:, 1], nxt[:, 1])

    # adjacent edges u-v, v-w must not fold back onto each other
    for i in range(k):
        u, v, w = pts[c[i - 1]], pts[c[i]], pts[c[(i + 1) % k]]
        if orientation(u, v, w) == 0:
            if (u[0] - v[0]) * (w[0] - v[0]) + (u[1] - v[1]) * (w[1] - v[1]) > 0:
                return False
    if k == 3:
        return orientation(pts[c[0]], pts[c[1]], pts[c[2]]) != 0

    order = np.argsort(minx, kind="stable")
    sorted_minx = minx[order]
    for rank, i in enumerate(order):
        hi = np.searchsorted(sorted_minx, maxx[i], side="right")
        cand = order[rank + 1:hi]
        if cand.size == 0:
            continue
        cand = cand[(miny[cand] <= maxy[i]) & (maxy[cand] >= miny[i])]
        a, b = pts[c[i]], pts[c[(i + 1) % k]]
        for j in cand:
            j = int(j)
            if (j - i) % k in (1, k - 1):
                continue
            if segments_intersect(a, b, pts[c[j]], pts[c[(j + 1) % k]]):
                return False
    return True


# ---------------------------------------------------------------------------
# arcs, segments and visibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MajorSegment:
    """Region cut off by chord a-b and an arc of measure ``beta``.

    ``side`` is LEFT or RIGHT of the directed chord a -> b; hull edges use
    LEFT, the hull interior.
    """

    a: Point
    b: Point
    beta: float
    side: int = LEFT

    def __post_init__(self):
        if not 0 < self.beta < 2 * math.pi:
            raise ValueError(f"arc measure {self.beta} outside (0, 2pi)")
        if self.side not in (LEFT, RIGHT):
            raise ValueError("side must be LEFT or RIGHT")

    @property
    def threshold(self) -> float:
        """Inscribed angle seen from any point of the bounding arc."""
        return math.pi - self.beta / 2

    def radius(self) -> float:
        chord = math.dist(self.a, self.b)
        return chord / (2 * math.sin(self.threshold))


def on_open_chord(a, b, x) -> bool:
    return orientation(a, b, x) == 0 and _between(*a, *b, *x) and x != a and x != b


def in_major_segment(seg: MajorSegment, x: Sequence[float]) -> bool:
    """Open major segment membership; chord-interior points belong.

    Points within ANGLE_TOL of the bounding arc count as on the arc and are
    excluded.
    """
    o = orientation(seg.a, seg.b, x)
    if o == 0:
        return on_open_chord(seg.a, seg.b, x)
    if o != seg.side:
        return False
    return subtended_angle(seg.a, x, seg.b) > seg.threshold + ANGLE_TOL


def arc_measure_of(edge: tuple[Sequence[float], Sequence[float]], x: Sequence[float],
                   side: int = LEFT) -> float:
    """Measure at which the sweep arc on ``edge`` first touches ``x``."""
    a, b = edge
    o = orientation(a, b, x)
    if o == -side or (o == 0 and not on_open_chord(a, b, x)):
        raise WrongSide("point is never met by the sweep arc on this edge")
    return 2.0 * (math.pi - subtended_angle(a, x, b))


def _edge_blocks(a, x, b, p, q) -> bool:
    """Does segment pq meet the closed triangle a-x-b anywhere except a, b?"""
    tri = orientation(a, x, b)
    for v in (p, q):
        if v == a or v == b:
            continue
        o1, o2, o3 = orientation(a, x, v), orientation(x, b, v), orientation(b, a, v)
        if o1 != -tri and o2 != -tri and o3 != -tri:
            return True
    for anchor, tip in ((a, x), (b, x)):
        if p == anchor or q == anchor:
            # shares the anchor: only a collinear overlap along the side counts
            other = q if p == anchor else p
            if orientation(anchor, tip, other) == 0:
                dx, dy = tip[0] - anchor[0], tip[1] - anchor[1]
                if (other[0] - anchor[0]) * dx + (other[1] - anchor[1]) * dy > 0:
                    return True
            continue
        if segments_intersect(p, q, anchor, tip):
            return True
    return False


def triangle_clear(a, x, b, segments: Iterable[tuple[Sequence[float], Sequence[float]]]) -> bool:
    """True iff no segment touches triangle a-x-b other than at a or b.

    ``segments`` must not contain a-b itself. A degenerate triangle with x on
    the open segment a-b is clear unless some segment passes through x.
    """
    if orientation(a, x, b) == 0:
        if not on_open_chord(a, b, x):
            return False
        return not any(segments_intersect(p, q, x, x) for p, q in segments)
    return not any(_edge_blocks(a, x, b, p, q) for p, q in segments)


def triangle_visible(p: Polygon, s: PointSet, edge: tuple[int, int], x: Sequence[float]) -> bool:
    """Can edge a-b of ``p`` be replaced by a-x, x-b keeping ``p`` simple?

    ``x`` lies outside ``p``; with ``p`` counter-clockwise it must sit strictly
    to the right of the directed edge (or on its open interior).
    """
    ia, ib = edge
    pts = s.points
    a, b = pts[ia], pts[ib]
    c = p.chain
    k = len(c)
    pos = c.index(ia)
    if c[(pos + 1) % k] != ib:
        if c[(pos - 1) % k] == ib:
            a, b = b, a
            ia, ib = ib, ia
        else:
            raise ValueError(f"{edge} is not an edge of the polygon")
    o = orientation(a, b, x)
    if o == LEFT or (o == 0 and not on_open_chord(a, b, x)):
        return False
    others = [(pts[u], pts[v]) for u, v in p.edges() if (u, v) != (ia, ib)]
    return triangle_clear(a, x, b, others)
