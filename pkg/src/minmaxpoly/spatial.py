"""Uniform grid over segments and points for local triangle queries."""
from __future__ import annotations

import math

import numpy as np

from . import _kernels


class Grid:
    """Buckets segment ids by the cells they cross, point ids by their cell.

    Queries return a superset of the items meeting an axis-aligned box;
    callers still run exact tests. Cell (c, r) is number ``c * ny + r``.
    Each cell keeps doubly linked lists in flat arrays, so compiled code
    can walk them without building Python containers.
    """

    def __init__(self, xy: np.ndarray, target_per_cell: float = 2.0):
        self.xy = xy
        lo = xy.min(axis=0)
        hi = xy.max(axis=0)
        span = max(float(hi[0] - lo[0]), float(hi[1] - lo[1]), 1e-300)
        area = max(float((hi[0] - lo[0]) * (hi[1] - lo[1])), span * span * 1e-6)
        h = math.sqrt(area * target_per_cell / len(xy))
        self.x0, self.y0 = float(lo[0]), float(lo[1])
        self.h = h
        self.nx = int((hi[0] - lo[0]) / h) + 1
        self.ny = int((hi[1] - lo[1]) / h) + 1
        cells = self.nx * self.ny
        n = len(xy)
        # segment entries: one per (segment, cell)
        self.seg_head = np.full(cells, -1, dtype=np.int64)
        self.ent_next = np.full(64, -1, dtype=np.int64)
        self.ent_prev = np.full(64, -1, dtype=np.int64)
        self.ent_item = np.zeros(64, dtype=np.int64)
        self.ent_cell = np.zeros(64, dtype=np.int64)
        self._spare: list[int] = []
        self._used = 0
        self.seg_entries: dict[int, list[int]] = {}
        # points: at most one entry each, indexed by point id
        self.pt_head = np.full(cells, -1, dtype=np.int64)
        self.pt_next = np.full(n, -1, dtype=np.int64)
        self.pt_prev = np.full(n, -1, dtype=np.int64)
        self.pt_cell = np.full(n, -1, dtype=np.int64)
        # per-query marks deduplicate segments spanning several cells
        self.seg_mark = np.zeros(64, dtype=np.int64)
        self.stamp = 0
        self.seg_buf = np.zeros(64, dtype=np.int64)
        self.pt_buf = np.zeros(n, dtype=np.int64)

    def _col(self, x: float) -> int:
        c = int((x - self.x0) / self.h)
        return 0 if c < 0 else (self.nx - 1 if c >= self.nx else c)

    def _row(self, y: float) -> int:
        r = int((y - self.y0) / self.h)
        return 0 if r < 0 else (self.ny - 1 if r >= self.ny else r)

    def _cover(self, i: int, j: int) -> list[int]:
        (px, py), (qx, qy) = self.xy[i], self.xy[j]
        if px > qx:
            px, py, qx, qy = qx, qy, px, py
        ny = self.ny
        c0, c1 = self._col(px), self._col(qx)
        ra, rb = self._row(py), self._row(qy)
        r0, r1 = (ra, rb) if ra <= rb else (rb, ra)
        if c1 - c0 <= 1 or c0 == c1:
            # short segment: its bounding rectangle of cells
            return [c * ny + r for c in range(c0, c1 + 1) for r in range(r0, r1 + 1)]
        cells = []
        slope = (qy - py) / (qx - px)
        for c in range(c0, c1 + 1):
            # y-extent of the segment inside column c, padded by a row
            xa = max(px, self.x0 + c * self.h)
            xb = min(qx, self.x0 + (c + 1) * self.h)
            ya = py + (xa - px) * slope
            yb = py + (xb - px) * slope
            r0, r1 = sorted((self._row(ya), self._row(yb)))
            r0, r1 = max(r0 - 1, 0), min(r1 + 1, ny - 1)
            cells.extend(c * ny + r for r in range(r0, r1 + 1))
        return cells

    def _grow_entries(self):
        k = len(self.ent_next)
        self.ent_next = np.concatenate([self.ent_next, np.full(k, -1, dtype=np.int64)])
        self.ent_prev = np.concatenate([self.ent_prev, np.full(k, -1, dtype=np.int64)])
        self.ent_item = np.concatenate([self.ent_item, np.zeros(k, dtype=np.int64)])
        self.ent_cell = np.concatenate([self.ent_cell, np.zeros(k, dtype=np.int64)])

    def add_segment(self, sid: int, i: int, j: int):
        if sid >= len(self.seg_mark):
            size = max(2 * len(self.seg_mark), sid + 1)
            self.seg_mark = np.concatenate([self.seg_mark,
                                            np.zeros(size - len(self.seg_mark), dtype=np.int64)])
            self.seg_buf = np.zeros(size, dtype=np.int64)
        cells = self._cover(i, j)
        ids = []
        for cell in cells:
            if self._spare:
                e = self._spare.pop()
            else:
                if self._used == len(self.ent_next):
                    self._grow_entries()
                e = self._used
                self._used += 1
            ids.append(e)
        _kernels.link_entries(self.seg_head, self.ent_next, self.ent_prev, self.ent_item,
                              self.ent_cell, np.array(ids, dtype=np.int64),
                              np.array(cells, dtype=np.int64), sid)
        self.seg_entries[sid] = ids

    def remove_segment(self, sid: int):
        ids = self.seg_entries.pop(sid)
        _kernels.unlink_entries(self.seg_head, self.ent_next, self.ent_prev, self.ent_cell,
                                np.array(ids, dtype=np.int64))
        self._spare.extend(ids)

    def add_point(self, i: int):
        if self.pt_cell[i] >= 0:
            return
        x, y = self.xy[i]
        cell = self._col(x) * self.ny + self._row(y)
        head = self.pt_head[cell]
        self.pt_cell[i] = cell
        self.pt_prev[i] = -1
        self.pt_next[i] = head
        if head >= 0:
            self.pt_prev[head] = i
        self.pt_head[cell] = i

    def remove_point(self, i: int):
        cell = self.pt_cell[i]
        if cell < 0:
            return
        prev, nxt = self.pt_prev[i], self.pt_next[i]
        if prev >= 0:
            self.pt_next[prev] = nxt
        else:
            self.pt_head[cell] = nxt
        if nxt >= 0:
            self.pt_prev[nxt] = prev
        self.pt_cell[i] = -1

    def cell_of(self, x: float, y: float) -> tuple[int, int]:
        return self._col(x), self._row(y)

    def window(self, lo_x, hi_x, lo_y, hi_y, near=None, exclude=None) -> tuple[int, ...]:
        """Cell range of a box and the query mode, as passed to the kernels.

        Mode 1 visits only the 3x3 block of cells around ``near``; mode 2
        skips the block around ``exclude``.
        """
        c0, c1 = self._col(lo_x), self._col(hi_x)
        r0, r1 = self._row(lo_y), self._row(hi_y)
        if near is not None:
            return c0, c1, r0, r1, 1, near[0], near[1]
        if exclude is not None:
            return c0, c1, r0, r1, 2, exclude[0], exclude[1]
        return c0, c1, r0, r1, 0, 0, 0

    def next_stamp(self) -> int:
        self.stamp += 1
        return self.stamp

    def gather(self, *window) -> tuple[np.ndarray, np.ndarray]:
        """Segment ids and point ids in a window, as fresh arrays."""
        ns, npt = _kernels.gather(self.seg_head, self.ent_next, self.ent_item, self.pt_head,
                                  self.pt_next, self.seg_mark, self.next_stamp(), self.ny,
                                  *window, self.seg_buf, self.pt_buf)
        return self.seg_buf[:ns].copy(), self.pt_buf[:npt].copy()

    def query(self, lo_x, hi_x, lo_y, hi_y, near=None, exclude=None) -> tuple[set[int], set[int]]:
        """Segment ids and point ids in cells touching the box.

        With ``near=(c, r)`` only the 3x3 block of cells around that cell
        (clipped to the box) is visited; ``exclude`` skips that same block.
        """
        segs, pts = self.gather(*self.window(lo_x, hi_x, lo_y, hi_y, near, exclude))
        return set(segs.tolist()), set(pts.tolist())
