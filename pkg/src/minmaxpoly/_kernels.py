"""Compiled loops for the insertion engine's hot scans.

The kernels use the float orientation filter only. Anything the filter
cannot certify is handed back to the caller (``facing``, ``triangle_status``)
or treated as not blocking (``also_blocks``), so none needs exact arithmetic.
"""
import numba
import numpy as np

_EPS = 2.0 ** -53
_BOUND = (3.0 + 16.0 * _EPS) * _EPS


@numba.njit(cache=True, inline="always")
def _sure(ax, ay, bx, by, cx, cy):
    detleft = (bx - ax) * (cy - ay)
    detright = (by - ay) * (cx - ax)
    det = detleft - detright
    bound = _BOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return 0


@numba.njit(cache=True)
def facing(ax, ay, bx, by, px, py, floor, out_idx, out_beta):
    """Edges a[i]-b[i] with x = (px, py) surely on their left and beta >= floor[i].

    Edges with an infinite floor are skipped outright. Edges the filter
    cannot classify are reported as ``-1 - i``. Returns the number of
    entries written.
    """
    n = 0
    for i in range(ax.shape[0]):
        if floor[i] == np.inf:
            continue
        ux = ax[i] - px
        uy = ay[i] - py
        vx = bx[i] - px
        vy = by[i] - py
        detleft = ux * vy
        detright = uy * vx
        cross = detleft - detright
        bound = _BOUND * (abs(detleft) + abs(detright))
        dot = ux * vx + uy * vy
        if cross > bound:
            beta = np.arctan2(cross, dot)
            if beta >= floor[i]:
                out_idx[n] = i
                out_beta[n] = beta
                n += 1
        elif -cross <= bound:
            out_idx[n] = -1 - i
            out_beta[n] = np.arctan2(abs(cross), dot)
            n += 1
    return n


@numba.njit(cache=True, inline="always")
def _inside(ax, ay, px, py, bx, by, qx, qy):
    s1 = _sure(ax, ay, px, py, qx, qy)
    s2 = _sure(px, py, bx, by, qx, qy)
    s3 = _sure(bx, by, ax, ay, qx, qy)
    return (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0)


@numba.njit(cache=True)
def also_blocks(ax, ay, bx, by, px, py, qx, qy, rx, ry, is_point, dead):
    """Mark triangles a[i]-x-b[i] surely obstructed by one item.

    A point q blocks when strictly inside. A segment q-r blocks when an
    endpoint is strictly inside or it properly crosses a side through x.
    """
    ox = _sure(qx, qy, rx, ry, px, py)
    for i in range(ax.shape[0]):
        if dead[i]:
            continue
        if _inside(ax[i], ay[i], px, py, bx[i], by[i], qx, qy):
            dead[i] = True
            continue
        if is_point:
            continue
        if _inside(ax[i], ay[i], px, py, bx[i], by[i], rx, ry):
            dead[i] = True
            continue
        if ox == 0:
            continue
        for side in range(2):
            sx = ax[i] if side == 0 else bx[i]
            sy = ay[i] if side == 0 else by[i]
            if _sure(qx, qy, rx, ry, sx, sy) == -ox:
                o1 = _sure(px, py, sx, sy, qx, qy)
                o2 = _sure(px, py, sx, sy, rx, ry)
                if o1 * o2 < 0:
                    dead[i] = True
                    break


@numba.njit(cache=True)
def triangle_status(xs, ys, ends, segs, waiting, ia, ix, ib, skip, out):
    """Classify items against triangle a-x-b, counter-clockwise and non-degenerate.

    ``out`` gets one entry per waiting point, then one per segment:
    0 surely clear, 1 surely obstructing, 2 undecided by the filter.
    Returns the position of the first sure obstruction, or -1.
    """
    ax, ay, px, py, bx, by = xs[ia], ys[ia], xs[ix], ys[ix], xs[ib], ys[ib]
    lox, hix = min(ax, px, bx), max(ax, px, bx)
    loy, hiy = min(ay, py, by), max(ay, py, by)
    nw = waiting.shape[0]
    for t in range(nw):
        q = waiting[t]
        out[t] = 0
        if q == ix:
            continue
        qx, qy = xs[q], ys[q]
        if qx < lox or qx > hix or qy < loy or qy > hiy:
            continue
        s1 = _sure(ax, ay, px, py, qx, qy)
        s2 = _sure(px, py, bx, by, qx, qy)
        s3 = _sure(bx, by, ax, ay, qx, qy)
        if s1 < 0 or s2 < 0 or s3 < 0:
            continue
        if s1 > 0 and s2 > 0 and s3 > 0:
            out[t] = 1
            return t
        out[t] = 2
    for t in range(segs.shape[0]):
        k = segs[t]
        out[nw + t] = 0
        if k == skip:
            continue
        u, w = ends[k, 0], ends[k, 1]
        if u == ia or u == ib or w == ia or w == ib:
            anchor, other = (u, w) if (u == ia or u == ib) else (w, u)
            if other == ia or other == ib:
                continue
            qx, qy = xs[other], ys[other]
            s3 = _sure(bx, by, ax, ay, qx, qy)
            if anchor == ia:
                s = _sure(ax, ay, px, py, qx, qy)
            else:
                s = _sure(px, py, bx, by, qx, qy)
            if s == 0 or s3 == 0:
                out[nw + t] = 2
            elif s > 0 and s3 > 0:
                out[nw + t] = 1
                return nw + t
            continue
        ux, uy, wx, wy = xs[u], ys[u], xs[w], ys[w]
        if ((ux < lox and wx < lox) or (ux > hix and wx > hix)
                or (uy < loy and wy < loy) or (uy > hiy and wy > hiy)):
            continue
        maybe = False
        for side in range(3):
            if side == 0:
                s_u, s_w = _sure(ax, ay, px, py, ux, uy), _sure(ax, ay, px, py, wx, wy)
            elif side == 1:
                s_u, s_w = _sure(px, py, bx, by, ux, uy), _sure(px, py, bx, by, wx, wy)
            else:
                s_u, s_w = _sure(bx, by, ax, ay, ux, uy), _sure(bx, by, ax, ay, wx, wy)
            if s_u < 0 and s_w < 0:
                break
            if s_u <= 0 and s_w <= 0:
                maybe = True
        else:
            o1 = _sure(ux, uy, wx, wy, ax, ay)
            o2 = _sure(ux, uy, wx, wy, px, py)
            o3 = _sure(ux, uy, wx, wy, bx, by)
            if (o1 > 0 and o2 > 0 and o3 > 0) or (o1 < 0 and o2 < 0 and o3 < 0):
                continue
            if maybe or (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0):
                out[nw + t] = 2
                continue
            out[nw + t] = 1
            return nw + t
    return -1



@numba.njit(cache=True)
def first_clear(xs, ys, ends, segs, waiting, ua, ub, ix, skips, coords, dead, start, out):
    """First i >= start, not dead, whose triangle ua[i]-x-ub[i] nothing surely obstructs.

    Every item is checked, so callers pass all live segments and waiting
    points. Each obstruction found also marks the later triangles it surely
    blocks. Returns (i, sure): ``sure`` is False when the triangle is
    degenerate or the filter left an item undecided; i is -1 when none.
    """
    ax, ay, bx, by = coords
    px, py = xs[ix], ys[ix]
    nw = waiting.shape[0]
    for i in range(start, ua.shape[0]):
        if dead[i]:
            continue
        ia, ib = ua[i], ub[i]
        o = _sure(xs[ia], ys[ia], px, py, xs[ib], ys[ib])
        if o == 0:
            return i, False
        if o < 0:
            ia, ib = ib, ia
        t = triangle_status(xs, ys, ends, segs, waiting, ia, ix, ib, skips[i], out)
        if t >= 0:
            dead[i] = True
            if t < nw:
                q = waiting[t]
                qx, qy, rx, ry = xs[q], ys[q], xs[q], ys[q]
            else:
                k = segs[t - nw]
                qx, qy, rx, ry = xs[ends[k, 0]], ys[ends[k, 0]], xs[ends[k, 1]], ys[ends[k, 1]]
            also_blocks(ax[i + 1:], ay[i + 1:], bx[i + 1:], by[i + 1:], px, py,
                        qx, qy, rx, ry, t < nw, dead[i + 1:])
            continue
        for t in range(out.shape[0]):
            if out[t] == 2:
                return i, False
        return i, True
    return -1, True


# -- grid storage -------------------------------------------------------------

@numba.njit(cache=True)
def link_entries(head, nxt, prev, item, cell_of, ids, cells, sid):
    for t in range(ids.shape[0]):
        e, cell = ids[t], cells[t]
        item[e] = sid
        cell_of[e] = cell
        prev[e] = -1
        h = head[cell]
        nxt[e] = h
        if h >= 0:
            prev[h] = e
        head[cell] = e


@numba.njit(cache=True)
def unlink_entries(head, nxt, prev, cell_of, ids):
    for t in range(ids.shape[0]):
        e = ids[t]
        p, q = prev[e], nxt[e]
        if p >= 0:
            nxt[p] = q
        else:
            head[cell_of[e]] = q
        if q >= 0:
            prev[q] = p


@numba.njit(cache=True)
def gather(seg_head, ent_next, ent_item, pt_head, pt_next, seg_mark, stamp, ny,
           c0, c1, r0, r1, mode, kc, kr, seg_out, pt_out):
    """Collect the items of cells c0..c1 x r0..r1, each segment once.

    Mode 1 keeps only cells within one of (kc, kr), mode 2 drops them.
    Returns the numbers of segments and points written.
    """
    if mode == 1:
        c0, c1 = max(c0, kc - 1), min(c1, kc + 1)
        r0, r1 = max(r0, kr - 1), min(r1, kr + 1)
    ns = 0
    npt = 0
    for c in range(c0, c1 + 1):
        for r in range(r0, r1 + 1):
            if mode == 2 and abs(c - kc) <= 1 and abs(r - kr) <= 1:
                continue
            cell = c * ny + r
            e = seg_head[cell]
            while e >= 0:
                k = ent_item[e]
                if seg_mark[k] != stamp:
                    seg_mark[k] = stamp
                    seg_out[ns] = k
                    ns += 1
                e = ent_next[e]
            q = pt_head[cell]
            while q >= 0:
                pt_out[npt] = q
                npt += 1
                q = pt_next[q]
    return ns, npt


@numba.njit(cache=True)
def box_status(seg_head, ent_next, ent_item, pt_head, pt_next, seg_mark, stamp, ny,
               c0, c1, r0, r1, mode, kc, kr, seg_out, pt_out,
               xs, ys, ends, ia, ix, ib, skip, out):
    """``gather`` followed by ``triangle_status`` on what was gathered.

    Returns (hit, ns, npt) with hit as in ``triangle_status``.
    """
    ns, npt = gather(seg_head, ent_next, ent_item, pt_head, pt_next, seg_mark, stamp, ny,
                     c0, c1, r0, r1, mode, kc, kr, seg_out, pt_out)
    hit = triangle_status(xs, ys, ends, seg_out[:ns], pt_out[:npt], ia, ix, ib, skip, out)
    return hit, ns, npt
