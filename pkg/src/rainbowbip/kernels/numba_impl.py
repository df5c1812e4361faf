"""Jit-compiled backend: packed-bitset pair logic plus a CSR BFS fallback.

Row and column incidence masks are packed into uint64 words (little-endian
bit order), so pair checks reduce to a handful of AND/ANDNOT word operations.
Hop limits 2 and 3, the ones the sweeps actually exercise, use direct bitset
intersection tests; other limits fall back to per-source BFS.  All kernels
release the GIL, letting the sweep harness thread across trials.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ZERO = np.uint64(0)


def _pack_rows(mask: np.ndarray) -> np.ndarray:
    """Pack a boolean (r, c) matrix into (r, ceil(c/64)) uint64 rows."""
    r, c = mask.shape
    words = (c + 63) // 64
    if c != words * 64:
        padded = np.zeros((r, words * 64), dtype=bool)
        padded[:, :c] = mask
        mask = padded
    packed = np.packbits(mask, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)


@njit(cache=True, nogil=True)
def _diam_bitset(adj, row_any, col_any, indptr_v, idx_v, limit):
    """Hop-limit check for limit 2 or 3 on packed incidence rows.

    Same-side pairs are within 2 iff they share a neighbor; a non-adjacent
    cross pair is within 3 iff some neighbor of u meets a neighbor of v.
    Larger same-side / cross distances are impossible under these limits
    because bipartite distances have fixed parity.
    """
    m, wn = row_any.shape
    n, wm = col_any.shape
    for i in range(m):
        for j in range(i + 1, m):
            ok = False
            for w in range(wn):
                if row_any[i, w] & row_any[j, w]:
                    ok = True
                    break
            if not ok:
                return False
    for i in range(n):
        for j in range(i + 1, n):
            ok = False
            for w in range(wm):
                if col_any[i, w] & col_any[j, w]:
                    ok = True
                    break
            if not ok:
                return False
    if limit == 2:
        for u in range(m):
            for v in range(n):
                if not adj[u, v]:
                    return False
        return True
    # reach2[v] = V-side vertices two steps from v, as a packed row
    reach2 = np.zeros((n, wn), np.uint64)
    for v in range(n):
        for jj in range(indptr_v[v], indptr_v[v + 1]):
            y = idx_v[jj]
            for w in range(wn):
                reach2[v, w] |= row_any[y, w]
    for u in range(m):
        for v in range(n):
            if adj[u, v]:
                continue
            ok = False
            for w in range(wn):
                if row_any[u, w] & reach2[v, w]:
                    ok = True
                    break
            if not ok:
                return False
    return True


@njit(cache=True, nogil=True)
def _all_pairs_within(indptr_u, idx_u, indptr_v, idx_v, m, n, limit):
    total = m + n
    dist = np.empty(total, np.int32)
    queue = np.empty(total, np.int32)
    for src in range(total):
        dist[:] = -1
        dist[src] = 0
        queue[0] = src
        head, tail, seen = 0, 1, 1
        while head < tail:
            cur = queue[head]
            head += 1
            dcur = dist[cur]
            if dcur >= limit:
                break  # queue is ordered by distance; nothing closer remains
            if cur < m:
                for j in range(indptr_u[cur], indptr_u[cur + 1]):
                    nb = m + idx_u[j]
                    if dist[nb] < 0:
                        dist[nb] = dcur + 1
                        queue[tail] = nb
                        tail += 1
                        seen += 1
            else:
                for j in range(indptr_v[cur - m], indptr_v[cur - m + 1]):
                    nb = idx_v[j]
                    if dist[nb] < 0:
                        dist[nb] = dcur + 1
                        queue[tail] = nb
                        tail += 1
                        seen += 1
        if seen < total:
            return False
    return True


def diam_le(adj: np.ndarray, limit: int) -> bool:
    m, n = adj.shape
    deg_u = adj.sum(axis=1)
    deg_v = adj.sum(axis=0)
    if (deg_u == 0).any() or (deg_v == 0).any():
        return False
    us, vs = np.nonzero(adj)
    order = np.argsort(vs, kind="stable")
    indptr_v = np.zeros(n + 1, np.int64)
    np.cumsum(deg_v, out=indptr_v[1:])
    idx_v = us[order].astype(np.int32)
    if limit in (2, 3):
        adj = np.ascontiguousarray(adj, dtype=bool)
        return bool(
            _diam_bitset(adj, _pack_rows(adj), _pack_rows(adj.T), indptr_v, idx_v, limit)
        )
    indptr_u = np.zeros(m + 1, np.int64)
    np.cumsum(deg_u, out=indptr_u[1:])
    idx_u = vs.astype(np.int32)
    return bool(_all_pairs_within(indptr_u, idx_u, indptr_v, idx_v, m, n, limit))


@njit(cache=True, nogil=True)
def _same_side_two(rc, rany, nc, wn):
    """Pairs of row-side vertices joined by a two-edge path with two colors.

    rc: (C, r, wn) per-color row masks; rany: (r, wn) any-color masks.
    Returns a (r, r) bool table (diagonal True).
    """
    r = rany.shape[0]
    good = np.zeros((r, r), np.bool_)
    for i in range(r):
        good[i, i] = True
        for j in range(i + 1, r):
            hit = False
            for c in range(nc):
                for w in range(wn):
                    if rc[c, i, w] & (rany[j, w] & ~rc[c, j, w]):
                        hit = True
                        break
                if hit:
                    break
            good[i, j] = hit
            good[j, i] = hit
    return good


@njit(cache=True, nogil=True)
def _two_step_masks(rc, sc, nc, wn, wm):
    """steps[i, a, b] = row vertices x with a walk i -(a)- mid -(b)- x."""
    r = rc.shape[1]
    steps = np.zeros((r, nc, nc, wm), np.uint64)
    for i in range(r):
        for a in range(nc):
            for w in range(wn):
                bits = rc[a, i, w]
                if bits == _ZERO:
                    continue
                for k in range(64):
                    if (bits >> np.uint64(k)) & _ONE:
                        mid = (w << 6) + k
                        for b in range(nc):
                            for ww in range(wm):
                                steps[i, a, b, ww] |= sc[b, mid, ww]
    return steps


@njit(cache=True, nogil=True)
def _same_side_four(good, steps, nc, wm):
    """Extend the two-path table with four-edge rainbow paths (colors a,b,c,e)."""
    r = good.shape[0]
    for i in range(r):
        for j in range(i + 1, r):
            if good[i, j]:
                continue
            hit = False
            for a in range(nc):
                for b in range(nc):
                    if b == a:
                        continue
                    for c in range(nc):
                        if c == a or c == b:
                            continue
                        for e in range(nc):
                            if e == a or e == b or e == c:
                                continue
                            for ww in range(wm):
                                if steps[i, a, b, ww] & steps[j, e, c, ww]:
                                    hit = True
                                    break
                            if hit:
                                break
                        if hit:
                            break
                    if hit:
                        break
                if hit:
                    break
            if not hit:
                return False
            good[i, j] = True
            good[j, i] = True
    return True


@njit(cache=True, nogil=True)
def _cross_pairs_ok(adj, steps, sc, sany, nc, wm, max_len):
    """Every cross pair adjacent, or joined by a three-edge rainbow path."""
    m, n = adj.shape
    for u in range(m):
        for v in range(n):
            if adj[u, v]:
                continue
            if max_len < 3:
                return False
            hit = False
            for a in range(nc):
                for b in range(nc):
                    if b == a:
                        continue
                    for ww in range(wm):
                        t = sany[v, ww] & ~sc[a, v, ww] & ~sc[b, v, ww]
                        if steps[u, a, b, ww] & t:
                            hit = True
                            break
                    if hit:
                        break
                if hit:
                    break
            if not hit:
                return False
    return True


def rainbow_k1(adj: np.ndarray, colors: np.ndarray, num_colors: int, max_len: int) -> bool:
    adj = np.ascontiguousarray(adj, dtype=bool)
    m, n = adj.shape
    wn = (n + 63) // 64
    wm = (m + 63) // 64
    row_any = _pack_rows(adj)
    col_any = _pack_rows(adj.T)
    row_c = np.empty((num_colors, m, wn), np.uint64)
    col_c = np.empty((num_colors, n, wm), np.uint64)
    for c in range(1, num_colors + 1):
        mask = adj & (colors == c)
        row_c[c - 1] = _pack_rows(mask)
        col_c[c - 1] = _pack_rows(mask.T)

    if m >= 2:
        if max_len < 2:
            return False
        good_u = _same_side_two(row_c, row_any, num_colors, wn)
    else:
        good_u = np.ones((1, 1), bool)
    if n >= 2:
        if max_len < 2:
            return False
        good_v = _same_side_two(col_c, col_any, num_colors, wm)
    else:
        good_v = np.ones((1, 1), bool)

    need_u4 = not good_u.all()
    need_v4 = not good_v.all()
    cross_needs_steps = max_len >= 3 and not adj.all()
    if (need_u4 or need_v4) and max_len < 4:
        return False

    steps_u = None
    if cross_needs_steps or need_u4:
        steps_u = _two_step_masks(row_c, col_c, num_colors, wn, wm)
    if need_u4 and not _same_side_four(good_u, steps_u, num_colors, wm):
        return False
    if need_v4:
        steps_v = _two_step_masks(col_c, row_c, num_colors, wm, wn)
        if not _same_side_four(good_v, steps_v, num_colors, wn):
            return False

    if not adj.all():
        if max_len < 3:
            return False
        if steps_u is None:
            steps_u = _two_step_masks(row_c, col_c, num_colors, wn, wm)
        if not _cross_pairs_ok(adj, steps_u, col_c, col_any, num_colors, wm, max_len):
            return False
    return True
