"""Vectorized numpy backend: boolean reachability as float32 matrix products.

Same-side reachability composes the two-step operator A A^T; cross-side
reachability appends one more edge.  Rainbow checks enumerate small ordered
color tuples and compose the per-color incidence matrices, which is exact for
length caps up to 4 (distinct colors force simple walks there).
"""

from __future__ import annotations

import itertools

import numpy as np


def _bool_mm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5


def diam_le(adj: np.ndarray, limit: int) -> bool:
    m, n = adj.shape
    if not adj.any(axis=1).all() or not adj.any(axis=0).all():
        return False  # isolated vertex
    if m + n == 2:
        return True  # single edge
    if limit < 2 and (m >= 2 or n >= 2):
        return False  # some same-side pair needs two hops
    two_u = _bool_mm(adj, adj.T)  # u ~ u' via a shared neighbor
    two_v = _bool_mm(adj.T, adj)
    reach_u = two_u
    for _ in range(limit // 2 - 1):
        if reach_u.all():
            break
        reach_u = _bool_mm(reach_u, two_u)
    if not reach_u.all():
        return False
    reach_v = two_v
    for _ in range(limit // 2 - 1):
        if reach_v.all():
            break
        reach_v = _bool_mm(reach_v, two_v)
    if not reach_v.all():
        return False
    cross = adj
    odd = limit if limit % 2 == 1 else limit - 1
    for _ in range((odd - 1) // 2):
        if cross.all():
            break
        cross = _bool_mm(two_u, cross)
    return bool(cross.all())


def _per_color(adj: np.ndarray, colors: np.ndarray, num_colors: int) -> list[np.ndarray]:
    return [adj & (colors == c) for c in range(1, num_colors + 1)]


def _same_side_ok(by_color: list[np.ndarray], adj: np.ndarray, max_len: int) -> bool:
    """Every same-side pair (rows of adj) reachable by a rainbow path <= max_len."""
    rows = adj.shape[0]
    if rows < 2:
        return True
    if max_len < 2:
        return False
    good = np.zeros((rows, rows), dtype=bool)
    for ac in by_color:
        good |= _bool_mm(ac, (adj ^ ac).T)
    np.fill_diagonal(good, True)
    if good.all():
        return True
    if max_len < 4:
        return False
    pair_step = {}
    for a, b in itertools.permutations(range(len(by_color)), 2):
        pair_step[(a, b)] = _bool_mm(by_color[a], by_color[b].T)
    for a, b, c, e in itertools.permutations(range(len(by_color)), 4):
        good |= _bool_mm(pair_step[(a, b)], pair_step[(e, c)].T)
        if good.all():
            return True
    return bool(good.all())


def _cross_ok(by_color: list[np.ndarray], adj: np.ndarray, max_len: int) -> bool:
    good = adj.copy()
    if good.all():
        return True
    if max_len < 3:
        return False
    for a, b in itertools.permutations(range(len(by_color)), 2):
        third = adj & ~by_color[a] & ~by_color[b]
        good |= _bool_mm(_bool_mm(by_color[a], by_color[b].T), third)
        if good.all():
            return True
    return bool(good.all())


def rainbow_k1(adj: np.ndarray, colors: np.ndarray, num_colors: int, max_len: int) -> bool:
    by_color = _per_color(adj, colors, num_colors)
    if not _cross_ok(by_color, adj, max_len):
        return False
    if not _same_side_ok(by_color, adj, max_len):
        return False
    by_color_t = [ac.T for ac in by_color]
    return _same_side_ok(by_color_t, adj.T, max_len)
