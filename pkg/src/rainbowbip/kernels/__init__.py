"""Hot decision kernels with two interchangeable backends.

Both backends answer the same two questions about an incidence matrix:
whether every vertex pair sits within a hop limit (``diam_le``), and whether a
fixed coloring gives every pair a rainbow path within a length cap
(``rainbow_k1``, the k=1 certificate).  ``numba_impl`` runs jit-compiled
bitset loops; ``numpy_impl`` expresses the same logic as boolean matrix
products.  The env var RAINBOW_BACKEND picks one: "numba", "numpy", or
"auto" (numba when importable, else numpy).

The closed forms only cover length caps up to 4: a walk of at most 4 edges
with pairwise distinct colors can never revisit a vertex, since any revisit
would immediately reuse an edge and hence a color, so color-distinct walk
reachability coincides with rainbow path reachability there.  Longer caps or
k > 1 fall back to the generic path search in ``rainbow``.
"""

from __future__ import annotations

import os

import numpy as np

_VALID = ("auto", "numba", "numpy")
_active: tuple[str, object] | None = None


def _resolve() -> tuple[str, object]:
    choice = os.environ.get("RAINBOW_BACKEND", "auto").strip().lower() or "auto"
    if choice not in _VALID:
        raise ValueError(f"RAINBOW_BACKEND must be one of {_VALID}, got {choice!r}")
    if choice in ("auto", "numba"):
        try:
            from rainbowbip.kernels import numba_impl

            return "numba", numba_impl
        except ImportError:
            if choice == "numba":
                raise
    from rainbowbip.kernels import numpy_impl

    return "numpy", numpy_impl


def _backend() -> tuple[str, object]:
    global _active
    if _active is None:
        _active = _resolve()
    return _active


def backend_name() -> str:
    return _backend()[0]


def reset_backend() -> None:
    """Drop the cached choice so RAINBOW_BACKEND is consulted again."""
    global _active
    _active = None


def fast_rainbow_supported(k: int, max_len: int, num_colors: int) -> bool:
    return k == 1 and 1 <= max_len <= 4 and 1 <= num_colors <= 8


def diam_le(adj: np.ndarray, limit: int) -> bool:
    """Is every pairwise hop distance at most ``limit``?"""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    return _backend()[1].diam_le(adj, limit)


def rainbow_k1(adj: np.ndarray, colors: np.ndarray, num_colors: int, max_len: int) -> bool:
    """Does every vertex pair have a rainbow path of length <= max_len?

    ``colors`` assigns a color in 1..num_colors to every potential edge; only
    entries where ``adj`` is True matter.
    """
    if not fast_rainbow_supported(1, max_len, num_colors):
        raise ValueError(
            f"fast kernel needs max_len <= 4 and num_colors <= 8, got {max_len}, {num_colors}"
        )
    if adj.shape != colors.shape:
        raise ValueError("adjacency and color matrices must share a shape")
    return _backend()[1].rainbow_k1(adj, colors, num_colors, max_len)
