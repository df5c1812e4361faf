"""Rainbow k-connectivity decisions on colored bipartite graphs.

A path is rainbow when its edge colors are pairwise distinct.  The decision
chain is: enumerate the rainbow u-v paths up to a length cap, then search for
k of them that are pairwise internally vertex-disjoint (backtracking with a
greedy packing bound).  A tiny-graph exhaustive search over canonical
colorings provides the exact rainbow k-connection number.

Witnesses are re-verified by checkers that share no logic with the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from rainbowbip.graphs import (
    U_SIDE,
    BipartiteGraph,
    EdgeColoring,
    Path,
    Vertex,
    bfs_distances,
    vertex_pairs,
)


class ResourceLimitError(RuntimeError):
    """Raised when an exhaustive search would exceed its configured budget."""


@dataclass(frozen=True)
class DisjointWitness:
    """k pairwise internally vertex-disjoint rainbow paths between two vertices."""

    endpoints: tuple[Vertex, Vertex]
    k: int
    paths: tuple[Path, ...]


def _edge_color(coloring: EdgeColoring, a: Vertex, b: Vertex) -> int:
    (s1, i1), (_, i2) = a, b
    return coloring.color(i1, i2) if s1 == U_SIDE else coloring.color(i2, i1)


def is_rainbow(path: Path, coloring: EdgeColoring) -> bool:
    """True iff all edge colors along the path are pairwise distinct."""
    colors = [coloring.color(u, v) for u, v in path.edges()]
    return len(set(colors)) == len(colors)


def enumerate_rainbow_paths(
    g: BipartiteGraph, coloring: EdgeColoring, u: Vertex, v: Vertex, max_len: int
) -> list[Path]:
    """All simple rainbow u-v paths with at most max_len edges.

    Deterministic output: sorted lexicographically by vertex sequence.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    g._require_vertex(u)
    g._require_vertex(v)

    found: list[Path] = []
    trail: list[Vertex] = [u]
    on_trail = {u}
    used_colors: set[int] = set()

    def extend(cur: Vertex) -> None:
        room = len(trail) < max_len  # may we add another internal vertex?
        for nb in g.neighbors(cur):
            c = _edge_color(coloring, cur, nb)
            if c in used_colors:
                continue
            if nb == v:
                found.append(Path(tuple(trail) + (v,)))
                continue
            if not room or nb in on_trail:
                continue
            trail.append(nb)
            on_trail.add(nb)
            used_colors.add(c)
            extend(nb)
            used_colors.discard(c)
            on_trail.discard(nb)
            trail.pop()

    extend(u)
    found.sort(key=lambda p: p.vertices)
    return found


def _internals(path: Path) -> frozenset[Vertex]:
    return frozenset(path.internal_vertices)


def k_disjoint_rainbow_exists(
    g: BipartiteGraph,
    coloring: EdgeColoring,
    u: Vertex,
    v: Vertex,
    k: int,
    max_len: int,
) -> tuple[bool, DisjointWitness | None]:
    """Do k internally vertex-disjoint rainbow u-v paths of length <= max_len exist?

    Candidate paths are scanned shortest-first (ties broken lexicographically);
    a greedy disjoint packing accepts early, and the backtracking search prunes
    branches that cannot reach k paths.  The first witness found is returned.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    paths = enumerate_rainbow_paths(g, coloring, u, v, max_len)
    paths.sort(key=lambda p: (p.length, p.vertices))
    if len(paths) < k:
        return False, None
    internals = [_internals(p) for p in paths]

    def greedy_from(start: int, blocked: frozenset[Vertex]) -> list[int]:
        picked = []
        occupied = set(blocked)
        for i in range(start, len(paths)):
            if occupied.isdisjoint(internals[i]):
                picked.append(i)
                occupied |= internals[i]
        return picked

    def search(start: int, chosen: list[int], blocked: frozenset[Vertex]) -> list[int] | None:
        extra = greedy_from(start, blocked)
        if len(chosen) + len(extra) >= k:
            return chosen + extra[: k - len(chosen)]
        if len(chosen) + (len(paths) - start) < k:
            return None
        for i in range(start, len(paths)):
            if len(chosen) + (len(paths) - i) < k:
                return None
            if blocked.isdisjoint(internals[i]):
                hit = search(i + 1, chosen + [i], blocked | internals[i])
                if hit is not None:
                    return hit
        return None

    ids = search(0, [], frozenset())
    if ids is None:
        return False, None
    witness = DisjointWitness((u, v), k, tuple(paths[i] for i in ids))
    verify_witness(g, coloring, witness)
    return True, witness


def is_rainbow_k_connected(
    g: BipartiteGraph, coloring: EdgeColoring, k: int, max_len: int | None = None
) -> tuple[bool, tuple[Vertex, Vertex] | None]:
    """Check every unordered vertex pair; report the first failing pair.

    ``max_len=None`` means unbounded, i.e. the number of edges.  Pairs are
    visited in lexicographic order, so a returned failing pair is the smallest.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if max_len is None:
        max_len = max(g.num_edges, 1)
    for a, b in vertex_pairs(g):
        ok, _ = k_disjoint_rainbow_exists(g, coloring, a, b, k, max_len)
        if not ok:
            return False, (a, b)
    return True, None


# ---------------------------------------------------------------------------
# Independent checkers: no shared logic with the searches above.


def check_disjoint_path_family(
    g: BipartiteGraph, paths: tuple[Path, ...], endpoints: tuple[Vertex, Vertex]
) -> None:
    """Raise ValueError unless paths are valid, share both endpoints, and are
    pairwise internally vertex-disjoint."""
    a, b = endpoints
    for p in paths:
        if not p.is_path_of(g):
            raise ValueError(f"not a path of the graph: {p.vertices}")
        if set(p.endpoints) != {a, b}:
            raise ValueError(f"endpoints {p.endpoints} differ from {(a, b)}")
    for p1, p2 in itertools.combinations(paths, 2):
        shared = set(p1.internal_vertices) & set(p2.internal_vertices)
        if shared:
            raise ValueError(f"paths share internal vertices {sorted(shared)}")


def verify_witness(g: BipartiteGraph, coloring: EdgeColoring, witness: DisjointWitness) -> None:
    """Raise ValueError unless the witness fully certifies k disjoint rainbow paths."""
    if len(witness.paths) < witness.k:
        raise ValueError(f"only {len(witness.paths)} paths for k={witness.k}")
    check_disjoint_path_family(g, witness.paths, witness.endpoints)
    for p in witness.paths:
        seen = set()
        for u, v in p.edges():
            c = coloring.color(u, v)
            if c in seen:
                raise ValueError(f"color {c} repeats on path {p.vertices}")
            seen.add(c)


# ---------------------------------------------------------------------------
# Exhaustive rainbow k-connection number for tiny graphs.


@dataclass(frozen=True)
class RcSearchResult:
    """Outcome of the exhaustive palette search.

    ``num_colors`` is None when no palette of size <= max_colors works (or the
    graph is disconnected).
    """

    num_colors: int | None
    coloring: EdgeColoring | None
    max_colors: int

    @property
    def found(self) -> bool:
        return self.num_colors is not None


def _colorings_with_exactly(num_edges: int, blocks: int):
    """Canonical color sequences: first edge color 1, new colors appear in
    first-use order, exactly ``blocks`` colors used (restricted growth strings)."""

    assign: list[int] = []

    def rec(i: int, used: int):
        if num_edges - i < blocks - used:
            return
        if i == num_edges:
            if used == blocks:
                yield tuple(assign)
            return
        top = min(used + 1, blocks)
        for c in range(1, top + 1):
            assign.append(c)
            yield from rec(i + 1, max(used, c))
            assign.pop()

    yield from rec(0, 0)


def brute_force_rc_k(
    g: BipartiteGraph, k: int, max_colors: int, max_edges: int = 10
) -> RcSearchResult:
    """Smallest palette size whose best coloring makes g rainbow k-connected.

    Colorings are enumerated up to color-permutation symmetry, palette sizes
    ascending, so the first hit is minimal and comes with a witness coloring.
    Path lengths are unbounded here, matching the definition rather than the
    length-capped Monte Carlo certificate.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if max_colors < 1:
        raise ValueError("max_colors must be at least 1")
    if g.num_edges > max_edges:
        raise ResourceLimitError(
            f"{g.num_edges} edges exceed the exhaustive-search cap of {max_edges}"
        )
    verts = g.vertices()
    if len(verts) > 1:
        reach = bfs_distances(g, verts[0])
        if any(dist == float("inf") for dist in reach.values()):
            return RcSearchResult(None, None, max_colors)
    edges = g.sorted_edges()
    for palette in range(1, min(max_colors, max(g.num_edges, 1)) + 1):
        for assign in _colorings_with_exactly(len(edges), palette):
            coloring = EdgeColoring(palette, dict(zip(edges, assign)))
            ok, _ = is_rainbow_k_connected(g, coloring, k, max_len=None)
            if ok:
                return RcSearchResult(palette, coloring, max_colors)
    return RcSearchResult(None, None, max_colors)
