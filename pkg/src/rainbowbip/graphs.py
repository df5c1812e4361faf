"""Bipartite graphs with random sampling, random edge colorings, and BFS metrics.

Vertices live on two sides: ``("U", i)`` with ``i < left_size`` and
``("V", j)`` with ``j < right_size``.  Edges always cross sides and are stored
canonically as ``(u_index, v_index)`` pairs.  Graphs and colorings are
immutable once built, so they can be shared freely between threads.

The G(m,n,p) sampler draws each of the m*n potential edges independently with
probability p.  It walks the row-major cell order with geometric gap skipping,
which touches only the edges that exist; the draw sequence is a fixed function
of (m, n, p, seed), so a seed pins the graph exactly.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

U_SIDE = "U"
V_SIDE = "V"

Vertex = tuple[str, int]
Edge = tuple[int, int]


def uvert(i: int) -> Vertex:
    return (U_SIDE, i)


def vvert(j: int) -> Vertex:
    return (V_SIDE, j)


class GraphFormatError(ValueError):
    """Raised when a graph or coloring file does not match the text format."""


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple bipartite graph on parts of size ``left_size`` and ``right_size``.

    ``edges`` is a frozenset of ``(u_index, v_index)`` pairs.  Neighbor lists
    are precomputed, sorted, and exposed per side.
    """

    left_size: int
    right_size: int
    edges: frozenset[Edge]
    adj_u: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    adj_v: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.left_size < 1 or self.right_size < 1:
            raise ValueError("both sides need at least one vertex")
        adj_u: list[list[int]] = [[] for _ in range(self.left_size)]
        adj_v: list[list[int]] = [[] for _ in range(self.right_size)]
        for u, v in self.edges:
            if not (0 <= u < self.left_size and 0 <= v < self.right_size):
                raise ValueError(f"edge ({u},{v}) out of range")
            adj_u[u].append(v)
            adj_v[v].append(u)
        object.__setattr__(self, "adj_u", tuple(tuple(sorted(a)) for a in adj_u))
        object.__setattr__(self, "adj_v", tuple(tuple(sorted(a)) for a in adj_v))

    @classmethod
    def from_edges(cls, m: int, n: int, edges: Iterable[Edge]) -> "BipartiteGraph":
        return cls(m, n, frozenset((int(u), int(v)) for u, v in edges))

    @classmethod
    def complete(cls, m: int, n: int) -> "BipartiteGraph":
        return cls(m, n, frozenset((u, v) for u in range(m) for v in range(n)))

    @classmethod
    def from_edge_matrix(cls, mat: np.ndarray) -> "BipartiteGraph":
        """Build from a boolean (m, n) incidence matrix."""
        m, n = mat.shape
        us, vs = np.nonzero(mat)
        return cls(m, n, frozenset(zip(us.tolist(), vs.tolist())))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> list[Vertex]:
        """All vertices in lexicographic order (U side first)."""
        return [(U_SIDE, i) for i in range(self.left_size)] + [
            (V_SIDE, j) for j in range(self.right_size)
        ]

    def is_vertex(self, vertex: Vertex) -> bool:
        side, idx = vertex
        if side == U_SIDE:
            return 0 <= idx < self.left_size
        if side == V_SIDE:
            return 0 <= idx < self.right_size
        return False

    def _require_vertex(self, vertex: Vertex) -> None:
        if not self.is_vertex(vertex):
            raise ValueError(f"not a vertex of this graph: {vertex!r}")

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def neighbors(self, vertex: Vertex) -> tuple[Vertex, ...]:
        self._require_vertex(vertex)
        side, idx = vertex
        if side == U_SIDE:
            return tuple((V_SIDE, j) for j in self.adj_u[idx])
        return tuple((U_SIDE, i) for i in self.adj_v[idx])

    def degree(self, vertex: Vertex) -> int:
        self._require_vertex(vertex)
        side, idx = vertex
        return len(self.adj_u[idx]) if side == U_SIDE else len(self.adj_v[idx])

    def edge_matrix(self) -> np.ndarray:
        """Boolean (left_size, right_size) incidence matrix."""
        mat = np.zeros((self.left_size, self.right_size), dtype=bool)
        for u, v in self.edges:
            mat[u, v] = True
        return mat

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class EdgeColoring:
    """Total assignment of colors 1..num_colors to the edges of one graph."""

    num_colors: int
    color_of: dict[Edge, int]

    def __post_init__(self) -> None:
        if self.num_colors < 1:
            raise ValueError("need at least one color")
        for edge, c in self.color_of.items():
            if not 1 <= c <= self.num_colors:
                raise ValueError(f"color {c} of edge {edge} outside 1..{self.num_colors}")

    def color(self, u: int, v: int) -> int:
        try:
            return self.color_of[(u, v)]
        except KeyError:
            raise ValueError(f"edge ({u},{v}) has no color") from None

    def covers(self, g: BipartiteGraph) -> bool:
        return all(e in self.color_of for e in g.edges)


@dataclass(frozen=True)
class Path:
    """Simple path given by its vertex sequence, sides strictly alternating.

    Structural invariants (alternation, distinctness) are enforced here;
    adjacency in a particular graph is checked by :meth:`is_path_of`.
    """

    vertices: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 1:
            raise ValueError("a path needs at least one vertex")
        for (s1, i1), (s2, _) in zip(self.vertices, self.vertices[1:]):
            if s1 == s2:
                raise ValueError("path sides must alternate")
            if s1 not in (U_SIDE, V_SIDE) or i1 < 0:
                raise ValueError(f"bad vertex ({s1},{i1})")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path vertices must be distinct")

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    @property
    def endpoints(self) -> tuple[Vertex, Vertex]:
        return self.vertices[0], self.vertices[-1]

    @property
    def internal_vertices(self) -> tuple[Vertex, ...]:
        return self.vertices[1:-1]

    def edges(self) -> tuple[Edge, ...]:
        """Edges in canonical (u_index, v_index) form, in path order."""
        out = []
        for (s1, i1), (s2, i2) in zip(self.vertices, self.vertices[1:]):
            out.append((i1, i2) if s1 == U_SIDE else (i2, i1))
        return tuple(out)

    def is_path_of(self, g: BipartiteGraph) -> bool:
        return all(g.is_vertex(v) for v in self.vertices) and all(
            g.has_edge(u, v) for u, v in self.edges()
        )


def sample_gnp(m: int, n: int, p: float, seed: int) -> BipartiteGraph:
    """Sample G(m,n,p): every cross edge present independently with probability p.

    Deterministic for fixed (m, n, p, seed).  Uses geometric gap skipping over
    the m*n row-major cells, so the cost is O(p*m*n) rather than O(m*n).
    """
    if m < 1 or n < 1:
        raise ValueError("both sides need at least one vertex")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p={p} outside [0, 1]")
    total = m * n
    if p == 0.0:
        return BipartiteGraph.from_edges(m, n, ())
    if p == 1.0:
        return BipartiteGraph.complete(m, n)

    rng = np.random.default_rng(seed)
    log_miss = math.log1p(-p)
    cells: list[np.ndarray] = []
    pos = 0  # next cell index not yet decided
    # Chunk size targets the expected number of remaining hits; the rule is a
    # fixed function of (m, n, p) so the draw sequence stays reproducible.
    while pos < total:
        expect = (total - pos) * p
        chunk = max(64, int(expect + 4.0 * math.sqrt(expect + 1.0)) + 16)
        draws = 1.0 - rng.random(chunk)  # in (0, 1], avoids log(0)
        gaps = np.floor(np.log(draws) / log_miss).astype(np.int64)
        hits = pos + np.cumsum(gaps + 1) - 1
        inside = hits[hits < total]
        cells.append(inside)
        if len(inside) < chunk:
            break
        pos = int(hits[-1]) + 1
    idx = np.concatenate(cells) if cells else np.empty(0, dtype=np.int64)
    return BipartiteGraph.from_edges(m, n, zip((idx // n).tolist(), (idx % n).tolist()))


def random_coloring(g: BipartiteGraph, num_colors: int, seed: int) -> EdgeColoring:
    """Color every edge uniformly and independently from 1..num_colors."""
    if num_colors < 1:
        raise ValueError("need at least one color")
    rng = np.random.default_rng(seed)
    edges = g.sorted_edges()
    colors = rng.integers(1, num_colors + 1, size=len(edges))
    return EdgeColoring(num_colors, dict(zip(edges, colors.tolist())))


def bfs_distances(g: BipartiteGraph, source: Vertex) -> dict[Vertex, float]:
    """Hop distances from ``source`` to every vertex; unreachable -> math.inf."""
    g._require_vertex(source)
    dist: dict[Vertex, float] = {v: math.inf for v in g.vertices()}
    dist[source] = 0
    queue: deque[Vertex] = deque([source])
    while queue:
        cur = queue.popleft()
        nxt = dist[cur] + 1
        for nb in g.neighbors(cur):
            if dist[nb] == math.inf:
                dist[nb] = nxt
                queue.append(nb)
    return dist


def diameter(g: BipartiteGraph) -> float:
    """Largest hop distance over all vertex pairs; math.inf when disconnected.

    An isolated vertex (with any other vertex present) makes the diameter
    infinite.
    """
    verts = g.vertices()
    if len(verts) == 1:
        return 0
    if any(g.degree(v) == 0 for v in verts):
        return math.inf
    best = 0.0
    for v in verts:
        dist = bfs_distances(g, v)
        far = max(dist.values())
        if far == math.inf:
            return math.inf
        best = max(best, far)
    return best


def neighbors_in_set(g: BipartiteGraph, vertex: Vertex, subset: Iterable[Vertex]) -> int:
    """|N(vertex) ∩ subset|; subset must lie in the side opposite to vertex."""
    g._require_vertex(vertex)
    side, idx = vertex
    other = V_SIDE if side == U_SIDE else U_SIDE
    wanted = set()
    for s, i in subset:
        if s != other:
            raise ValueError(f"subset vertex ({s},{i}) is on the same side as {vertex!r}")
        wanted.add(i)
    nbrs = g.adj_u[idx] if side == U_SIDE else g.adj_v[idx]
    return sum(1 for j in nbrs if j in wanted)


# ---------------------------------------------------------------------------
# Text formats: graph files are "m n" then one "u v" line per edge; coloring
# files are one "u v c" line per edge.  Both use 0-based indices, UTF-8, LF.


def write_graph(g: BipartiteGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(graph_to_text(g))


def graph_to_text(g: BipartiteGraph) -> str:
    lines = [f"{g.left_size} {g.right_size}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> BipartiteGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_text(fh.read(), origin=path)


def graph_from_text(text: str, origin: str = "<string>") -> BipartiteGraph:
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise GraphFormatError(f"{origin}: empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"{origin}:1: expected 'm n' header")
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"{origin}:1: expected integer sizes") from None
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"{origin}:{lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"{origin}:{lineno}: expected integer endpoints") from None
        if not (0 <= u < m and 0 <= v < n):
            raise GraphFormatError(f"{origin}:{lineno}: edge ({u},{v}) out of range")
        edges.append((u, v))
    try:
        return BipartiteGraph.from_edges(m, n, edges)
    except ValueError as exc:
        raise GraphFormatError(f"{origin}: {exc}") from None


def write_coloring(coloring: EdgeColoring, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(coloring_to_text(coloring))


def coloring_to_text(coloring: EdgeColoring) -> str:
    lines = [f"{u} {v} {coloring.color_of[(u, v)]}" for u, v in sorted(coloring.color_of)]
    return "\n".join(lines) + "\n"


def read_coloring(path: str, num_colors: int | None = None) -> EdgeColoring:
    with open(path, "r", encoding="utf-8") as fh:
        return coloring_from_text(fh.read(), num_colors=num_colors, origin=path)


def coloring_from_text(
    text: str, num_colors: int | None = None, origin: str = "<string>"
) -> EdgeColoring:
    """Parse a coloring file; palette size defaults to the largest color seen."""
    color_of: dict[Edge, int] = {}
    for lineno, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 3:
            raise GraphFormatError(f"{origin}:{lineno}: expected 'u v c'")
        try:
            u, v, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError(f"{origin}:{lineno}: expected integers") from None
        if (u, v) in color_of:
            raise GraphFormatError(f"{origin}:{lineno}: duplicate edge ({u},{v})")
        color_of[(u, v)] = c
    if num_colors is None:
        num_colors = max(color_of.values(), default=1)
    try:
        return EdgeColoring(num_colors, color_of)
    except ValueError as exc:
        raise GraphFormatError(f"{origin}: {exc}") from None


def vertex_pairs(g: BipartiteGraph) -> Iterator[tuple[Vertex, Vertex]]:
    """All unordered vertex pairs in lexicographic order."""
    verts = g.vertices()
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            yield verts[a], verts[b]


def parse_vertex(text: str) -> Vertex:
    """Parse 'U:3' / 'V:0' style vertex references (case-insensitive side)."""
    try:
        side, idx = text.split(":")
        side = side.strip().upper()
        if side not in (U_SIDE, V_SIDE):
            raise ValueError
        return (side, int(idx))
    except ValueError:
        raise ValueError(f"expected SIDE:INDEX like 'U:3', got {text!r}") from None
