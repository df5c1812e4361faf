"""Leveled tree growth for building internally vertex-disjoint path families.

A tree grown from a root picks a fixed number of fresh neighbors per vertex,
level by level: ``even_branch`` children for vertices on even levels,
``odd_branch`` for odd levels.  Vertices are never reused and an avoid set
(typically the target endpoint) is excluded at every level.  The leaves
partition into vice-trees, one per level-1 child; choosing at most one
target-adjacent leaf per vice-tree yields root-to-target paths that share no
internal vertices.

Branching sizes for a given pair of endpoints follow closed-form recipes that
depend on the endpoint sides and the parity of the target distance d; desk
scale runs can override them explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from rainbowbip.formulas import RegimeCheck, RegimeParams, regime_valid
from rainbowbip.graphs import U_SIDE, V_SIDE, BipartiteGraph, Path, Vertex
from rainbowbip.rainbow import check_disjoint_path_family

SEEDED_RANDOM = "seeded-random"
LEXICOGRAPHIC = "lexicographic"

SAME_SIDE_LEFT = "same-side-left"
SAME_SIDE_RIGHT = "same-side-right"
CROSS = "cross"


@dataclass(frozen=True)
class GrowthPlan:
    """Branching recipe for one tree: s children at even levels, t at odd."""

    even_branch: int
    odd_branch: int
    depth: int
    avoid: frozenset[Vertex] = frozenset()
    selection: str = SEEDED_RANDOM

    def __post_init__(self) -> None:
        if self.even_branch < 1 or self.odd_branch < 1:
            raise ValueError("branching counts must be at least 1")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if self.selection not in (SEEDED_RANDOM, LEXICOGRAPHIC):
            raise ValueError(f"unknown selection rule {self.selection!r}")

    def branch_at(self, level: int) -> int:
        return self.even_branch if level % 2 == 0 else self.odd_branch


@dataclass(frozen=True)
class GrownTree:
    root: Vertex
    plan: GrowthPlan
    levels: tuple[tuple[Vertex, ...], ...]
    parent: dict[Vertex, Vertex] = field(repr=False)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def leaves(self) -> tuple[Vertex, ...]:
        return self.levels[-1]

    def all_vertices(self) -> set[Vertex]:
        out: set[Vertex] = set()
        for level in self.levels:
            out.update(level)
        return out

    def root_path(self, vertex: Vertex) -> tuple[Vertex, ...]:
        """Vertices from the root down to ``vertex`` along parent links."""
        back = [vertex]
        while back[-1] != self.root:
            back.append(self.parent[back[-1]])
        return tuple(reversed(back))


@dataclass(frozen=True)
class GrowthFailure:
    """First vertex that could not supply enough fresh neighbors."""

    level: int
    stuck_vertex: Vertex
    needed: int
    available: int


def grow_tree(
    g: BipartiteGraph, root: Vertex, plan: GrowthPlan, seed: int | None = None
) -> GrownTree | GrowthFailure:
    """Grow the tree level by level; a failure is returned as a value.

    Children come from the side opposite their parent, excluding the avoid
    set and every vertex already placed.  Under ``seeded-random`` children are
    drawn uniformly without replacement, vertex by vertex in level order;
    ``lexicographic`` takes the smallest eligible neighbors.
    """
    g._require_vertex(root)
    for a in plan.avoid:
        g._require_vertex(a)
    if root in plan.avoid:
        raise ValueError("the avoid set may not contain the root")
    rng = np.random.default_rng(seed) if plan.selection == SEEDED_RANDOM else None
    used: set[Vertex] = set(plan.avoid)
    used.add(root)
    levels: list[tuple[Vertex, ...]] = [(root,)]
    parent: dict[Vertex, Vertex] = {}
    for lvl in range(plan.depth):
        want = plan.branch_at(lvl)
        grown: list[Vertex] = []
        for vert in levels[lvl]:
            fresh = [nb for nb in g.neighbors(vert) if nb not in used]
            if len(fresh) < want:
                return GrowthFailure(lvl + 1, vert, want, len(fresh))
            if rng is None:
                picked = fresh[:want]
            else:
                picked = [fresh[i] for i in rng.choice(len(fresh), size=want, replace=False)]
            for child in picked:
                parent[child] = vert
                used.add(child)
            grown.extend(picked)
        levels.append(tuple(grown))
    return GrownTree(root, plan, tuple(levels), parent)


def validate_tree(g: BipartiteGraph, tree: GrownTree) -> None:
    """Raise ValueError unless the tree satisfies every structural invariant."""
    plan = tree.plan
    if tree.levels[0] != (tree.root,):
        raise ValueError("level 0 must hold exactly the root")
    seen: set[Vertex] = set()
    for level in tree.levels:
        sides = {side for side, _ in level}
        if len(sides) != 1:
            raise ValueError("levels must not mix sides")
        for vert in level:
            if vert in seen:
                raise ValueError(f"vertex {vert} appears twice")
            if vert in plan.avoid:
                raise ValueError(f"avoided vertex {vert} appears in the tree")
            seen.add(vert)
    for i in range(1, len(tree.levels)):
        expect = len(tree.levels[i - 1]) * plan.branch_at(i - 1)
        if len(tree.levels[i]) != expect:
            raise ValueError(f"level {i} has {len(tree.levels[i])} vertices, expected {expect}")
        prev = set(tree.levels[i - 1])
        for vert in tree.levels[i]:
            par = tree.parent.get(vert)
            if par not in prev:
                raise ValueError(f"parent of {vert} not in the previous level")
            (s1, i1), (_, i2) = par, vert
            edge = (i1, i2) if s1 == U_SIDE else (i2, i1)
            if not g.has_edge(*edge):
                raise ValueError(f"parent link {par}->{vert} is not a graph edge")


def vice_trees(tree: GrownTree) -> dict[Vertex, tuple[Vertex, ...]]:
    """Partition the leaves by their level-1 ancestor."""
    if tree.depth < 1:
        raise ValueError("need depth at least 1")
    groups: dict[Vertex, list[Vertex]] = {w: [] for w in tree.levels[1]}
    for leaf in tree.leaves:
        cur = leaf
        while tree.parent[cur] != tree.root:
            cur = tree.parent[cur]
        groups[cur].append(leaf)
    return {w: tuple(leaves) for w, leaves in groups.items()}


@dataclass(frozen=True)
class BranchingInfo:
    """Branching recipe for one endpoint-pair kind, raw and floored."""

    kind: str
    depth: int
    even_raw: float
    odd_raw: float
    even_branch: int
    odd_branch: int
    overridden: bool = False


@dataclass(frozen=True)
class DisjointPathsReport:
    leaf_neighbor_count: int
    per_vice_tree_counts: dict[Vertex, int]
    extracted_paths: tuple[Path, ...]
    params_used: GrowthPlan
    regime: RegimeCheck | None = None
    branchings: BranchingInfo | None = None


def extract_disjoint_paths(
    g: BipartiteGraph, tree: GrownTree, target: Vertex, limit: int | None = None
) -> DisjointPathsReport:
    """Pick at most one target-adjacent leaf per vice-tree and emit the paths.

    Paths run root -> leaf -> target, so each has length depth+1, and distinct
    vice-trees guarantee internal disjointness (re-checked before returning).
    """
    g._require_vertex(target)
    if target in tree.all_vertices():
        raise ValueError("target must not be a tree vertex")
    leaf_side = tree.leaves[0][0]
    if target[0] == leaf_side:
        raise ValueError("target must sit on the side adjacent to the leaf level")

    def touches(leaf: Vertex) -> bool:
        (s1, i1), (_, i2) = leaf, target
        return g.has_edge(i1, i2) if s1 == U_SIDE else g.has_edge(i2, i1)

    parts = vice_trees(tree)
    counts: dict[Vertex, int] = {}
    chosen: list[Vertex] = []
    for w in tree.levels[1]:
        hits = [leaf for leaf in parts[w] if touches(leaf)]
        counts[w] = len(hits)
        if hits and (limit is None or len(chosen) < limit):
            chosen.append(hits[0])
    paths = tuple(Path(tree.root_path(leaf) + (target,)) for leaf in chosen)
    check_disjoint_path_family(g, paths, (tree.root, target))
    total = sum(counts.values())
    return DisjointPathsReport(total, counts, paths, tree.plan)


def pair_kind(u: Vertex, v: Vertex) -> str:
    if u[0] == v[0]:
        return SAME_SIDE_LEFT if u[0] == U_SIDE else SAME_SIDE_RIGHT
    return CROSS


def branching_plan(m: int, n: int, p: float, d: int, kind: str) -> BranchingInfo:
    """Closed-form branching recipe for an endpoint-pair kind at density p.

    Raw values are floored with a minimum of 1.  The recipe depends on the
    parity of d: same-side pairs use depth d (odd) or d-1 (even); cross pairs
    the opposite.  Trees for cross pairs are rooted on the left side when d is
    odd and on the right side when d is even.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if m < 2 or n < 2:
        raise ValueError("need m, n >= 2")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p={p} outside [0, 1]")
    ln_m, ln_n = math.log(m), math.log(n)
    if d % 2 == 1:
        if kind == SAME_SIDE_LEFT:
            even_raw, odd_raw, depth = p * n / ln_n, p * m / ln_m, d
        elif kind == SAME_SIDE_RIGHT:
            ex = 2.0 / (d - 1)
            even_raw, odd_raw, depth = p * m / ln_m**ex, p * n / ln_n**ex, d
        elif kind == CROSS:
            even_raw, odd_raw, depth = p * n / 10.0, p * m / 10.0, d - 1
        else:
            raise ValueError(f"unknown pair kind {kind!r}")
    else:
        if kind == SAME_SIDE_LEFT:
            even_raw, odd_raw, depth = p * n / 10.0, p * m / 10.0, d - 1
        elif kind == SAME_SIDE_RIGHT:
            even_raw, odd_raw, depth = p * m / 10.0, p * n / 10.0, d - 1
        elif kind == CROSS:
            even_raw, odd_raw, depth = p * m / ln_m, p * n / ln_n, d
        else:
            raise ValueError(f"unknown pair kind {kind!r}")
    return BranchingInfo(
        kind,
        depth,
        even_raw,
        odd_raw,
        max(1, math.floor(even_raw)),
        max(1, math.floor(odd_raw)),
    )


def tree_root_side(kind: str, d: int) -> str:
    """Which side the tree is rooted on for a given pair kind."""
    if kind == SAME_SIDE_LEFT:
        return U_SIDE
    if kind == SAME_SIDE_RIGHT:
        return V_SIDE
    return U_SIDE if d % 2 == 1 else V_SIDE


def disjoint_paths_for_pair(
    g: BipartiteGraph,
    u: Vertex,
    v: Vertex,
    d: int,
    regime: RegimeParams | None = None,
    seed: int | None = None,
    p: float | None = None,
    branching_override: tuple[int, int] | None = None,
    selection: str = SEEDED_RANDOM,
    limit: int | None = None,
) -> DisjointPathsReport | GrowthFailure:
    """Grow the recipe tree for a vertex pair and extract disjoint u-v paths.

    The tree is rooted at the recipe's endpoint and avoids the other endpoint
    at every level.  ``p`` defaults to the empirical edge density of g;
    ``branching_override`` replaces the floored branching counts (recorded in
    the report) so desk-scale graphs can run shallow trees.  Out-of-regime
    parameters are reported, not raised; growth failures come back as values.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    g._require_vertex(u)
    g._require_vertex(v)
    m, n = g.left_size, g.right_size
    if p is None:
        p = g.num_edges / (m * n)
    kind = pair_kind(u, v)
    info = branching_plan(m, n, p, d, kind)
    if branching_override is not None:
        even_b, odd_b = branching_override
        info = replace(info, even_branch=even_b, odd_branch=odd_b, overridden=True)
    root_side = tree_root_side(kind, d)
    root, target = (u, v) if u[0] == root_side else (v, u)
    plan = GrowthPlan(
        info.even_branch,
        info.odd_branch,
        info.depth,
        avoid=frozenset({target}),
        selection=selection,
    )
    tree = grow_tree(g, root, plan, seed)
    if isinstance(tree, GrowthFailure):
        return tree
    if limit is None and regime is not None:
        limit = regime.k
    report = extract_disjoint_paths(g, tree, target, limit)
    check = regime_valid(m, n, p, d, regime.epsilon if regime is not None else None) \
        if (regime is not None or d % 2 == 1) else None
    return replace(report, regime=check, branchings=info)
