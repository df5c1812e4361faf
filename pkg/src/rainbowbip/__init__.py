"""Rainbow k-connectivity experiments on random bipartite graphs."""

from rainbowbip.graphs import (
    BipartiteGraph,
    EdgeColoring,
    GraphFormatError,
    random_coloring,
    sample_gnp,
)
from rainbowbip.formulas import (
    RegimeParams,
    diameter_criterion,
    rainbow_success_prob,
    sharp_threshold,
    threshold_even,
    threshold_odd,
)

__all__ = [
    "BipartiteGraph",
    "EdgeColoring",
    "GraphFormatError",
    "RegimeParams",
    "diameter_criterion",
    "rainbow_success_prob",
    "random_coloring",
    "sample_gnp",
    "sharp_threshold",
    "threshold_even",
    "threshold_odd",
]

__version__ = "0.1.0"
