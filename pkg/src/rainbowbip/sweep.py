"""Seeded Monte Carlo sweeps around the predicted connectivity threshold.

For each graph size the edge probability runs over multiplier * p_star.  In
coupled mode (the default) every trial draws one uniform matrix and one color
matrix; the graph at probability p keeps the cells with draw < p, so edge
sets are nested across p and both indicators (small diameter, rainbow
certificate) are monotone step functions of p per trial.  Each trial is then
summarized by its two threshold multipliers, found by bisecting a fine
geometric grid that contains every output multiplier; empirical rates at any
grid point are exact averages of the per-trial indicators.

Uncoupled mode evaluates each (multiplier, trial) cell independently with its
own stream.  Either way the whole result is a pure function of the config,
and rerunning a sweep reproduces the CSV byte for byte.

Stream splitting: numpy SeedSequence keyed by (master_seed, m, n, trial) plus
a role tag (0 edges, 1 colors, 2 tree growth); uncoupled streams insert the
multiplier index before the trial index.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from rainbowbip import kernels
from rainbowbip.formulas import RegimeCheck, regime_valid, sharp_threshold
from rainbowbip.graphs import U_SIDE, BipartiteGraph, EdgeColoring
from rainbowbip.rainbow import is_rainbow_k_connected
from rainbowbip.trees import GrowthFailure, disjoint_paths_for_pair

Z95 = 1.959963984540054

MEASURE_DIAM = "diameter"
MEASURE_RAINBOW = "rainbow"
MEASURE_TREE = "tree_paths"
_ALL_MEASURES = (MEASURE_DIAM, MEASURE_RAINBOW, MEASURE_TREE)

CSV_HEADER = (
    "m,n,d,k,num_colors,multiplier,p,trials,diam_rate,rainbow_rate,"
    "mean_tree_paths,ci_low,ci_high,master_seed,clamped"
)


@dataclass(frozen=True)
class SweepConfig:
    sizes: tuple[tuple[int, int], ...]
    d: int = 2
    k: int = 1
    num_colors: int | None = None  # None -> d+1
    multipliers: tuple[float, ...] = (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
    trials: int = 200
    master_seed: int = 0
    max_len: int | None = None  # None -> d+1
    measures: tuple[str, ...] = _ALL_MEASURES
    coupled: bool = True
    resolution: int = 64  # fine-grid steps per octave in coupled mode
    epsilon: float = 0.5
    tree_override: tuple[int, int] | None = None
    threads: int | None = None  # None -> RAINBOW_THREADS or cpu count

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("need at least one (m, n) size")
        for m, n in self.sizes:
            if m < 1 or n < 1:
                raise ValueError(f"bad size ({m},{n})")
        if self.d < 2:
            raise ValueError("need d >= 2")
        if self.k < 1:
            raise ValueError("need k >= 1")
        if not self.multipliers:
            raise ValueError("need at least one multiplier")
        if any(mu <= 0 for mu in self.multipliers):
            raise ValueError("multipliers must be positive")
        if list(self.multipliers) != sorted(self.multipliers):
            raise ValueError("multipliers must be sorted ascending")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        bad = set(self.measures) - set(_ALL_MEASURES)
        if bad:
            raise ValueError(f"unknown measures {sorted(bad)}")
        if self.resolution < 1:
            raise ValueError("resolution must be at least 1")
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")

    @property
    def num_colors_resolved(self) -> int:
        return self.d + 1 if self.num_colors is None else self.num_colors

    @property
    def max_len_resolved(self) -> int:
        return self.d + 1 if self.max_len is None else self.max_len

    @classmethod
    def from_mapping(cls, data: dict) -> "SweepConfig":
        known = {
            "sizes", "d", "k", "num_colors", "multipliers", "trials", "master_seed",
            "max_len", "measures", "coupled", "resolution", "epsilon",
            "tree_override", "threads",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        kw: dict = {}
        if "sizes" in data:
            kw["sizes"] = _parse_sizes(data["sizes"])
        for name in ("d", "k", "trials", "master_seed", "resolution"):
            if name in data:
                kw[name] = int(data[name])
        for name in ("num_colors", "max_len", "threads"):
            if name in data and data[name] is not None:
                kw[name] = int(data[name])
        if "multipliers" in data:
            kw["multipliers"] = _parse_floats(data["multipliers"])
        if "measures" in data:
            kw["measures"] = _parse_names(data["measures"])
        if "coupled" in data:
            kw["coupled"] = _parse_bool(data["coupled"])
        if "epsilon" in data:
            kw["epsilon"] = float(data["epsilon"])
        if "tree_override" in data and data["tree_override"] is not None:
            s, t = _parse_floats(data["tree_override"])
            kw["tree_override"] = (int(s), int(t))
        return cls(**kw)

    @classmethod
    def from_file(cls, path: str) -> "SweepConfig":
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_mapping(json.loads(text))
        data: dict = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            data[key.strip()] = value.strip()
        return cls.from_mapping(data)


def _parse_sizes(value) -> tuple[tuple[int, int], ...]:
    if isinstance(value, str):
        pairs = [chunk for chunk in value.split(";") if chunk.strip()]
        return tuple(tuple(int(x) for x in chunk.split(","))[:2] for chunk in pairs)
    return tuple((int(m), int(n)) for m, n in value)


def _parse_floats(value) -> tuple[float, ...]:
    if isinstance(value, str):
        return tuple(float(x) for x in value.split(",") if x.strip())
    return tuple(float(x) for x in value)


def _parse_names(value) -> tuple[str, ...]:
    if isinstance(value, str):
        return tuple(x.strip() for x in value.split(",") if x.strip())
    return tuple(str(x) for x in value)


def _parse_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("true", "1", "yes"):
        return True
    if text in ("false", "0", "no"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


@dataclass(frozen=True)
class TrialRecord:
    m: int
    n: int
    p: float
    trial_index: int
    diam_ok: bool | None
    rainbow_ok: bool | None
    tree_paths: int | None
    seed_key: tuple[int, ...]


@dataclass(frozen=True)
class SweepPoint:
    m: int
    n: int
    multiplier: float
    p: float
    clamped: bool
    trials: int
    diam_rate: float
    rainbow_rate: float
    mean_tree_paths: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class SizeCurve:
    """Per-size diagnostics: fine rate curves and per-trial thresholds
    (coupled mode), transition widths, and the regime check at p_star."""

    m: int
    n: int
    p_star: float
    regime: RegimeCheck
    fine_multipliers: tuple[float, ...] | None = None
    diam_fine_rates: tuple[float, ...] | None = None
    rainbow_fine_rates: tuple[float, ...] | None = None
    diam_thresholds: tuple[float, ...] | None = field(default=None, repr=False)
    rainbow_thresholds: tuple[float, ...] | None = field(default=None, repr=False)
    tree_counts: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    diam_width: float | None = None
    rainbow_width: float | None = None


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    points: tuple[SweepPoint, ...]
    curves: tuple[SizeCurve, ...]
    wall_clock_s: float

    def curve_for(self, m: int, n: int) -> SizeCurve:
        for curve in self.curves:
            if curve.m == m and curve.n == n:
                return curve
        raise KeyError(f"no curve for size ({m},{n})")

    def points_for(self, m: int, n: int) -> tuple[SweepPoint, ...]:
        return tuple(pt for pt in self.points if pt.m == m and pt.n == n)


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if not 0 <= successes <= trials:
        raise ValueError("successes outside [0, trials]")
    phat = successes / trials
    zz = z * z
    denom = 1.0 + zz / trials
    center = (phat + zz / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + zz / (4.0 * trials * trials)) / denom
    # the bound touches 0 (or 1) exactly at the degenerate counts
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


def _threads(cfg: SweepConfig) -> int:
    if cfg.threads is not None:
        return max(1, cfg.threads)
    env = os.environ.get("RAINBOW_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _clamp_p(multiplier: float, p_star: float) -> tuple[float, bool]:
    raw = multiplier * p_star
    return (1.0, True) if raw > 1.0 else (raw, False)


def _fine_grid(multipliers: Sequence[float], resolution: int) -> tuple[float, ...]:
    """Geometric grid (2**(1/resolution) steps) spanning and containing the
    output multipliers exactly."""
    lo, hi = multipliers[0], multipliers[-1]
    values = set(multipliers)
    if hi > lo:
        steps = math.ceil(math.log2(hi / lo) * resolution)
        for j in range(steps + 1):
            x = lo * 2.0 ** (j / resolution)
            if x <= hi:
                values.add(x)
    return tuple(sorted(values))


def _first_true(pred, lo: int, hi: int) -> int:
    """Smallest index in [lo, hi] where the monotone predicate holds; hi+1 if none."""
    if lo > hi:
        return hi + 1
    if not pred(hi):
        return hi + 1
    if pred(lo):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _rainbow_ok(adj: np.ndarray, colors: np.ndarray, k: int, num_colors: int, max_len: int) -> bool:
    if kernels.fast_rainbow_supported(k, max_len, num_colors):
        return kernels.rainbow_k1(adj, colors, num_colors, max_len)
    g = BipartiteGraph.from_edge_matrix(adj)
    us, vs = np.nonzero(adj)
    mapping = {
        (int(u), int(v)): int(colors[u, v]) for u, v in zip(us.tolist(), vs.tolist())
    }
    ok, _ = is_rainbow_k_connected(g, EdgeColoring(num_colors, mapping), k, max_len)
    return ok


def _trial_draws(cfg: SweepConfig, key: tuple[int, ...], m: int, n: int):
    uniforms = np.random.default_rng(np.random.SeedSequence(key + (0,))).random((m, n))
    colors = np.random.default_rng(np.random.SeedSequence(key + (1,))).integers(
        1, cfg.num_colors_resolved + 1, size=(m, n), dtype=np.uint8
    )
    return uniforms, colors


def _tree_count(cfg: SweepConfig, adj: np.ndarray, p: float, key: tuple[int, ...]) -> int | None:
    m = adj.shape[0]
    if m < 2:
        return None
    g = BipartiteGraph.from_edge_matrix(adj)
    report = disjoint_paths_for_pair(
        g,
        (U_SIDE, 0),
        (U_SIDE, 1),
        cfg.d,
        seed=np.random.SeedSequence(key + (2,)),
        p=p,
        branching_override=cfg.tree_override,
    )
    if isinstance(report, GrowthFailure):
        return 0
    return len(report.extracted_paths)


def run_trial(
    cfg: SweepConfig,
    size: tuple[int, int],
    p: float,
    trial_index: int,
    multiplier_index: int | None = None,
) -> TrialRecord:
    """One direct trial at probability p; pure function of its arguments.

    Without a multiplier index the stream depends only on (master_seed, m, n,
    trial), so calls at different p share their draws, which is exactly the
    coupled-sampling behavior.  Passing the index gives each sweep point an
    independent stream instead.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p={p} outside [0, 1]")
    m, n = size
    if multiplier_index is None:
        key = (cfg.master_seed, m, n, trial_index)
    else:
        key = (cfg.master_seed, m, n, multiplier_index, trial_index)
    uniforms, colors = _trial_draws(cfg, key, m, n)
    adj = uniforms < p
    diam_ok = kernels.diam_le(adj, cfg.d + 1) if MEASURE_DIAM in cfg.measures else None
    rainbow_ok = (
        _rainbow_ok(adj, colors, cfg.k, cfg.num_colors_resolved, cfg.max_len_resolved)
        if MEASURE_RAINBOW in cfg.measures
        else None
    )
    tree_paths = _tree_count(cfg, adj, p, key) if MEASURE_TREE in cfg.measures else None
    return TrialRecord(m, n, p, trial_index, diam_ok, rainbow_ok, tree_paths, key)


def _coupled_trial(
    cfg: SweepConfig,
    m: int,
    n: int,
    p_star: float,
    grid: tuple[float, ...],
    out_idx: tuple[int, ...],
    trial: int,
):
    key = (cfg.master_seed, m, n, trial)
    uniforms, colors = _trial_draws(cfg, key, m, n)
    gsize = len(grid)
    adj_cache: dict[int, np.ndarray] = {}

    def adj_at(i: int) -> np.ndarray:
        if i not in adj_cache:
            adj_cache[i] = uniforms < _clamp_p(grid[i], p_star)[0]
        return adj_cache[i]

    want_diam = MEASURE_DIAM in cfg.measures
    want_rb = MEASURE_RAINBOW in cfg.measures
    t_diam = t_rb = gsize
    if want_diam:
        t_diam = _first_true(lambda i: kernels.diam_le(adj_at(i), cfg.d + 1), 0, gsize - 1)
    if want_rb:
        certificate_implies_diam = cfg.max_len_resolved <= cfg.d + 1

        def rb(i: int) -> bool:
            return _rainbow_ok(
                adj_at(i), colors, cfg.k, cfg.num_colors_resolved, cfg.max_len_resolved
            )

        if want_diam and certificate_implies_diam:
            t_rb = gsize if t_diam >= gsize else _first_true(rb, t_diam, gsize - 1)
        else:
            t_rb = _first_true(rb, 0, gsize - 1)
    trees: tuple[int | None, ...] | None = None
    if MEASURE_TREE in cfg.measures:
        trees = tuple(
            _tree_count(cfg, adj_at(i), _clamp_p(grid[i], p_star)[0], key) for i in out_idx
        )
    return t_diam, t_rb, trees


def transition_width(
    multipliers: Sequence[float],
    rates: Sequence[float],
    low: float = 0.1,
    high: float = 0.9,
) -> float | None:
    """Multiplier span between the rate's first crossings of low and high."""
    lo_x = _interp_crossing(multipliers, rates, low)
    hi_x = _interp_crossing(multipliers, rates, high)
    if lo_x is None or hi_x is None:
        return None
    return hi_x - lo_x


def _interp_crossing(multipliers: Sequence[float], rates: Sequence[float], level: float):
    for i in range(len(multipliers) - 1):
        r0, r1 = rates[i], rates[i + 1]
        if r0 < level <= r1:
            frac = (level - r0) / (r1 - r0)
            return multipliers[i] + frac * (multipliers[i + 1] - multipliers[i])
    return None


def crossing_in_series(
    multipliers: Sequence[float], rates: Sequence[float]
) -> tuple[float, tuple[float, float]] | None:
    """First 0.5 crossing of the rate series: interpolated multiplier and the
    bracketing pair, or None when the rate never spans 0.5."""
    for i in range(len(multipliers) - 1):
        if rates[i] < 0.5 <= rates[i + 1]:
            frac = (0.5 - rates[i]) / (rates[i + 1] - rates[i])
            mult = multipliers[i] + frac * (multipliers[i + 1] - multipliers[i])
            return mult, (multipliers[i], multipliers[i + 1])
    return None


@dataclass(frozen=True)
class CrossingEstimate:
    measure: str
    multiplier: float
    p: float
    bracket: tuple[float, float]


def estimate_crossing(
    result: SweepResult, measure: str, size: tuple[int, int] | None = None
) -> CrossingEstimate | None:
    """Where the empirical rate crosses 0.5, by linear interpolation between
    the bracketing output multipliers; None when the rate never spans 0.5."""
    if measure not in ("diam_rate", "rainbow_rate"):
        raise ValueError(f"measure must be diam_rate or rainbow_rate, got {measure!r}")
    if size is None:
        if len(result.config.sizes) != 1:
            raise ValueError("result has several sizes; pass size=(m, n)")
        size = result.config.sizes[0]
    pts = result.points_for(*size)
    if len(pts) < 2:
        raise ValueError("need at least two multipliers")
    mults = [pt.multiplier for pt in pts]
    rates = [getattr(pt, measure) for pt in pts]
    if any(math.isnan(r) for r in rates):
        raise ValueError(f"{measure} was not measured in this sweep")
    found = crossing_in_series(mults, rates)
    if found is None:
        return None
    mult, bracket = found
    p_star = sharp_threshold(size[0], size[1], result.config.d)
    return CrossingEstimate(measure, mult, _clamp_p(mult, p_star)[0], bracket)


def _size_points(
    cfg: SweepConfig,
    m: int,
    n: int,
    p_star: float,
    diam_succ: Sequence[int | None],
    rb_succ: Sequence[int | None],
    tree_means: Sequence[float | None],
) -> list[SweepPoint]:
    nan = float("nan")
    points = []
    for j, mult in enumerate(cfg.multipliers):
        p, clamped = _clamp_p(mult, p_star)
        diam_rate = nan if diam_succ[j] is None else diam_succ[j] / cfg.trials
        rb_rate = nan if rb_succ[j] is None else rb_succ[j] / cfg.trials
        mean_tree = nan if tree_means[j] is None else tree_means[j]
        if rb_succ[j] is not None:
            ci = wilson_interval(rb_succ[j], cfg.trials)
        elif diam_succ[j] is not None:
            ci = wilson_interval(diam_succ[j], cfg.trials)
        else:
            ci = (nan, nan)
        points.append(
            SweepPoint(m, n, mult, p, clamped, cfg.trials, diam_rate, rb_rate, mean_tree, *ci)
        )
    return points


def _mean_or_none(values: list[int | None]) -> float | None:
    real = [v for v in values if v is not None]
    if not real:
        return None
    return sum(real) / len(real)


def _sweep_size_coupled(cfg: SweepConfig, m: int, n: int, pool: ThreadPoolExecutor | None):
    p_star = sharp_threshold(m, n, cfg.d)
    grid = _fine_grid(cfg.multipliers, cfg.resolution)
    out_idx = tuple(grid.index(mu) for mu in cfg.multipliers)
    gsize = len(grid)

    def work(trial: int):
        return _coupled_trial(cfg, m, n, p_star, grid, out_idx, trial)

    trial_ids = range(cfg.trials)
    rows = list(pool.map(work, trial_ids)) if pool else [work(t) for t in trial_ids]

    want_diam = MEASURE_DIAM in cfg.measures
    want_rb = MEASURE_RAINBOW in cfg.measures
    want_tree = MEASURE_TREE in cfg.measures
    t_diam = np.array([r[0] for r in rows], dtype=np.int64)
    t_rb = np.array([r[1] for r in rows], dtype=np.int64)

    def successes(thresholds: np.ndarray, want: bool) -> list[int | None]:
        if not want:
            return [None] * len(cfg.multipliers)
        return [int((thresholds <= idx).sum()) for idx in out_idx]

    tree_means: list[float | None] = [None] * len(cfg.multipliers)
    tree_counts = None
    if want_tree:
        per_trial = [r[2] for r in rows]
        tree_means = [_mean_or_none([row[j] for row in per_trial]) for j in range(len(out_idx))]
        tree_counts = tuple(
            tuple(-1 if row[j] is None else row[j] for row in per_trial)
            for j in range(len(out_idx))
        )

    points = _size_points(
        cfg, m, n, p_star, successes(t_diam, want_diam), successes(t_rb, want_rb), tree_means
    )

    def fine_rates(thresholds: np.ndarray) -> tuple[float, ...]:
        counts = np.bincount(np.minimum(thresholds, gsize), minlength=gsize + 1)
        return tuple((np.cumsum(counts)[:gsize] / cfg.trials).tolist())

    def to_mult(idx: int) -> float:
        return grid[idx] if idx < gsize else math.inf

    diam_fine = fine_rates(t_diam) if want_diam else None
    rb_fine = fine_rates(t_rb) if want_rb else None
    curve = SizeCurve(
        m,
        n,
        p_star,
        regime_valid(m, n, p_star, cfg.d, cfg.epsilon),
        fine_multipliers=grid,
        diam_fine_rates=diam_fine,
        rainbow_fine_rates=rb_fine,
        diam_thresholds=tuple(to_mult(i) for i in t_diam) if want_diam else None,
        rainbow_thresholds=tuple(to_mult(i) for i in t_rb) if want_rb else None,
        tree_counts=tree_counts,
        diam_width=transition_width(grid, diam_fine) if want_diam else None,
        rainbow_width=transition_width(grid, rb_fine) if want_rb else None,
    )
    return points, curve


def _sweep_size_direct(cfg: SweepConfig, m: int, n: int, pool: ThreadPoolExecutor | None):
    p_star = sharp_threshold(m, n, cfg.d)
    cells = [(j, t) for j in range(len(cfg.multipliers)) for t in range(cfg.trials)]

    def work(cell: tuple[int, int]) -> TrialRecord:
        j, t = cell
        p, _ = _clamp_p(cfg.multipliers[j], p_star)
        return run_trial(cfg, (m, n), p, t, multiplier_index=j)

    records = list(pool.map(work, cells)) if pool else [work(c) for c in cells]

    nmult = len(cfg.multipliers)
    diam_succ: list[int | None] = [None] * nmult
    rb_succ: list[int | None] = [None] * nmult
    tree_means: list[float | None] = [None] * nmult
    for j in range(nmult):
        chunk = records[j * cfg.trials : (j + 1) * cfg.trials]
        if MEASURE_DIAM in cfg.measures:
            diam_succ[j] = sum(1 for r in chunk if r.diam_ok)
        if MEASURE_RAINBOW in cfg.measures:
            rb_succ[j] = sum(1 for r in chunk if r.rainbow_ok)
        if MEASURE_TREE in cfg.measures:
            tree_means[j] = _mean_or_none([r.tree_paths for r in chunk])
    points = _size_points(cfg, m, n, p_star, diam_succ, rb_succ, tree_means)

    def width(succ: list[int | None]) -> float | None:
        if any(s is None for s in succ):
            return None
        rates = [s / cfg.trials for s in succ]
        return transition_width(list(cfg.multipliers), rates)

    curve = SizeCurve(
        m,
        n,
        p_star,
        regime_valid(m, n, p_star, cfg.d, cfg.epsilon),
        diam_width=width(diam_succ),
        rainbow_width=width(rb_succ),
    )
    return points, curve


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Run all sizes and multipliers; deterministic for a fixed config."""
    t0 = time.perf_counter()
    nthreads = _threads(cfg)
    points: list[SweepPoint] = []
    curves: list[SizeCurve] = []
    pool = ThreadPoolExecutor(max_workers=nthreads) if nthreads > 1 else None
    try:
        for m, n in cfg.sizes:
            if cfg.coupled:
                pts, curve = _sweep_size_coupled(cfg, m, n, pool)
            else:
                pts, curve = _sweep_size_direct(cfg, m, n, pool)
            points.extend(pts)
            curves.append(curve)
    finally:
        if pool is not None:
            pool.shutdown()
    return SweepResult(cfg, tuple(points), tuple(curves), time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Persistence.


def _fmt(value) -> str:
    return str(value)


def csv_text(result: SweepResult) -> str:
    lines = [CSV_HEADER]
    cfg = result.config
    for pt in result.points:
        lines.append(
            ",".join(
                _fmt(x)
                for x in (
                    pt.m, pt.n, cfg.d, cfg.k, cfg.num_colors_resolved, pt.multiplier,
                    pt.p, pt.trials, pt.diam_rate, pt.rainbow_rate, pt.mean_tree_paths,
                    pt.ci_low, pt.ci_high, cfg.master_seed, pt.clamped,
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(result: SweepResult, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(csv_text(result))


_CSV_INT_FIELDS = ("m", "n", "d", "k", "num_colors", "trials", "master_seed")
_CSV_FLOAT_FIELDS = (
    "multiplier", "p", "diam_rate", "rainbow_rate", "mean_tree_paths", "ci_low", "ci_high"
)


def parse_csv_text(text: str, origin: str = "<string>") -> list[dict]:
    """Parse sweep CSV text into typed row dicts.

    The header must match CSV_HEADER exactly; any mismatch or malformed row
    raises ValueError naming the offending line.
    """
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"{origin}:1: empty file, expected header {CSV_HEADER!r}")
    if lines[0] != CSV_HEADER:
        raise ValueError(f"{origin}:1: bad header {lines[0]!r}, expected {CSV_HEADER!r}")
    columns = CSV_HEADER.split(",")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != len(columns):
            raise ValueError(
                f"{origin}:{lineno}: expected {len(columns)} fields, got {len(parts)}"
            )
        row: dict = {}
        for name, raw in zip(columns, parts):
            try:
                if name in _CSV_INT_FIELDS:
                    row[name] = int(raw)
                elif name in _CSV_FLOAT_FIELDS:
                    row[name] = float(raw)
                else:
                    row[name] = _parse_bool(raw)
            except ValueError as exc:
                raise ValueError(f"{origin}:{lineno}: field {name}: {exc}") from None
        rows.append(row)
    return rows


def read_csv_rows(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_csv_text(fh.read(), origin=path)


def _jnum(value):
    if value is None:
        return None
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return None
    return value


def to_json(result: SweepResult, verbose: bool = False) -> str:
    cfg = result.config
    sizes = []
    for curve in result.curves:
        single = SweepResult(
            SweepConfig(
                sizes=((curve.m, curve.n),),
                d=cfg.d, k=cfg.k, num_colors=cfg.num_colors,
                multipliers=cfg.multipliers, trials=cfg.trials,
                master_seed=cfg.master_seed, max_len=cfg.max_len,
                measures=cfg.measures, coupled=cfg.coupled,
                resolution=cfg.resolution, epsilon=cfg.epsilon,
                tree_override=cfg.tree_override, threads=cfg.threads,
            ),
            result.points_for(curve.m, curve.n),
            (curve,),
            0.0,
        )
        entry = {
            "m": curve.m,
            "n": curve.n,
            "p_star": curve.p_star,
            "regime": {
                "valid": curve.regime.valid,
                "checks": [
                    {"name": c.name, "lhs": c.lhs, "rhs": c.rhs,
                     "satisfied": c.satisfied, "slack": c.slack}
                    for c in curve.regime.checks
                ],
            },
            "diam_width": _jnum(curve.diam_width),
            "rainbow_width": _jnum(curve.rainbow_width),
        }
        for measure in ("diam_rate", "rainbow_rate"):
            try:
                crossing = estimate_crossing(single, measure)
            except ValueError:
                crossing = None
            entry[measure.replace("_rate", "_crossing")] = (
                None
                if crossing is None
                else {"multiplier": crossing.multiplier, "p": crossing.p,
                      "bracket": list(crossing.bracket)}
            )
        if verbose and curve.fine_multipliers is not None:
            entry["fine_multipliers"] = list(curve.fine_multipliers)
            entry["diam_fine_rates"] = (
                None if curve.diam_fine_rates is None else list(curve.diam_fine_rates)
            )
            entry["rainbow_fine_rates"] = (
                None if curve.rainbow_fine_rates is None else list(curve.rainbow_fine_rates)
            )
            entry["diam_thresholds"] = (
                None
                if curve.diam_thresholds is None
                else [_jnum(x) for x in curve.diam_thresholds]
            )
            entry["rainbow_thresholds"] = (
                None
                if curve.rainbow_thresholds is None
                else [_jnum(x) for x in curve.rainbow_thresholds]
            )
            entry["trial_seed_keys"] = [
                [cfg.master_seed, curve.m, curve.n, t] for t in range(cfg.trials)
            ]
            if curve.tree_counts is not None:
                entry["tree_paths_per_trial"] = [list(row) for row in curve.tree_counts]
        sizes.append(entry)
    payload = {
        "config": {
            "sizes": [list(s) for s in cfg.sizes],
            "d": cfg.d,
            "k": cfg.k,
            "num_colors": cfg.num_colors_resolved,
            "multipliers": list(cfg.multipliers),
            "trials": cfg.trials,
            "master_seed": cfg.master_seed,
            "max_len": cfg.max_len_resolved,
            "measures": list(cfg.measures),
            "coupled": cfg.coupled,
            "resolution": cfg.resolution,
            "epsilon": cfg.epsilon,
            "tree_override": None if cfg.tree_override is None else list(cfg.tree_override),
        },
        "backend": kernels.backend_name(),
        "points": [
            {
                "m": pt.m, "n": pt.n, "multiplier": pt.multiplier, "p": pt.p,
                "clamped": pt.clamped, "trials": pt.trials,
                "diam_rate": _jnum(pt.diam_rate),
                "rainbow_rate": _jnum(pt.rainbow_rate),
                "mean_tree_paths": _jnum(pt.mean_tree_paths),
                "ci_low": _jnum(pt.ci_low), "ci_high": _jnum(pt.ci_high),
            }
            for pt in result.points
        ],
        "sizes": sizes,
        "wall_clock_s": result.wall_clock_s,
    }
    return json.dumps(payload, indent=2)
