"""Phase-transition figure: rate vs multiplier, one series per (m, n).

The renderer is deliberately dumb about statistics: rates come straight from
the CSV rows, the confidence band is the Wilson 95% interval recomputed from
(rate, trials), and the only derived mark is the 0.5-crossing diamond.  Every
plotted array can be read back from the returned result, which extracts them
from the live matplotlib artists rather than from the inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.collections import LineCollection

from rainbowplots.csvdata import SweepRow, read_rows

MEASURES = ("diam_rate", "rainbow_rate")
Z95 = 1.959963984540054


@dataclass(frozen=True)
class PlotSpec:
    inputs: tuple[str, ...]
    measure: str = "diam_rate"
    out: str = "phase.svg"
    overlay: str = "size"
    title: str | None = None

    def __post_init__(self) -> None:
        if not self.inputs:
            raise ValueError("need at least one input CSV")
        if self.measure not in MEASURES:
            raise ValueError(f"measure must be one of {MEASURES}, got {self.measure!r}")
        if self.overlay != "size":
            raise ValueError(f"only overlay by size is supported, got {self.overlay!r}")


@dataclass(frozen=True)
class PlottedSeries:
    """Arrays exactly as handed to matplotlib, read back from the artists."""

    m: int
    n: int
    label: str
    multipliers: np.ndarray = field(repr=False)
    rates: np.ndarray = field(repr=False)
    ci_low: np.ndarray = field(repr=False)
    ci_high: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class RenderResult:
    path: str
    series: tuple[PlottedSeries, ...]
    crossings: dict[str, float | None]


def wilson_band(rates: np.ndarray, trials: np.ndarray):
    """Recompute the per-point Wilson 95% interval from rate and trial count."""
    low = np.full(len(rates), math.nan)
    high = np.full(len(rates), math.nan)
    for i, (rate, t) in enumerate(zip(rates, trials)):
        if math.isnan(rate):
            continue
        successes = round(rate * t)
        phat = successes / t
        zz = Z95 * Z95
        denom = 1.0 + zz / t
        center = (phat + zz / (2.0 * t)) / denom
        half = Z95 * math.sqrt(phat * (1.0 - phat) / t + zz / (4.0 * t * t)) / denom
        low[i] = 0.0 if successes == 0 else max(0.0, center - half)
        high[i] = 1.0 if successes == t else min(1.0, center + half)
    return low, high


def crossing_point(multipliers: np.ndarray, rates: np.ndarray) -> float | None:
    """First multiplier where the rate series crosses 0.5, linearly interpolated."""
    for i in range(len(rates) - 1):
        a, b = rates[i], rates[i + 1]
        if math.isnan(a) or math.isnan(b):
            continue
        if a < 0.5 <= b:
            if b == a:
                return float(multipliers[i + 1])
            frac = (0.5 - a) / (b - a)
            return float(multipliers[i] + frac * (multipliers[i + 1] - multipliers[i]))
    return None


def _group_by_size(rows: list[SweepRow]) -> dict[tuple[int, int], list[SweepRow]]:
    groups: dict[tuple[int, int], list[SweepRow]] = {}
    for row in rows:
        groups.setdefault((row.m, row.n), []).append(row)
    return groups


def render(spec: PlotSpec) -> RenderResult:
    rows: list[SweepRow] = []
    for path in spec.inputs:
        rows.extend(read_rows(path))
    if all(math.isnan(row.rate(spec.measure)) for row in rows):
        raise ValueError(f"measure {spec.measure} has no recorded values in the input")

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    extracted = []
    crossings: dict[str, float | None] = {}
    for (m, n), group in _group_by_size(rows).items():
        xs = np.array([row.multiplier for row in group], dtype=float)
        ys = np.array([row.rate(spec.measure) for row in group], dtype=float)
        trials = np.array([row.trials for row in group], dtype=float)
        lo, hi = wilson_band(ys, trials)
        label = f"({m},{n})"

        (line,) = ax.plot(xs, ys, marker="o", markersize=4, label=label)
        color = line.get_color()
        whiskers = LineCollection(
            [((x, a), (x, b)) for x, a, b in zip(xs, lo, hi)],
            colors=color,
            linewidths=1.0,
        )
        ax.add_collection(whiskers)
        ax.fill_between(xs, lo, hi, color=color, alpha=0.15, linewidth=0)

        cross = crossing_point(xs, ys)
        crossings[label] = cross
        if cross is not None:
            ax.scatter([cross], [0.5], color=color, marker="D", zorder=5, s=30)

        segs = whiskers.get_segments()
        extracted.append(
            PlottedSeries(
                m,
                n,
                label,
                multipliers=np.asarray(line.get_xdata(), dtype=float),
                rates=np.asarray(line.get_ydata(), dtype=float),
                ci_low=np.array([seg[0][1] for seg in segs]),
                ci_high=np.array([seg[1][1] for seg in segs]),
            )
        )

    ax.axvline(1.0, color="gray", linestyle="--", linewidth=1.0)
    ax.set_xscale("log")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xlabel("multiplier of the predicted threshold")
    ax.set_ylabel(spec.measure)
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(title="(m,n)")
    fig.tight_layout()
    fig.savefig(spec.out)
    plt.close(fig)
    return RenderResult(spec.out, tuple(extracted), crossings)
