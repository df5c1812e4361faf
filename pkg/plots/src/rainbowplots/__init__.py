"""Render phase-transition figures from sweep CSV files.

This package talks to the experiment harness only through its CSV contract;
it deliberately re-validates that contract itself instead of importing the
producer.
"""

from rainbowplots.csvdata import CsvContractError, SweepRow, read_rows, rows_from_text
from rainbowplots.figure import PlotSpec, PlottedSeries, RenderResult, render

__all__ = [
    "CsvContractError",
    "SweepRow",
    "read_rows",
    "rows_from_text",
    "PlotSpec",
    "PlottedSeries",
    "RenderResult",
    "render",
]
