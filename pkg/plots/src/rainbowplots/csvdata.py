"""Reader for the sweep CSV contract.

The header below is the full contract: these exact column names, in this
exact order.  Anything else is rejected with a ``file:line`` diagnostic so a
drifted producer is caught at the boundary rather than as a wrong figure.
"""

from __future__ import annotations

from dataclasses import dataclass

EXPECTED_HEADER = (
    "m,n,d,k,num_colors,multiplier,p,trials,diam_rate,rainbow_rate,"
    "mean_tree_paths,ci_low,ci_high,master_seed,clamped"
)

_INT_FIELDS = ("m", "n", "d", "k", "num_colors", "trials", "master_seed")
_FLOAT_FIELDS = (
    "multiplier",
    "p",
    "diam_rate",
    "rainbow_rate",
    "mean_tree_paths",
    "ci_low",
    "ci_high",
)


class CsvContractError(ValueError):
    """Input does not follow the sweep CSV contract."""


@dataclass(frozen=True)
class SweepRow:
    m: int
    n: int
    d: int
    k: int
    num_colors: int
    multiplier: float
    p: float
    trials: int
    diam_rate: float
    rainbow_rate: float
    mean_tree_paths: float
    ci_low: float
    ci_high: float
    master_seed: int
    clamped: bool

    def rate(self, measure: str) -> float:
        if measure == "diam_rate":
            return self.diam_rate
        if measure == "rainbow_rate":
            return self.rainbow_rate
        raise ValueError(f"unknown measure {measure!r}")


def _parse_bool(text: str) -> bool:
    if text == "True":
        return True
    if text == "False":
        return False
    raise ValueError(f"expected True or False, got {text!r}")


def rows_from_text(text: str, origin: str = "<string>") -> list[SweepRow]:
    lines = text.splitlines()
    if not lines:
        raise CsvContractError(f"{origin}:1: empty input, expected header {EXPECTED_HEADER!r}")
    if lines[0] != EXPECTED_HEADER:
        raise CsvContractError(
            f"{origin}:1: header does not match the sweep contract: got {lines[0]!r}"
        )
    names = EXPECTED_HEADER.split(",")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(names):
            raise CsvContractError(
                f"{origin}:{lineno}: expected {len(names)} fields, got {len(parts)}"
            )
        record = {}
        for name, part in zip(names, parts):
            try:
                if name in _INT_FIELDS:
                    record[name] = int(part)
                elif name in _FLOAT_FIELDS:
                    record[name] = float(part)
                else:
                    record[name] = _parse_bool(part)
            except ValueError as exc:
                raise CsvContractError(f"{origin}:{lineno}: field {name}: {exc}") from None
        rows.append(SweepRow(**record))
    if not rows:
        raise CsvContractError(f"{origin}:2: no data rows")
    return rows


def read_rows(path: str) -> list[SweepRow]:
    with open(path, encoding="utf-8") as fh:
        return rows_from_text(fh.read(), origin=path)
