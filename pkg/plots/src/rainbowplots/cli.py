import argparse
import sys

from rainbowplots.csvdata import CsvContractError
from rainbowplots.figure import MEASURES, PlotSpec, render


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rainbowplot",
        description="Render a phase-transition figure from sweep CSV files.",
    )
    ap.add_argument("inputs", nargs="+", help="sweep CSV files")
    ap.add_argument("--measure", choices=MEASURES, default="diam_rate")
    ap.add_argument("--out", default="phase.svg", help="output image (.svg or .png)")
    ap.add_argument("--title", default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            inputs=tuple(args.inputs),
            measure=args.measure,
            out=args.out,
            title=args.title,
        )
        result = render(spec)
    except (CsvContractError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for label, cross in sorted(result.crossings.items()):
        where = f"{cross:.4f}" if cross is not None else "none"
        print(f"{label} 0.5-crossing at multiplier {where}")
    print(f"wrote {result.path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
