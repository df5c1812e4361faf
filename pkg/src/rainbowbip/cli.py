"""Command line front end.

Exit codes: 0 for success (including negative verdicts such as "not rainbow
connected" or "no crossing"), 1 for domain failures (bad input files, searches
that exhaust their budget), 2 for usage errors (argparse).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from rainbowbip.formulas import (
    RegimeParams,
    diameter_criterion,
    regime_valid,
    sharp_threshold,
    threshold_even_alt,
)
from rainbowbip.graphs import (
    GraphFormatError,
    coloring_from_text,
    coloring_to_text,
    graph_from_text,
    graph_to_text,
    parse_vertex,
    random_coloring,
    sample_gnp,
)
from rainbowbip.rainbow import ResourceLimitError, brute_force_rc_k, is_rainbow_k_connected
from rainbowbip.sweep import (
    SweepConfig,
    crossing_in_series,
    csv_text,
    read_csv_rows,
    run_sweep,
    to_json,
    write_csv,
)
from rainbowbip.trees import (
    LEXICOGRAPHIC,
    SEEDED_RANDOM,
    GrowthFailure,
    GrowthPlan,
    grow_tree,
)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit_json(payload: dict, path: str | None = None) -> None:
    _write_text(path, json.dumps(payload, indent=2) + "\n")


def _vname(vertex) -> str:
    return f"{vertex[0]}:{vertex[1]}"


def _load_graph(path: str):
    return graph_from_text(_read_text(path), origin=path)


def _cmd_gen(args) -> int:
    g = sample_gnp(args.m, args.n, args.p, seed=args.seed)
    _write_text(args.out, graph_to_text(g))
    return 0


def _cmd_color(args) -> int:
    g = _load_graph(args.graph)
    coloring = random_coloring(g, args.colors, seed=args.seed)
    _write_text(args.out, coloring_to_text(coloring))
    return 0


def _cmd_check(args) -> int:
    g = _load_graph(args.graph)
    coloring = coloring_from_text(_read_text(args.coloring), origin=args.coloring)
    if not coloring.covers(g):
        raise GraphFormatError(f"{args.coloring}: coloring does not cover every edge")
    ok, failing = is_rainbow_k_connected(g, coloring, args.k, args.max_len)
    _emit_json(
        {
            "rainbow_k_connected": ok,
            "k": args.k,
            "max_len": args.max_len,
            "num_colors": coloring.num_colors,
            "failing_pair": None if failing is None else [_vname(failing[0]), _vname(failing[1])],
        }
    )
    return 0


def _cmd_rc_exact(args) -> int:
    g = _load_graph(args.graph)
    result = brute_force_rc_k(g, args.k, args.max_colors, max_edges=args.max_edges)
    if not result.found:
        _emit_json(
            {
                "rc": None,
                "k": args.k,
                "max_colors": args.max_colors,
                "reason": f"no rainbow {args.k}-connected coloring with at most "
                f"{args.max_colors} colors",
            }
        )
        return 1
    edges = [
        [_vname(("U", u)), _vname(("V", v)), c]
        for (u, v), c in sorted(result.coloring.color_of.items())
    ]
    _emit_json({"rc": result.num_colors, "k": args.k, "max_colors": args.max_colors,
                "coloring": edges})
    return 0


def _cmd_grow(args) -> int:
    g = _load_graph(args.graph)
    root = parse_vertex(args.root)
    avoid = frozenset(parse_vertex(v) for v in args.avoid.split(",")) if args.avoid else frozenset()
    plan = GrowthPlan(
        even_branch=args.even_branch,
        odd_branch=args.odd_branch,
        depth=args.depth,
        avoid=avoid,
        selection=args.selection,
    )
    outcome = grow_tree(g, root, plan, seed=args.seed)
    if isinstance(outcome, GrowthFailure):
        _emit_json(
            {
                "ok": False,
                "failure": {
                    "level": outcome.level,
                    "stuck_vertex": _vname(outcome.stuck_vertex),
                    "needed": outcome.needed,
                    "available": outcome.available,
                },
            }
        )
        return 0
    _emit_json(
        {
            "ok": True,
            "depth": outcome.depth,
            "levels": [[_vname(v) for v in level] for level in outcome.levels],
        }
    )
    return 0


def _cmd_threshold(args) -> int:
    params = RegimeParams(args.m, args.n, args.d, c0=args.c0, epsilon=args.epsilon)
    p_star = params.p_star
    p = min(args.multiplier * p_star, 1.0) if args.p is None else args.p
    criterion = diameter_criterion(args.m, args.n, p, args.d)
    regime = regime_valid(args.m, args.n, p, args.d, args.epsilon)
    amplified, symbolic = params.amplified_p()
    payload = {
        "m": args.m,
        "n": args.n,
        "d": args.d,
        "p_star": p_star,
        "p_star_base2": threshold_even_alt(args.m, args.n, args.d)
        if args.d % 2 == 0
        else None,
        "p": p,
        "criterion": {"value": criterion.value, "classification": criterion.classification},
        "regime": {
            "valid": regime.valid,
            "checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "satisfied": c.satisfied}
                for c in regime.checks
            ],
        },
        "constants": {
            "C1": params.C1,
            "C2": params.C2,
            "c1": params.c1,
            "c2": params.c2,
            "k_default": params.k,
        },
        "amplified_p": None if symbolic else amplified,
        "amplified_symbolic_only": symbolic,
    }
    _emit_json(payload)
    return 0


def _sweep_config(args) -> SweepConfig:
    data: dict = {}
    if args.config:
        base = SweepConfig.from_file(args.config)
        data = {
            "sizes": base.sizes, "d": base.d, "k": base.k, "num_colors": base.num_colors,
            "multipliers": base.multipliers, "trials": base.trials,
            "master_seed": base.master_seed, "max_len": base.max_len,
            "measures": base.measures, "coupled": base.coupled,
            "resolution": base.resolution, "epsilon": base.epsilon,
            "tree_override": base.tree_override, "threads": base.threads,
        }
    overrides = {
        "sizes": args.sizes, "d": args.d, "k": args.k, "num_colors": args.colors,
        "multipliers": args.multipliers, "trials": args.trials,
        "master_seed": args.seed, "max_len": args.max_len, "measures": args.measures,
        "resolution": args.resolution, "epsilon": args.epsilon,
        "tree_override": args.tree_override, "threads": args.threads,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if args.uncoupled:
        data["coupled"] = False
    if "sizes" not in data:
        raise ValueError("no sizes given; pass --sizes or a config file")
    data = {k: v for k, v in data.items() if v is not None}
    return SweepConfig.from_mapping(data)


def _cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    result = run_sweep(cfg)
    if args.out:
        write_csv(result, args.out)
    else:
        sys.stdout.write(csv_text(result))
    if args.json:
        _write_text(args.json, to_json(result, verbose=args.verbose) + "\n")
    return 0


def _cmd_crossing(args) -> int:
    rows = read_csv_rows(args.csv)
    sizes: list[tuple[int, int]] = []
    series: dict[tuple[int, int], list[dict]] = {}
    for row in rows:
        key = (row["m"], row["n"])
        if key not in series:
            series[key] = []
            sizes.append(key)
        series[key].append(row)
    measures = ["diam_rate", "rainbow_rate"] if args.measure == "both" else [args.measure]
    out = []
    for m, n in sizes:
        rows_mn = sorted(series[(m, n)], key=lambda r: r["multiplier"])
        d = rows_mn[0]["d"]
        p_star = sharp_threshold(m, n, d)
        entry: dict = {"m": m, "n": n, "d": d, "p_star": p_star}
        for measure in measures:
            rates = [r[measure] for r in rows_mn]
            mults = [r["multiplier"] for r in rows_mn]
            if any(math.isnan(x) for x in rates):
                entry[measure] = {"error": "not measured"}
                continue
            found = crossing_in_series(mults, rates)
            if found is None:
                entry[measure] = None
            else:
                mult, bracket = found
                entry[measure] = {
                    "multiplier": mult,
                    "p": min(mult * p_star, 1.0),
                    "bracket": list(bracket),
                }
        out.append(entry)
    _emit_json({"crossings": out})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowbip",
        description="Random bipartite graphs, rainbow connectivity checks, and "
        "threshold sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a bipartite random graph")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="output path, default stdout")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("color", help="color a graph's edges uniformly at random")
    p.add_argument("--graph", required=True, help="graph file, or - for stdin")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("check", help="decide rainbow k-connectivity of a colored graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-len", type=int, default=None, help="path length cap, default none")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("rc-exact", help="smallest palette that admits a rainbow "
                       "k-connected coloring (exhaustive)")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-colors", type=int, required=True)
    p.add_argument("--max-edges", type=int, default=10)
    p.set_defaults(func=_cmd_rc_exact)

    p = sub.add_parser("grow", help="grow a vertex-disjoint tree by levels")
    p.add_argument("--graph", required=True)
    p.add_argument("--root", required=True, help="vertex like U:0 or V:3")
    p.add_argument("--even-branch", type=int, required=True)
    p.add_argument("--odd-branch", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--avoid", default="", help="comma separated vertices to skip")
    p.add_argument("--selection", choices=[SEEDED_RANDOM, LEXICOGRAPHIC],
                   default=SEEDED_RANDOM)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_grow)

    p = sub.add_parser("threshold", help="predicted threshold and regime diagnostics")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c0", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=0.5)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--p", type=float, default=None, help="evaluate diagnostics at this p")
    group.add_argument("--multiplier", type=float, default=1.0,
                       help="evaluate at multiplier * p_star (default 1)")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("sweep", help="Monte Carlo sweep over multipliers of p_star")
    p.add_argument("--config", default=None, help="JSON or key=value config file")
    p.add_argument("--sizes", default=None, help="semicolon separated m,n pairs")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--colors", type=int, default=None)
    p.add_argument("--multipliers", default=None, help="comma separated")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--measures", default=None,
                   help="comma separated subset of diameter,rainbow,tree_paths")
    p.add_argument("--uncoupled", action="store_true",
                   help="independent streams per sweep point")
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--tree-override", default=None, help="even,odd branching override")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None, help="CSV path, default stdout")
    p.add_argument("--json", default=None, help="also write a JSON report here")
    p.add_argument("--verbose", action="store_true",
                   help="include per-trial detail in the JSON report")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("crossing", help="0.5 crossings from a sweep CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--measure", choices=["diam_rate", "rainbow_rate", "both"],
                   default="both")
    p.set_defaults(func=_cmd_crossing)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, ResourceLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
