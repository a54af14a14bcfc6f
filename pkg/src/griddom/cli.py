"""Command-line front end: constructions, searches, and artifact rendering."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence

from .band import (
    Finite,
    Periodic,
    build_transition_graph,
    closed_walk,
    greedy_from_row,
    verify_period,
)
from .codec import to_pds_array
from .core import (
    GridDims,
    GridError,
    InitialCondition,
    InitialClass,
    classify_initial,
    init_word,
    is_tpc,
    oracle_enumerate,
)
from .render import (
    FIGURES,
    array_text,
    array_to_json,
    diff_text,
    dot_graph,
    draw_decomposition,
    draw_histogram,
    draw_solution,
    draw_window,
    figure_text,
    golden_text,
    grid_text,
    labels_text,
    solution_to_json,
    trace_text,
    walk_text,
    window_text,
)
from .search import enumerate_all
from .theta import Pds, Running, Stalled, parse_strategy, run_theta
from .tpc import TpcShape, build_s1, build_tpc, kg_has_tpc

EXIT_OK = 0
EXIT_DRIFT = 1
EXIT_BAD_INPUT = 2
EXIT_OPEN = 3


def _columns(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def _initial(args) -> InitialCondition:
    return InitialCondition(args.m, _columns(args.s))


def _print_solution(sol, rows=None) -> None:
    print(f"pds {sol.m}x{sol.n}")
    if rows is not None:
        print(labels_text(rows))
    print(grid_text(sol.m, sol.n, sol.vertices))
    if sol.trace:
        print(trace_text(sol.trace))


def cmd_check(args) -> int:
    cls = classify_initial(args.m, _columns(args.s))
    if cls is InitialClass.IAVS:
        word = init_word(args.m, _columns(args.s))
        print(f"IAVS, f(H0)={word}")
        return EXIT_OK
    print(cls.value)
    return EXIT_BAD_INPUT if cls is InitialClass.INADMISSIBLE else EXIT_OK


def _finish_run(args, outcome) -> int:
    if isinstance(outcome, Stalled):
        print(f"stalled: {outcome.reason}")
        return EXIT_OPEN
    if isinstance(outcome, Running):
        print(f"running: still open after {len(outcome.rows)} rows")
        return EXIT_OPEN
    return EXIT_OK


def cmd_run(args) -> int:
    outcome = run_theta(_initial(args), parse_strategy(args.strategy), args.max_rows)
    status = _finish_run(args, outcome)
    if status != EXIT_OK:
        return status
    sol = outcome.solution
    if args.json:
        print(solution_to_json(sol))
    else:
        _print_solution(sol, outcome.rows)
    if args.figure:
        draw_solution(sol, args.figure)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    report = enumerate_all(_initial(args), args.n_max)
    by_n = report.count_by_n()
    if args.json:
        obj = {
            "m": report.m,
            "n_max": report.n_max,
            "s_prime": list(report.initial or ()),
            "count": len(report.solutions),
            "by_n": {str(n): c for n, c in by_n.items()},
            "nodes_expanded": report.nodes_expanded,
            "max_depth": report.max_depth,
            "solutions": [json.loads(solution_to_json(s)) for s in report.solutions],
        }
        print(json.dumps(obj))
    else:
        for n, count in by_n.items():
            print(f"n={n}: {count}")
        print(f"total={len(report.solutions)} nodes={report.nodes_expanded} depth={report.max_depth}")
    if args.report:
        outdir = Path(args.report)
        outdir.mkdir(parents=True, exist_ok=True)
        with open(outdir / "solutions.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "size", "vertices"])
            for sol in report.solutions:
                cells = " ".join(f"{i},{j}" for (i, j) in sol.sorted_vertices())
                writer.writerow([sol.n, len(sol.vertices), cells])
        draw_histogram(
            by_n,
            str(outdir / "histogram.png"),
            title=f"m={report.m}, s'={list(report.initial or ())}",
        )
    return EXIT_OK


def _band_row0(initial: InitialCondition) -> str:
    cls = initial.classification
    if cls not in (InitialClass.IAVS, InitialClass.COMPLETE):
        raise GridError(f"band seeds must be IAVS or Complete, got {cls.value}")
    return init_word(initial.m, initial.columns)


def cmd_band(args) -> int:
    initial = _initial(args)
    if args.dot or args.walk:
        strategy = parse_strategy(args.strategy) if args.strategy else None
        graph = build_transition_graph(initial, args.state_cap, strategy)
        print(
            f"graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges, "
            f"{len(graph.threads)} threads, complete={graph.complete}"
        )
        if args.dot:
            Path(args.dot).write_text(dot_graph(graph))
        if args.walk:
            print(walk_text(closed_walk(graph)))
        return EXIT_OK
    strategy = parse_strategy(args.strategy) if args.strategy else None
    outcome = greedy_from_row(_band_row0(initial), strategy, args.row_cap)
    if isinstance(outcome, Finite):
        sol = outcome.solution
        print(f"finite: closes at n={sol.n}")
        print(grid_text(sol.m, sol.n, sol.vertices))
        return EXIT_OK
    cert = outcome.certificate
    ok = verify_period(cert, initial, strategy)
    print(f"periodic: k={cert.k} ell={cert.ell} verified={ok}")
    print(labels_text(cert.slices))
    return EXIT_OK


def cmd_array(args) -> int:
    outcome = run_theta(_initial(args), parse_strategy(args.strategy), args.max_rows)
    status = _finish_run(args, outcome)
    if status != EXIT_OK:
        return status
    sol = outcome.solution
    array = to_pds_array(GridDims(sol.m, sol.n), sol.vertices)
    print(array_to_json(array) if args.json else array_text(array))
    if args.figure:
        draw_decomposition(GridDims(sol.m, sol.n), sol.vertices, args.figure)
    return EXIT_OK


def cmd_tpc(args) -> int:
    sol = build_tpc(args.m, args.shape)
    if args.json:
        print(solution_to_json(sol))
    else:
        print(f"tpc {sol.m}x{sol.n} {TpcShape(args.shape).value}")
        print(grid_text(sol.m, sol.n, sol.vertices))
        print(array_text(to_pds_array(GridDims(sol.m, sol.n), sol.vertices)))
    if args.figure:
        draw_decomposition(GridDims(sol.m, sol.n), sol.vertices, args.figure)
    return EXIT_OK


def cmd_kg(args) -> int:
    verdict = "yes" if kg_has_tpc(args.m, args.n) else "no"
    print(f"tpc in {args.m}x{args.n}: {verdict}")
    return EXIT_OK


def cmd_s1(args) -> int:
    window = build_s1(args.radius)
    if args.svg:
        draw_window(window, args.svg)
        print(f"wrote {args.svg}")
    else:
        print(window_text(window))
    return EXIT_OK


def cmd_figures(args) -> int:
    names = sorted(FIGURES) if args.which == "all" else [args.which]
    drift = False
    for name in names:
        actual = figure_text(name)
        expected = golden_text(name)
        if actual == expected:
            print(f"{name}: OK")
        else:
            drift = True
            print(f"{name}: DRIFT")
            sys.stdout.write(diff_text(expected, actual, f"golden/{name}", f"generated/{name}"))
    return EXIT_DRIFT if drift else EXIT_OK


def cmd_oracle(args) -> int:
    initial = _columns(args.s) if args.s is not None else None
    dims = GridDims(args.m, args.n)
    solutions = oracle_enumerate(dims, initial)
    if args.tpc:
        solutions = [s for s in solutions if is_tpc(dims, s.vertices)]
    if args.count_only:
        print(len(solutions))
    elif args.json:
        print(json.dumps([json.loads(solution_to_json(s)) for s in solutions]))
    else:
        for sol in solutions:
            print(" ".join(f"{i},{j}" for (i, j) in sol.sorted_vertices()) or "(empty)")
        print(f"total={len(solutions)}")
    return EXIT_OK


def _add_initial(sub, required: bool = True) -> None:
    sub.add_argument("--m", type=int, required=True, help="number of columns")
    sub.add_argument(
        "--s",
        "--s-prime",
        dest="s",
        required=required,
        default=None,
        help="comma-separated 0-based code columns of the top row (empty for none)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="griddom",
        description="Perfect dominating sets and total perfect codes in grid graphs.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="classify an initial condition")
    _add_initial(p)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("run", help="advance rows until a grid closes")
    _add_initial(p)
    p.add_argument("--strategy", default="alpha", help="alpha|beta|gamma or a word over a/b")
    p.add_argument("--max-rows", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--figure", default=None, help="write a plot of the solution here")
    p.set_defaults(func=cmd_run)

    p = subs.add_parser("enumerate", help="all solutions up to a height bound")
    _add_initial(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--report", default=None, help="directory for solutions.csv and figures")
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("band", help="infinite-band runs and transition graphs")
    _add_initial(p)
    p.add_argument("--strategy", default=None, help="alpha|beta (greedy) or gamma (graphs)")
    p.add_argument("--row-cap", type=int, default=None)
    p.add_argument("--state-cap", type=int, default=10_000)
    p.add_argument("--dot", default=None, help="write the transition graph here")
    p.add_argument("--walk", action="store_true", help="print a covering closed walk")
    p.set_defaults(func=cmd_band)

    p = subs.add_parser("array", help="run to a grid and print its room/ladder array")
    _add_initial(p)
    p.add_argument("--strategy", default="alpha")
    p.add_argument("--max-rows", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--figure", default=None, help="write the decomposition plot here")
    p.set_defaults(func=cmd_array)

    p = subs.add_parser("tpc", help="build a total perfect code")
    p.add_argument("--m", type=int, required=True)
    p.add_argument(
        "--shape",
        default="TallPlus2",
        choices=[shape.value for shape in TpcShape],
    )
    p.add_argument("--json", action="store_true")
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_tpc)

    p = subs.add_parser("kg", help="does an m x n grid admit a total perfect code?")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_kg)

    p = subs.add_parser("s1", help="window onto the lattice code")
    p.add_argument("--radius", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--text", action="store_true", help="print the window (default)")
    group.add_argument("--svg", default=None, help="draw the tiling window here")
    p.set_defaults(func=cmd_s1)

    p = subs.add_parser("figures", help="regenerate artifacts and diff against goldens")
    p.add_argument("which", choices=[*sorted(FIGURES), "all"])
    p.set_defaults(func=cmd_figures)

    p = subs.add_parser("oracle", help="brute-force solutions of a finite grid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", "--s-prime", dest="s", default=None, help="restrict row-0 code columns")
    p.add_argument("--tpc", action="store_true", help="keep only total perfect codes")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GridError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
