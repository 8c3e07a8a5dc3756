"""Command line entry point: generate, color, verify, exact, bench."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import bench
from .core import GraphError, GroupGraph, InstanceTooLarge, check_valid, exact_color
from .fewcolors import ADAPTIVE, color_fewcolors
from .generator import FIXTURES, GenParams, fixture, generate
from .layering import color_basic, color_mincolor, color_recolor, color_thin
from .menus import DEFAULT_ATTEMPTS, GROW_COLOR, GROW_K, greedy_menu_state, run_random_menu
from .textio import ParseError, emit_coloring, emit_graph, parse_coloring, parse_graph

METHOD_NAMES = ("basic", "thin", "mincolor", "recolor", "fewcolors", "randmenu", "greedymenu")

EXIT_OK, EXIT_INVALID, EXIT_PARTIAL = 0, 1, 2
EXIT_USAGE = 2


class CliError(Exception):
    pass


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(args) -> GroupGraph:
    if getattr(args, "fixture", None):
        return fixture(args.fixture)
    try:
        return parse_graph(_read(args.graph), allow_parallel=args.multigraph)
    except ParseError as exc:
        name = args.graph or "<stdin>"
        raise CliError(f"{name}: {exc}") from None


def _k_value(text: str):
    if text == ADAPTIVE:
        return ADAPTIVE
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or {ADAPTIVE!r}")
    if k < 1:
        raise argparse.ArgumentTypeError("k must be at least 1")
    return k


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="?", help="group graph file (default: stdin)")
    p.add_argument("--fixture", choices=FIXTURES, help="use a built-in graph instead")
    p.add_argument("--multigraph", action="store_true",
                   help="accept the same input/output pair in several groups")


def cmd_generate(args) -> int:
    p = GenParams(args.ni, args.no, args.di, args.do, args.chi, args.seed)
    _write(emit_graph(generate(p)), args.out)
    return EXIT_OK


def cmd_color(args) -> int:
    g = _load_graph(args)
    menus_text = None
    if args.method == "basic":
        col = color_basic(g)
    elif args.method == "thin":
        col = color_thin(g)
    elif args.method == "mincolor":
        col = color_mincolor(g)
    elif args.method == "recolor":
        col = color_recolor(g)
    elif args.method == "fewcolors":
        col = color_fewcolors(g, args.k if args.k is not None else ADAPTIVE, args.order)
    elif args.method == "randmenu":
        k = args.k if isinstance(args.k, int) else 2
        run = run_random_menu(g, k, args.attempts, args.seed, args.grow)
        col = run.coloring
        if args.dump_menus and run.menus is not None:
            menus_text = run.menus.dump()
    else:
        st = greedy_menu_state(g)
        col = st.coloring().compacted()
        if args.dump_menus:
            menus_text = st.assignment().dump()
    text = emit_coloring(g, col)
    _write(text, args.out)
    if menus_text is not None:
        sys.stderr.write(menus_text)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args)
    try:
        col = parse_coloring(g, _read(args.coloring))
    except ParseError as exc:
        raise CliError(f"{args.coloring}: {exc}") from None
    report = check_valid(g, col, require_total=True)
    name = lambda e: f"({g.input_names[g.edges[e][0]]},{g.output_names[g.edges[e][1]]})"
    for a, b in report.conflicts:
        print(f"conflict: {name(a)} and {name(b)} share color {col.color[a]}")
    if report.conflicts:
        print(f"invalid: {len(report.conflicts)} conflicts, {report.num_colors} colors")
        return EXIT_INVALID
    if report.uncolored:
        print(f"valid partial: {len(report.uncolored)} uncolored edges, "
              f"{report.num_colors} colors")
        return EXIT_PARTIAL
    print(f"valid: {report.num_colors} colors")
    return EXIT_OK


def cmd_exact(args) -> int:
    g = _load_graph(args)
    try:
        col = exact_color(g, args.max_colors, cap=args.cap)
    except InstanceTooLarge as exc:
        raise CliError(str(exc)) from None
    if col is None:
        print(f"no coloring with at most {args.max_colors} colors")
        return EXIT_INVALID
    _write(emit_coloring(g, col), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    points = None
    if args.points:
        points = [float(x) if "." in x else int(x) for x in args.points.split(",")]
    spec = bench.SweepSpec(args.family, methods, points, args.trials, args.seed, args.timing)
    try:
        records = bench.run_sweep(spec, jobs=args.jobs)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _write(bench.records_csv(records), args.out)
    if args.summary:
        _write(bench.summary_table(bench.summarize(records)), args.summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="groupcolor",
                                 description="Edge group coloring heuristics and experiments.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="random chi-colorable group graph")
    p.add_argument("--ni", type=int, required=True, help="number of inputs")
    p.add_argument("--no", type=int, required=True, help="number of outputs")
    p.add_argument("--di", type=int, required=True, help="max groups per input")
    p.add_argument("--do", type=int, required=True, help="output degree")
    p.add_argument("--chi", type=int, required=True, help="color bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("color", help="color a group graph")
    _add_graph_args(p)
    p.add_argument("--method", choices=METHOD_NAMES, required=True)
    p.add_argument("--k", type=_k_value,
                   help="colors per group (fewcolors: integer or 'adaptive'; randmenu: start k)")
    p.add_argument("--order", choices=("size", "declared"), default="size",
                   help="group order for fewcolors")
    p.add_argument("--attempts", type=int, default=DEFAULT_ATTEMPTS,
                   help="randmenu draws per palette size")
    p.add_argument("--grow", choices=(GROW_COLOR, GROW_K), default=GROW_COLOR,
                   help="randmenu palette growth after failed draws")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-menus", action="store_true",
                   help="write final menus to stderr (menu methods)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a coloring; exit 0 valid, 1 invalid, 2 partial")
    _add_graph_args(p)
    p.add_argument("--coloring", required=True, help="coloring listing file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="optimal coloring of a small graph")
    _add_graph_args(p)
    p.add_argument("--max-colors", type=int)
    p.add_argument("--cap", type=int, default=24, help="refuse graphs with more edges")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bench", help="run a parameter sweep and write CSV")
    p.add_argument("--family", choices=bench.FAMILIES, required=True)
    p.add_argument("--methods", default=",".join(bench.METHODS))
    p.add_argument("--points", help="comma-separated grid values (default: family grid)")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true",
                   help="fill the ms column (output is then not reproducible)")
    p.add_argument("--summary", help="also write per-point mean/min/max here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GraphError, ValueError) as exc:
        print(f"groupcolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, CliError) else 1


if __name__ == "__main__":
    sys.exit(main())
