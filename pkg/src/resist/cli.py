"""Command-line front end: ``resist <subcommand> [graph] [options]``.

Exit codes: 0 success, 1 graph is not balanced and strongly connected,
2 usage or input error, 3 an identity check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import matrix as mx
from .checks import InternalConsistencyError
from .cofactors import SizeLimitError, kappa, kappa_bruteforce, kappa_matrix_tree, resistance_cofsum
from .digraph import GraphParseError, parse_graph, random_balanced, validate
from .exact import EXACT, FLOAT, render
from .laplacian import laplacian, pinv_block, pinv_shift
from .matrix import IndexSet
from .resistance import analyze, resistance_det, resistance_inverse
from .verify import run_registry, summarize

log = logging.getLogger("resist")

EXACT_MAX_N = 32

EXIT_OK, EXIT_INVALID_GRAPH, EXIT_USAGE, EXIT_CHECK_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _index_set(text: str) -> IndexSet:
    try:
        return IndexSet.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resist",
        description="Resistance matrices of balanced, strongly connected digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("graph", help="edge-list or JSON graph file, '-' for stdin")
    backend = common.add_mutually_exclusive_group()
    backend.add_argument("--exact", dest="backend", action="store_const", const=EXACT,
                         help="rational arithmetic (default for n <= %d)" % EXACT_MAX_N)
    backend.add_argument("--float", dest="backend", action="store_const", const=FLOAT,
                         help="double precision arithmetic")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")

    sub.add_parser("info", parents=[common], help="balance and strong connectivity report")
    sub.add_parser("laplacian", parents=[common], help="Laplacian L = Diag(A1) - A")
    p = sub.add_parser("pinv", parents=[common], help="Moore-Penrose inverse of L")
    p.add_argument("--route", choices=("shift", "block"), default="shift")
    sub.add_parser("resistance", parents=[common], help="resistance matrix R")
    sub.add_parser("tau", parents=[common], help="tau vector")
    sub.add_parser("inverse", parents=[common], help="closed-form inverse of R")
    sub.add_parser("det", parents=[common], help="closed-form determinant of R")
    p = sub.add_parser("kappa", parents=[common], help="oriented spanning tree count")
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--brute", action="store_true", help="count by enumeration (n <= 10)")
    p = sub.add_parser("cofsum", parents=[common], help="cofactor sum of R[rows, cols]")
    p.add_argument("--rows", type=_index_set, required=True, help="comma list of 1-based labels")
    p.add_argument("--cols", type=_index_set, required=True, help="comma list of 1-based labels")
    p = sub.add_parser("verify", parents=[common], help="run the identity registry")
    p.add_argument("--seed", type=int, default=0, help="seed for the random index sets")
    p.add_argument("--sets", type=int, default=5, help="number of random index-set pairs")

    p = sub.add_parser("gen", help="random balanced strongly connected digraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cycles", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("edges", "json"), default="edges")
    return parser


def _read_graph(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except GraphParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _cell(v):
    return render(v) if not isinstance(v, float) else v


def _emit(value, fmt: str) -> str:
    if isinstance(value, dict):
        return json.dumps(value, indent=2) + "\n"
    if isinstance(value, np.ndarray) and value.ndim == 2:
        if fmt == "csv":
            return mx.to_csv(value)
        if fmt == "pretty":
            cells = [[render(v) for v in row] for row in value]
            width = max(len(c) for row in cells for c in row)
            return "".join(" ".join(c.rjust(width) for c in row) + "\n" for row in cells)
        return mx.to_json(value) + "\n"
    if isinstance(value, np.ndarray):
        if fmt == "csv":
            return mx.to_csv(value.reshape(1, -1))
        if fmt == "pretty":
            return " ".join(render(v) for v in value) + "\n"
        return json.dumps([_cell(v) for v in value]) + "\n"
    if isinstance(value, int):
        return f"{value}\n"
    if fmt == "json":
        return json.dumps(_cell(value)) + "\n"
    return render(value) + "\n"


def _run(args, out) -> int:
    if args.command == "gen":
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        g = random_balanced(args.n, args.cycles, args.seed)
        out.write(g.to_json() + "\n" if args.format == "json" else g.to_edge_list())
        return EXIT_OK

    g = _read_graph(args.graph)
    report = validate(g)
    if args.command == "info":
        out.write(_emit({"n": g.n, "m": len(g.edges), "balanced": report.balanced,
                         "strongly_connected": report.strongly_connected}, args.format))
        return EXIT_OK if report.ok else EXIT_INVALID_GRAPH
    if not report.ok:
        log.error("graph is not balanced and strongly connected (balanced=%s, strongly_connected=%s)",
                  report.balanced, report.strongly_connected)
        return EXIT_INVALID_GRAPH
    if g.n < 2:
        log.error("resistance needs at least two vertices")
        return EXIT_INVALID_GRAPH
    backend = args.backend or (EXACT if g.n <= EXACT_MAX_N else FLOAT)
    log.debug("backend %s, n=%d", backend, g.n)

    cmd = args.command
    if cmd == "laplacian":
        result = laplacian(g, backend)
    elif cmd == "pinv":
        L = laplacian(g, backend)
        result = pinv_shift(L).Ldag if args.route == "shift" else pinv_block(L)
    elif cmd == "kappa":
        if args.brute:
            try:
                result = kappa_bruteforce(g, args.root or 1)
            except (SizeLimitError, IndexError) as exc:
                raise UsageError(str(exc)) from None
        elif args.root is not None:
            try:
                result = kappa_matrix_tree(laplacian(g), args.root)
            except IndexError as exc:
                raise UsageError(str(exc)) from None
        else:
            result = kappa(laplacian(g))
    elif cmd == "verify":
        checks = run_registry(g, backend, seed=args.seed, n_sets=args.sets)
        summary = summarize(checks, residuals=backend == FLOAT)
        summary = {"n": g.n, "backend": backend, **summary}
        out.write(_emit(summary, "json"))
        for c in checks:
            if not c.passed:
                log.error("identity failed: %s (%s)", c.name, c.anchor)
        return EXIT_OK if summary["passed"] else EXIT_CHECK_FAILED
    else:
        bundle, rb = analyze(g, backend)
        if cmd == "resistance":
            result = rb.R
        elif cmd == "tau":
            result = rb.tau
        elif cmd == "inverse":
            result = resistance_inverse(bundle, rb)
        elif cmd == "det":
            result = resistance_det(rb, g.n)
        elif cmd == "cofsum":
            try:
                result = resistance_cofsum(bundle, rb.R, rb.kappa, args.rows, args.cols)
            except (ValueError, IndexError) as exc:
                raise UsageError(str(exc)) from None
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown command {cmd}")
    out.write(_emit(result, args.format))
    return EXIT_OK


def main(argv: list[str] | None = None, out=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="resist: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = out or sys.stdout
    try:
        return _run(args, out)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        log.error("%s", exc)
        return EXIT_CHECK_FAILED


def entry() -> None:
    sys.exit(main())
