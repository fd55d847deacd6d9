"""Command line entry point: ``kempe recolor | oracle | verify``.

Reports go to standard output as JSON, diagnostics to standard error.
Exit codes: 0 success, 2 precondition failure, 3 replay failure,
4 replay succeeded but ended at the wrong coloring.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field

from .core import Coloring, Graph, verify_sequence
from .degenerate import RecolorSetting, equalize, find_degree_ordering, find_list_ordering
from .delta import delta_equalize_run
from .errors import ImproperIntermediate, InvalidMove, KempeError, PreconditionViolated, RoutingFailed
from .formats import (
    read_coloring,
    read_graph,
    read_layers,
    read_lists,
    read_sequence,
    read_td,
    sequence_to_dict,
    write_sequence,
)
from .lvm import lvm_sequence
from .mad import Layering, compute_layering, mad_equalize
from .oracle import Budget, oracle_report
from .treewidth import chordal_equalize, peo, tw_equalize_run

log = logging.getLogger("kempe")

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_VERIFY = 3
EXIT_WRONG_END = 4

METHODS = ("lvm", "degenerate", "list", "mad", "treewidth", "delta", "chordal")


@dataclass
class RunReport:
    method: str
    instance: dict
    length: int
    replay: str
    bound: dict | None = None
    warnings: list[str] = field(default_factory=list)


def _run_method(args, g: Graph, alpha: Coloring, beta: Coloring, k: int):
    """Returns (sequence, claimed bound or None, warnings)."""
    n = g.n
    if args.method == "lvm":
        return lvm_sequence(g, alpha, beta, k), None, []
    if args.method == "degenerate":
        for d in range(1, k + 1):
            order = find_degree_ordering(g, d)
            if order is not None:
                break
        else:
            raise PreconditionViolated(f"no ordering with degree and degeneracy bounds for k={k}")
        setting = RecolorSetting.degree_bounded(g, order, d, k)
        return equalize(g, setting, alpha, beta).sequence, 4 * n * n, []
    if args.method == "list":
        if not args.lists:
            raise PreconditionViolated("--lists is required for the list method")
        lists = read_lists(args.lists)
        order = find_list_ordering(g, lists)
        if order is None:
            raise PreconditionViolated("more than one vertex has a list shorter than deg + 1")
        setting = RecolorSetting.list_mode(g, order, lists)
        return equalize(g, setting, alpha, beta).sequence, 2 * (g.num_edges() + n), []
    if args.method == "mad":
        layering = None
        if args.layering:
            layering = Layering.from_layers(n, read_layers(args.layering), k - 1)
        lay = layering or compute_layering(g, k)
        seq = mad_equalize(g, k, alpha, beta, epsilon=args.epsilon, layering=lay)
        return seq, n * n * (2 * (k - 1)) ** lay.t + n, []
    if args.method == "treewidth":
        td = None
        if args.td_file and not args.min_fill:
            td = read_td(args.td_file, n)
        run = tw_equalize_run(g, alpha, beta, k, td)
        warnings = []
        if td is None:
            warnings.append(f"min-fill completion has width {run.completion.width}")
        return run.sequence, 8 * max(run.completion.width, 1) * n * n, warnings
    if args.method == "chordal":
        return chordal_equalize(g, peo(g), alpha, beta, k), n, []
    if args.method == "delta":
        run = delta_equalize_run(g, k, alpha, beta)
        return run.sequence, None, [f"route={run.route}"] + run.warnings
    raise PreconditionViolated(f"unknown method {args.method}")


def cmd_recolor(args) -> int:
    try:
        g = read_graph(args.graph)
        k = args.k
        alpha = read_coloring(args.from_, k)
        beta = read_coloring(args.to, k)
        k = k if k is not None else max(alpha.k, beta.k)
        alpha, beta = Coloring(alpha.colors, k), Coloring(beta.colors, k)
        seq, bound, warnings = _run_method(args, g, alpha, beta, k)
    except (PreconditionViolated, RoutingFailed) as exc:
        log.error("precondition failed: %s: %s", type(exc).__name__, exc)
        return EXIT_PRECONDITION
    except (KempeError, OSError, ValueError, KeyError) as exc:
        log.error("cannot run %s: %s: %s", args.method, type(exc).__name__, exc)
        return EXIT_PRECONDITION
    for w in warnings:
        log.warning(w)
    try:
        end = verify_sequence(g, alpha, seq)
        status = "ok" if end == beta else "wrong-end"
    except (InvalidMove, ImproperIntermediate) as exc:
        status = f"failed at move {exc.index}: {exc}"
    report = RunReport(
        method=args.method,
        instance={"n": g.n, "m": g.num_edges(), "k": k},
        length=len(seq),
        replay=status,
        bound=None if bound is None else {"claimed": bound, "observed": len(seq), "holds": len(seq) <= bound},
        warnings=warnings,
    )
    if args.out:
        write_sequence(alpha, seq, args.out)
        out = asdict(report)
    else:
        out = asdict(report) | {"sequence": sequence_to_dict(alpha, seq)}
    print(json.dumps(out))
    return EXIT_OK if status == "ok" else EXIT_VERIFY


def cmd_oracle(args) -> int:
    try:
        g = read_graph(args.graph)
        budget = Budget(max_vertices=args.max_vertices, max_colors=args.max_colors,
                        max_colorings=args.budget)
        report = oracle_report(g, args.k, budget)
    except (KempeError, OSError, ValueError, KeyError) as exc:
        log.error("oracle failed: %s: %s", type(exc).__name__, exc)
        return EXIT_PRECONDITION
    print(json.dumps(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g = read_graph(args.graph)
        stored_start, seq = read_sequence(args.sequence)
        start = read_coloring(args.start) if args.start else stored_start
        if start is None:
            raise PreconditionViolated("no start coloring given or stored in the sequence")
        lists = read_lists(args.lists) if args.lists else None
        end = read_coloring(args.end, start.k) if args.end else None
    except (KempeError, OSError, ValueError, KeyError) as exc:
        log.error("cannot load inputs: %s: %s", type(exc).__name__, exc)
        return EXIT_PRECONDITION
    try:
        final = verify_sequence(g, start, seq, lists)
    except (InvalidMove, ImproperIntermediate) as exc:
        log.error("replay failed at index %s: %s", exc.index, exc)
        print(json.dumps({"ok": False, "index": exc.index, "error": str(exc)}))
        return EXIT_VERIFY
    if end is not None and final.colors != end.colors:
        log.error("replay ended at %s, expected %s", list(final.colors), list(end.colors))
        print(json.dumps({"ok": False, "final": list(final.colors)}))
        return EXIT_WRONG_END
    print(json.dumps({"ok": True, "length": len(seq), "final": list(final.colors)}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kempe", description="Kempe recoloring toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recolor", help="compute a Kempe sequence between two colorings")
    rec.add_argument("--graph", required=True, help="graph JSON or DIMACS .col file")
    rec.add_argument("--from", dest="from_", required=True, help="start coloring JSON")
    rec.add_argument("--to", required=True, help="target coloring JSON")
    rec.add_argument("--k", type=int, help="palette size (default: from the colorings)")
    rec.add_argument("--method", choices=METHODS, default="degenerate")
    rec.add_argument("--out", help="write the sequence JSON here")
    rec.add_argument("--lists", help="list assignment JSON (method list)")
    rec.add_argument("--epsilon", type=float, help="check mad <= k - epsilon (method mad)")
    rec.add_argument("--layering", help="layering JSON (method mad)")
    rec.add_argument("--td-file", help="PACE .td tree decomposition (method treewidth)")
    rec.add_argument("--min-fill", action="store_true", help="use the min-fill completion (method treewidth)")
    rec.set_defaults(func=cmd_recolor)

    ora = sub.add_parser("oracle", help="brute-force the Kempe reconfiguration graph")
    ora.add_argument("--graph", required=True)
    ora.add_argument("--k", type=int, required=True)
    ora.add_argument("--budget", type=int, default=Budget().max_colorings, help="maximum number of colorings")
    ora.add_argument("--max-vertices", type=int, default=Budget().max_vertices)
    ora.add_argument("--max-colors", type=int, default=Budget().max_colors)
    ora.set_defaults(func=cmd_oracle)

    ver = sub.add_parser("verify", help="replay a sequence and check it")
    ver.add_argument("--graph", required=True)
    ver.add_argument("--sequence", required=True)
    ver.add_argument("--start", help="start coloring (default: the one stored in the sequence)")
    ver.add_argument("--end", help="expected final coloring")
    ver.add_argument("--lists")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        stream=sys.stderr,
        format="level=%(levelname)s logger=%(name)s msg=%(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
