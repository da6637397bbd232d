"""Command-line entry point: ``villainy <subcommand> [options]``.

Exit codes: 0 clean, 2 mathematical counterexample, 64 usage or parse
error, 65 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .canonical import EnumerationBoundError
from .characterize import (
    ClassLabel,
    classify_theorem5,
    known_villainy,
    known_weak_villainy,
    lemma_implications,
)
from .coloring import chromatic_number, feasible_multiplicities
from .engine import DEFAULT_EXACT_BOUND, OrderBoundExceeded, villainy, weak_villainy
from .families import FamilySpecError, build_family, parse_family
from .graph import Graph, GraphError
from .graph6 import Graph6Error, emit_graph6, parse_graph6
from .harness import (
    SCHEMA_VERSION,
    HarnessConfig,
    cmd_cycles,
    cmd_parity,
    default_max_n,
    render,
    sweep_bipartite,
    sweep_lemmas,
    sweep_theorem5,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 2
EXIT_USAGE = 64
EXIT_BOUND = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def parse_input(text: str) -> Graph:
    """Read a graph from a family expression or a graph6 string."""
    if "(" in text:
        return build_family(parse_family(text))
    return parse_graph6(text)


def inspect_graph(g: Graph, exact_bound: int = DEFAULT_EXACT_BOUND, mode: str = "both") -> dict:
    strong = villainy(g, exact_bound) if mode in ("strong", "both") else None
    weak = weak_villainy(g, exact_bound) if mode in ("weak", "both") else None
    label = classify_theorem5(g)
    kv, kw = known_villainy(g), known_weak_villainy(g)
    certs_ok = all(not c.violations(g) for c in (strong, weak) if c is not None)
    return {
        "schema_version": SCHEMA_VERSION,
        "report": "inspect",
        "graph6": emit_graph6(g),
        "n": g.n,
        "edges": [list(e) for e in g.edges()],
        "chi": chromatic_number(g),
        "profiles": [list(p) for p in sorted(feasible_multiplicities(g))],
        "B": strong.value if strong else None,
        "Bw": weak.value if weak else None,
        "B_certificate": strong.to_dict() if strong else None,
        "Bw_certificate": weak.to_dict() if weak else None,
        "label": None if label is ClassLabel.NONE else label.value,
        "known": {"B": kv.to_dict() if kv else None, "Bw": kw.to_dict() if kw else None},
        "lemmas": [imp.to_dict() for imp in lemma_implications(g)],
        "consistency": {
            "B_matches_known": None if kv is None or strong is None else kv.value == strong.value,
            "Bw_matches_known": None if kw is None or weak is None else kw.value == weak.value,
            "certificates_valid": certs_ok,
            "B2_classified": None if strong is None or strong.value != 2 else label is not ClassLabel.NONE,
        },
    }


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-n", type=int, default=None,
                        help="largest order swept (default 7, or $VILLAINY_MAX_N)")
    common.add_argument("--exact-bound", type=int, default=DEFAULT_EXACT_BOUND,
                        help="largest order the exact engine accepts")
    common.add_argument("--mode", choices=("strong", "weak", "both"), default="both")
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    common.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    common.add_argument("--workers", type=int, default=1, metavar="N")
    common.add_argument("--input", default=None, metavar="FILE", help="graph6 file to sweep instead of enumerating")
    common.add_argument("--out", default=None, metavar="PATH")
    common.add_argument("--allow-large", action="store_true", help="permit --max-n 8")
    common.add_argument("--timings", action="store_true", help="add wall-clock duration to JSON output")

    parser = _Parser(prog="villainy", description="Exact villainy computation and verification sweeps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("inspect", parents=[common], help="full report for one graph")
    p.add_argument("graph", help="graph6 string or family expression such as 'cycle(5)'")
    sub.add_parser("sweep-theorem5", parents=[common], help="villainy-2 characterization soundness")
    sub.add_parser("sweep-bipartite", parents=[common], help="connected bipartite formulas")
    sub.add_parser("sweep-lemmas", parents=[common], help="lower-bound lemmas against brute force")
    p = sub.add_parser("cycles", parents=[common], help="villainy of odd cycles")
    p.add_argument("--max-k", type=int, default=4)
    sub.add_parser("parity", parents=[common], help="parity of villainy values")
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"villainy: {exc}", file=sys.stderr)
        return EXIT_USAGE

    started = time.monotonic()
    try:
        if args.command == "inspect":
            try:
                g = parse_input(args.graph)
            except (Graph6Error, FamilySpecError, GraphError) as exc:
                print(f"villainy: cannot parse graph: {exc}", file=sys.stderr)
                return EXIT_USAGE
            report, code = inspect_graph(g, args.exact_bound, args.mode), EXIT_OK
            _emit(json.dumps(report, indent=2) + "\n", args.out)
            return code

        if args.command == "cycles":
            report, code = cmd_cycles(args.max_k)
        else:
            config = HarnessConfig(
                max_n=args.max_n if args.max_n is not None else default_max_n(),
                exact_bound=args.exact_bound,
                time_budget=args.time_budget,
                fmt=args.fmt,
                workers=args.workers,
                input_path=args.input,
                mode=args.mode,
                allow_large=args.allow_large,
            )
            config.validate()
            runner = {
                "sweep-theorem5": sweep_theorem5,
                "sweep-bipartite": sweep_bipartite,
                "sweep-lemmas": sweep_lemmas,
                "parity": cmd_parity,
            }[args.command]
            report, code = runner(config)
        elapsed = time.monotonic() - started if args.timings else None
        _emit(render(report, args.fmt, elapsed), args.out)
        return code
    except (OrderBoundExceeded, EnumerationBoundError) as exc:
        print(f"villainy: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (Graph6Error, GraphError, FamilySpecError, ValueError, OSError) as exc:
        print(f"villainy: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
