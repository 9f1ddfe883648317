"""``chordcycle`` command line: detect, color, chi, verify, gen.

Exit codes: 0 found or success, 1 absent / refused / campaign failure,
2 resource or size cap, 3 usage error, 4 falsification.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from chordcycle import harness
from chordcycle.coloring import (
    color_3cycle_free,
    color_k4_3cycle_free,
    color_triangle_3cycle_free,
    color_xv_free,
    exact_chromatic_number,
)
from chordcycle.detectors import (
    PatternName,
    TwoChordKind,
    find_induced_subgraph,
    find_k_chord_cycle,
    find_two_chord_cycle_of_kind,
    pattern_graph,
)
from chordcycle.errors import (
    FalsificationError,
    Graph6Error,
    NotInClassError,
    ResourceCapExceeded,
    SizeCapExceeded,
)
from chordcycle.generators import complete_multipartite, hajos_join, named_graph, random_stream, enumerate_labeled
from chordcycle.graph import Graph, parse_edge_list, parse_graph6, to_graph6

EXIT_OK = 0
EXIT_ABSENT = 1
EXIT_CAP = 2
EXIT_USAGE = 3
EXIT_FALSIFIED = 4

COLORERS = {
    "2cycle": color_xv_free,
    "tf3": color_triangle_3cycle_free,
    "k4f3": color_k4_3cycle_free,
    "c3": color_3cycle_free,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_graph(arg: str) -> Graph:
    """A graph6 line, a file holding graph6 or an edge list, or ``-`` for stdin."""
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.isfile(arg):
        with open(arg) as fh:
            text = fh.read()
    else:
        text = arg
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UsageError("empty graph input")
    # graph6 never contains whitespace; "n m" header means edge list
    if len(lines[0].split()) == 2:
        return parse_edge_list(text)
    if len(lines) > 1 and not lines[0].startswith(">>graph6<<"):
        raise UsageError("expected a single graph6 line")
    return parse_graph6(lines[-1] if lines[0].startswith(">>graph6<<") and len(lines) > 1 else lines[0])


class _Output:
    def __init__(self, path: Optional[str]):
        self.fh = open(path, "w") if path else sys.stdout

    def record(self, obj) -> None:
        self.fh.write(harness.dumps(obj) + "\n")

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def cmd_detect(args, out: _Output) -> int:
    g = load_graph(args.input)
    chosen = [x is not None for x in (args.k_chords, args.pattern)]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --k-chords or --pattern")
    if args.pattern is not None:
        try:
            p = PatternName.parse(args.pattern)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        emb = find_induced_subgraph(g, pattern_graph(p))
        name = args.pattern
        if emb is None:
            out.record({"result": "absent", "pattern": name})
            return EXIT_ABSENT
        out.record({"result": "found", "pattern": name, "embedding": [emb[i] for i in range(len(emb))]})
        return EXIT_OK
    if args.k_chords < 0:
        raise UsageError("--k-chords must be non-negative")
    if args.kind is not None:
        if args.k_chords != 2:
            raise UsageError("--kind applies to --k-chords 2")
        w = find_two_chord_cycle_of_kind(g, TwoChordKind.parse(args.kind), args.budget)
    else:
        w = find_k_chord_cycle(g, args.k_chords, args.budget)
    if w is None:
        out.record({"result": "absent", "k": args.k_chords})
        return EXIT_ABSENT
    out.record({"result": "found", "k": args.k_chords, **w.to_json()})
    return EXIT_OK


def cmd_color(args, out: _Output) -> int:
    g = load_graph(args.input)
    try:
        c = COLORERS[args.theorem](g, verify=True, budget=args.budget)
    except NotInClassError as exc:
        out.record({"result": "refused", "theorem": args.theorem, "reason": str(exc), "witness": exc.witness})
        return EXIT_ABSENT
    out.record({"result": "colored", "theorem": args.theorem, "graph6": to_graph6(g),
                "colors_used": c.colors_used, **c.to_json()})
    return EXIT_OK


def cmd_chi(args, out: _Output) -> int:
    g = load_graph(args.input)
    chi, c = exact_chromatic_number(g, args.max_vertices)
    out.record({"chi": chi, "graph6": to_graph6(g), "colors": list(c.colors)})
    return EXIT_OK


def cmd_verify(args, out: _Output) -> int:
    if args.replay:
        cfg = harness.read_config(args.replay)
        theorem, source, budget = cfg["theorem"], cfg["source"], cfg["budget"]
    else:
        if not args.theorem or not args.source:
            raise UsageError("verify needs --theorem and --source (or --replay)")
        theorem, source, budget = args.theorem, args.source, args.budget
    agg = harness.run_campaign(theorem, source, out.fh, budget=budget, jobs=args.jobs)
    if agg["falsifications"] or agg["violations"]:
        return EXIT_ABSENT
    return EXIT_OK


def gen_stream(spec: str, seed: int):
    """Graphs for ``gen``: enum:N, random:N,P,COUNT[,SEED], hajos:K,
    multipartite:A,B,..., or a graph name (C5, K4, Petersen, ...)."""
    head, _, rest = spec.partition(":")
    if head == "enum":
        return enumerate_labeled(int(rest))
    if head == "random":
        parts = rest.split(",")
        if len(parts) not in (3, 4):
            raise UsageError("random:n,p,count[,seed]")
        s = int(parts[3]) if len(parts) == 4 else seed
        return random_stream(int(parts[0]), float(parts[1]), int(parts[2]), s)
    if head == "hajos":
        return iter([hajos_join(int(rest))])
    if head == "multipartite":
        return iter([complete_multipartite([int(x) for x in rest.split(",")])])
    return iter([named_graph(spec)])


def cmd_gen(args, out: _Output) -> int:
    for g in gen_stream(args.source, args.seed):
        out.fh.write(to_graph6(g) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    env_budget = os.environ.get("CHORDCYCLE_BUDGET")
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=int(env_budget) if env_budget else None,
                        help="cap on partial paths explored per cycle search")
    common.add_argument("--out", help="write JSON Lines here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    parser = _Parser(prog="chordcycle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", parents=[common], help="find a k-chord cycle or an induced pattern")
    p.add_argument("--input", required=True)
    p.add_argument("--k-chords", type=int)
    p.add_argument("--kind", choices=["V", "X", "Parallel"], help="two-chord cycle kind")
    p.add_argument("--pattern", help="triangle, k4, diamond, dragonfly, butterfly or K<i>,<j>,<k>")

    p = sub.add_parser("color", parents=[common], help="constructive bounded coloring")
    p.add_argument("--input", required=True)
    p.add_argument("--theorem", required=True, choices=sorted(COLORERS))

    p = sub.add_parser("chi", parents=[common], help="exact chromatic number")
    p.add_argument("--input", required=True)
    p.add_argument("--max-vertices", type=int, default=64)

    p = sub.add_parser("verify", parents=[common], help="run a verification campaign")
    p.add_argument("--theorem", choices=harness.THEOREMS)
    p.add_argument("--source", help="enum:N | random:N,P,COUNT,SEED | builtin | graph6 file")
    p.add_argument("--replay", help="re-run the campaign configured in this report")

    p = sub.add_parser("gen", parents=[common], help="print graph6 lines")
    p.add_argument("source")
    return parser


COMMANDS = {"detect": cmd_detect, "color": cmd_color, "chi": cmd_chi, "verify": cmd_verify, "gen": cmd_gen}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is not None and args.budget <= 0:
        print("chordcycle: error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    out = _Output(args.out)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, Graph6Error, harness.SourceError, ValueError) as exc:
        print(f"chordcycle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCapExceeded, SizeCapExceeded) as exc:
        out.record({"result": "capped", "reason": str(exc)})
        return EXIT_CAP
    except FalsificationError as exc:
        out.record({"result": "falsification", "report": exc.report.to_json()})
        return EXIT_FALSIFIED
    except OSError as exc:
        print(f"chordcycle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())
