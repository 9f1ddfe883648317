"""Verification campaigns: run a property suite over a graph source and emit
JSON Lines records (config line, one line per in-class graph, aggregate)."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional, TextIO

from chordcycle import __version__
from chordcycle.coloring import (
    K4_FREE_BOUND,
    TRIANGLE_FREE_BOUND,
    XV_FREE_BOUND,
    color_3cycle_free,
    color_k4_3cycle_free,
    color_triangle_3cycle_free,
    color_xv_free,
    exact_chromatic_number,
    verify_coloring,
    verify_falsification,
)
from chordcycle.decompose import trichotomy, verify_trichotomy
from chordcycle.detectors import (
    PatternName,
    TwoChordKind,
    clique_number,
    find_induced_pattern,
    find_k_chord_cycle,
    find_two_chord_cycle_of_kind,
    first_triangle,
    is_in_class_Ck,
)
from chordcycle.errors import FalsificationError, ResourceCapExceeded, SizeCapExceeded
from chordcycle.generators import (
    GraphStream,
    enumerate_labeled,
    graph6_stream,
    hajos_join,
    random_stream,
)
from chordcycle.graph import (
    Graph,
    bfs_levels,
    component_masks,
    induced_subgraph,
    is_connected,
    iter_bits,
    mask_of,
    parse_graph6,
    to_graph6,
)
from chordcycle.oracle import chord_counts

HAJOS_RANGE = range(2, 8)
ORACLE_MAX_N = 9


class SourceError(ValueError):
    pass


def parse_source(spec: str) -> GraphStream:
    """``enum:N``, ``random:N,P,COUNT,SEED``, ``builtin`` or a graph6 file path."""
    if spec.startswith("enum:"):
        return enumerate_labeled(int(spec[5:]))
    if spec.startswith("random:"):
        parts = spec[7:].split(",")
        if len(parts) != 4:
            raise SourceError("random source is random:n,p,count,seed")
        return random_stream(int(parts[0]), float(parts[1]), int(parts[2]), int(parts[3]))
    if spec == "builtin":
        it = (hajos_join(k) for k in HAJOS_RANGE)
        return GraphStream({"kind": "builtin", "family": "hajos", "k": list(HAJOS_RANGE)}, it)
    if spec.startswith("file:"):
        spec = spec[5:]
    try:
        with open(spec) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise SourceError(f"cannot read source {spec!r}: {exc}") from exc
    return graph6_stream(lines, spec)


def class_flags(g: Graph, budget: Optional[int] = None) -> dict:
    """Membership flags used in every record (cycle searches may hit the cap)."""
    return {
        "connected": is_connected(g),
        "C1": is_in_class_Ck(g, 1, budget),
        "C2": is_in_class_Ck(g, 2, budget),
        "C3": is_in_class_Ck(g, 3, budget),
        "xv_free": find_two_chord_cycle_of_kind(g, TwoChordKind.X, budget) is None
        and find_two_chord_cycle_of_kind(g, TwoChordKind.V, budget) is None,
        "triangle_free": first_triangle(g) is None,
        "k4_free": clique_number(g)[0] <= 3,
        "diamond_free": find_induced_pattern(g, PatternName.DIAMOND) is None,
    }


# suites -----------------------------------------------------------------------
# Each suite: (membership test on flags, check(g, flags, budget) -> partial record)

def _coloring_check(colorer, bound_of, label):
    def check(g, flags, budget):
        rec: dict = {}
        bound = bound_of(g)
        try:
            c = colorer(g)
        except FalsificationError as exc:
            return {"ok": False, "falsifications": [exc.report.to_json()],
                    "report_verified": verify_falsification(exc.report)}
        used = c.colors_used
        proper = verify_coloring(g, c)
        rec["colors_used"] = {label: used}
        rec["bound"] = bound
        ok = proper and c.palette_size <= bound and max(c.colors, default=-1) < bound
        if not ok:
            rec["witness"] = {"coloring": c.to_json(), "proper": proper}
        rec["ok"] = ok
        return rec

    return check


def _with_chi(check, limit=None):
    def wrapped(g, flags, budget):
        rec = check(g, flags, budget)
        if g.n <= 64:
            chi = exact_chromatic_number(g)[0]
            rec["chi"] = chi
            if limit is not None and chi > limit:
                rec["ok"] = False
                rec.setdefault("witness", {})["chi"] = chi
        return rec

    return wrapped


def _c3_check(g, flags, budget):
    trace: list = []
    omega = clique_number(g)[0]
    bound = max(K4_FREE_BOUND, omega + 1)
    try:
        c = color_3cycle_free(g, verify=False, trace=trace)
    except FalsificationError as exc:
        return {"ok": False, "falsifications": [exc.report.to_json()],
                "report_verified": verify_falsification(exc.report)}
    deletions = sum(1 for t in trace if t["step"] in ("lowdeg", "twin"))
    proper = verify_coloring(g, c)
    ok = proper and c.palette_size == bound and deletions <= g.n
    rec = {"colors_used": {"c3": c.colors_used}, "bound": bound, "reductions": deletions, "ok": ok}
    if not ok:
        rec["witness"] = {"coloring": c.to_json(), "proper": proper}
    return rec


def _trichotomy_check(g, flags, budget):
    tags = []
    for comp in component_masks(g):
        h, _ = induced_subgraph(g, iter_bits(comp))
        try:
            t = trichotomy(h)
        except FalsificationError as exc:
            return {"ok": False, "falsifications": [exc.report.to_json()],
                    "report_verified": verify_falsification(exc.report)}
        if not verify_trichotomy(h, t):
            return {"ok": False, "witness": {"component": list(iter_bits(comp)), "tag": t.to_json()}}
        tags.append(t.to_json()["tag"])
    return {"ok": True, "tags": tags}


def level_defect(g: Graph, level: tuple[int, ...], lemma: str, budget=None) -> Optional[dict]:
    """Structure forbidden in BFS levels by ``lemma`` found in ``level``, or None."""
    lmask = mask_of(level)
    if lemma == "2cycleStep2":
        w = find_k_chord_cycle(g, 1, budget, within=level)
        return None if w is None else {"cycle": w.to_json()}
    if lemma in ("vcycle", "crossingcycle"):
        kinds = [TwoChordKind.V] + ([TwoChordKind.X] if lemma == "crossingcycle" else [])
        for kind in kinds:
            w = find_two_chord_cycle_of_kind(g, kind, budget, within=level)
            if w is not None:
                return {"cycle": w.to_json()}
        tri = first_triangle(g, lmask)
        if tri is not None:
            return {"triangle": list(tri)}
        w = find_k_chord_cycle(g, 3, budget, within=level)
        return None if w is None else {"cycle": w.to_json()}
    pattern = PatternName.DRAGONFLY if lemma == "nodragonfly" else PatternName.BUTTERFLY
    emb = find_induced_pattern(g, pattern, within=level)
    return None if emb is None else {"pattern": pattern.value, "embedding": [emb[i] for i in range(len(emb))]}


def _level_lemma_check(lemma):
    def check(g, flags, budget):
        for z in range(g.n):
            for i, level in enumerate(bfs_levels(g, z).levels):
                d = level_defect(g, level, lemma, budget)
                if d is not None:
                    return {"ok": False, "witness": {"root": z, "level": i, **d}}
        return {"ok": True}

    return check


def scott_bound(g: Graph, root: int) -> int:
    """max chromatic number over even levels plus max over odd levels."""
    best = [0, 0]
    for i, level in enumerate(bfs_levels(g, root).levels):
        h, _ = induced_subgraph(g, level)
        best[i % 2] = max(best[i % 2], exact_chromatic_number(h)[0])
    return best[0] + best[1]


def _scott_check(g, flags, budget):
    # levels only cover the root's component, so compare against its chi
    chi_of = {}
    for comp in component_masks(g):
        h, _ = induced_subgraph(g, iter_bits(comp))
        chi_of[comp] = exact_chromatic_number(h)[0]
    for z in range(g.n):
        comp = next(c for c in chi_of if c >> z & 1)
        b = scott_bound(g, z)
        if chi_of[comp] > b:
            return {"ok": False, "witness": {"root": z, "component_chi": chi_of[comp], "level_bound": b}}
    return {"ok": True, "chi": max(chi_of.values(), default=0)}


def _hajos_check(g, flags, budget):
    k = (g.n - 1) // 2
    omega = clique_number(g)[0]
    chi = exact_chromatic_number(g)[0]
    ok = flags["C3"] and omega == k and chi == k + 1
    return {"ok": ok, "k": k, "omega": omega, "chi": chi}


def _detector_check(g, flags, budget):
    if g.n > ORACLE_MAX_N:
        raise SizeCapExceeded(f"brute-force oracle limited to {ORACLE_MAX_N} vertices")
    counts = chord_counts(g)
    mismatch = [k for k in range(4) if (find_k_chord_cycle(g, k, budget) is not None) != (k in counts)]
    rec = {"ok": not mismatch}
    if mismatch:
        rec["witness"] = {"k": mismatch}
    return rec


SUITES: dict[str, tuple[Callable[[dict], bool], Callable]] = {
    "2cycle": (lambda f: f["xv_free"],
               _with_chi(_coloring_check(lambda g: color_xv_free(g, verify=False),
                                         lambda g: XV_FREE_BOUND, "2cycle"), limit=XV_FREE_BOUND)),
    "nodiamond": (lambda f: f["xv_free"], _trichotomy_check),
    "2cycleStep2": (lambda f: f["xv_free"] and f["diamond_free"], _level_lemma_check("2cycleStep2")),
    "vcycle": (lambda f: f["triangle_free"] and f["C3"], _level_lemma_check("vcycle")),
    "crossingcycle": (lambda f: f["triangle_free"] and f["C3"] and f.get("v_free", False),
                      _level_lemma_check("crossingcycle")),
    "nodragonfly": (lambda f: f["k4_free"] and f["C3"], _level_lemma_check("nodragonfly")),
    "butterfly": (lambda f: f["k4_free"] and f["C3"], _level_lemma_check("butterfly")),
    "tf3": (lambda f: f["triangle_free"] and f["C3"],
            _coloring_check(lambda g: color_triangle_3cycle_free(g, verify=False),
                            lambda g: TRIANGLE_FREE_BOUND, "tf3")),
    "k4f3": (lambda f: f["k4_free"] and f["C3"],
             _coloring_check(lambda g: color_k4_3cycle_free(g, verify=False),
                             lambda g: K4_FREE_BOUND, "k4f3")),
    "c3": (lambda f: f["C3"], _c3_check),
    "scott": (lambda f: True, _scott_check),
    "hajos": (lambda f: True, _hajos_check),
    "detector": (lambda f: True, _detector_check),
}

THEOREMS = tuple(SUITES)


def evaluate(theorem: str, index: int, g6: str, budget: Optional[int]) -> dict:
    """One graph through one suite. Returns a record; out-of-class graphs get
    ``{"in_class": False}``."""
    g = parse_graph6(g6)
    member, check = SUITES[theorem]
    rec = {"type": "graph", "index": index, "graph6": g6}
    try:
        flags = class_flags(g, budget)
        if theorem == "crossingcycle" and flags["triangle_free"] and flags["C3"]:
            flags["v_free"] = find_two_chord_cycle_of_kind(g, TwoChordKind.V, budget) is None
        if not member(flags):
            return {"type": "skip", "index": index}
        rec["classes"] = flags
        rec["n"] = g.n
        rec["omega"] = clique_number(g)[0]
        result = check(g, flags, budget)
    except (ResourceCapExceeded, SizeCapExceeded) as exc:
        rec["capped"] = str(exc)
        return rec
    rec.update(result)
    rec.setdefault("falsifications", [])
    rec["bound_ok"] = bool(rec.pop("ok"))
    return rec


def _evaluate_batch(args) -> list[dict]:
    theorem, batch, budget = args
    return [evaluate(theorem, i, g6, budget) for i, g6 in batch]


def _batches(stream: Iterable[Graph], size: int) -> Iterator[list[tuple[int, str]]]:
    it = ((i, to_graph6(g)) for i, g in enumerate(stream))
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def run_campaign(
    theorem: str,
    source: str,
    out: TextIO,
    budget: Optional[int] = None,
    jobs: int = 1,
    batch_size: int = 256,
) -> dict:
    """Run ``theorem``'s suite over ``source``; write JSON Lines to ``out``.

    Output order is stream order whatever ``jobs`` is. Returns the aggregate
    record (also the last line written).
    """
    if theorem not in SUITES:
        raise SourceError(f"unknown theorem {theorem!r}")
    if theorem == "hajos" and source != "builtin":
        raise SourceError("the hajos suite runs on --source builtin")
    stream = parse_source(source)
    config = {"type": "config", "command": "verify", "theorem": theorem, "source": source,
              "budget": budget, "version": __version__}
    out.write(dumps(config) + "\n")
    agg = {"type": "aggregate", "theorem": theorem, "seen": 0, "in_class": 0, "passed": 0,
           "violations": 0, "falsifications": 0, "capped": 0, "max_chi": {}}
    start = time.perf_counter()

    def consume(records):
        for rec in records:
            agg["seen"] += 1
            if rec["type"] == "skip":
                continue
            agg["in_class"] += 1
            if "capped" in rec:
                agg["capped"] += 1
            else:
                agg["falsifications"] += len(rec["falsifications"])
                if rec["bound_ok"]:
                    agg["passed"] += 1
                else:
                    agg["violations"] += 1
                if "chi" in rec:
                    for name, member in rec["classes"].items():
                        if member:
                            agg["max_chi"][name] = max(agg["max_chi"].get(name, 0), rec["chi"])
            out.write(dumps(rec) + "\n")

    batches = ((theorem, b, budget) for b in _batches(stream, batch_size))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # bounded look-ahead keeps memory flat on huge censuses
            pending = []
            for args in batches:
                pending.append(pool.submit(_evaluate_batch, args))
                if len(pending) >= 2 * jobs:
                    consume(pending.pop(0).result())
            for fut in pending:
                consume(fut.result())
    else:
        for args in batches:
            consume(_evaluate_batch(args))
    agg["acceptance_rate"] = round(agg["in_class"] / agg["seen"], 6) if agg["seen"] else None
    agg["runtime_seconds"] = round(time.perf_counter() - start, 3)
    out.write(dumps(agg) + "\n")
    return agg


def strip_timestamps(text: str) -> str:
    """Report text with wall-clock fields removed, for byte comparison."""
    lines = []
    for line in text.splitlines():
        rec = json.loads(line)
        rec.pop("runtime_seconds", None)
        lines.append(dumps(rec))
    return "\n".join(lines) + "\n"


def read_config(path: str) -> dict:
    with open(path) as fh:
        first = json.loads(fh.readline())
    if first.get("type") != "config":
        raise SourceError(f"{path} does not start with a config record")
    return first
