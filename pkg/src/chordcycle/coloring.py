"""Exact chromatic number and constructive colorers for graphs without
cycles carrying exactly two or three chords.

Every constructive colorer returns a proper :class:`Coloring` whose palette is
the guaranteed bound. When a structural guarantee fails on a graph that
satisfies the colorer's hypotheses, a :class:`FalsificationError` is raised
with a report whose witness can be re-checked by
:func:`verify_falsification`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from chordcycle import kernels
from chordcycle.decompose import (
    CliqueCutset,
    CompleteTripartite,
    clique_cutset_mask,
    minimal_triangle_hitting_set,
    split_on_clique_cutset,
    trichotomy,
)
from chordcycle.detectors import (
    PatternName,
    TwoChordKind,
    clique_number,
    find_induced_pattern,
    find_k_chord_cycle,
    find_two_chord_cycle_of_kind,
    first_triangle,
    is_induced_embedding,
    is_valid_witness,
    pattern_graph,
    CycleWitness,
)
from chordcycle.errors import (
    ChordCycleError,
    DisconnectedGraphError,
    FalsificationError,
    NotInClassError,
    SizeCapExceeded,
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

XV_FREE_BOUND = 6
TRIANGLE_FREE_BOUND = 24  # the constant c
K4_FREE_BOUND = 4 * TRIANGLE_FREE_BOUND
DEFAULT_MAX_EXACT_VERTICES = 64


@dataclass(frozen=True)
class Coloring:
    """``colors[v]`` is the color of vertex ``v``; all colors lie below ``palette_size``."""

    colors: tuple[int, ...]
    palette_size: int

    @property
    def colors_used(self) -> int:
        return len(set(self.colors))

    def to_json(self) -> dict:
        return {"palette": self.palette_size, "colors": list(self.colors)}


@dataclass(frozen=True)
class FalsificationReport:
    theorem_id: str
    graph: str  # graph6 of the graph the witness refers to
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"theorem_id": self.theorem_id, "graph": self.graph, "witness": self.witness}


class LevelColoringError(ChordCycleError):
    """A BFS level could not be colored within the per-level palette."""

    def __init__(self, root: int, index: int, vertices: tuple[int, ...], reason: str):
        super().__init__(f"level {index} from root {root}: {reason}")
        self.root = root
        self.index = index
        self.vertices = vertices


class _LevelDefect(Exception):
    # raised inside a level colorer; the caller adds root/level context
    def __init__(self, theorem_id: str, witness: dict):
        super().__init__(theorem_id)
        self.theorem_id = theorem_id
        self.witness = witness


def verify_coloring(g: Graph, c: Coloring) -> bool:
    """True iff ``c`` is a proper coloring of ``g`` inside its palette."""
    if len(c.colors) != g.n or any(x is None for x in c.colors):
        raise ValueError("coloring must assign a color to every vertex")
    if any(not 0 <= x < c.palette_size for x in c.colors):
        return False
    return all(c.colors[u] != c.colors[v] for u, v in g.edges())


def exact_chromatic_number(g: Graph, max_vertices: int = DEFAULT_MAX_EXACT_VERTICES) -> tuple[int, Coloring]:
    if g.n > min(max_vertices, 64):
        raise SizeCapExceeded(f"exact coloring limited to {min(max_vertices, 64)} vertices, got {g.n}")
    if g.n == 0:
        return 0, Coloring((), 0)
    if not any(g.adj):
        return 1, Coloring((0,) * g.n, 1)
    lower = clique_number(g)[0]
    out = np.zeros(g.n, dtype=np.int64)
    chi = int(kernels.exact_coloring(g.words[:, 0], lower, out))
    return chi, Coloring(tuple(int(x) for x in out), chi)


def _exact_level(h: Graph) -> Coloring:
    return exact_chromatic_number(h)[1]


def color_by_parity_levels(
    g: Graph,
    root: int,
    level_colorer: Callable[[Graph], Coloring],
    per_level_palette: int,
) -> Coloring:
    """Color each BFS level from ``root`` separately; even levels take colors
    ``[0, p)`` and odd levels ``[p, 2p)``. Edges only join equal or adjacent
    levels, so the union is proper.

    ``level_colorer`` receives each level as a relabelled graph. Its failures,
    and colorings that overflow ``p``, surface as :class:`LevelColoringError`
    chained to the original exception.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("parity-level coloring needs a connected graph")
    p = per_level_palette
    colors = [0] * g.n
    for i, level in enumerate(bfs_levels(g, root).levels):
        h, mapping = induced_subgraph(g, level)
        try:
            c = level_colorer(h)
        except (ChordCycleError, _LevelDefect) as exc:
            raise LevelColoringError(root, i, level, f"level colorer failed: {exc}") from exc
        if any(not 0 <= x < p for x in c.colors):
            raise LevelColoringError(root, i, level, f"needs more than {p} colors")
        offset = p * (i % 2)
        for v, j in mapping.items():
            colors[v] = c.colors[j] + offset
    return Coloring(tuple(colors), 2 * p)


def _per_component(g: Graph, colorer: Callable[[Graph], Coloring], palette: int) -> Coloring:
    colors = [0] * g.n
    for comp in component_masks(g):
        h, mapping = induced_subgraph(g, iter_bits(comp))
        c = colorer(h)
        for v, j in mapping.items():
            colors[v] = c.colors[j]
    return Coloring(tuple(colors), palette)


def _align_on_clique(c1: dict[int, int], c2: dict[int, int], clique, palette: int) -> dict[int, int]:
    """Permute the palette of ``c2`` so it agrees with ``c1`` on ``clique``."""
    perm = {c2[v]: c1[v] for v in clique}
    free_targets = iter(sorted(set(range(palette)) - set(perm.values())))
    for col in range(palette):
        if col not in perm:
            perm[col] = next(free_targets)
    return {v: perm[c] for v, c in c2.items()}


def _level_context(h: Graph, err: LevelColoringError) -> dict:
    return {"root": err.root, "index": err.index, "vertices": list(err.vertices)}


def _defect_report(h: Graph, err: LevelColoringError) -> FalsificationReport:
    """Translate a level colorer's defect into a report on ``h``."""
    defect = err.__cause__
    to_host = list(err.vertices)
    w = dict(defect.witness)
    for key in ("cycle", "embedding", "hitting_set", "triangle"):
        if key in w:
            w[key] = [to_host[v] for v in w[key]]
    if "chords" in w:
        w["chords"] = [sorted((to_host[a], to_host[b])) for a, b in w["chords"]]
    w.update(_level_context(h, err))
    return FalsificationReport(defect.theorem_id, to_graph6(h), w)


def _level_cycle_report(theorem_id: str, h: Graph, err: LevelColoringError, w: CycleWitness) -> FalsificationReport:
    witness = {"type": "level_cycle", **w.to_json(), **_level_context(h, err)}
    return FalsificationReport(theorem_id, to_graph6(h), witness)


def _reraise_cause(err: LevelColoringError):
    if isinstance(err.__cause__, FalsificationError):
        raise err.__cause__
    raise err


# (X-cycle, V-cycle)-free graphs: at most 6 colors --------------------------

def _require_xv_free(g: Graph, budget) -> None:
    for kind in (TwoChordKind.X, TwoChordKind.V):
        w = find_two_chord_cycle_of_kind(g, kind, budget)
        if w is not None:
            raise NotInClassError(f"graph contains an {kind.label}-cycle", w.to_json())


def _xv_connected(h: Graph) -> list[int]:
    tag = trichotomy(h)
    if isinstance(tag, CliqueCutset):
        (g1, m1), (g2, m2) = split_on_clique_cutset(h, tag.vertices)
        c1 = _xv_connected(g1)
        c2 = _xv_connected(g2)
        d1 = {v: c1[j] for v, j in m1.items()}
        d2 = _align_on_clique(d1, {v: c2[j] for v, j in m2.items()}, tag.vertices, XV_FREE_BOUND)
        d1.update(d2)
        return [d1[v] for v in range(h.n)]
    if isinstance(tag, CompleteTripartite):
        colors = [0] * h.n
        for i, part in enumerate(tag.parts):
            for v in part:
                colors[v] = i
        return colors
    try:
        return list(color_by_parity_levels(h, 0, _exact_level, 3).colors)
    except LevelColoringError as err:
        if err.__cause__ is not None:
            raise
        level, _ = induced_subgraph(h, err.vertices)
        w = find_k_chord_cycle(level, 1)
        if w is not None:
            w = CycleWitness.from_cycle(h, [err.vertices[v] for v in w.cycle])
            raise FalsificationError(_level_cycle_report("2-cycleStep2", h, err, w)) from err
        chi = exact_chromatic_number(level)[0]
        witness = {"type": "level", "chi": chi, "bound": 3, "omega": clique_number(level)[0], **_level_context(h, err)}
        raise FalsificationError(FalsificationReport("1-cycle", to_graph6(h), witness)) from err


def color_xv_free(g: Graph, verify: bool = True, budget: Optional[int] = None) -> Coloring:
    """Proper coloring with at most 6 colors of an (X-cycle, V-cycle)-free graph.

    Per component: split on a clique cutset and recurse, color a complete
    tripartite graph by its parts, and otherwise (diamond-free) color the BFS
    levels of vertex 0 with 3 colors each using the exact oracle.
    With ``verify`` the hypothesis is checked first (:class:`NotInClassError`).
    """
    if verify:
        _require_xv_free(g, budget)
    return _per_component(g, lambda h: Coloring(tuple(_xv_connected(h)), XV_FREE_BOUND), XV_FREE_BOUND)


# (triangle, 3-cycle)-free graphs: at most 24 colors ------------------------

def _require_c3(g: Graph, budget) -> None:
    w = find_k_chord_cycle(g, 3, budget)
    if w is not None:
        raise NotInClassError("graph contains a cycle with exactly three chords", w.to_json())


def _require_triangle_free(g: Graph) -> None:
    tri = first_triangle(g)
    if tri is not None:
        raise NotInClassError("graph contains a triangle", {"triangle": list(tri)})


def _tf3_inner(comp: Graph) -> Coloring:
    # comp is V-cycle-free; its levels should be (X-cycle, V-cycle)-free
    try:
        return color_by_parity_levels(comp, 0, lambda lv: color_xv_free(lv, verify=False), XV_FREE_BOUND)
    except LevelColoringError as err:
        level, _ = induced_subgraph(comp, err.vertices)
        for kind in (TwoChordKind.X, TwoChordKind.V):
            w = find_two_chord_cycle_of_kind(level, kind)
            if w is not None:
                w = CycleWitness.from_cycle(comp, [err.vertices[v] for v in w.cycle])
                raise FalsificationError(_level_cycle_report("crossingcycle", comp, err, w)) from err
        _reraise_cause(err)


def _tf3_level(level: Graph) -> Coloring:
    return _per_component(level, _tf3_inner, 2 * XV_FREE_BOUND)


def _tf3_connected(h: Graph) -> Coloring:
    try:
        return color_by_parity_levels(h, 0, _tf3_level, 2 * XV_FREE_BOUND)
    except LevelColoringError as err:
        level, _ = induced_subgraph(h, err.vertices)
        w = find_two_chord_cycle_of_kind(level, TwoChordKind.V)
        if w is not None:
            w = CycleWitness.from_cycle(h, [err.vertices[v] for v in w.cycle])
            raise FalsificationError(_level_cycle_report("vcycle", h, err, w)) from err
        _reraise_cause(err)


def color_triangle_3cycle_free(g: Graph, verify: bool = True, budget: Optional[int] = None) -> Coloring:
    """Proper coloring with at most 24 colors of a (triangle, 3-cycle)-free graph.

    Levels of the graph are colored through levels of the levels, whose
    pieces are (X-cycle, V-cycle)-free and take 6 colors each: 6 * 2 * 2.
    """
    if verify:
        _require_triangle_free(g)
        _require_c3(g, budget)
    return _per_component(g, _tf3_connected, TRIANGLE_FREE_BOUND)


# (K4, 3-cycle)-free graphs: at most 96 colors ------------------------------

def _k4f3_level(level: Graph) -> Coloring:
    t = minimal_triangle_hitting_set(level).vertices
    tmask = mask_of(t)
    tri = first_triangle(level, tmask)
    if tri is not None:
        for theorem_id, pattern in (("nodragonfly", PatternName.DRAGONFLY), ("butterfly", PatternName.BUTTERFLY)):
            emb = find_induced_pattern(level, pattern)
            if emb is not None:
                witness = {"type": "level_pattern", "pattern": pattern.value,
                           "embedding": [emb[i] for i in range(len(emb))]}
                raise _LevelDefect(theorem_id, witness)
        raise _LevelDefect("dragonorbutter", {"type": "level_hitting_set", "hitting_set": list(t),
                                              "triangle": list(tri)})
    colors = [0] * level.n
    rest = [v for v in range(level.n) if not tmask >> v & 1]
    for offset, part in ((0, rest), (TRIANGLE_FREE_BOUND, list(t))):
        if not part:
            continue
        h, mapping = induced_subgraph(level, part)
        c = color_triangle_3cycle_free(h, verify=False)
        for v, j in mapping.items():
            colors[v] = c.colors[j] + offset
    return Coloring(tuple(colors), 2 * TRIANGLE_FREE_BOUND)


def _k4f3_connected(h: Graph) -> Coloring:
    try:
        return color_by_parity_levels(h, 0, _k4f3_level, 2 * TRIANGLE_FREE_BOUND)
    except LevelColoringError as err:
        if isinstance(err.__cause__, _LevelDefect):
            raise FalsificationError(_defect_report(h, err)) from err
        _reraise_cause(err)


def color_k4_3cycle_free(g: Graph, verify: bool = True, budget: Optional[int] = None) -> Coloring:
    """Proper coloring with at most 96 colors of a (K4, 3-cycle)-free graph.

    Inside each BFS level a minimal triangle hitting set ``T`` splits the
    level into two triangle-free parts (24 colors each). A triangle inside
    ``T`` would force a dragonfly or butterfly in the level, which levels of
    such graphs cannot contain.
    """
    if verify:
        if clique_number(g)[0] >= 4:
            raise NotInClassError("graph contains K4", {"clique": list(clique_number(g)[1])})
        _require_c3(g, budget)
    return _per_component(g, _k4f3_connected, K4_FREE_BOUND)


# 3-cycle-free graphs: at most max(96, omega + 1) colors --------------------

def _claim_failure(g: Graph, s: int, claim: str, witness: dict) -> FalsificationError:
    verts = list(iter_bits(s))
    h, mapping = induced_subgraph(g, verts)

    def tr(x):
        if isinstance(x, list):
            return [tr(y) for y in x]
        return mapping[x]

    w = {"type": "claim", "claim": claim}
    for key, val in witness.items():
        w[key] = tr(val) if key in ("clique", "vertex", "x1", "T1", "indices") else val
    return FalsificationError(FalsificationReport(f"3-cycleclique4:{claim}", to_graph6(h), w))


def twin_pair(g: Graph, s: int, clique: tuple[int, ...]) -> tuple[int, int]:
    """Two non-adjacent vertices with equal neighborhoods in ``g[s]``.

    ``g[s]`` must be connected with clique number at least 4, minimum degree
    above it and no clique cutset; ``clique`` is a maximum clique. Vertices
    near the clique see exactly one or all but one of its vertices, all of
    them relate to a single clique vertex ``x1``, and the ones missing
    ``x1`` (at least two) share the neighborhood ``S1 + K - x1``.
    Any deviation raises :class:`FalsificationError` naming the claim.
    """
    omega = len(clique)
    kmask = mask_of(clique)
    near = 0
    for x in clique:
        near |= g.adj[x]
    near &= s & ~kmask
    singles: dict[int, list[int]] = {}
    missing: dict[int, list[int]] = {}
    for u in iter_bits(near):
        seen = g.adj[u] & kmask
        d = seen.bit_count()
        if d == 1:
            singles.setdefault(seen.bit_length() - 1, []).append(u)
        elif d == omega - 1:
            missing.setdefault((kmask & ~seen).bit_length() - 1, []).append(u)
        else:
            raise _claim_failure(g, s, "degdansK", {"clique": list(clique), "vertex": u, "degree": d})
    indices = sorted(set(singles) | set(missing))
    if len(indices) != 1:
        raise _claim_failure(g, s, "U_i", {"clique": list(clique), "indices": indices})
    x1 = indices[0]
    t1_set = missing.get(x1, [])
    if len(t1_set) < 2:
        raise _claim_failure(g, s, "mindeg", {"clique": list(clique), "x1": x1, "T1": t1_set})
    expected = mask_of(singles.get(x1, [])) | (kmask & ~(1 << x1))
    t1, t2 = t1_set[0], t1_set[1]
    for t in (t1, t2):
        if g.adj[t] & s != expected:
            raise _claim_failure(g, s, "final", {"clique": list(clique), "x1": x1, "vertex": t})
    return t1, t2


def _delegate_small_clique(g: Graph, s: int, omega: int) -> dict[int, int]:
    h, mapping = induced_subgraph(g, iter_bits(s))
    if omega <= 2:
        c = color_triangle_3cycle_free(h, verify=False)
    else:
        c = color_k4_3cycle_free(h, verify=False)
    return {v: c.colors[j] for v, j in mapping.items()}


def color_3cycle_free(
    g: Graph,
    verify: bool = True,
    budget: Optional[int] = None,
    trace: Optional[list] = None,
) -> Coloring:
    """Proper coloring of a 3-cycle-free graph with ``max(96, omega + 1)`` colors.

    Reduction loop on induced subgraphs, run with an explicit stack:

    1. clique number at most 3: hand over to the K4-free colorer;
    2. a vertex of degree at most omega: color the rest, then give it a free color;
    3. a clique cutset: color both sides, permute one palette to agree on it;
    4. otherwise find two false twins around a maximum clique, color
       without one of them and copy the other's color.

    ``trace`` (if given) receives one dict per step.
    """
    if verify:
        _require_c3(g, budget)
    omega_g = clique_number(g)[0]
    palette = max(K4_FREE_BOUND, omega_g + 1)
    if g.n == 0:
        return Coloring((), palette)

    def log(step: str, s: int, **extra):
        if trace is not None:
            trace.append({"step": step, "size": s.bit_count(), **extra})

    results: dict[int, dict[int, int]] = {}
    stack: list[tuple] = [("solve", g.vertex_mask)]
    while stack:
        op = stack.pop()
        kind, s = op[0], op[1]
        if kind == "solve":
            comps = component_masks(g, s)
            if len(comps) > 1:
                stack.append(("union", s, comps))
                stack.extend(("solve", c) for c in comps)
                continue
            omega, clique = clique_number(g, within=iter_bits(s))
            if omega <= 3:
                log("delegate", s, omega=omega)
                results[s] = _delegate_small_clique(g, s, omega)
                continue
            low = next((v for v in iter_bits(s) if (g.adj[v] & s).bit_count() <= omega), None)
            if low is not None:
                log("lowdeg", s, vertex=low)
                stack.append(("extend", s, low))
                stack.append(("solve", s & ~(1 << low)))
                continue
            cut = clique_cutset_mask(g, s)
            if cut:
                first = component_masks(g, s & ~cut)[0]
                s1, s2 = first | cut, s & ~first
                log("cutset", s, cutset=list(iter_bits(cut)))
                stack.append(("merge", s, s1, s2, cut))
                stack.append(("solve", s1))
                stack.append(("solve", s2))
                continue
            t1, t2 = twin_pair(g, s, clique)
            log("twin", s, keep=t1, drop=t2)
            stack.append(("copy", s, t1, t2))
            stack.append(("solve", s & ~(1 << t2)))
        elif kind == "union":
            merged: dict[int, int] = {}
            for c in op[2]:
                merged.update(results.pop(c))
            results[s] = merged
        elif kind == "extend":
            v = op[2]
            col = results.pop(s & ~(1 << v))
            taken = {col[u] for u in iter_bits(g.adj[v] & s)}
            col[v] = next(c for c in range(palette) if c not in taken)
            results[s] = col
        elif kind == "merge":
            _, _, s1, s2, cut = op
            c1 = results.pop(s1)
            c2 = _align_on_clique(c1, results.pop(s2), list(iter_bits(cut)), palette)
            c1.update(c2)
            results[s] = c1
        else:  # copy
            _, _, t1, t2 = op
            col = results.pop(s & ~(1 << t2))
            col[t2] = col[t1]
            results[s] = col
    col = results.pop(g.vertex_mask)
    return Coloring(tuple(col[v] for v in range(g.n)), palette)


# re-checking reports ----------------------------------------------------------

def _level_of(h: Graph, w: dict) -> Optional[tuple[int, ...]]:
    levels = bfs_levels(h, w["root"]).levels
    if not 0 <= w["index"] < len(levels) or list(levels[w["index"]]) != list(w["vertices"]):
        return None
    return levels[w["index"]]


def verify_falsification(report: FalsificationReport) -> bool:
    """Re-derive a report's evidence from its embedded graph."""
    h = parse_graph6(report.graph)
    w = report.witness
    kind = w.get("type")
    if kind in ("level", "level_cycle", "level_pattern", "level_hitting_set"):
        level = _level_of(h, w)
        if level is None:
            return False
        sub, mapping = induced_subgraph(h, level)
        if kind == "level":
            return exact_chromatic_number(sub)[0] > w["bound"]
        if kind == "level_cycle":
            cyc = CycleWitness(tuple(w["cycle"]), tuple(tuple(c) for c in w["chords"]))
            if not set(cyc.cycle) <= set(level) or not is_valid_witness(h, cyc):
                return False
            if report.theorem_id == "2-cycleStep2":
                return cyc.k == 1
            if report.theorem_id == "vcycle":
                return cyc.k == 2 and w.get("kind") == "V" == _kind(cyc)
            return cyc.k == 2 and _kind(cyc) in ("X", "V")
        if kind == "level_pattern":
            p = pattern_graph(PatternName(w["pattern"]))
            emb = {i: mapping[v] for i, v in enumerate(w["embedding"]) if v in mapping}
            return len(emb) == p.n and is_induced_embedding(sub, p, emb)
        t = mask_of(mapping[v] for v in w["hitting_set"])
        return first_triangle(sub, t) is not None
    if kind == "diamond":
        emb = dict(enumerate(w["embedding"]))
        if not is_induced_embedding(h, pattern_graph(PatternName.DIAMOND), emb):
            return False
        try:
            trichotomy(h)
        except FalsificationError:
            return True
        return False
    if kind == "claim":
        try:
            twin_pair(h, h.vertex_mask, tuple(w["clique"]))
        except FalsificationError as exc:
            return exc.report.theorem_id == report.theorem_id
        return False
    return False


def _kind(w: CycleWitness) -> str:
    from chordcycle.detectors import classify_two_chord_cycle

    return classify_two_chord_cycle(w).label
