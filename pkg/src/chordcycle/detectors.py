"""Detection of cycles with a prescribed number of chords and of small
forbidden induced patterns."""

from __future__ import annotations

import enum
import functools
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from chordcycle import kernels
from chordcycle.errors import ResourceCapExceeded
from chordcycle.graph import Graph, iter_bits, mask_of

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    """Search budget in partial paths; ``CHORDCYCLE_BUDGET`` overrides it."""
    env = os.environ.get("CHORDCYCLE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class TwoChordKind(enum.Enum):
    V = kernels.KIND_V
    X = kernels.KIND_X
    PARALLEL = kernels.KIND_PARALLEL

    @property
    def label(self) -> str:
        return "Parallel" if self is TwoChordKind.PARALLEL else self.name

    @classmethod
    def parse(cls, text: str) -> "TwoChordKind":
        for kind in cls:
            if kind.label.lower() == text.lower():
                return kind
        raise ValueError(f"unknown two-chord kind {text!r}")


@dataclass(frozen=True)
class CycleWitness:
    """A cycle of the host graph together with all of its chords."""

    cycle: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]

    @property
    def k(self) -> int:
        return len(self.chords)

    @classmethod
    def from_cycle(cls, g: Graph, cycle) -> "CycleWitness":
        cyc = tuple(int(v) for v in cycle)
        return cls(cyc, tuple(chords_of(g, cyc)))

    def to_json(self) -> dict:
        kind = classify_two_chord_cycle(self).label if self.k == 2 else None
        return {"cycle": list(self.cycle), "chords": [list(c) for c in self.chords], "kind": kind}


def chords_of(g: Graph, cycle) -> list[tuple[int, int]]:
    """Edges of ``g`` joining non-consecutive vertices of ``cycle``."""
    m = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    out = []
    for i, u in enumerate(cycle):
        for v in iter_bits(g.adj[u]):
            j = pos.get(v)
            if j is None or j <= i:
                continue
            if j - i == 1 or (i == 0 and j == m - 1):
                continue
            out.append((min(u, v), max(u, v)))
    return sorted(out)


def is_valid_witness(g: Graph, w: CycleWitness) -> bool:
    """Distinct vertices, cycle edges present, chord list exactly right."""
    m = len(w.cycle)
    if m < 3 or len(set(w.cycle)) != m or any(not 0 <= v < g.n for v in w.cycle):
        return False
    if any(not g.has_edge(w.cycle[i], w.cycle[(i + 1) % m]) for i in range(m)):
        return False
    return sorted(tuple(sorted(c)) for c in w.chords) == chords_of(g, w.cycle)


def classify_two_chord_cycle(w: CycleWitness) -> TwoChordKind:
    if len(w.chords) != 2:
        raise ValueError(f"expected exactly 2 chords, got {len(w.chords)}")
    (a1, a2), (b1, b2) = w.chords
    if {a1, a2} & {b1, b2}:
        return TwoChordKind.V
    pos = {v: i for i, v in enumerate(w.cycle)}
    lo, hi = sorted((pos[a1], pos[a2]))
    inside = [lo < pos[b] < hi for b in (b1, b2)]
    return TwoChordKind.X if inside[0] != inside[1] else TwoChordKind.PARALLEL


def _run_cycle_search(g: Graph, k: int, kind: int, budget: Optional[int], within) -> Optional[CycleWitness]:
    if k < 0:
        raise ValueError("chord count must be non-negative")
    if budget is None:
        budget = default_budget()
    allowed_mask = g.vertex_mask if within is None else mask_of(within) & g.vertex_mask
    if g.n == 0 or allowed_mask == 0:
        return None
    w = g.words.shape[1]
    allowed = np.zeros(w, dtype=np.uint64)
    for j in range(w):
        allowed[j] = (allowed_mask >> (64 * j)) & 0xFFFFFFFFFFFFFFFF
    out = np.zeros(g.n, dtype=np.int64)
    status, length, explored = kernels.find_cycle(g.words, allowed, k, kind, budget, out)
    if status == kernels.CAPPED:
        raise ResourceCapExceeded(budget, int(explored), "cycle search")
    if status == kernels.ABSENT:
        return None
    return CycleWitness.from_cycle(g, out[:length])


def find_k_chord_cycle(
    g: Graph, k: int, budget: Optional[int] = None, within=None
) -> Optional[CycleWitness]:
    """A cycle of ``g`` with exactly ``k`` chords, or None if there is none.

    The search is exhaustive over all cycles. ``within`` restricts it to the
    subgraph induced by a vertex subset. Raises :class:`ResourceCapExceeded`
    when more than ``budget`` partial paths would be needed.
    """
    return _run_cycle_search(g, k, kernels.KIND_ANY, budget, within)


def is_in_class_Ck(g: Graph, k: int, budget: Optional[int] = None) -> bool:
    """True iff no cycle of ``g`` has exactly ``k`` chords."""
    return find_k_chord_cycle(g, k, budget) is None


def find_two_chord_cycle_of_kind(
    g: Graph, kind: TwoChordKind, budget: Optional[int] = None, within=None
) -> Optional[CycleWitness]:
    return _run_cycle_search(g, 2, TwoChordKind(kind).value, budget, within)


def is_xv_free(g: Graph, budget: Optional[int] = None) -> bool:
    return (
        find_two_chord_cycle_of_kind(g, TwoChordKind.X, budget) is None
        and find_two_chord_cycle_of_kind(g, TwoChordKind.V, budget) is None
    )


# fixed patterns ---------------------------------------------------------------

DRAGONFLY_EDGES = ((0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (5, 1), (5, 2), (6, 2), (6, 3))
BUTTERFLY_EDGES = ((0, 1), (1, 2), (2, 4), (3, 0), (4, 1), (3, 1), (3, 4))


class PatternName(enum.Enum):
    TRIANGLE = "triangle"
    K4 = "k4"
    DIAMOND = "diamond"
    DRAGONFLY = "dragonfly"
    BUTTERFLY = "butterfly"

    @classmethod
    def parse(cls, text: str) -> "PatternName | tuple[int, int, int]":
        """Accepts the names above or ``K{i},{j},{k}`` for a complete tripartite."""
        t = text.strip().lower()
        for p in cls:
            if p.value == t:
                return p
        if t.startswith("k") and t.count(",") == 2:
            sizes = tuple(int(x) for x in t[1:].split(","))
            if all(s > 0 for s in sizes):
                return sizes
        raise ValueError(f"unknown pattern {text!r}")


@functools.lru_cache(maxsize=None)
def pattern_graph(p) -> Graph:
    """Labelled pattern graph; dragonfly vertex ``i`` is x_{i+1}, butterfly ``i`` is y_{i+1}."""
    from chordcycle.generators import complete_multipartite
    from chordcycle.graph import from_edge_list

    if isinstance(p, tuple):
        return complete_multipartite(list(p))
    if p is PatternName.TRIANGLE:
        return complete_multipartite([1, 1, 1])
    if p is PatternName.K4:
        return complete_multipartite([1, 1, 1, 1])
    if p is PatternName.DIAMOND:
        return complete_multipartite([1, 1, 2])
    if p is PatternName.DRAGONFLY:
        return from_edge_list(7, DRAGONFLY_EDGES)
    if p is PatternName.BUTTERFLY:
        return from_edge_list(5, BUTTERFLY_EDGES)
    raise ValueError(f"unknown pattern {p!r}")


@functools.lru_cache(maxsize=64)
def _pattern_arrays(h: Graph):
    # place high-degree vertices first, then stay adjacent to placed ones
    order = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        touching = [v for v in remaining if h.adj[v] & placed]
        pool = touching or list(remaining)
        v = max(pool, key=lambda u: (h.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    padj = np.array(h.adj, dtype=np.uint64)
    pdeg = np.array([h.degree(v) for v in range(h.n)], dtype=np.int64)
    return padj, np.array(order, dtype=np.int64), pdeg


def _find_induced_python(g: Graph, h: Graph, allowed: int) -> Optional[dict[int, int]]:
    # arbitrary-width fallback for graphs beyond the 64-bit kernel
    _, order, pdeg = _pattern_arrays(h)
    order = [int(x) for x in order]
    emb: dict[int, int] = {}

    def extend(d: int, used: int) -> bool:
        if d == len(order):
            return True
        q = order[d]
        c = allowed & ~used
        for r in order[:d]:
            c &= g.adj[emb[r]] if h.has_edge(q, r) else ~g.adj[emb[r]]
        for v in iter_bits(c):
            if (g.adj[v] & allowed).bit_count() < pdeg[q]:
                continue
            emb[q] = v
            if extend(d + 1, used | 1 << v):
                return True
        emb.pop(q, None)
        return False

    return dict(sorted(emb.items())) if extend(0, 0) else None


def find_induced_subgraph(g: Graph, h: Graph, within=None) -> Optional[dict[int, int]]:
    """Induced copy of ``h`` in ``g`` as a map pattern vertex -> host vertex."""
    allowed = g.vertex_mask if within is None else mask_of(within) & g.vertex_mask
    if h.n > allowed.bit_count():
        return None
    if g.n > 64:
        return _find_induced_python(g, h, allowed)
    padj, order, pdeg = _pattern_arrays(h)
    out = np.zeros(max(h.n, 1), dtype=np.int64)
    adj = g.words[:, 0] if g.n else np.zeros(0, dtype=np.uint64)
    if not kernels.find_induced(adj, np.uint64(allowed), padj, order, pdeg, out):
        return None
    return {q: int(out[q]) for q in range(h.n)}


def find_induced_pattern(g: Graph, p, within=None) -> Optional[dict[int, int]]:
    if isinstance(p, str):
        p = PatternName.parse(p)
    return find_induced_subgraph(g, pattern_graph(p), within)


def is_induced_embedding(g: Graph, h: Graph, emb: dict[int, int]) -> bool:
    if sorted(emb) != list(range(h.n)) or len(set(emb.values())) != h.n:
        return False
    return all(
        h.has_edge(a, b) == g.has_edge(emb[a], emb[b])
        for a in range(h.n)
        for b in range(a + 1, h.n)
    )


# cliques ----------------------------------------------------------------------

def _greedy_color_order(adj, cand: int):
    """Sequential greedy coloring of ``cand``: vertices in color-class order
    with the running color count (an upper bound on the clique within)."""
    order, bounds = [], []
    color = 0
    rest = cand
    while rest:
        color += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            rest &= ~low
            q &= ~low & ~adj[v]
            order.append(v)
            bounds.append(color)
    return order, bounds


def clique_number(g: Graph, within=None) -> tuple[int, tuple[int, ...]]:
    """Maximum clique size and a witness clique (sorted ids)."""
    allowed = g.vertex_mask if within is None else mask_of(within) & g.vertex_mask
    if not allowed:
        return 0, ()
    adj = g.adj
    best = [0, 0]

    def expand(r: int, size: int, cand: int) -> None:
        order, bounds = _greedy_color_order(adj, cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[0]:
                return
            v = order[i]
            nxt = cand & adj[v]
            if nxt:
                expand(r | 1 << v, size + 1, nxt)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, r | 1 << v
            cand &= ~(1 << v)

    expand(0, 0, allowed)
    return best[0], tuple(iter_bits(best[1]))


def is_clique(g: Graph, vertices) -> bool:
    vs = list(vertices)
    return all(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])


def has_triangle(g: Graph, allowed: Optional[int] = None) -> bool:
    return first_triangle(g, allowed) is not None


def first_triangle(g: Graph, allowed: Optional[int] = None) -> Optional[tuple[int, int, int]]:
    """Lexicographically smallest triangle inside the vertex bitset ``allowed``."""
    if allowed is None:
        allowed = g.vertex_mask
    for a in iter_bits(allowed):
        na = g.adj[a] & allowed & ~((2 << a) - 1)
        for b in iter_bits(na):
            common = na & g.adj[b] & ~((2 << b) - 1)
            if common:
                return a, b, (common & -common).bit_length() - 1
    return None
