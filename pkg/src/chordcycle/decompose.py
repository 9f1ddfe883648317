"""Clique cutsets, complete multipartite recognition, the diamond trichotomy
for (X-cycle, V-cycle)-free graphs, and minimal triangle hitting sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from chordcycle.detectors import PatternName, find_induced_pattern, first_triangle, is_clique
from chordcycle.errors import DisconnectedGraphError, FalsificationError
from chordcycle.graph import Graph, component_masks, induced_subgraph, is_connected, iter_bits, mask_of, to_graph6


@dataclass(frozen=True)
class CliqueCutset:
    vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"tag": "CliqueCutset", "vertices": list(self.vertices)}


@dataclass(frozen=True)
class CompleteTripartite:
    parts: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"tag": "CompleteTripartite", "parts": [list(p) for p in self.parts]}


@dataclass(frozen=True)
class DiamondFree:
    def to_json(self) -> dict:
        return {"tag": "DiamondFree"}


Trichotomy = Union[CliqueCutset, CompleteTripartite, DiamondFree]


@dataclass(frozen=True)
class HittingSet:
    vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"tag": "HittingSet", "vertices": list(self.vertices)}


def _cliques_by_size(g: Graph, allowed: int) -> Iterator[int]:
    """All non-empty cliques inside ``allowed`` as bitsets: by size, then lexicographically."""
    layer = [(1 << v, g.adj[v] & allowed & ~((2 << v) - 1)) for v in iter_bits(allowed)]
    while layer:
        nxt = []
        for clique, ext in layer:
            yield clique
            for v in iter_bits(ext):
                nxt.append((clique | 1 << v, ext & g.adj[v] & ~((2 << v) - 1)))
        layer = nxt


def separates(g: Graph, s_mask: int, allowed: Optional[int] = None) -> bool:
    allowed = g.vertex_mask if allowed is None else allowed
    return len(component_masks(g, allowed & ~s_mask)) > 1


def clique_cutset_mask(g: Graph, allowed: int) -> int:
    """Bitset of the first clique cutset of the connected subgraph induced by
    ``allowed``, or 0 if there is none."""
    for clique in _cliques_by_size(g, allowed):
        if separates(g, clique, allowed):
            return clique
    return 0


def find_clique_cutset(g: Graph) -> Optional[tuple[int, ...]]:
    """Smallest clique (then lexicographically first) whose removal
    disconnects ``g``; None when ``g`` has no clique cutset."""
    if not is_connected(g):
        raise DisconnectedGraphError("clique cutset search needs a connected graph")
    cut = clique_cutset_mask(g, g.vertex_mask)
    return tuple(iter_bits(cut)) if cut else None


def is_clique_cutset(g: Graph, s) -> bool:
    return is_clique(g, s) and separates(g, mask_of(s))


def split_on_clique_cutset(g: Graph, s) -> tuple[tuple[Graph, dict[int, int]], tuple[Graph, dict[int, int]]]:
    """``G1`` = first component of ``g - s`` plus ``s``; ``G2`` = the rest plus ``s``.

    Each side comes with its old->new id map (see :func:`induced_subgraph`).
    """
    s = tuple(s)
    if not is_clique(g, s):
        raise ValueError(f"{list(s)} is not a clique")
    smask = mask_of(s)
    comps = component_masks(g, g.vertex_mask & ~smask)
    if len(comps) < 2:
        raise ValueError(f"removing {list(s)} does not disconnect the graph")
    first = comps[0]
    side1 = first | smask
    side2 = g.vertex_mask & ~first
    return induced_subgraph(g, iter_bits(side1)), induced_subgraph(g, iter_bits(side2))


def recognize_complete_multipartite(g: Graph) -> Optional[tuple[tuple[int, ...], ...]]:
    """Parts of a complete multipartite structure (ascending size, then
    smallest id), or None. Non-adjacency must be an equivalence relation."""
    full = g.vertex_mask
    parts = []
    seen = 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        part = full & ~g.adj[v]
        for u in iter_bits(part):
            if full & ~g.adj[u] != part:
                return None
        parts.append(tuple(iter_bits(part)))
        seen |= part
    return tuple(sorted(parts, key=lambda p: (len(p), p[0])))


def verify_trichotomy(g: Graph, t: Trichotomy) -> bool:
    """Independent re-check of a trichotomy tag on ``g``."""
    if isinstance(t, CliqueCutset):
        return is_clique(g, t.vertices) and separates(g, mask_of(t.vertices))
    if isinstance(t, CompleteTripartite):
        if len(t.parts) != 3 or sorted(v for p in t.parts for v in p) != list(range(g.n)):
            return False
        where = {v: i for i, p in enumerate(t.parts) for v in p}
        return all(
            g.has_edge(u, v) == (where[u] != where[v])
            for u in range(g.n)
            for v in range(u + 1, g.n)
        )
    if isinstance(t, DiamondFree):
        return find_induced_pattern(g, PatternName.DIAMOND) is None
    return False


def trichotomy(g: Graph) -> Trichotomy:
    """Clique cutset, else complete tripartite, else diamond-free.

    Meant for (X-cycle, V-cycle)-free inputs, where one of the three always
    applies. If none does, :class:`FalsificationError` is raised with the
    diamond found. A disconnected graph gets the empty cutset.
    """
    from chordcycle.coloring import FalsificationReport

    if not is_connected(g):
        return CliqueCutset(())
    cut = find_clique_cutset(g)
    if cut is not None:
        return CliqueCutset(cut)
    parts = recognize_complete_multipartite(g)
    if parts is not None and len(parts) == 3:
        return CompleteTripartite(parts)
    diamond = find_induced_pattern(g, PatternName.DIAMOND)
    if diamond is None:
        return DiamondFree()
    witness = {"type": "diamond", "embedding": [diamond[i] for i in range(4)]}
    if parts is not None:
        witness["multipartite_parts"] = [list(p) for p in parts]
    raise FalsificationError(FalsificationReport("nodiamond", to_graph6(g), witness))


def minimal_triangle_hitting_set(g: Graph) -> HittingSet:
    """Inclusion-minimal ``T`` with ``g - T`` triangle-free.

    Greedy: take the smallest vertex of the lexicographically first remaining
    triangle until none is left, then drop members of ``T`` in ascending
    order while ``g - T`` stays triangle-free, repeating until stable.
    """
    full = g.vertex_mask
    t = 0
    while True:
        tri = first_triangle(g, full & ~t)
        if tri is None:
            break
        t |= 1 << tri[0]
    changed = True
    while changed:
        changed = False
        for v in iter_bits(t):
            if first_triangle(g, full & ~(t & ~(1 << v))) is None:
                t &= ~(1 << v)
                changed = True
    return HittingSet(tuple(iter_bits(t)))


def is_minimal_hitting_set(g: Graph, vertices) -> bool:
    full = g.vertex_mask
    t = mask_of(vertices)
    if first_triangle(g, full & ~t) is not None:
        return False
    return all(first_triangle(g, full & ~(t & ~(1 << v))) is not None for v in iter_bits(t))
