"""Graph families and graph streams used as test inputs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from chordcycle.graph import Graph, from_edge_list, parse_graph6

MAX_ENUM_N = 7


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def complete_multipartite(sizes: list[int]) -> Graph:
    """K_{a_1,...,a_k}; parts are consecutive id blocks."""
    if not sizes:
        raise ValueError("need at least one part")
    if any(s <= 0 for s in sizes):
        raise ValueError("part sizes must be positive")
    n = sum(sizes)
    full = (1 << n) - 1
    adj = []
    start = 0
    for s in sizes:
        block = ((1 << s) - 1) << start
        adj.extend([full & ~block] * s)
        start += s
    return Graph(n, tuple(adj))


def hajos_join(k: int) -> Graph:
    """Hajós join of two copies of K_k.

    Ids: first clique 0..k-2, second clique k-1..2k-3, apex x = 2k-2
    (complete to both cliques), a = 2k-1 complete to the first clique,
    b = 2k complete to the second, plus the edge ab.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    h1 = list(range(0, k - 1))
    h2 = list(range(k - 1, 2 * k - 2))
    x, a, b = 2 * k - 2, 2 * k - 1, 2 * k
    edges = []
    for part in (h1, h2):
        edges += [(u, v) for i, u in enumerate(part) for v in part[i + 1:]]
        edges += [(x, u) for u in part]
    edges += [(a, u) for u in h1] + [(b, u) for u in h2] + [(a, b)]
    return from_edge_list(2 * k + 1, edges)


def named_graph(name: str) -> Graph:
    """``C<n>``, ``K<n>``, ``P<n>``, ``Petersen``, ``Diamond``, ``Dragonfly``, ``Butterfly``."""
    from chordcycle.detectors import PatternName, pattern_graph

    key = name.strip()
    low = key.lower()
    fixed = {
        "petersen": petersen_graph,
        "diamond": lambda: pattern_graph(PatternName.DIAMOND),
        "dragonfly": lambda: pattern_graph(PatternName.DRAGONFLY),
        "butterfly": lambda: pattern_graph(PatternName.BUTTERFLY),
    }
    if low in fixed:
        return fixed[low]()
    m = re.fullmatch(r"([ckp])_?(\d+)", low)
    if m:
        n = int(m.group(2))
        return {"c": cycle_graph, "k": complete_graph, "p": path_graph}[m.group(1)](n)
    raise ValueError(f"unknown graph name {name!r}")


@dataclass
class GraphStream:
    """Single-consumer iterator of graphs plus a description of its source.

    ``rejected`` counts graphs dropped by :func:`filter_class`.
    """

    source: dict
    _it: Iterator[Graph]
    rejected: int = 0
    accepted: int = 0

    def __iter__(self):
        return self

    def __next__(self) -> Graph:
        return next(self._it)


def enumerate_labeled(n: int) -> GraphStream:
    """All labelled graphs on ``n`` vertices in ascending edge-mask order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_ENUM_N:
        raise ValueError(f"labelled enumeration limited to n <= {MAX_ENUM_N}")
    total = 1 << (n * (n - 1) // 2)
    it = (Graph.from_mask(n, mask) for mask in range(total))
    return GraphStream({"kind": "enum", "n": n}, it)


def random_graph(n: int, p: float, seed: int, index: int) -> Graph:
    """Erdős–Rényi G(n, p) sample number ``index`` of stream ``seed``.

    Each sample draws from its own generator keyed by (seed, index), so any
    sample can be regenerated without replaying the stream.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng([seed, index])
    draws = rng.random(n * (n - 1) // 2)
    mask = 0
    for k in np.flatnonzero(draws < p):
        mask |= 1 << int(k)
    return Graph.from_mask(n, mask)


def random_stream(n: int, p: float, count: int, seed: int) -> GraphStream:
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    it = (random_graph(n, p, seed, i) for i in range(count))
    return GraphStream({"kind": "random", "n": n, "p": p, "count": count, "seed": seed}, it)


def graph6_stream(lines: Iterable[str], name: str = "-") -> GraphStream:
    it = (parse_graph6(ln) for ln in lines if ln.strip())
    return GraphStream({"kind": "file", "path": name}, it)


def filter_class(stream: GraphStream, predicate: Callable[[Graph], bool]) -> GraphStream:
    """Pass through graphs satisfying ``predicate``; counts go on the result."""
    out = GraphStream(dict(stream.source, filtered=True), iter(()))

    def gen():
        for g in stream:
            if predicate(g):
                out.accepted += 1
                yield g
            else:
                out.rejected += 1

    out._it = gen()
    return out
