"""Simple undirected graphs on dense integer ids, stored as bitsets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from chordcycle._accel import to_words
from chordcycle.errors import Graph6Error


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbor bitset of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbor id >= {self.n}")
            if nb >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in iter_bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        # skips validation; for adjacency derived from an already valid graph
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in iter_bits(self.adj[v] & ((1 << v) - 1))]

    @cached_property
    def words(self) -> np.ndarray:
        """Adjacency as a ``(n, W)`` uint64 array for the compiled kernels."""
        return to_words(self.adj, self.n)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Graph":
        """Build from an edge mask over pairs in graph6 order (0,1),(0,2),(1,2),(0,3),..."""
        adj = [0] * n
        k = 0
        for j in range(1, n):
            for i in range(j):
                if mask >> k & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                k += 1
        return cls(n, tuple(adj))

    def edge_mask(self) -> int:
        mask = 0
        k = 0
        for j in range(1, self.n):
            row = self.adj[j]
            for i in range(j):
                if row >> i & 1:
                    mask |= 1 << k
                k += 1
        return mask


@dataclass(frozen=True)
class LevelDecomposition:
    """BFS layers ``levels[i]`` = vertices at distance exactly ``i`` from ``root``."""

    root: int
    levels: tuple[tuple[int, ...], ...]
    unreached: tuple[int, ...]

    def level_of(self) -> dict[int, int]:
        return {v: i for i, lv in enumerate(self.levels) for v in lv}


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"loop edge at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


# graph6 ---------------------------------------------------------------------

def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in range(30, -1, -6)]


def to_graph6(g: Graph) -> str:
    vals = _encode_n(g.n)
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                vals.append(acc)
                acc = nbits = 0
    if nbits:
        vals.append(acc << (6 - nbits))
    return "".join(chr(63 + x) for x in vals)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    vals = []
    for ch in s:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid graph6 byte {ch!r}")
        vals.append(c - 63)
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        pos = 8
    else:
        raise Graph6Error("truncated graph6 header")
    need = (n * (n - 1) // 2 + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        kind = "truncated" if len(body) < need else "overlong"
        raise Graph6Error(f"{kind} graph6 bit stream: expected {need} bytes, got {len(body)}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# edge-list text -------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with a line 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise ValueError(f"bad edge line: {' '.join(r)}")
        edges.append((int(r[0]), int(r[1])))
    return from_edge_list(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# queries --------------------------------------------------------------------

def component_mask(g: Graph, start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside the vertex set ``allowed``."""
    seen = frontier = 1 << start
    adj = g.adj
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def component_masks(g: Graph, allowed: int | None = None) -> list[int]:
    rest = g.vertex_mask if allowed is None else allowed
    out = []
    while rest:
        v = (rest & -rest).bit_length() - 1
        c = component_mask(g, v, rest)
        out.append(c)
        rest &= ~c
    return out


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Components as sorted id tuples, ordered by smallest member."""
    return [tuple(iter_bits(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n == 0 or component_mask(g, 0, g.vertex_mask) == g.vertex_mask


def bfs_levels(g: Graph, root: int, allowed: int | None = None) -> LevelDecomposition:
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range")
    allowed = g.vertex_mask if allowed is None else allowed
    seen = frontier = 1 << root
    levels = []
    while frontier:
        levels.append(tuple(iter_bits(frontier)))
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return LevelDecomposition(root, tuple(levels), tuple(iter_bits(g.vertex_mask & ~seen)))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``s``, relabelled ``0..|s|-1`` in ascending id order."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    mapping = {v: i for i, v in enumerate(verts)}
    smask = mask_of(verts)
    adj = []
    for v in verts:
        row = 0
        nb = g.adj[v] & smask
        while nb:
            low = nb & -nb
            row |= 1 << mapping[low.bit_length() - 1]
            nb ^= low
        adj.append(row)
    return Graph._trusted(len(verts), tuple(adj)), mapping


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    drop = set(s)
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])
