"""Naive cycle enumeration, kept independent of the compiled DFS so it can
serve as a reference for it."""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from chordcycle._accel import njit
from chordcycle.graph import Graph


def cyclic_sequences(n: int):
    """Every cycle on vertex set ``range(n)`` once: rooted at its smallest
    vertex, second vertex smaller than the last."""
    for m in range(3, n + 1):
        for subset in combinations(range(n), m):
            s = subset[0]
            for rest in permutations(subset[1:]):
                if rest[0] < rest[-1]:
                    yield (s,) + rest


def chord_counts(g: Graph) -> set[int]:
    """Chord counts of all cycles of ``g``, by trying every cyclic sequence."""
    found = set()
    for seq in cyclic_sequences(g.n):
        m = len(seq)
        if all(g.has_edge(seq[i], seq[(i + 1) % m]) for i in range(m)):
            inside = sum(1 for a, b in combinations(seq, 2) if g.has_edge(a, b))
            found.add(inside - m)
    return found


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {(i, j): k for k, (i, j) in enumerate((i, j) for j in range(n) for i in range(j))}


def cycle_tables(n: int):
    """Edge-mask tables for all cyclic sequences on ``n`` vertices.

    Masks use graph6 pair order, matching :meth:`Graph.from_mask`.
    Returns ``(cycle_edges, vertex_span, length)`` arrays.
    """
    idx = _pair_index(n)
    cyc, span, length = [], [], []
    for seq in cyclic_sequences(n):
        m = len(seq)
        cm = 0
        for i in range(m):
            a, b = sorted((seq[i], seq[(i + 1) % m]))
            cm |= 1 << idx[(a, b)]
        sm = 0
        for a, b in combinations(sorted(seq), 2):
            sm |= 1 << idx[(a, b)]
        cyc.append(cm)
        span.append(sm)
        length.append(m)
    return (
        np.array(cyc, dtype=np.int64),
        np.array(span, dtype=np.int64),
        np.array(length, dtype=np.int64),
    )


@njit
def _bits(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def _spectrum_batch(cyc, span, length, start, stop, max_k):
    out = np.zeros(stop - start, np.int64)
    for g in range(start, stop):
        s = 0
        for i in range(cyc.shape[0]):
            if g & cyc[i] == cyc[i]:
                k = _bits(g & span[i]) - length[i]
                if k <= max_k:
                    s |= 1 << k
        out[g - start] = s
    return out


def chord_spectrum_all(n: int, max_k: int = 3, start: int = 0, stop: int | None = None) -> np.ndarray:
    """For every edge mask in ``[start, stop)`` on ``n`` vertices, a bitmask
    whose bit ``k`` says some cycle has exactly ``k`` chords (``k <= max_k``)."""
    total = 1 << (n * (n - 1) // 2)
    stop = total if stop is None else stop
    if n < 3:
        return np.zeros(stop - start, dtype=np.int64)
    cyc, span, length = cycle_tables(n)
    return _spectrum_batch(cyc, span, length, start, stop, max_k)
