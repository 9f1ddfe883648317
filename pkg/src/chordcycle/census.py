"""Batch classification of exhaustive small-graph censuses.

Graphs are identified by their edge mask in graph6 pair order (see
:meth:`Graph.from_mask`). The kernels here call the same compiled cycle and
pattern searches as :mod:`chordcycle.detectors`, looping over many graphs
without returning to Python.
"""

from __future__ import annotations

import numpy as np

from chordcycle import kernels
from chordcycle._accel import ONE, ZERO, bit, lowbit, njit
from chordcycle.detectors import DEFAULT_BUDGET, PatternName, _pattern_arrays, pattern_graph

# flag columns of classify_masks
CONNECTED = 0
HAS_K0, HAS_K1, HAS_K2, HAS_K3 = 1, 2, 3, 4
HAS_X = 5
HAS_V = 6
HAS_TRIANGLE = 7
HAS_K4 = 8
HAS_DIAMOND = 9
HAS_DRAGONFLY = 10
HAS_BUTTERFLY = 11
N_FLAGS = 12

# level lemmas for level_violations
LEVEL_NO_ONE_CHORD = 0        # levels contain no cycle with exactly one chord
LEVEL_V_TRI_3 = 1             # levels are (V-cycle, triangle, 3-cycle)-free
LEVEL_X_V_TRI_3 = 2           # levels are (X-cycle, V-cycle, triangle, 3-cycle)-free
LEVEL_NO_DRAGONFLY = 3
LEVEL_NO_BUTTERFLY = 4


def pair_table(n: int) -> np.ndarray:
    return np.array([(i, j) for j in range(n) for i in range(j)], dtype=np.int64).reshape(-1, 2)


@njit
def _mask_to_adj(mask, pairs, n, adj):
    for v in range(n):
        adj[v, 0] = ZERO
    for k in range(pairs.shape[0]):
        if (mask >> k) & 1:
            i = pairs[k, 0]
            j = pairs[k, 1]
            adj[i, 0] |= bit(j)
            adj[j, 0] |= bit(i)


@njit
def _reach(adj, start, allowed):
    seen = bit(start)
    frontier = seen
    while frontier != ZERO:
        nxt = ZERO
        f = frontier
        while f != ZERO:
            v = lowbit(f)
            f &= f - ONE
            nxt |= adj[v, 0]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


@njit
def _cycle(adj, allowed, k, kind, budget, buf):
    allow = np.zeros(1, np.uint64)
    allow[0] = allowed
    status, length, explored = kernels.find_cycle(adj, allow, k, kind, budget, buf)
    return status


@njit
def _pattern(adj, allowed, pat):
    padj, porder, pdeg, out = pat
    return kernels.find_induced(adj[:, 0], allowed, padj, porder, pdeg, out)


@njit
def _status_flag(status):
    # -1 marks an exhausted budget
    if status == kernels.CAPPED:
        return -1
    return 1 if status == kernels.FOUND else 0


@njit
def _classify(masks, pairs, n, budget, tri, k4, dia, drag, butt):
    out = np.zeros((masks.shape[0], N_FLAGS), np.int8)
    adj = np.zeros((n, 1), np.uint64)
    buf = np.zeros(n, np.int64)
    full = (ONE << np.uint64(n)) - ONE
    for r in range(masks.shape[0]):
        _mask_to_adj(masks[r], pairs, n, adj)
        if n == 0 or _reach(adj, 0, full) == full:
            out[r, CONNECTED] = 1
        for k in range(4):
            out[r, HAS_K0 + k] = _status_flag(_cycle(adj, full, k, kernels.KIND_ANY, budget, buf))
        out[r, HAS_X] = _status_flag(_cycle(adj, full, 2, kernels.KIND_X, budget, buf))
        out[r, HAS_V] = _status_flag(_cycle(adj, full, 2, kernels.KIND_V, budget, buf))
        out[r, HAS_TRIANGLE] = _pattern(adj, full, tri)
        out[r, HAS_K4] = _pattern(adj, full, k4)
        out[r, HAS_DIAMOND] = _pattern(adj, full, dia)
        out[r, HAS_DRAGONFLY] = _pattern(adj, full, drag)
        out[r, HAS_BUTTERFLY] = _pattern(adj, full, butt)
    return out


def _pattern_tuple(p):
    padj, order, pdeg = _pattern_arrays(pattern_graph(p))
    return (padj, order, pdeg, np.zeros(len(order), dtype=np.int64))


def _patterns():
    return tuple(_pattern_tuple(p) for p in (PatternName.TRIANGLE, PatternName.K4, PatternName.DIAMOND,
                                             PatternName.DRAGONFLY, PatternName.BUTTERFLY))


def all_masks(n: int) -> np.ndarray:
    return np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)


def classify_masks(n: int, masks: np.ndarray, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Flag matrix ``(len(masks), N_FLAGS)``: 1 present, 0 absent, -1 budget hit."""
    if n > 64:
        raise ValueError("census kernels need n <= 64")
    return _classify(np.asarray(masks, dtype=np.int64), pair_table(n), n, budget, *_patterns())


@njit
def _level_defect(adj, level, lemma, budget, buf, drag, butt):
    # 1 defect, 0 fine, -1 budget exhausted
    if lemma == LEVEL_NO_ONE_CHORD:
        return _status_flag(_cycle(adj, level, 1, kernels.KIND_ANY, budget, buf))
    if lemma == LEVEL_V_TRI_3 or lemma == LEVEL_X_V_TRI_3:
        capped = False
        kinds = 2 if lemma == LEVEL_X_V_TRI_3 else 1
        for t in range(kinds):
            kind = kernels.KIND_V if t == 0 else kernels.KIND_X
            s = _status_flag(_cycle(adj, level, 2, kind, budget, buf))
            if s == 1:
                return 1
            capped = capped or s < 0
        s = _status_flag(_cycle(adj, level, 3, kernels.KIND_ANY, budget, buf))
        if s == 1:
            return 1
        capped = capped or s < 0
        f = level
        while f != ZERO:
            a = lowbit(f)
            f &= f - ONE
            na = adj[a, 0] & level
            g = na
            while g != ZERO:
                b = lowbit(g)
                g &= g - ONE
                if adj[b, 0] & na != ZERO:
                    return 1
        return -1 if capped else 0
    if lemma == LEVEL_NO_DRAGONFLY:
        return 1 if _pattern(adj, level, drag) else 0
    return 1 if _pattern(adj, level, butt) else 0


@njit
def _levels_check(masks, pairs, n, lemma, budget, drag, butt, out):
    adj = np.zeros((n, 1), np.uint64)
    buf = np.zeros(n, np.int64)
    full = (ONE << np.uint64(n)) - ONE
    nviol = 0
    ncap = 0
    nlevels = 0
    for r in range(masks.shape[0]):
        _mask_to_adj(masks[r], pairs, n, adj)
        for z in range(n):
            seen = bit(z)
            frontier = seen
            index = 0
            while frontier != ZERO:
                nlevels += 1
                d = _level_defect(adj, frontier, lemma, budget, buf, drag, butt)
                if d == 1:
                    if nviol < out.shape[0]:
                        out[nviol, 0] = r
                        out[nviol, 1] = z
                        out[nviol, 2] = index
                    nviol += 1
                elif d < 0:
                    ncap += 1
                nxt = ZERO
                f = frontier
                while f != ZERO:
                    v = lowbit(f)
                    f &= f - ONE
                    nxt |= adj[v, 0]
                frontier = nxt & full & ~seen
                seen |= frontier
                index += 1
    return nviol, ncap, nlevels


def level_violations(n: int, masks: np.ndarray, lemma: int, budget: int = DEFAULT_BUDGET, keep: int = 100):
    """Check a level lemma on every root and every BFS level of each graph.

    Returns ``(violations, capped, levels_checked)`` where ``violations`` is an
    array of ``(row, root, level index)`` (at most ``keep`` rows).
    """
    out = np.zeros((keep, 3), dtype=np.int64)
    drag = _pattern_tuple(PatternName.DRAGONFLY)
    butt = _pattern_tuple(PatternName.BUTTERFLY)
    nviol, ncap, nlev = _levels_check(np.asarray(masks, dtype=np.int64), pair_table(n), n, lemma,
                                      budget, drag, butt, out)
    return out[: min(nviol, keep)], int(ncap), int(nlev)


@njit
def _chi_batch(masks, pairs, n, out):
    adj = np.zeros((n, 1), np.uint64)
    col = np.zeros(max(n, 1), np.int64)
    for r in range(masks.shape[0]):
        _mask_to_adj(masks[r], pairs, n, adj)
        out[r] = kernels.exact_coloring(adj[:, 0], 1 if n > 0 else 0, col)


def chromatic_numbers(n: int, masks: np.ndarray) -> np.ndarray:
    out = np.zeros(len(masks), dtype=np.int64)
    _chi_batch(np.asarray(masks, dtype=np.int64), pair_table(n), n, out)
    return out
