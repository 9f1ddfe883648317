"""Compiled inner loops: cycle search, induced pattern search, exact coloring.

Graphs arrive as uint64 bitset arrays. The cycle search works on ``(n, W)``
multi-word rows so any vertex count is accepted; the pattern and coloring
kernels take single-word rows and therefore need ``n <= 64``.
"""

import numpy as np

from chordcycle._accel import ALL, ONE, ZERO, bit, lowbit, njit, popcount

KIND_ANY = -1
KIND_V = 0
KIND_X = 1
KIND_PARALLEL = 2

FOUND = 1
ABSENT = 0
CAPPED = -1


@njit
def _has(row, v):
    return (row[v >> 6] >> np.uint64(v & 63)) & ONE != ZERO


@njit
def classify_cycle(adj, path, m):
    """Kind of a cycle ``path[:m]`` carrying exactly two chords (V/X/parallel)."""
    a1 = a2 = b1 = b2 = -1
    for i in range(m):
        row = adj[path[i]]
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            if _has(row, path[j]):
                if a1 < 0:
                    a1, a2 = i, j
                else:
                    b1, b2 = i, j
    if a1 == b1 or a1 == b2 or a2 == b1 or a2 == b2:
        return KIND_V
    in1 = a1 < b1 < a2
    in2 = a1 < b2 < a2
    if in1 != in2:
        return KIND_X
    return KIND_PARALLEL


@njit
def find_cycle(adj, allowed, k, kind, budget, out):
    """Search for a cycle inside ``allowed`` carrying exactly ``k`` chords.

    Cycles are rooted at their smallest vertex ``s`` and grown by DFS over
    larger ids. Along a path the number of edges among path vertices that are
    not path edges never decreases as the path grows, and a closed cycle has
    that number minus one chords, so a path with ``k + 2`` such edges is
    dropped. With ``kind >= 0`` (requires ``k == 2``) the cycle must also have
    that chord arrangement.

    Returns ``(status, length, explored)``; the cycle is written to ``out``.
    ``explored`` counts path extensions and ``status`` is ``CAPPED`` once it
    passes ``budget``.
    """
    n, w = adj.shape
    path = np.empty(n, np.int64)
    nonpath = np.zeros(n, np.int64)
    cand = np.zeros((n, w), np.uint64)
    pathmask = np.zeros(w, np.uint64)
    above = np.zeros(w, np.uint64)
    explored = 0
    for s in range(n):
        if not _has(allowed, s):
            continue
        sw = s >> 6
        for j in range(w):
            if j < sw:
                above[j] = ZERO
            elif j > sw:
                above[j] = ALL
            else:
                b = s & 63
                above[j] = ZERO if b == 63 else ~((bit(b + 1)) - ONE)
        path[0] = s
        pathmask[sw] |= bit(s & 63)
        nonpath[0] = 0
        for j in range(w):
            cand[0, j] = adj[s, j] & allowed[j] & above[j]
        depth = 0
        while depth >= 0:
            wi = -1
            for j in range(w):
                if cand[depth, j] != ZERO:
                    wi = j
                    break
            if wi < 0:
                u = path[depth]
                pathmask[u >> 6] &= ~bit(u & 63)
                depth -= 1
                continue
            word = cand[depth, wi]
            v = wi * 64 + lowbit(word)
            cand[depth, wi] = word & (word - ONE)
            explored += 1
            if explored > budget:
                pathmask[:] = ZERO
                return CAPPED, 0, explored
            e = 0
            for j in range(w):
                e += popcount(adj[v, j] & pathmask[j])
            np_new = nonpath[depth] + e - 1
            if np_new >= k + 2:
                continue
            m = depth + 2
            path[depth + 1] = v
            if m >= 3 and _has(adj[v], s) and np_new - 1 == k:
                if kind < 0 or classify_cycle(adj, path, m) == kind:
                    for i in range(m):
                        out[i] = path[i]
                    pathmask[:] = ZERO
                    return FOUND, m, explored
            depth += 1
            nonpath[depth] = np_new
            pathmask[v >> 6] |= bit(v & 63)
            for j in range(w):
                cand[depth, j] = adj[v, j] & allowed[j] & above[j] & ~pathmask[j]
    return ABSENT, 0, explored


@njit
def find_induced(adj, allowed, padj, porder, pdeg, out):
    """Injective map of pattern vertices into ``allowed`` that preserves
    adjacency and non-adjacency. Single-word rows; ``porder`` is the order in
    which pattern vertices are placed. Returns True and fills ``out``."""
    n = adj.shape[0]
    p = padj.shape[0]
    if p == 0:
        return True
    if p > popcount(allowed):
        return False
    deg = np.zeros(n, np.int64)
    for v in range(n):
        if (allowed >> np.uint64(v)) & ONE != ZERO:
            deg[v] = popcount(adj[v] & allowed)
    cand = np.zeros(p, np.uint64)
    used = ZERO
    depth = 0
    cand[0] = _pattern_candidates(adj, allowed, padj, porder, pdeg, deg, out, 0, used)
    while depth >= 0:
        if depth < p and cand[depth] != ZERO:
            word = cand[depth]
            v = lowbit(word)
            cand[depth] = word & (word - ONE)
            out[porder[depth]] = v
            used |= bit(v)
            depth += 1
            if depth == p:
                return True
            cand[depth] = _pattern_candidates(adj, allowed, padj, porder, pdeg, deg, out, depth, used)
            continue
        depth -= 1
        if depth >= 0:
            used &= ~bit(out[porder[depth]])
    return False


@njit
def _pattern_candidates(adj, allowed, padj, porder, pdeg, deg, out, depth, used):
    q = porder[depth]
    c = allowed & ~used
    for d in range(depth):
        r = porder[d]
        img = out[r]
        if (padj[q] >> np.uint64(r)) & ONE != ZERO:
            c &= adj[img]
        else:
            c &= ~adj[img]
    need = pdeg[q]
    res = ZERO
    while c != ZERO:
        v = lowbit(c)
        c &= c - ONE
        if deg[v] >= need:
            res |= bit(v)
    return res


@njit
def _select(adj, colors, sat, degree, n):
    best = -1
    for v in range(n):
        if colors[v] >= 0:
            continue
        if best < 0 or sat[v] > sat[best] or (sat[v] == sat[best] and degree[v] > degree[best]):
            best = v
    return best


@njit
def _assign(adj, cnt, sat, v, c):
    row = adj[v]
    while row != ZERO:
        u = lowbit(row)
        row &= row - ONE
        cnt[u, c] += 1
        if cnt[u, c] == 1:
            sat[u] += 1


@njit
def _unassign(adj, cnt, sat, v, c):
    row = adj[v]
    while row != ZERO:
        u = lowbit(row)
        row &= row - ONE
        cnt[u, c] -= 1
        if cnt[u, c] == 0:
            sat[u] -= 1


@njit
def exact_coloring(adj, lower, out):
    """Minimum proper coloring by DSATUR branch and bound.

    ``lower`` is a known lower bound (a clique size) used to stop early.
    Vertex choice: largest saturation, then largest degree, then smallest id;
    colors are tried in ascending order and a fresh color only once.
    Writes the optimal coloring to ``out`` and returns the color count.
    """
    n = adj.shape[0]
    if n == 0:
        return 0
    degree = np.zeros(n, np.int64)
    for v in range(n):
        degree[v] = popcount(adj[v])
    colors = -np.ones(n, np.int64)
    cnt = np.zeros((n, n + 1), np.int64)
    sat = np.zeros(n, np.int64)

    # greedy DSATUR gives the initial upper bound
    best = 0
    for _ in range(n):
        v = _select(adj, colors, sat, degree, n)
        c = 0
        while cnt[v, c] > 0:
            c += 1
        colors[v] = c
        _assign(adj, cnt, sat, v, c)
        if c + 1 > best:
            best = c + 1
    for v in range(n):
        out[v] = colors[v]
    if best <= lower:
        return best

    for v in range(n):
        if colors[v] >= 0:
            _unassign(adj, cnt, sat, v, colors[v])
            colors[v] = -1
    stack_v = np.zeros(n, np.int64)
    stack_c = np.zeros(n, np.int64)
    used = np.zeros(n, np.int64)
    depth = 0
    stack_v[0] = _select(adj, colors, sat, degree, n)
    stack_c[0] = -1
    used[0] = 0
    while depth >= 0:
        v = stack_v[depth]
        c = stack_c[depth]
        if c >= 0:
            _unassign(adj, cnt, sat, v, c)
            colors[v] = -1
        if used[depth] >= best:
            depth -= 1
            continue
        limit = used[depth]
        if limit > best - 2:
            limit = best - 2
        c += 1
        while c <= limit and cnt[v, c] > 0:
            c += 1
        if c > limit:
            stack_c[depth] = -1
            depth -= 1
            continue
        colors[v] = c
        stack_c[depth] = c
        _assign(adj, cnt, sat, v, c)
        k = used[depth]
        if c + 1 > k:
            k = c + 1
        if depth + 1 == n:
            best = k
            for u in range(n):
                out[u] = colors[u]
            if best <= lower:
                return best
            continue
        depth += 1
        stack_v[depth] = _select(adj, colors, sat, degree, n)
        stack_c[depth] = -1
        used[depth] = k
    return best
