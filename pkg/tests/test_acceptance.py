"""Acceptance criteria 1-10, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion. The census criteria sweep every labelled graph on
up to seven vertices and take several minutes on one core.
"""

from __future__ import annotations

import io
import itertools
from functools import lru_cache

import numpy as np
import pytest

from chordcycle import census, harness
from chordcycle.cli import main as cli_main
from chordcycle.coloring import (
    K4_FREE_BOUND,
    XV_FREE_BOUND,
    color_3cycle_free,
    color_xv_free,
    exact_chromatic_number,
    verify_coloring,
)
from chordcycle.decompose import trichotomy, verify_trichotomy
from chordcycle.detectors import (
    TwoChordKind,
    clique_number,
    find_two_chord_cycle_of_kind,
    first_triangle,
    is_in_class_Ck,
)
from chordcycle.errors import FalsificationError
from chordcycle.generators import (
    complete_graph,
    complete_multipartite,
    cycle_graph,
    hajos_join,
    petersen_graph,
    random_graph,
)
from chordcycle.graph import Graph, component_masks, induced_subgraph, is_connected, iter_bits
from chordcycle.oracle import chord_spectrum_all

from conftest import CENSUS_MAX_N, select

RANDOM_N = 12
RANDOM_PS = (0.15, 0.3)
RANDOM_SEED = 2024
RANDOM_SURVIVORS = 500
MAX_DRAWS = 500_000


def census_graphs(census_flags, **kw):
    for n in range(1, CENSUS_MAX_N + 1):
        masks, flags = census_flags[n]
        for row in select(flags, **kw):
            yield Graph.from_mask(n, int(masks[row]))


def _tf3(g):
    return first_triangle(g) is None and is_in_class_Ck(g, 3)


def _vtf3(g):
    return _tf3(g) and find_two_chord_cycle_of_kind(g, TwoChordKind.V) is None


def _k4c3(g):
    return clique_number(g)[0] <= 3 and is_in_class_Ck(g, 3)


def _c3(g):
    return is_in_class_Ck(g, 3)


CLASSES = {"tf3": _tf3, "vtf3": _vtf3, "k4c3": _k4c3, "c3": _c3}


@lru_cache(maxsize=None)
def random_corpus(cls: str, p: float) -> tuple[Graph, ...]:
    """First RANDOM_SURVIVORS samples of G(12, p) in class ``cls``."""
    member = CLASSES[cls]
    out = []
    for i in range(MAX_DRAWS):
        g = random_graph(RANDOM_N, p, RANDOM_SEED, i)
        if member(g):
            out.append(g)
            if len(out) == RANDOM_SURVIVORS:
                return tuple(out)
    raise AssertionError(f"only {len(out)} {cls} survivors in {MAX_DRAWS} draws at p={p}")


# 1 ---------------------------------------------------------------------------

def test_criterion_01_detector_matches_brute_force(census_flags, record_criterion):
    n = 7
    masks, flags = census_flags[n]
    spectrum = chord_spectrum_all(n, max_k=3)
    capped = int((flags[:, census.HAS_K0:census.HAS_K3 + 1] < 0).sum())
    mismatches = 0
    for k in range(4):
        expected = (spectrum >> k) & 1
        mismatches += int(np.count_nonzero(flags[:, census.HAS_K0 + k] != expected))
    ok = mismatches == 0 and capped == 0 and len(masks) == 2**21
    record_criterion(1, ok, f"{len(masks)} graphs x k=0..3, {mismatches} disagreements, {capped} capped")
    assert ok


# 2 ---------------------------------------------------------------------------

def test_criterion_02_xv_free_six_colors(census_flags, record_criterion):
    checked = bad = falsified = 0
    max_chi = 0
    for n in range(1, CENSUS_MAX_N + 1):
        masks, flags = census_flags[n]
        rows = select(flags, absent=(census.HAS_X, census.HAS_V))
        chis = census.chromatic_numbers(n, masks[rows])
        max_chi = max(max_chi, int(chis.max(initial=0)))
        bad += int(np.count_nonzero(chis > XV_FREE_BOUND))
        for m in masks[rows]:
            g = Graph.from_mask(n, int(m))
            checked += 1
            try:
                c = color_xv_free(g, verify=False)
            except FalsificationError:
                falsified += 1
                continue
            if not verify_coloring(g, c) or c.palette_size > XV_FREE_BOUND:
                bad += 1
    ok = bad == 0 and falsified == 0 and checked > 0
    record_criterion(2, ok, f"{checked} connected (X,V)-free graphs, max chi {max_chi}, "
                            f"{bad} violations, {falsified} falsifications")
    assert ok


# 3 ---------------------------------------------------------------------------

def test_criterion_03_trichotomy(census_flags, record_criterion):
    checked = bad = 0
    tags: dict[str, int] = {}
    for g in census_graphs(census_flags, absent=(census.HAS_X, census.HAS_V)):
        checked += 1
        try:
            t = trichotomy(g)
        except FalsificationError:
            bad += 1
            continue
        tags[type(t).__name__] = tags.get(type(t).__name__, 0) + 1
        if not verify_trichotomy(g, t):
            bad += 1
    ok = bad == 0 and checked > 0
    record_criterion(3, ok, f"{checked} graphs, tags {dict(sorted(tags.items()))}, {bad} violations")
    assert ok


# 4 ---------------------------------------------------------------------------

def _census_levels(census_flags, lemma, absent):
    viol = capped = levels = graphs = 0
    for n in range(1, CENSUS_MAX_N + 1):
        masks, flags = census_flags[n]
        rows = select(flags, absent=absent)
        graphs += len(rows)
        v, c, lv = census.level_violations(n, masks[rows], lemma)
        viol += len(v)
        capped += c
        levels += lv
    return graphs, levels, viol, capped


def test_criterion_04_levels_have_no_one_chord_cycle(census_flags, record_criterion):
    graphs, levels, viol, capped = _census_levels(
        census_flags, census.LEVEL_NO_ONE_CHORD, (census.HAS_DIAMOND, census.HAS_X, census.HAS_V))
    ok = viol == 0 and capped == 0 and graphs > 0
    record_criterion(4, ok, f"{graphs} graphs, {levels} levels, {viol} violations")
    assert ok


# 5 ---------------------------------------------------------------------------

LEVEL_LEMMAS = (
    # (suite id, census lemma code, census classes absent, random class)
    ("vcycle", census.LEVEL_V_TRI_3, (census.HAS_TRIANGLE, census.HAS_K3), "tf3"),
    ("crossingcycle", census.LEVEL_X_V_TRI_3, (census.HAS_TRIANGLE, census.HAS_K3, census.HAS_V), "vtf3"),
    ("nodragonfly", census.LEVEL_NO_DRAGONFLY, (census.HAS_K4, census.HAS_K3), "k4c3"),
    ("butterfly", census.LEVEL_NO_BUTTERFLY, (census.HAS_K4, census.HAS_K3), "k4c3"),
)


def _random_level_violations(lemma: str, cls: str) -> tuple[int, int]:
    graphs = viol = 0
    for p in RANDOM_PS:
        for g in random_corpus(cls, p):
            graphs += 1
            check = harness.SUITES[lemma][1]
            if not check(g, None, None)["ok"]:
                viol += 1
    return graphs, viol


def test_criterion_05_level_lemmas(census_flags, record_criterion):
    parts = []
    ok = True
    for lemma, code, absent, cls in LEVEL_LEMMAS:
        graphs, levels, viol, capped = _census_levels(census_flags, code, absent)
        rgraphs, rviol = _random_level_violations(lemma, cls)
        ok &= viol == 0 and capped == 0 and rviol == 0 and graphs > 0 and rgraphs == 2 * RANDOM_SURVIVORS
        parts.append(f"{lemma}: census {graphs}/{viol} random {rgraphs}/{rviol}")
    record_criterion(5, ok, "graphs/violations " + "; ".join(parts))
    assert ok


# 6 ---------------------------------------------------------------------------

def test_criterion_06_hajos_tightness(record_criterion):
    rows = []
    for k in range(2, 8):
        g = hajos_join(k)
        rows.append((k, is_in_class_Ck(g, 3, 10**8), clique_number(g)[0], exact_chromatic_number(g)[0]))
    ok = all(c3 and omega == k and chi == k + 1 for k, c3, omega, chi in rows)
    record_criterion(6, ok, "k=2..7 (k, C3, omega, chi): " + " ".join(f"{r}" for r in rows))
    assert ok


# 7 ---------------------------------------------------------------------------

def _c3_check(g: Graph) -> tuple[bool, bool]:
    """(bound and termination hold, falsified) for one graph, per component."""
    bound = max(K4_FREE_BOUND, clique_number(g)[0] + 1)
    comps = component_masks(g)
    for comp in comps:
        h, _ = induced_subgraph(g, iter_bits(comp))
        trace: list = []
        try:
            c = color_3cycle_free(h, verify=False, trace=trace)
        except FalsificationError:
            return False, True
        deletions = sum(1 for t in trace if t["step"] in ("lowdeg", "twin"))
        if not verify_coloring(h, c) or c.palette_size > bound or deletions > h.n:
            return False, False
    if len(comps) == 1:
        return True, False
    c = color_3cycle_free(g, verify=False)
    return verify_coloring(g, c) and c.palette_size <= bound, False


def test_criterion_07_three_cycle_free_coloring(census_flags, record_criterion):
    checked = bad = falsified = 0
    graphs = itertools.chain(census_graphs(census_flags, absent=(census.HAS_K3,)),
                             *(random_corpus("c3", p) for p in RANDOM_PS))
    for g in graphs:
        checked += 1
        good, fals = _c3_check(g)
        bad += not good
        falsified += fals
    ok = bad == 0 and falsified == 0
    record_criterion(7, ok, f"{checked} graphs (census + {2 * RANDOM_SURVIVORS} random), "
                            f"{bad} violations, {falsified} falsifications")
    assert ok


# 8 ---------------------------------------------------------------------------

SCOTT_GRAPHS = 1000
SCOTT_P = 0.35
SCOTT_SEED = 8


def scott_corpus():
    """1000 connected G(n, 0.35) samples with n cycling through 6..14."""
    counters = {n: 0 for n in range(6, 15)}
    for j in range(SCOTT_GRAPHS):
        n = 6 + j % 9
        while True:
            g = random_graph(n, SCOTT_P, SCOTT_SEED + n, counters[n])
            counters[n] += 1
            if is_connected(g):
                yield g
                break


def test_criterion_08_parity_level_inequality(record_criterion):
    graphs = roots = viol = 0
    for g in scott_corpus():
        graphs += 1
        chi = exact_chromatic_number(g)[0]
        for z in range(g.n):
            roots += 1
            if chi > harness.scott_bound(g, z):
                viol += 1
    ok = viol == 0 and graphs == SCOTT_GRAPHS
    record_criterion(8, ok, f"{graphs} connected graphs, {roots} roots, {viol} violations")
    assert ok


# 9 ---------------------------------------------------------------------------

def _two_colorable_by_exhaustion(g: Graph) -> bool:
    edges = list(g.edges())
    return any(all(bits[u] != bits[v] for u, v in edges) for bits in itertools.product((0, 1), repeat=g.n))


def test_criterion_09_exact_oracle(record_criterion):
    cases = []
    for m in range(1, 8):
        cases.append((f"C{2 * m + 1}", cycle_graph(2 * m + 1), 3))
    for n in range(1, 11):
        cases.append((f"K{n}", complete_graph(n), n))
    for sizes in ([1, 1], [2, 3], [3, 3], [1, 2, 3], [2, 2, 2], [3, 3, 3], [1, 1, 1, 1], [2, 2, 2, 2], [1, 2, 3, 4, 2]):
        cases.append((f"K{sizes}", complete_multipartite(sizes), len(sizes)))
    petersen = petersen_graph()
    cases.append(("Petersen", petersen, 3))
    failures = []
    for name, g, want in cases:
        chi, c = exact_chromatic_number(g)
        if chi != want or not verify_coloring(g, c):
            failures.append(name)
    # independent cross-check: no 2-coloring of Petersen among all 2^10 assignments
    if _two_colorable_by_exhaustion(petersen):
        failures.append("Petersen 2-coloring exhaustion")
    ok = not failures
    record_criterion(9, ok, f"{len(cases)} cases, Petersen 2-colorings exhausted, failures {failures}")
    assert ok


# 10 --------------------------------------------------------------------------

CAMPAIGNS = (
    ("2cycle", "enum:5"),
    ("scott", "random:12,0.3,100,7"),
    ("c3", "random:12,0.15,80,3"),
    ("crossingcycle", "random:10,0.2,80,5"),
    ("hajos", "builtin"),
)


def _campaign_text(theorem, source, jobs):
    buf = io.StringIO()
    harness.run_campaign(theorem, source, buf, jobs=jobs)
    return buf.getvalue()


def test_criterion_10_deterministic_reports(tmp_path, record_criterion):
    failures = []
    for theorem, source in CAMPAIGNS:
        a = _campaign_text(theorem, source, 1)
        b = _campaign_text(theorem, source, 1)
        c = _campaign_text(theorem, source, 2)
        if not (harness.strip_timestamps(a) == harness.strip_timestamps(b) == harness.strip_timestamps(c)):
            failures.append(f"{theorem} rerun")
        report = tmp_path / f"{theorem}.jsonl"
        report.write_text(a)
        replay = tmp_path / f"{theorem}.replay.jsonl"
        cli_main(["verify", "--replay", str(report), "--out", str(replay)])
        if harness.strip_timestamps(replay.read_text()) != harness.strip_timestamps(a):
            failures.append(f"{theorem} replay")
    ok = not failures
    record_criterion(10, ok, f"{len(CAMPAIGNS)} campaigns x (rerun, 2 workers, replay), failures {failures}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
