"""Compiled kernels against the pure-Python fallback.

Each workload runs in a fresh interpreter, once with numba and once with
CHORDCYCLE_NO_NUMBA=1. The compiled run is warmed up first so JIT time is
reported separately.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from chordcycle import _accel
from chordcycle.coloring import exact_chromatic_number
from chordcycle.detectors import PatternName, find_induced_pattern, find_k_chord_cycle
from chordcycle.generators import random_graph

workload, repeat = sys.argv[1], int(sys.argv[2])
graphs = [random_graph(11, 0.4, 1, i) for i in range(40)]

def cycles():
    for g in graphs:
        for k in range(4):
            find_k_chord_cycle(g, k)

def coloring():
    for g in graphs:
        exact_chromatic_number(g)

def patterns():
    for g in graphs:
        for p in (PatternName.DIAMOND, PatternName.DRAGONFLY, PatternName.BUTTERFLY):
            find_induced_pattern(g, p)

fn = {"cycles": cycles, "coloring": coloring, "patterns": patterns}[workload]
t0 = time.perf_counter()
fn()
warm = time.perf_counter() - t0
best = float("inf")
for _ in range(repeat):
    t0 = time.perf_counter()
    fn()
    best = min(best, time.perf_counter() - t0)
print(json.dumps({"numba": _accel.NUMBA_ENABLED, "first": warm, "best": best}))
"""


def run(workload: str, repeat: int, numba: bool) -> dict:
    env = dict(os.environ)
    env.pop("CHORDCYCLE_NO_NUMBA", None)
    if not numba:
        env["CHORDCYCLE_NO_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKER, workload, str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':<10} {'numba s':>10} {'first call s':>13} {'python s':>10} {'speedup':>9}")
    for workload in ("cycles", "coloring", "patterns"):
        fast = run(workload, args.repeat, True)
        slow = run(workload, 1, False)
        print(f"{workload:<10} {fast['best']:>10.4f} {fast['first']:>13.3f} {slow['best']:>10.4f} "
              f"{slow['best'] / fast['best']:>8.1f}x")


if __name__ == "__main__":
    main()
