"""Compiled vs pure-Python elimination kernels.

Dense random matrices exercise the kernels directly.  Boundary matrices of
covers go through the shared unit-pivot presolve first, so they mostly
measure that step; both are reported.

    python3 benchmarks/bench_kernels.py [--sizes 20 40 80] [--repeat 3]
"""

import argparse
import random
import statistics
import time

from salvetti import kernels
from salvetti.arrangement import enumerate_faces, load_arrangement
from salvetti.covers import build_cover, crossing_labeling
from salvetti.invariants import boundary_matrix
from salvetti.model import build_model
from salvetti.oriented_system import OrientedSystem


def timed(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def dense_case(n, seed):
    rng = random.Random(seed)
    # sparse-ish small entries, rank deficient by construction
    rows = [[rng.choice((0, 0, 0, 1, -1, 2, -2, 3)) for _ in range(n)] for _ in range(n - 2)]
    rows.append([a + b for a, b in zip(rows[0], rows[1])])
    rows.append([2 * a - b for a, b in zip(rows[2], rows[3])])
    return rows


def corpus_case(path, k):
    poset = enumerate_faces(load_arrangement(path))
    s = OrientedSystem(poset)
    m = build_model(poset, build_cover(s, crossing_labeling(s, k)))
    return boundary_matrix(m.w_rho, 2)


def row(name, fn, repeat):
    out_c, tc = timed(lambda: fn("cython"), repeat)
    out_p, tp = timed(lambda: fn("python"), repeat)
    if out_c != out_p:
        raise SystemExit(f"{name}: backends disagree")
    print(f"{name:<34} {tc * 1e3:>10.2f} {tp * 1e3:>10.2f} {tp / tc if tc else float('inf'):>8.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80, 120])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        raise SystemExit("compiled kernels not built; run pip install -e . --no-build-isolation")
    print(f"{'case':<34} {'cython ms':>10} {'python ms':>10} {'speedup':>9}")
    for n in args.sizes:
        rows = dense_case(n, args.seed)
        row(f"dense rank {n}x{n}", lambda b: kernels.dense_rank(rows, n, b), args.repeat)
        row(f"dense smith {n}x{n}", lambda b: kernels.dense_smith(rows, n, b), args.repeat)
    for name, path, k in [("d_two_lines", "corpus/d_two_lines.arr", 3), ("f_three_generic", "corpus/f_three_generic.arr", 3)]:
        rows, ncols = corpus_case(path, k)
        label = f"{name} crossing:{k} d2 {len(rows)}x{ncols}"
        row(label, lambda b: kernels.smith_invariants(rows, ncols, b), args.repeat)


if __name__ == "__main__":
    main()
