#!/usr/bin/env python3
"""Benchmark the jitted counting kernels against their pure-Python twins.

Run:  python benchmarks/bench_kernels.py [--repeat N]
Set GRAPHPOLY_NUMBA=0 to check what the pure path alone costs.
"""

import argparse
import time

from graphpoly import _kernels
from graphpoly.graphs import _min_code, generate, spanning_tree_count, induced_subgraph


def timeit(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def row(name, pure_s, jit_s):
    if jit_s is None:
        print(f"{name:34s} {pure_s * 1e3:10.2f} ms {'-':>12s} {'-':>8s}")
    else:
        print(
            f"{name:34s} {pure_s * 1e3:10.2f} ms {jit_s * 1e3:9.2f} ms "
            f"{pure_s / jit_s:7.1f}x"
        )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    have_jit = _kernels.NUMBA_ENABLED
    print(f"kernel backend: {_kernels.backend()}")
    print(f"{'kernel':34s} {'pure':>13s} {'numba':>12s} {'speedup':>8s}")

    g = generate("random_regular", 26, 4, seed=1)
    nbr = g.neighbor_masks()
    if have_jit:
        _kernels.independence_counts(nbr, g.n)  # compile
    pure, a1 = timeit(lambda: _kernels.independence_counts_py(nbr, g.n), args.repeat)
    jit = None
    if have_jit:
        jit, a2 = timeit(lambda: _kernels.independence_counts(nbr, g.n), args.repeat)
        assert a1 == a2
    row("independent-set counts (n=26 d=4)", pure, jit)

    g = generate("random_regular", 40, 3, seed=2)
    nbr = g.neighbor_masks()
    if have_jit:
        _kernels.connected_census(nbr, g.n, 6)
    pure, c1 = timeit(lambda: _kernels.connected_census_py(nbr, g.n, 6), args.repeat)
    jit = None
    if have_jit:
        jit, c2 = timeit(lambda: _kernels.connected_census(nbr, g.n, 6), args.repeat)
        assert sum(c1.values()) == sum(c2.values())
    row("connected census (n=40 d=3 k<=6)", pure, jit)

    g = generate("grid", 3, 6)
    edges = list(g.edges())  # 21 edges -> 2^21 subsets
    if have_jit:
        _kernels.signed_component_census(edges[:4], g.n)
    pure, s1 = timeit(
        lambda: _kernels.signed_component_census_py(edges[:16], g.n), args.repeat
    )
    jit = None
    if have_jit:
        jit, s2 = timeit(
            lambda: _kernels.signed_component_census(edges[:16], g.n), args.repeat
        )
        assert s1 == s2
    row("signed edge-subset census (2^16)", pure, jit)

    import random

    rng = random.Random(3)
    insts = []
    for _ in range(300):
        masks = [0] * 8
        for i in range(8):
            for j in range(i + 1, 8):
                if rng.random() < 0.5:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        insts.append(masks)
    if have_jit:
        _kernels.min_code(8, insts[0], _min_code)
    pure, m1 = timeit(lambda: [_min_code(8, m) for m in insts], args.repeat)
    jit = None
    if have_jit:
        jit, m2 = timeit(
            lambda: [_kernels.min_code(8, m, _min_code) for m in insts], args.repeat
        )
        assert m1 == m2
    row("canonical min-code (300 x n=8)", pure, jit)

    g = generate("grid", 3, 4)
    nbr = g.neighbor_masks()
    masks = list(_kernels.iter_connected_masks(nbr, g.n, g.n))

    def tau(mask):
        sub, _ = induced_subgraph(g, mask)
        return spanning_tree_count(sub)

    if have_jit:
        _kernels.spanning_tree_counts(nbr, g.n, masks[:4], tau)
    pure, t1 = timeit(lambda: [tau(m) for m in masks], args.repeat)
    jit = None
    if have_jit:
        jit, t2 = timeit(
            lambda: _kernels.spanning_tree_counts(nbr, g.n, masks, tau), args.repeat
        )
        assert t1 == t2
    row(f"spanning-tree counts ({len(masks)} sets)", pure, jit)


if __name__ == "__main__":
    main()
