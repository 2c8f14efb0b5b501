"""Deterministic graph corpora shared by the test suite."""

from __future__ import annotations

import random
from itertools import combinations

from graphpoly import Graph, canonical_key, generate, is_connected, max_degree
from graphpoly.certify import binary_tree


def all_connected_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected n-vertex graphs."""
    pairs = list(combinations(range(n), 2))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = Graph.from_edges(n, edges)
        if not is_connected(g):
            continue
        key = canonical_key(g)
        if key in seen:
            continue
        seen.add(key)
        out.append(g)
    return out


def _er_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def sampled_connected_graphs(n: int, count: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    seen = set()
    out = []
    probs = [0.25, 0.35, 0.5, 0.65]
    attempts = 0
    while len(out) < count and attempts < 50_000:
        attempts += 1
        g = _er_graph(n, probs[attempts % len(probs)], rng)
        if not is_connected(g):
            continue
        key = canonical_key(g)
        if key in seen:
            continue
        seen.add(key)
        out.append(g)
    return out


def random_bounded_degree_graphs(
    n_range, count: int, max_deg: int, seed: int, connected_only: bool = False
) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    ns = list(n_range)
    attempts = 0
    while len(out) < count and attempts < 100_000:
        attempts += 1
        n = ns[attempts % len(ns)]
        g = _er_graph(n, min(0.9, 2.6 / n), rng)
        if max_degree(g) > max_deg:
            continue
        if connected_only and not is_connected(g):
            continue
        out.append(g)
    return out


def degree_capped_tree(n: int, cap: int, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = []
    degree = [0] * n
    for v in range(1, n):
        u = rng.choice([u for u in range(v) if degree[u] < cap])
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1
    return Graph.from_edges(n, edges)


def big_corpus() -> list[Graph]:
    """200 graphs: every connected class up to 5 vertices, sampled connected
    classes on 6..8, random graphs up to 12 vertices with max degree 4."""
    out = []
    for n in range(1, 6):
        out.extend(all_connected_graphs(n))  # 31
    out.extend(sampled_connected_graphs(6, 30, seed=601))
    out.extend(sampled_connected_graphs(7, 35, seed=701))
    out.extend(sampled_connected_graphs(8, 35, seed=801))
    out.extend(random_bounded_degree_graphs(range(9, 13), 69, max_deg=4, seed=901))
    assert len(out) == 200
    return out


def eval_corpus() -> list[tuple[str, Graph]]:
    """50 graphs with n <= 20 and max degree in {2, 3, 4}."""
    named = []
    for n in (6, 10, 14, 18, 20):
        named.append((f"path_{n}", generate("path", n)))
    for n in (5, 8, 11, 14, 17, 20):
        named.append((f"cycle_{n}", generate("cycle", n)))
    named.append(("btree_2", binary_tree(2)))
    named.append(("btree_3", binary_tree(3)))
    for i, n in enumerate((10, 13, 16, 19)):
        named.append((f"ctree_{n}", degree_capped_tree(n, 3, seed=40 + i)))
    for i, n in enumerate((8, 10, 12, 14, 16, 18, 20)):
        named.append((f"reg3_{n}", generate("random_regular", n, 3, seed=50 + i)))
    for i, n in enumerate((10, 13, 15, 20)):
        named.append((f"reg4_{n}", generate("random_regular", n, 4, seed=60 + i)))
    for rows, cols in ((2, 5), (2, 8), (3, 4), (3, 6), (4, 4), (4, 5), (2, 10)):
        named.append((f"grid_{rows}x{cols}", generate("grid", rows, cols)))
    rnd = random_bounded_degree_graphs(
        range(12, 21), 15, max_deg=4, seed=777, connected_only=True
    )
    for i, g in enumerate(rnd):
        named.append((f"rand_{g.n}_{i}", g))
    named = [(gid, g) for gid, g in named if 2 <= max_degree(g) <= 4][:50]
    assert len(named) == 50
    return named


def core_corpus() -> list[tuple[str, Graph]]:
    """Small named graphs (n <= 12) for the chromatic and polymer checks."""
    named = []
    for n in range(2, 11):
        named.append((f"path_{n}", generate("path", n)))
    for n in range(3, 11):
        named.append((f"cycle_{n}", generate("cycle", n)))
    for n in range(2, 7):
        named.append((f"complete_{n}", generate("complete", n)))
    for k in range(2, 6):
        named.append((f"star_{k}", generate("star", k)))
    named.append(("kbip_2_3", generate("complete_bipartite", 2, 3)))
    named.append(("kbip_3_3", generate("complete_bipartite", 3, 3)))
    named.append(("grid_2x3", generate("grid", 2, 3)))
    named.append(("grid_3x3", generate("grid", 3, 3)))
    named.append(("grid_2x5", generate("grid", 2, 5)))
    named.append(("grid_3x4", generate("grid", 3, 4)))
    named.append(("btree_1", binary_tree(1)))
    named.append(("btree_2", binary_tree(2)))
    named.append(("reg3_10", generate("random_regular", 10, 3, seed=5)))
    named.append(("reg3_12", generate("random_regular", 12, 3, seed=6)))
    for i, g in enumerate(
        random_bounded_degree_graphs(range(5, 12), 6, max_deg=4, seed=333)
    ):
        named.append((f"rand_{g.n}_{i}", g))
    return named
