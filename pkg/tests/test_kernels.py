"""Jitted kernels and their pure-Python twins must agree exactly."""

import random

import pytest

from graphpoly import _kernels
from graphpoly.graphs import Graph, _min_code, spanning_tree_count, induced_subgraph


def _random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


needs_numba = pytest.mark.skipif(
    not _kernels.NUMBA_ENABLED, reason="numba backend disabled or unavailable"
)


def test_backend_reports():
    assert _kernels.backend() in ("numba", "python")


@needs_numba
def test_independence_counts_equivalence():
    rng = random.Random(1)
    for _ in range(15):
        n = rng.randrange(1, 16)
        g = _random_graph(n, 0.35, rng)
        nbr = g.neighbor_masks()
        assert _kernels.independence_counts(nbr, n) == _kernels.independence_counts_py(
            nbr, n
        )


@needs_numba
def test_connected_census_equivalence():
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randrange(2, 14)
        g = _random_graph(n, 0.3, rng)
        nbr = g.neighbor_masks()
        kmax = rng.randrange(1, 7)
        jit = _kernels.connected_census(nbr, n, kmax)
        pure = {
            (key >> 48, key & ((1 << 48) - 1)): cnt
            for key, cnt in _kernels.connected_census_py(nbr, n, kmax).items()
        }
        assert jit == pure


@needs_numba
def test_signed_component_census_equivalence():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randrange(2, 8)
        g = _random_graph(n, 0.5, rng)
        edges = list(g.edges())
        assert _kernels.signed_component_census(
            edges, n
        ) == _kernels.signed_component_census_py(edges, n)


@needs_numba
def test_min_code_equivalence():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randrange(2, 9)
        g = _random_graph(n, rng.choice([0.2, 0.5, 0.8]), rng)
        nbr = g.neighbor_masks()
        assert _kernels.min_code(n, nbr, _min_code) == _min_code(n, nbr)


@needs_numba
def test_spanning_counts_equivalence():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randrange(2, 12)
        g = _random_graph(n, 0.4, rng)
        masks = [m for m in _kernels.iter_connected_masks(g.neighbor_masks(), n, n)]

        def tau(mask):
            sub, _ = induced_subgraph(g, mask)
            return spanning_tree_count(sub)

        jit = _kernels.spanning_tree_counts(g.neighbor_masks(), n, masks, tau)
        assert jit == [tau(m) for m in masks]


def test_pure_iteration_unbounded_width():
    # sets wider than 64 bits only run on the pure path
    g = Graph.from_edges(70, [(i, i + 1) for i in range(69)])
    nbr = g.neighbor_masks()
    masks = list(_kernels.iter_connected_masks(nbr, 70, 2))
    assert len(masks) == 70 + 69
