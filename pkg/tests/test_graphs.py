import itertools
import json
import random

import pytest

from graphpoly import (
    BudgetExceededError,
    Graph,
    GraphParseError,
    canonical_key,
    connected_components,
    generate,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    is_connected,
    max_degree,
    parse_edge_list,
    spanning_tree_count,
)
from graphpoly.graphs import bits, full_mask, mask_of, permute
from graphpoly.oracles import are_isomorphic

from corpus import all_connected_graphs


def _all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


# ---------------------------------------------------------------------------
# parsing

def test_parse_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3
    assert [g.degree(v) for v in range(3)] == [1, 2, 1]


def test_parse_declared_n_and_comments():
    g = parse_edge_list("# a comment\nn 4\n0 1  # trailing\n")
    assert g.n == 4
    assert g.edge_count == 1
    assert sum(1 for c in connected_components(g) if bin(c).count("1") == 1) == 2


def test_parse_self_loop_rejected():
    with pytest.raises(GraphParseError) as exc:
        parse_edge_list("0 0")
    assert "line 1" in str(exc.value)


def test_parse_dedup_and_errors():
    assert parse_edge_list("0 1\n1 0\n0 1").edge_count == 1
    with pytest.raises(GraphParseError):
        parse_edge_list("0 x")
    with pytest.raises(GraphParseError):
        parse_edge_list("n 2\n0 5")


def test_json_roundtrip():
    g = generate("grid", 2, 3)
    g2 = graph_from_json(graph_to_json(g))
    assert g == g2
    obj = json.loads(graph_to_json(g))
    assert set(obj) == {"n", "edges"}


# ---------------------------------------------------------------------------
# degrees, induced subgraphs

def test_max_degree_examples():
    assert max_degree(generate("complete", 4)) == 3
    assert max_degree(Graph.from_edges(5, [])) == 0
    assert max_degree(generate("star", 6)) == 6


def test_induced_subgraph_examples():
    k4 = generate("complete", 4)
    empty, verts = induced_subgraph(k4, 0)
    assert empty.n == 0 and verts == []
    tri, _ = induced_subgraph(k4, mask_of([0, 2, 3]))
    assert tri.edge_count == 3
    c5 = generate("cycle", 5)
    p3, _ = induced_subgraph(c5, mask_of([1, 2, 3]))
    assert sorted(p3.degree(v) for v in range(3)) == [1, 1, 2]


def test_induced_subgraph_identity(corpus_core):
    for _, g in corpus_core[:10]:
        sub, verts = induced_subgraph(g, full_mask(g.n))
        assert sub == g
        assert verts == list(range(g.n))


def test_induced_subgraph_out_of_range():
    with pytest.raises(ValueError):
        induced_subgraph(generate("path", 3), mask_of([0, 5]))


# ---------------------------------------------------------------------------
# canonical keys

def test_canonical_key_isomorphic_p3():
    a = parse_edge_list("0 1\n1 2")
    b = parse_edge_list("1 0\n0 2")  # path 1-0-2
    assert canonical_key(a) == canonical_key(b)


def test_canonical_key_p3_vs_k3():
    assert canonical_key(generate("path", 3)) != canonical_key(generate("complete", 3))


def test_canonical_key_class_count_n4():
    # count classes two ways: via keys and via the pairwise isomorphism oracle
    graphs = list(_all_graphs(4))
    keys = {canonical_key(g) for g in graphs}
    reps = []
    for g in graphs:
        if not any(are_isomorphic(g, r) for r in reps):
            reps.append(g)
    assert len(keys) == len(reps) == 11


@pytest.mark.parametrize("n", [2, 3, 4])
def test_canonical_invariance_exhaustive(n):
    for g in _all_graphs(n):
        key = canonical_key(g)
        for perm in itertools.permutations(range(n)):
            assert canonical_key(permute(g, perm)) == key


def test_canonical_invariance_n5_all_graphs_sampled_perms():
    rng = random.Random(0)
    perms = list(itertools.permutations(range(5)))
    for g in _all_graphs(5):
        key = canonical_key(g)
        for perm in rng.sample(perms, 8):
            assert canonical_key(permute(g, perm)) == key


def test_canonical_invariance_n6_sampled():
    rng = random.Random(1)
    for _ in range(60):
        edges = [e for e in itertools.combinations(range(6), 2) if rng.random() < 0.5]
        g = Graph.from_edges(6, edges)
        key = canonical_key(g)
        perm = list(range(6))
        rng.shuffle(perm)
        assert canonical_key(permute(g, perm)) == key


def test_canonical_key_matches_isomorphism_n_le_5():
    for n in (3, 4, 5):
        graphs = list(_all_graphs(n)) if n < 5 else [g for g in _all_graphs(5)][::7]
        for i, g1 in enumerate(graphs):
            for g2 in graphs[i + 1 :]:
                same_key = canonical_key(g1) == canonical_key(g2)
                assert same_key == are_isomorphic(g1, g2)


def test_canonical_cap():
    with pytest.raises(BudgetExceededError):
        canonical_key(generate("path", 11))


# ---------------------------------------------------------------------------
# connectivity

def test_connectivity_examples():
    assert is_connected(Graph.from_edges(1, []))
    two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert len(connected_components(two_edges)) == 2
    assert is_connected(generate("cycle", 6))
    assert len(connected_components(generate("cycle", 6))) == 1
    assert not is_connected(Graph.from_edges(0, []))
    assert connected_components(Graph.from_edges(0, [])) == []


def test_components_partition(corpus_core):
    for _, g in corpus_core:
        comps = connected_components(g)
        assert sum(comps) == full_mask(g.n)  # disjoint masks sum to the union
        for comp in comps:
            sub, _ = induced_subgraph(g, comp)
            assert is_connected(sub)


# ---------------------------------------------------------------------------
# spanning trees

def _spanning_tree_brute(g):
    n, edges = g.n, list(g.edges())
    if n == 1:
        return 1
    count = 0
    for subset in itertools.combinations(edges, n - 1):
        if is_connected(Graph.from_edges(n, subset)):
            count += 1
    return count


def test_spanning_tree_examples():
    assert spanning_tree_count(generate("random_tree", 8, seed=4)) == 1
    assert spanning_tree_count(generate("complete", 3)) == 3
    assert spanning_tree_count(generate("complete", 4)) == 16
    assert _spanning_tree_brute(generate("complete", 4)) == 16
    assert spanning_tree_count(Graph.from_edges(4, [(0, 1), (2, 3)])) == 0


def test_spanning_tree_vs_brute_small():
    for n in range(1, 6):
        for g in all_connected_graphs(n):
            assert spanning_tree_count(g) == _spanning_tree_brute(g)
    rng = random.Random(3)
    graphs6 = [g for g in all_connected_graphs(6)]
    for g in rng.sample(graphs6, 25):
        assert spanning_tree_count(g) == _spanning_tree_brute(g)


# ---------------------------------------------------------------------------
# generators

def test_generators():
    assert generate("path", 3).edge_count == 2
    c4 = generate("cycle", 4)
    assert c4.edge_count == 4 and all(c4.degree(v) == 2 for v in range(4))
    g1 = generate("random_regular", 10, 3, seed=7)
    g2 = generate("random_regular", 10, 3, seed=7)
    assert g1 == g2
    assert all(g1.degree(v) == 3 for v in range(10))
    with pytest.raises(ValueError):
        generate("random_regular", 5, 3, seed=1)
    t = generate("random_tree", 9, seed=2)
    assert t.edge_count == 8 and is_connected(t)
    assert generate("grid", 3, 4).n == 12
    assert generate("complete_bipartite", 2, 3).edge_count == 6


def test_bits_helpers():
    assert list(bits(0b1011)) == [0, 1, 3]
    assert mask_of([0, 1, 3]) == 0b1011
