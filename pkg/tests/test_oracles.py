import math
import random
from fractions import Fraction

import pytest

from graphpoly import (
    BudgetExceededError,
    Graph,
    brute_force_ind,
    brute_force_independence_coeffs,
    exact_Z_eval,
    generate,
    poly_roots,
)
from graphpoly.graphs import disjoint_union, full_mask
from graphpoly.oracles import are_isomorphic, count_proper_colorings
from graphpoly.polys import poly_eval, poly_mul

from corpus import random_bounded_degree_graphs


def _binom(n, k):
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# coefficients

def test_brute_coeffs_complete():
    for k in (1, 3, 5, 8):
        assert brute_force_independence_coeffs(generate("complete", k)) == [1, k]


def test_brute_coeffs_empty_graph():
    for k in (1, 4, 6):
        g = Graph.from_edges(k, [])
        assert brute_force_independence_coeffs(g) == [_binom(k, j) for j in range(k + 1)]


def test_brute_coeffs_p3():
    assert brute_force_independence_coeffs(generate("path", 3)) == [1, 3, 1]


def test_brute_coeffs_cap():
    with pytest.raises(BudgetExceededError) as exc:
        brute_force_independence_coeffs(Graph.from_edges(31, []))
    assert "compute_alpha" in str(exc.value)


def test_alpha1_alpha2_formulas():
    for g in random_bounded_degree_graphs(range(4, 13), 15, max_deg=6, seed=17):
        coeffs = brute_force_independence_coeffs(g)
        coeffs += [0] * (3 - len(coeffs))
        assert coeffs[1] == g.n
        assert coeffs[2] == _binom(g.n, 2) - g.edge_count


def test_multiplicativity_convolution():
    g1 = generate("cycle", 5)
    g2 = generate("path", 4)
    u = disjoint_union(g1, g2)
    assert brute_force_independence_coeffs(u) == poly_mul(
        brute_force_independence_coeffs(g1), brute_force_independence_coeffs(g2)
    )


# ---------------------------------------------------------------------------
# evaluation

def test_exact_Z_single_vertex():
    assert exact_Z_eval(Graph.from_edges(1, []), 0.5) == 1.5


def test_exact_Z_k3():
    assert abs(exact_Z_eval(generate("complete", 3), complex(0.1)) - 1.3) < 1e-12


def test_exact_Z_multiplicative():
    g1 = generate("cycle", 4)
    g2 = generate("star", 3)
    lam = complex(0.3, -0.2)
    z = exact_Z_eval(disjoint_union(g1, g2), lam)
    assert abs(z - exact_Z_eval(g1, lam) * exact_Z_eval(g2, lam)) < 1e-12 * abs(z)


def test_exact_Z_matches_coefficient_polynomial():
    rng = random.Random(5)
    for g in random_bounded_degree_graphs(range(6, 19), 12, max_deg=5, seed=23):
        coeffs = brute_force_independence_coeffs(g)
        for _ in range(3):
            lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(lam) > 2:
                continue
            z1 = exact_Z_eval(g, lam)
            z2 = poly_eval(coeffs, lam)
            assert abs(z1 - z2) <= 1e-10 * max(1.0, abs(z2))


def test_exact_Z_rational_recursion_identity():
    # Z_G = Z_{G-v} + lam * Z_{G minus N[v]}, exactly, in rational arithmetic
    g = generate("random_regular", 10, 3, seed=11)
    lam = Fraction(3, 7)
    nbr = g.neighbor_masks()
    from graphpoly.graphs import induced_subgraph

    v = 0
    rest = full_mask(g.n) & ~(1 << v)
    g_minus_v, _ = induced_subgraph(g, rest)
    g_minus_nv, _ = induced_subgraph(g, full_mask(g.n) & ~(nbr[v] | 1 << v))
    assert exact_Z_eval(g, lam) == exact_Z_eval(g_minus_v, lam) + lam * exact_Z_eval(
        g_minus_nv, lam
    )


# ---------------------------------------------------------------------------
# induced copy counting

def test_ind_examples():
    k3 = generate("complete", 3)
    i2 = Graph.from_edges(2, [])
    e = generate("path", 2)
    assert brute_force_ind(i2, k3) == 0
    assert brute_force_ind(e, k3) == 3


def test_ind_disjoint_edge_identity():
    # ind(e+I1, G) = (n-2) ind(e, G) - 2 ind(P3, G) - 3 ind(K3, G)
    e_plus_i1 = Graph.from_edges(3, [(0, 1)])
    e = generate("path", 2)
    p3 = generate("path", 3)
    t = generate("complete", 3)
    for g in random_bounded_degree_graphs(range(5, 11), 8, max_deg=9, seed=41):
        lhs = brute_force_ind(e_plus_i1, g)
        rhs = (
            (g.n - 2) * brute_force_ind(e, g)
            - 2 * brute_force_ind(p3, g)
            - 3 * brute_force_ind(t, g)
        )
        assert lhs == rhs


def test_are_isomorphic_basic():
    assert are_isomorphic(generate("cycle", 5), generate("cycle", 5))
    assert not are_isomorphic(generate("cycle", 6), generate("path", 6))


def test_count_proper_colorings_triangle():
    k3 = generate("complete", 3)
    assert [count_proper_colorings(k3, q) for q in range(5)] == [0, 0, 0, 6, 24]


# ---------------------------------------------------------------------------
# roots

def test_roots_linear():
    for k in (1, 2, 7):
        (root,) = poly_roots([1, k])
        assert abs(root - (-1 / k)) < 1e-12


def test_roots_double():
    roots = poly_roots([1, 2, 1])
    assert all(abs(z + 1) < 1e-4 for z in roots)
    assert len(roots) == 2


def test_roots_p3():
    roots = sorted(poly_roots([1, 3, 1]), key=lambda z: -z.real)
    assert abs(roots[0] - (-0.3819660112501051)) < 1e-9
    assert abs(roots[1] - (-2.618033988749895)) < 1e-9


def test_roots_sum_product_invariants():
    rng = random.Random(7)
    for _ in range(10):
        d = rng.randrange(2, 9)
        coeffs = [rng.randrange(-9, 10) for _ in range(d)] + [rng.randrange(1, 6)]
        if coeffs[0] == 0:
            coeffs[0] = 1
        roots = poly_roots(coeffs)
        s = sum(roots)
        p = 1
        for z in roots:
            p *= z
        assert abs(s - (-coeffs[-2] / coeffs[-1])) <= 1e-8 * max(1.0, abs(s))
        expect_p = (-1) ** d * coeffs[0] / coeffs[-1]
        assert abs(p - expect_p) <= 1e-8 * max(1.0, abs(expect_p))


def test_roots_degree_zero_rejected():
    with pytest.raises(ValueError):
        poly_roots([5])
