import cmath
import math
import random
from fractions import Fraction

import pytest

from graphpoly import (
    Graph,
    certify_zero_free,
    exact_Z_eval,
    generate,
    lambda_c,
    min_root_modulus,
    ratio,
    shearer_radius,
)
from graphpoly.certify import (
    SURVEY_CSV_HEADER,
    binary_tree,
    family_root_survey,
    zero_free_radius,
)
from graphpoly.graphs import bits, full_mask, induced_subgraph, max_degree

from corpus import random_bounded_degree_graphs


# ---------------------------------------------------------------------------
# constants

def test_shearer_values():
    assert shearer_radius(2) == Fraction(1, 4)
    assert shearer_radius(3) == Fraction(4, 27)
    assert shearer_radius(6) == Fraction(3125, 46656)
    with pytest.raises(ValueError):
        shearer_radius(1)


def test_lambda_c_values():
    assert lambda_c(3) == Fraction(4)
    assert lambda_c(4) == Fraction(27, 16)
    assert lambda_c(5) == Fraction(256, 243)
    with pytest.raises(ValueError):
        lambda_c(2)


def test_shearer_below_lambda_c():
    for d in range(3, 21):
        assert shearer_radius(d) < lambda_c(d)


def test_zero_free_radius_low_degrees():
    assert zero_free_radius(0) == 1
    assert zero_free_radius(1) == Fraction(1, 2)
    assert zero_free_radius(4) == shearer_radius(4)


# ---------------------------------------------------------------------------
# ratios

def test_ratio_single_vertex():
    g = Graph.from_edges(1, [])
    assert ratio(g, 0, 0.7) == 0.7


def test_ratio_k2():
    g = generate("path", 2)
    lam = complex(0.3, 0.1)
    got = ratio(g, 0, lam)
    assert abs(got - lam / (1 + lam)) < 1e-14
    assert abs(ratio(g, 1, lam) - got) < 1e-14


def test_ratio_identity_with_oracle():
    # Z_G = Z_{G-v} * (1 + R_{G,v})
    rng = random.Random(11)
    for g in random_bounded_degree_graphs(
        range(5, 13), 8, max_deg=5, seed=67, connected_only=True
    ):
        lam = complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1))
        v = rng.randrange(g.n)
        r = ratio(g, v, lam)
        z = exact_Z_eval(g, lam)
        g_minus_v, _ = induced_subgraph(g, full_mask(g.n) & ~(1 << v))
        z_minus = exact_Z_eval(g_minus_v, lam)
        assert abs(z - z_minus * (1 + r)) <= 1e-10 * max(1.0, abs(z))


def test_ratio_telescoping_identity():
    g = generate("random_regular", 10, 3, seed=19)
    lam = complex(0.08, -0.03)
    v0 = 0
    r = ratio(g, v0, lam)
    nbr = g.neighbor_masks()
    cur = full_mask(g.n) & ~(1 << v0)
    prod = complex(1)
    for u in bits(nbr[v0]):
        sub, verts = induced_subgraph(g, cur)
        prod *= 1 + ratio(sub, verts.index(u), lam)
        cur &= ~(1 << u)
    assert abs(lam / r - prod) < 1e-10 * abs(prod)


# ---------------------------------------------------------------------------
# certificates

def test_certify_tree_at_90_percent():
    g = binary_tree(3)
    lam = 0.9 * float(shearer_radius(3))
    cert = certify_zero_free(g, lam)
    assert cert.ok
    assert cert.max_ratio_modulus_nonroot < cert.delta_cap
    assert cert.visited_states > 0


def test_certify_k2_at_root():
    cert = certify_zero_free(generate("path", 2), -0.5)
    assert not cert.ok
    assert cert.root_ratio == -1
    assert cert.failure_witness is not None


def test_certify_lambda_zero():
    cert = certify_zero_free(generate("cycle", 7), 0)
    assert cert.ok
    assert cert.max_ratio_modulus_nonroot == 0.0
    assert cert.root_ratio == 0


def test_certify_boundary_flag():
    g = generate("cycle", 6)
    cert = certify_zero_free(g, float(shearer_radius(2)))
    assert cert.boundary
    assert cert.ok


def test_certify_tight_boundary_cases():
    # negative real axis is where the disk bound is tight; deep binary trees
    # and long paths approach the cap from below but must stay strictly ok
    lam3 = -float(shearer_radius(3))
    prev = 0.0
    for depth in (2, 3, 4):
        cert = certify_zero_free(binary_tree(depth), lam3)
        assert cert.ok and cert.boundary
        assert prev < cert.max_ratio_modulus_nonroot < 1 / 3
        prev = cert.max_ratio_modulus_nonroot
    for n in (6, 12, 18):
        cert = certify_zero_free(generate("path", n), -0.25)
        assert cert.ok
        assert cert.max_ratio_modulus_nonroot < 0.5


def test_certify_requires_connected():
    with pytest.raises(ValueError):
        certify_zero_free(Graph.from_edges(4, [(0, 1), (2, 3)]), 0.1)


def test_certify_ok_on_disk_grid():
    # inside the closed disk every instance certificate must come out ok
    graphs = [
        generate("cycle", 9),
        binary_tree(2),
        generate("random_regular", 12, 3, seed=77),
        generate("grid", 3, 4),
    ]
    for g in graphs:
        rad = float(shearer_radius(max_degree(g)))
        for i in range(8):
            lam = rad * (0.4 + 0.6 * (i % 3) / 2) * cmath.exp(2j * math.pi * i / 8)
            cert = certify_zero_free(g, lam)
            assert cert.ok, (g.n, lam)
            if g.n <= 14:
                assert abs(exact_Z_eval(g, lam)) > 0


def test_certify_ok_implies_nonzero_oracle():
    rng = random.Random(23)
    for g in random_bounded_degree_graphs(
        range(4, 12), 10, max_deg=4, seed=13, connected_only=True
    ):
        lam = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
        cert = certify_zero_free(g, lam)
        if cert.ok:
            assert abs(exact_Z_eval(g, lam)) > 0


# ---------------------------------------------------------------------------
# root surveys

def test_min_root_modulus_k2():
    assert abs(min_root_modulus(generate("path", 2)) - 0.5) < 1e-12


def test_min_root_modulus_respects_shearer(corpus_core):
    for _, g in corpus_core:
        d = max_degree(g)
        if g.n > 12 or d < 2 or d > 3:
            continue
        assert min_root_modulus(g) >= float(shearer_radius(d)) - 1e-9


def test_binary_tree_sequence_decreasing():
    mods = [min_root_modulus(binary_tree(d)) for d in (1, 2, 3)]
    assert mods[0] > mods[1] > mods[2]
    assert mods[-1] >= float(shearer_radius(3)) - 1e-9


def test_family_survey_rows():
    rows = family_root_survey("trees", max_n=12, delta=3, seed=1)
    assert rows
    header_fields = SURVEY_CSV_HEADER.split(",")
    assert len(rows[0].csv().split(",")) == len(header_fields)
    for row in rows:
        assert row.min_modulus >= float(shearer_radius(3)) - 1e-9
        assert row.delta <= 3


def test_family_survey_paths_cycles():
    for fam in ("paths", "cycles"):
        rows = family_root_survey(fam, max_n=10)
        for row in rows:
            assert row.min_modulus >= 0.25 - 1e-9  # max degree 2 bound
