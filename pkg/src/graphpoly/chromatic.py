"""Chromatic polynomials, the random cluster sum, and the polymer route.

The chromatic polynomial comes from deletion-contraction with memoization on
canonical minors. The random cluster sum over edge subsets provides the same
coefficients through a completely different route (signed component census).
Rescaled as q^n chi(1/q), the polynomial equals a polymer partition sum:
connected vertex sets of size >= 2 carry weights from signed connected
edge-subset counts, and families of pairwise disjoint polymers multiply.
A per-vertex weighted-sum condition certifies that the partition sum cannot
vanish; bounding the weights by spanning-tree counts turns the condition
into a tree generating function inequality, which is what yields the
6.91 * max-degree zero-free disk for chromatic roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import _kernels
from .errors import BudgetExceededError, OutsideCertifiedRegionError
from .graphs import (
    CANONICAL_CAP,
    Graph,
    bits,
    canonical_key,
    connected_components,
    induced_subgraph,
    is_connected,
    max_degree,
    spanning_tree_count,
)
from .interpolation import (
    ApproxCertificate,
    DELTA_FLOOR,
    evaluate_truncated,
    log_taylor,
    truncation_order,
)
from .oracles import poly_roots
from .polys import poly_add, poly_eval, poly_mul, poly_sub, trim

CHROMATIC_RADIUS_FACTOR = 6.91
RANDOM_CLUSTER_EDGE_CAP = 22


# ---------------------------------------------------------------------------
# exact chromatic polynomial

def _poly_q_power(k: int) -> list[int]:
    return [0] * k + [1]

def _poly_q_qminus1_pow(c: int, e: int) -> list[int]:
    # q^c * (q-1)^e
    out = _poly_q_power(c)
    for _ in range(e):
        out = poly_mul(out, [-1, 1])
    return out


def _contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge v into u, drop v, relabel; parallel edges collapse."""
    edges = set()
    for a, b in g.edges():
        if a == v:
            a = u
        if b == v:
            b = u
        if a == b:
            continue
        a2 = a - 1 if a > v else a
        b2 = b - 1 if b > v else b
        edges.add((min(a2, b2), max(a2, b2)))
    return Graph.from_edges(g.n - 1, sorted(edges))


def _delete_edge(g: Graph, u: int, v: int) -> Graph:
    edges = [(a, b) for a, b in g.edges() if (a, b) != (u, v)]
    return Graph.from_edges(g.n, edges)


def chromatic_poly(g: Graph, node_budget: int = 500_000) -> list[int]:
    """Exact coefficients (in q) by deletion-contraction.

    Memoized on the canonical form of each minor up to 10 vertices (raw edge
    set beyond); components multiply, forests and cycles short-circuit.
    """
    memo: dict = {}
    nodes = [0]

    def key_of(h: Graph):
        if h.n <= CANONICAL_CAP:
            return canonical_key(h)
        return (h.n, tuple(h.edges()))

    def rec(h: Graph) -> list[int]:
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise BudgetExceededError(
                f"deletion-contraction exceeded {node_budget} nodes; "
                "random_cluster_eval may still work for tiny edge counts",
                cap_name="chromatic_budget",
            )
        m = h.edge_count
        if m == 0:
            return _poly_q_power(h.n)
        comps = connected_components(h)
        if len(comps) > 1:
            out = [1]
            for comp in comps:
                sub, _ = induced_subgraph(h, comp)
                out = poly_mul(out, rec(sub))
            return out
        # connected from here
        if m == h.n - 1:
            return _poly_q_qminus1_pow(1, m)
        if m == h.n and all(h.degree(v) == 2 for v in range(h.n)):
            # cycle: (q-1)^n + (-1)^n (q-1)
            cyc = _poly_q_qminus1_pow(0, h.n)
            return trim(poly_add(cyc, [c * (-1) ** h.n for c in (-1, 1)]))
        k = key_of(h)
        hit = memo.get(k)
        if hit is not None:
            return hit
        u, v = max(h.edges(), key=lambda e: h.degree(e[0]) + h.degree(e[1]))
        res = poly_sub(rec(_delete_edge(h, u, v)), rec(_contract_edge(h, u, v)))
        memo[k] = res
        return res

    return rec(g)


# ---------------------------------------------------------------------------
# random cluster sum

def random_cluster_coeffs(g: Graph) -> list[int]:
    """Coefficients of sum_F q^{k(F)} (-1)^{|F|} over edge subsets."""
    if g.edge_count > RANDOM_CLUSTER_EDGE_CAP:
        raise BudgetExceededError(
            f"random cluster enumeration capped at {RANDOM_CLUSTER_EDGE_CAP} edges "
            f"(got {g.edge_count})",
            cap_name="random_cluster_edge_cap",
        )
    return _kernels.signed_component_census(list(g.edges()), g.n)


def random_cluster_eval(g: Graph, q):
    """The edge-subset sum evaluated at q (exact for exact q)."""
    return poly_eval(random_cluster_coeffs(g), q)


# ---------------------------------------------------------------------------
# polymers

@lru_cache(maxsize=1 << 16)
def connected_signed_count(g: Graph, s_mask: int) -> int:
    """sum over F inside g[S] with (S, F) connected of (-1)^|F| (an integer)."""
    sub, _ = induced_subgraph(g, s_mask)
    if sub.edge_count > RANDOM_CLUSTER_EDGE_CAP:
        raise BudgetExceededError(
            f"polymer weight enumeration capped at {RANDOM_CLUSTER_EDGE_CAP} edges",
            cap_name="random_cluster_edge_cap",
        )
    if not is_connected(sub):
        return 0
    census = _kernels.signed_component_census(list(sub.edges()), sub.n)
    return census[1]


def polymer_weight(g: Graph, s_mask: int, q):
    """Weight of the polymer S: (signed connected count) * q^(|S|-1)."""
    size = bin(s_mask).count("1")
    if size < 2:
        raise ValueError("polymers have at least 2 vertices")
    c = connected_signed_count(g, s_mask)
    if c == 0:
        return q - q if not isinstance(q, complex) else 0j
    return c * q ** (size - 1)


def polymer_partition(g: Graph, q, size_cap: int | None = None,
                      family_budget: int = 5_000_000):
    """Sum over families of pairwise disjoint polymers of the weight products.

    Only connected sets carry nonzero weight; with size_cap >= n the sum is
    the exact rescaled chromatic polynomial q^n chi(1/q).
    """
    cap = size_cap if size_cap is not None else g.n
    polymers = []
    for mask in _kernels.iter_connected_masks(g.neighbor_masks(), g.n, cap):
        if bin(mask).count("1") < 2:
            continue
        w = polymer_weight(g, mask, q)
        if w != 0:
            polymers.append((mask, w))
    polymers.sort(key=lambda t: t[0])
    calls = [0]

    def rec(i: int, used: int):
        calls[0] += 1
        if calls[0] > family_budget:
            raise BudgetExceededError(
                f"polymer family enumeration exceeded {family_budget} states",
                cap_name="polymer_budget",
            )
        acc = 1 if not isinstance(q, complex) else complex(1)
        for j in range(i, len(polymers)):
            mask, w = polymers[j]
            if mask & used:
                continue
            acc = acc + w * rec(j + 1, used | mask)
        return acc

    return rec(0, 0)


# ---------------------------------------------------------------------------
# the per-vertex nonvanishing condition and the tree bound

@dataclass
class PolymerConditionReport:
    a: float
    abs_q: float
    mode: str
    threshold: float
    per_vertex: list[float]
    ok: bool


def _tau_of_mask(g: Graph, mask: int) -> int:
    sub, _ = induced_subgraph(g, mask)
    return spanning_tree_count(sub)


@lru_cache(maxsize=256)
def _connected_tau_table(g: Graph) -> tuple[tuple[int, int, int], ...]:
    """(mask, size, spanning-tree count) for every connected vertex set of g."""
    masks = list(_kernels.iter_connected_masks(g.neighbor_masks(), g.n, g.n))
    taus = _kernels.spanning_tree_counts(
        g.neighbor_masks(), g.n, masks, lambda m: _tau_of_mask(g, m)
    )
    return tuple(
        (m, bin(m).count("1"), tau) for m, tau in zip(masks, taus)
    )


def gk_condition_check(
    g: Graph,
    q,
    a: float,
    mode: str = "tree_bound",
    enum_cap: int = 16,
) -> PolymerConditionReport:
    """Per-vertex check: sum over polymers containing v of |weight| a^|S| <= a-1.

    In exact mode the true weight moduli are used (tiny graphs only); in
    tree_bound mode each |weight| is replaced by tau(g[S]) |q|^(|S|-1), which
    dominates it. Vertices in no polymer get a vacuous zero sum.
    """
    if a <= 1:
        raise ValueError("the condition needs a > 1")
    if mode not in ("exact", "tree_bound"):
        raise ValueError(f"unknown mode {mode!r}")
    if g.n > enum_cap:
        raise BudgetExceededError(
            f"polymer condition enumeration capped at {enum_cap} vertices",
            cap_name="polymer_enum_cap",
        )
    absq = abs(complex(q))
    sums = [0.0] * g.n
    if mode == "tree_bound":
        entries = [
            (m, size, tau * absq ** (size - 1))
            for m, size, tau in _connected_tau_table(g)
            if size >= 2
        ]
    else:
        entries = [
            (m, size, abs(connected_signed_count(g, m)) * absq ** (size - 1))
            for m, size, _tau in _connected_tau_table(g)
            if size >= 2
        ]
    for m, size, w in entries:
        if w == 0:
            continue
        term = w * a**size
        for v in bits(m):
            sums[v] += term
    threshold = a - 1
    return PolymerConditionReport(
        a=a,
        abs_q=absq,
        mode=mode,
        threshold=threshold,
        per_vertex=sums,
        ok=all(s <= threshold for s in sums),
    )


def tree_gen_fn(g: Graph, v: int, x: float, enum_cap: int = 14) -> float:
    """Sum over subtrees containing v of x^(edge count), empty tree included.

    Decomposed over connected vertex sets S containing v: the subtrees with
    vertex set S are exactly the spanning trees of g[S], each with |S|-1
    edges; S = {v} contributes the empty tree's 1.
    """
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if g.n > enum_cap:
        raise BudgetExceededError(
            f"tree generating function capped at {enum_cap} vertices",
            cap_name="tree_gen_cap",
        )
    return float(
        sum(
            tau * x ** (size - 1)
            for m, size, tau in _connected_tau_table(g)
            if m >> v & 1
        )
    )


def chromatic_radius_constant(tol: float = 1e-12) -> tuple[float, float]:
    """Minimize (2a-1)/ln(2-1/a) over a > 1 (golden section on (1, 10])."""

    def f(a: float) -> float:
        return (2 * a - 1) / math.log(2 - 1 / a)

    inv_phi = (math.sqrt(5) - 1) / 2
    lo, hi = 1.0 + 1e-9, 10.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = f(d)
    a_star = (lo + hi) / 2
    return a_star, f(a_star)


# ---------------------------------------------------------------------------
# surveys and interpolation

@dataclass
class ChromaticSurveyRow:
    graph_id: str
    n: int
    delta: int
    max_root_modulus: float
    ratio_to_691delta: float

    def csv(self) -> str:
        return (
            f"{self.graph_id},{self.n},{self.delta},"
            f"{self.max_root_modulus!r},{self.ratio_to_691delta!r}"
        )


CHROMATIC_SURVEY_CSV_HEADER = "graph,n,delta,max_root_modulus,ratio_to_691delta"


def chromatic_zero_survey(named_graphs) -> list[ChromaticSurveyRow]:
    """Max chromatic-root modulus per graph, relative to 6.91 * max degree."""
    rows = []
    for gid, g in named_graphs:
        coeffs = chromatic_poly(g)
        d = max_degree(g)
        if len(trim(coeffs)) <= 1:
            rows.append(ChromaticSurveyRow(gid, g.n, d, 0.0, 0.0))
            continue
        roots = poly_roots(coeffs)
        mx = max(abs(z) for z in roots)
        ratio = mx / (CHROMATIC_RADIUS_FACTOR * d) if d > 0 else 0.0
        rows.append(ChromaticSurveyRow(gid, g.n, d, mx, ratio))
    return rows


def chromatic_interpolate(
    g: Graph,
    q: complex,
    eps: float,
    radius_override: float | None = None,
) -> ApproxCertificate:
    """Certified approximation of chi_g(q) outside the chromatic root disk.

    Interpolates the reversed polynomial q^n chi(1/q), which is zero-free in
    the disk of radius 1/(6.91 * max degree), at z = 1/q, then rescales by
    q^n. Desk scale only: the reversed coefficients come from the exact
    chromatic polynomial.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    q = complex(q)
    if g.n == 0:
        return ApproxCertificate(
            value=complex(1),
            epsilon_guaranteed=eps,
            m_used=0,
            delta=DELTA_FLOOR,
            radius_assumed=float("inf"),
            radius_source="chromatic_691",
        )
    if q == 0:
        raise ValueError("q = 0 is a chromatic root of every graph with vertices")
    d = max_degree(g)
    if radius_override is not None:
        radius = float(radius_override)
        source = "user_supplied"
    else:
        radius = 1.0 / (CHROMATIC_RADIUS_FACTOR * max(d, 1))
        source = "chromatic_691"
    z = 1 / q
    if abs(z) >= radius:
        raise OutsideCertifiedRegionError(
            f"|q| = {abs(q):.6g} is inside the excluded disk: need "
            f"|q| > {1.0 / radius:.6g} (source: {source})"
        )
    chi = chromatic_poly(g)
    chi = chi + [0] * (g.n + 1 - len(chi))
    b = list(reversed(chi))  # b_k = coefficient of q^(n-k); b_0 = 1 (monic)
    assert b[0] == 1
    delta = max(abs(z) / radius, DELTA_FLOOR)
    m = truncation_order(g.n, eps, delta)
    t = log_taylor(b, m)
    value = q**g.n * evaluate_truncated(t, z)
    return ApproxCertificate(
        value=value,
        epsilon_guaranteed=eps if source != "user_supplied" else None,
        m_used=m,
        delta=delta,
        radius_assumed=radius,
        radius_source=source,
    )
