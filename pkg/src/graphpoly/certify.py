"""Zero-freeness machinery for the independence polynomial.

The optimal zero-free disk radius over graphs of maximum degree D is
(D-1)^(D-1)/D^D. The per-instance certificate runs the telescoping ratio
recursion from a root vertex and checks that every sub-ratio stays inside
the open disk of radius 1/D and the root ratio avoids -1; when that holds
the partition function provably does not vanish at this (graph, lambda).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from .errors import NumericsError
from .graphs import Graph, bits, full_mask, generate, is_connected, max_degree
from .oracles import brute_force_independence_coeffs, poly_roots


def shearer_radius(delta: int) -> Fraction:
    """(D-1)^(D-1) / D^D, exact."""
    if delta < 2:
        raise ValueError("shearer_radius needs max degree >= 2")
    return Fraction((delta - 1) ** (delta - 1), delta**delta)


def lambda_c(delta: int) -> Fraction:
    """(D-1)^(D-1) / (D-2)^D, the real-axis algorithmic threshold (reporting only)."""
    if delta < 3:
        raise ValueError("lambda_c needs max degree >= 3")
    return Fraction((delta - 1) ** (delta - 1), (delta - 2) ** delta)


def zero_free_radius(delta: int) -> Fraction:
    """Certified zero-free disk radius by max degree.

    Degrees 0 and 1 are not covered by the D >= 2 formula; their classes
    have exact minimal root moduli 1 (isolated vertices, root -1) and 1/2
    (matchings, root -1/2).
    """
    if delta >= 2:
        return shearer_radius(delta)
    if delta == 1:
        return Fraction(1, 2)
    return Fraction(1)


# ---------------------------------------------------------------------------
# ratio recursion

class _RatioDivergence(Exception):
    def __init__(self, mask: int, root: int):
        self.mask = mask
        self.root = root


def _run_ratios(g: Graph, v0: int, lam: complex, memo: dict) -> complex:
    """Memoized ratio recursion; memo maps (surviving mask, root) -> ratio."""
    nbr = g.neighbor_masks()

    def rec(mask: int, root: int) -> complex:
        key = (mask, root)
        hit = memo.get(key)
        if hit is not None:
            return hit
        cur = mask & ~(1 << root)
        denom = complex(1)
        for u in bits(nbr[root] & mask):
            denom *= 1 + rec(cur, u)
            cur &= ~(1 << u)
        if denom == 0:
            raise _RatioDivergence(mask, root)
        val = lam / denom
        memo[key] = val
        return val

    return rec(full_mask(g.n), v0)


def ratio(g: Graph, v: int, lam: complex) -> complex:
    """R = lam * Z(G minus closed nbhd of v) / Z(G minus v), by telescoping."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    memo: dict = {}
    try:
        return _run_ratios(g, v, complex(lam), memo)
    except _RatioDivergence as exc:
        raise NumericsError(
            f"ratio recursion hit a vanishing denominator at state "
            f"(mask={exc.mask:#x}, root={exc.root})"
        ) from None


@dataclass
class RatioCertificate:
    ok: bool
    lam: complex
    delta_cap: float
    max_ratio_modulus_nonroot: float
    root_ratio: complex | None
    visited_states: int
    failure_witness: tuple[int, int, complex | None] | None = None
    boundary: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "lambda": [self.lam.real, self.lam.imag],
            "delta_cap": self.delta_cap,
            "max_ratio_modulus_nonroot": self.max_ratio_modulus_nonroot,
            "root_ratio": None
            if self.root_ratio is None
            else [self.root_ratio.real, self.root_ratio.imag],
            "visited_states": self.visited_states,
            "failure_witness": None
            if self.failure_witness is None
            else {
                "state_mask": self.failure_witness[0],
                "root": self.failure_witness[1],
                "ratio": None
                if self.failure_witness[2] is None
                else [self.failure_witness[2].real, self.failure_witness[2].imag],
            },
            "boundary": self.boundary,
            "notes": self.notes,
        }


def certify_zero_free(g: Graph, lam: complex, root: int = 0) -> RatioCertificate:
    """Machine-checked nonvanishing of Z_g(lam) for this concrete instance.

    Runs the ratio recursion from a root vertex and records every sub-ratio;
    the certificate is ok when all non-root ratios have modulus < 1/D and
    the root ratio is not -1. Requires a connected graph (components are
    independent, certify them separately).
    """
    if g.n == 0:
        raise ValueError("certify_zero_free needs at least one vertex")
    if not is_connected(g):
        raise ValueError("certify_zero_free needs a connected graph; "
                         "certify components separately")
    lam = complex(lam)
    delta = max_degree(g)
    cap = 1.0 / max(delta, 1)
    memo: dict = {}
    notes: list[str] = []
    boundary = False
    if delta >= 2:
        rad = float(shearer_radius(delta))
        if abs(abs(lam) - rad) <= 1e-12 * rad:
            boundary = True
            notes.append("lambda sits on the zero-free disk boundary; "
                         "the certificate still requires strict ratio bounds")
    try:
        root_ratio = _run_ratios(g, root, lam, memo)
    except _RatioDivergence as exc:
        partial_max = max(
            (abs(r) for (mask, rt), r in memo.items() if mask != full_mask(g.n)),
            default=0.0,
        )
        return RatioCertificate(
            ok=False,
            lam=lam,
            delta_cap=cap,
            max_ratio_modulus_nonroot=partial_max,
            root_ratio=None,
            visited_states=len(memo),
            failure_witness=(exc.mask, exc.root, None),
            boundary=boundary,
            notes=notes + ["a sub-ratio reached -1 (vanishing subgraph polynomial)"],
        )
    top = (full_mask(g.n), root)
    worst: tuple[float, tuple[int, int], complex] | None = None
    for key, r in memo.items():
        if key == top:
            continue
        if worst is None or abs(r) > worst[0]:
            worst = (abs(r), key, r)
    max_nonroot = worst[0] if worst else 0.0
    ok = max_nonroot < cap and root_ratio != -1
    witness = None
    if not ok and worst is not None and max_nonroot >= cap:
        witness = (worst[1][0], worst[1][1], worst[2])
    elif not ok:
        witness = (top[0], root, root_ratio)
    return RatioCertificate(
        ok=ok,
        lam=lam,
        delta_cap=cap,
        max_ratio_modulus_nonroot=max_nonroot,
        root_ratio=root_ratio,
        visited_states=len(memo),
        failure_witness=witness,
        boundary=boundary,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# root surveys

def min_root_modulus(g: Graph) -> float:
    """Smallest modulus among the roots of the independence polynomial."""
    coeffs = brute_force_independence_coeffs(g)
    if len(coeffs) <= 1:
        return float("inf")
    return min(abs(z) for z in poly_roots(coeffs))


@dataclass
class SurveyRow:
    graph_id: str
    n: int
    delta: int
    min_modulus: float
    min_neg_real_root: float | None

    def csv(self) -> str:
        neg = "" if self.min_neg_real_root is None else repr(self.min_neg_real_root)
        return f"{self.graph_id},{self.n},{self.delta},{self.min_modulus!r},{neg}"


SURVEY_CSV_HEADER = "graph,n,delta,min_modulus,min_neg_real_root"


def binary_tree(depth: int) -> Graph:
    """Complete binary tree with the given edge depth (max degree 3)."""
    n = 2 ** (depth + 1) - 1
    return Graph.from_edges(n, [(v, (v - 1) // 2) for v in range(1, n)])


def _survey_graphs(family: str, max_n: int, delta: int | None, seed: int):
    if family == "paths":
        for n in range(2, max_n + 1):
            yield f"path_{n}", generate("path", n)
    elif family == "cycles":
        for n in range(3, max_n + 1):
            yield f"cycle_{n}", generate("cycle", n)
    elif family == "trees":
        d = 1
        while 2 ** (d + 1) - 1 <= max_n:
            yield f"binary_tree_d{d}", binary_tree(d)
            d += 1
        cap = delta if delta is not None else 3
        for i, n in enumerate(range(4, max_n + 1, 2)):
            g = _degree_capped_tree(n, cap, seed + i)
            yield f"capped_tree_{n}_s{seed + i}", g
    elif family == "random_regular":
        d = delta if delta is not None else 3
        for i, n in enumerate(range(max(d + 1, 4), max_n + 1)):
            if n * d % 2:
                continue
            yield f"regular_{n}_{d}_s{seed + i}", generate("random_regular", n, d, seed=seed + i)
    else:
        raise ValueError(f"unknown survey family {family!r}")


def _degree_capped_tree(n: int, cap: int, seed: int) -> Graph:
    import random as _random

    rng = _random.Random(seed)
    edges = []
    degree = [0] * n
    for v in range(1, n):
        choices = [u for u in range(v) if degree[u] < cap]
        u = rng.choice(choices)
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1
    return Graph.from_edges(n, edges)


def family_root_survey(
    family: str,
    max_n: int,
    delta: int | None = None,
    seed: int = 0,
    root_cap: int = 24,
) -> list[SurveyRow]:
    """Minimal root moduli across a graph family (empirical tightness probe)."""
    rows = []
    for gid, g in _survey_graphs(family, max_n, delta, seed):
        if g.n > root_cap:
            continue
        coeffs = brute_force_independence_coeffs(g)
        if len(coeffs) <= 1:
            rows.append(SurveyRow(gid, g.n, max_degree(g), float("inf"), None))
            continue
        roots = poly_roots(coeffs)
        min_mod = min(abs(z) for z in roots)
        neg = [z.real for z in roots if abs(z.imag) < 1e-9 and z.real < 0]
        min_neg = max(neg) if neg else None  # negative root closest to zero
        rows.append(SurveyRow(gid, g.n, max_degree(g), min_mod, min_neg))
    return rows
