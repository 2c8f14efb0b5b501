"""Exact but exponential reference computations.

Everything here is a trusted slow path: brute-force coefficient counts,
memoized recursive evaluation, induced-copy counting by subset scan, a
pairwise isomorphism checker, and polynomial root finding. The clever
components are all tested against these at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import BudgetExceededError, NumericsError
from .graphs import (
    CANONICAL_CAP,
    Graph,
    canonical_key,
    full_mask,
    induced_subgraph,
    mask_of,
)

BRUTE_FORCE_CAP = 30
IND_CAP = 16


@lru_cache(maxsize=512)
def _independence_counts_cached(g: Graph) -> tuple[int, ...]:
    return tuple(_kernels.independence_counts(g.neighbor_masks(), g.n))


def brute_force_independence_coeffs(g: Graph, cap: int = BRUTE_FORCE_CAP) -> list[int]:
    """Exact alpha_0..alpha_d by enumerating every independent set once.

    Branch on the lowest free vertex: either exclude it, or include it and
    drop its closed neighborhood. Results are memoized per graph.
    """
    if g.n > cap:
        raise BudgetExceededError(
            f"brute force capped at {cap} vertices (got {g.n}); "
            "use compute_alpha for coefficient prefixes of larger graphs",
            cap_name="brute_force_cap",
        )
    return list(_independence_counts_cached(g))


def exact_Z_eval(g: Graph, lam, cap: int = BRUTE_FORCE_CAP):
    """Evaluate the independence polynomial by the vertex recursion.

    Z(S) = Z(S - v) + lam * Z(S - N[v]) with v the lowest vertex of S,
    memoized on the surviving vertex set. The arithmetic follows the type of
    lam: complex/float for speed, Fraction (or int) for exact identities.
    The memo lives only for this call.
    """
    if g.n > cap:
        raise BudgetExceededError(
            f"exact_Z_eval capped at {cap} vertices (got {g.n})",
            cap_name="brute_force_cap",
        )
    nbr = g.neighbor_masks()
    closed = [nbr[v] | (1 << v) for v in range(g.n)]
    one = lam - lam + 1 if not isinstance(lam, complex) else complex(1)
    memo: dict[int, object] = {}

    def rec(mask: int):
        if mask == 0:
            return one
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = (mask & -mask).bit_length() - 1
        val = rec(mask & ~(1 << v)) + lam * rec(mask & ~closed[v])
        memo[mask] = val
        return val

    return rec(full_mask(g.n))


def iter_independent_masks(nbr: Sequence[int], n: int):
    """Yield every independent set of the graph as a bitmask, empty set first."""
    closed = [nbr[v] | (1 << v) for v in range(n)]
    yield 0

    def rec(chosen: int, free: int):
        while free:
            low = free & -free
            v = low.bit_length() - 1
            yield chosen | low
            yield from rec(chosen | low, free & ~closed[v])
            free ^= low

    yield from rec(0, full_mask(n))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test, independent of canonical keys."""
    if g1.n != g2.n:
        return False
    if g1.edge_count != g2.edge_count:
        return False
    deg1 = sorted(map(len, g1.adj))
    deg2 = sorted(map(len, g2.adj))
    if deg1 != deg2:
        return False
    n = g1.n
    m1 = g1.neighbor_masks()
    m2 = g2.neighbor_masks()
    mapping = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or g1.degree(v) != g2.degree(w):
                continue
            ok = True
            for u in range(v):
                if (m1[v] >> u & 1) != (m2[w] >> mapping[u] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        mapping[v] = -1
        return False

    return extend(0)


def brute_force_ind(h: Graph, g: Graph, cap: int = IND_CAP) -> int:
    """Number of vertex subsets S of g with g[S] isomorphic to h."""
    if g.n > cap or h.n > g.n:
        raise BudgetExceededError(
            f"brute_force_ind capped at |h| <= |g| <= {cap}",
            cap_name="ind_cap",
        )
    if h.n == 0:
        return 1
    use_keys = h.n <= CANONICAL_CAP
    h_key = canonical_key(h) if use_keys else None
    h_degs = sorted(map(len, h.adj))
    count = 0
    for verts in combinations(range(g.n), h.n):
        sub, _ = induced_subgraph(g, mask_of(verts))
        if sub.edge_count != h.edge_count:
            continue
        if sorted(map(len, sub.adj)) != h_degs:
            continue
        if use_keys:
            if canonical_key(sub) == h_key:
                count += 1
        elif are_isomorphic(sub, h):
            count += 1
    return count


def count_proper_colorings(g: Graph, q: int) -> int:
    """Direct enumeration of proper q-colorings (chromatic oracle)."""
    if q < 0:
        raise ValueError("q must be a non-negative integer")
    colors = [0] * g.n

    def rec(v: int) -> int:
        if v == g.n:
            return 1
        total = 0
        for c in range(q):
            if all(colors[u] != c for u in g.adj[v] if u < v):
                colors[v] = c
                total += rec(v + 1)
        return total

    return rec(0)


# ---------------------------------------------------------------------------
# root finding

def _horner_pair(coeffs: list[complex], z: complex) -> tuple[complex, complex]:
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def poly_roots(
    coeffs: Sequence,
    residual_tol: float = 1e-9,
    polish_steps: int = 12,
) -> list[complex]:
    """All complex roots with multiplicity.

    Companion-matrix eigenvalues (numpy) seeded into Newton polishing on the
    original coefficients; a root is accepted when its backward-relative
    residual |p(z)| / sum_i |a_i||z|^i is below residual_tol.
    """
    c = [complex(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        raise ValueError("poly_roots needs degree >= 1")
    raw = np.roots(list(reversed(c)))
    roots = []
    failures = []
    for z0 in raw:
        z = complex(z0)
        best = z
        best_res = abs(_horner_pair(c, z)[0])
        for _ in range(polish_steps):
            p, dp = _horner_pair(c, z)
            if dp == 0:
                break
            step = p / dp
            z = z - step
            res = abs(_horner_pair(c, z)[0])
            if res < best_res:
                best, best_res = z, res
            if res == 0 or abs(step) < 1e-16 * max(1.0, abs(z)):
                break
        scale = sum(abs(a) * max(1.0, abs(best)) ** i for i, a in enumerate(c))
        if best_res > residual_tol * scale:
            failures.append((best, best_res, residual_tol * scale))
        roots.append(best)
    if failures:
        detail = "; ".join(f"root {z}: residual {r:.3e} > {t:.3e}" for z, r, t in failures)
        raise NumericsError(f"root refinement did not converge: {detail}")
    roots.sort(key=lambda z: (abs(z), z.real, z.imag))
    return roots


def exact_Z_rational(g: Graph, lam: Fraction) -> Fraction:
    """Convenience wrapper fixing the exact-rational backend."""
    return exact_Z_eval(g, Fraction(lam))
