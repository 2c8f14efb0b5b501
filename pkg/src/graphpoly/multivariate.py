"""Multivariate independence polynomials as multi-affine objects.

Each vertex carries its own activity variable, so the polynomial is a map
from vertex subsets to coefficients (degree <= 1 per variable by
construction). The Schur product multiplies coefficients pointwise and
corresponds exactly to taking edge unions of graphs on a shared vertex set.
This module exists for verification, not scale: storage is dense over
subsets with a hard vertex cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError
from .graphs import Graph, bits
from .oracles import iter_independent_masks

MULTIVARIATE_CAP = 20


@dataclass
class MultiAffinePoly:
    n_vars: int
    coeffs: dict[int, object]  # subset bitmask -> coefficient

    def to_string(self) -> str:
        """Monomials ordered by subset size then index, variables as x1, x2, .."""
        if not self.coeffs:
            return "0"
        parts = []
        for mask in sorted(self.coeffs, key=lambda m: (bin(m).count("1"), m)):
            coeff = self.coeffs[mask]
            mono = "*".join(f"x{v + 1}" for v in bits(mask))
            if mask == 0:
                parts.append(f"{coeff}")
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts)


def multivariate_Z(g: Graph, cap: int = MULTIVARIATE_CAP) -> MultiAffinePoly:
    """Coefficient 1 exactly on the independent sets of g."""
    if g.n > cap:
        raise BudgetExceededError(
            f"multivariate_Z capped at {cap} vertices (got {g.n})",
            cap_name="multivariate_cap",
        )
    coeffs = {mask: 1 for mask in iter_independent_masks(g.neighbor_masks(), g.n)}
    return MultiAffinePoly(n_vars=g.n, coeffs=coeffs)


def schur_product(p: MultiAffinePoly, q: MultiAffinePoly) -> MultiAffinePoly:
    """Pointwise product of coefficients."""
    if p.n_vars != q.n_vars:
        raise ValueError(f"variable counts differ: {p.n_vars} vs {q.n_vars}")
    out = {}
    small, big = (p.coeffs, q.coeffs) if len(p.coeffs) <= len(q.coeffs) else (q.coeffs, p.coeffs)
    for mask, c in small.items():
        other = big.get(mask)
        if other is None:
            continue
        prod = c * other
        if prod != 0:
            out[mask] = prod
    return MultiAffinePoly(n_vars=p.n_vars, coeffs=out)


def evaluate(p: MultiAffinePoly, x: Sequence) -> object:
    """sum over subsets of coeff(S) * prod_{v in S} x_v."""
    if len(x) != p.n_vars:
        raise ValueError(f"expected {p.n_vars} activities, got {len(x)}")
    total = 0
    for mask, coeff in p.coeffs.items():
        term = coeff
        for v in bits(mask):
            term = term * x[v]
        total = total + term
    return total


def union_factorization_check(g: Graph, h1: Graph, h2: Graph) -> bool:
    """Z of an edge union equals the Schur product of the parts' Z.

    Assertion utility: requires E(g) = E(h1) union E(h2) on a shared vertex
    set, then compares coefficient maps exactly.
    """
    if not (g.n == h1.n == h2.n):
        raise ValueError("graphs must share a vertex set")
    if set(g.edges()) != set(h1.edges()) | set(h2.edges()):
        raise ValueError("edge sets do not satisfy E(g) = E(h1) | E(h2)")
    lhs = multivariate_Z(g)
    rhs = schur_product(multivariate_Z(h1), multivariate_Z(h2))
    return lhs.coeffs == rhs.coeffs


@dataclass
class StabilityReport:
    min_abs: float
    argmin: tuple[complex, ...]
    trials: int
    radius: float
    note: str = "empirical sampler, not a nonvanishing proof"


def stability_probe(
    g: Graph,
    radius: float,
    trials: int,
    seed: int,
    center: Sequence[complex] | None = None,
    spread: float | None = None,
    threads: int = 1,
) -> StabilityReport:
    """Sample activity vectors in the open polydisk and report min |Z| found.

    By default the activities are uniform in the disk of the given radius;
    with a center the samples are center + uniform disk of the given spread
    (must stay inside the radius). Trials are split over a fixed set of RNG
    streams derived from the seed; threads only caps concurrency, so the
    result does not depend on the thread count.
    """
    if g.n > MULTIVARIATE_CAP:
        raise BudgetExceededError(
            f"stability_probe capped at {MULTIVARIATE_CAP} vertices",
            cap_name="multivariate_cap",
        )
    if center is not None:
        if spread is None:
            raise ValueError("center requires a spread")
        if max(abs(complex(c)) for c in center) + spread > radius:
            raise ValueError("center + spread exceeds the sampling radius")
    poly = multivariate_Z(g)
    if radius == 0 and center is None:
        return StabilityReport(
            min_abs=abs(complex(evaluate(poly, [0j] * g.n))),
            argmin=tuple([0j] * g.n),
            trials=1,
            radius=0.0,
        )
    streams = 16
    seeds = np.random.SeedSequence(seed).spawn(streams)
    per = [trials // streams + (1 if i < trials % streams else 0) for i in range(streams)]

    def run_chunk(args):
        ss, cnt = args
        rng = np.random.default_rng(ss)
        chunk_best = None
        for _ in range(cnt):
            u = rng.random(g.n)
            ang = rng.random(g.n) * 2 * np.pi
            r = (spread if center is not None else radius) * np.sqrt(u)
            x = r * np.exp(1j * ang)
            if center is not None:
                x = x + np.asarray(center, dtype=complex)
            val = abs(complex(evaluate(poly, list(x))))
            if chunk_best is None or val < chunk_best[0]:
                chunk_best = (val, tuple(complex(c) for c in x))
        return chunk_best

    chunks = list(zip(seeds, per))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, chunks))
    else:
        results = [run_chunk(c) for c in chunks]
    best = min((r for r in results if r is not None), key=lambda t: t[0])
    return StabilityReport(min_abs=best[0], argmin=best[1], trials=trials, radius=radius)
