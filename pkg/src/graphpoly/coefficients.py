"""Independence-polynomial coefficients for bounded-degree graphs.

The pipeline: power sums of the inverse roots are additive graph parameters,
so each one is a fixed rational combination of connected induced-subgraph
counts. Those combinations are built once per (order, degree cap) inside a
small algebra over canonical keys, where products of counts expand through
exact structure constants and every disconnected key must cancel exactly
(asserted, as a correctness tripwire). Evaluating the combinations on a
graph needs one census of its connected vertex sets, and the Newton
identities turn power sums back into coefficients.

All algebra arithmetic is exact rationals; floats never touch structure
constants. The same pipeline would serve any multiplicative graph polynomial
whose coefficients are combinations of induced counts over graphs of bounded
size with computable weights; only the independence polynomial is
instantiated here. Module-level caches are built lazily and only read
afterwards, so concurrent readers are safe once a build has finished.

Expansion disk cache format (little-endian), version 1:

    magic   4 bytes  b"GPEX"
    version u16      1
    count   u32      number of (t, cap) records
    record: t u16, cap u16, nterms u32, then nterms terms
    term:   k u8, edge_bits u64, sign u8 (0 plus / 1 minus),
            num_len u32, num_bytes (big-endian magnitude),
            den_len u32, den_bytes (big-endian magnitude)
"""

from __future__ import annotations

import struct
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Sequence

from . import _kernels
from .errors import BudgetExceededError, InternalConsistencyError
from .graphs import (
    CanonicalKey,
    Graph,
    _canonical_bits,
    bits,
    full_mask,
    key_graph,
    key_is_connected,
    key_max_degree,
    mask_of,
    max_degree,
    pack_edge_bits,
)

ALGEBRA_CAP = 10

_CACHE_MAGIC = b"GPEX"
_CACHE_VERSION = 1

K1_KEY = CanonicalKey(1, 0)


def edgeless_key(k: int) -> CanonicalKey:
    return CanonicalKey(k, 0)


# ---------------------------------------------------------------------------
# connected-set enumeration and censuses

def enumerate_connected_sets(g: Graph, k: int) -> Iterator[int]:
    """Every connected vertex set with 1 <= size <= k, as bitmasks, once each."""
    if k < 1:
        return iter(())
    return _kernels.iter_connected_masks(g.neighbor_masks(), g.n, k)


@lru_cache(maxsize=64)
def connected_census(g: Graph, kmax: int) -> dict[CanonicalKey, int]:
    """Counts of connected induced subgraphs up to kmax vertices, by iso class."""
    raw = _kernels.connected_census(g.neighbor_masks(), g.n, kmax)
    out: dict[CanonicalKey, int] = {}
    for (k, code), cnt in raw.items():
        key = CanonicalKey(k, _canonical_bits(k, code))
        out[key] = out.get(key, 0) + cnt
    return out


def count_induced_connected(h_key: CanonicalKey, g: Graph, kmax: int | None = None) -> int:
    """ind(H, g) for connected H; one census pass answers all H of that size."""
    if not key_is_connected(h_key):
        raise ValueError("count_induced_connected needs a connected key; "
                         "disconnected counts come out of the algebra")
    census = connected_census(g, kmax if kmax is not None else h_key.n)
    return census.get(h_key, 0)


# ---------------------------------------------------------------------------
# structure constants: ind(H1,.) * ind(H2,.) over induced counts

def _iter_cross_patterns(pairs: list[tuple[int, int]], budget: list[int] | None):
    """All subsets of candidate cross edges, degree-budget pruned."""
    chosen: list[tuple[int, int]] = []

    def rec(i: int):
        if i == len(pairs):
            yield tuple(chosen)
            return
        yield from rec(i + 1)
        u, w = pairs[i]
        if budget is not None:
            if budget[u] == 0 or budget[w] == 0:
                return
            budget[u] -= 1
            budget[w] -= 1
        chosen.append((u, w))
        yield from rec(i + 1)
        chosen.pop()
        if budget is not None:
            budget[u] += 1
            budget[w] += 1

    yield from rec(0)


def _glue_candidates(h1: Graph, h2: Graph, delta_cap: int | None) -> set[CanonicalKey]:
    """Iso classes of graphs coverable by an induced h1-copy and h2-copy.

    Glue along every overlap identification (induced-subgraph isomorphism
    between an h1-subset and an h2-subset) and every cross-edge pattern
    between the exclusive parts, dropping anything over the degree cap.
    """
    k1, k2 = h1.n, h2.n
    raw_codes: set[tuple[int, int]] = set()
    for t in range(min(k1, k2) + 1):
        for a1 in combinations(range(k1), t):
            for a2 in combinations(range(k2), t):
                for img in permutations(a1):
                    # img[i] is the h1-vertex identified with h2-vertex a2[i]
                    if any(
                        h2.has_edge(a2[i], a2[j]) != h1.has_edge(img[i], img[j])
                        for i in range(t)
                        for j in range(i + 1, t)
                    ):
                        continue
                    s = k1 + k2 - t
                    excl2 = [v for v in range(k2) if v not in a2]
                    to_glued = {a2[i]: img[i] for i in range(t)}
                    for idx, v in enumerate(excl2):
                        to_glued[v] = k1 + idx
                    fixed = {(u, v) for u, v in h1.edges()}
                    for u, v in h2.edges():
                        gu, gv = to_glued[u], to_glued[v]
                        fixed.add((min(gu, gv), max(gu, gv)))
                    deg = [0] * s
                    for u, v in fixed:
                        deg[u] += 1
                        deg[v] += 1
                    if delta_cap is not None and any(d > delta_cap for d in deg):
                        continue
                    excl1 = [v for v in range(k1) if v not in a1]
                    pairs = [(u, w) for u in excl1 for w in range(k1, s)]
                    budget = None
                    if delta_cap is not None:
                        budget = [delta_cap - d for d in deg]
                    for cross in _iter_cross_patterns(pairs, budget):
                        masks = [0] * s
                        for u, v in fixed:
                            masks[u] |= 1 << v
                            masks[v] |= 1 << u
                        for u, v in cross:
                            masks[u] |= 1 << v
                            masks[v] |= 1 << u
                        raw_codes.add((s, pack_edge_bits(s, masks)))
    out = set()
    for s, code in raw_codes:
        key = CanonicalKey(s, _canonical_bits(s, code))
        if delta_cap is not None and key_max_degree(key) > delta_cap:
            continue
        out.add(key)
    return out


def _cover_count(big: CanonicalKey, key1: CanonicalKey, key2: CanonicalKey) -> int:
    """Ordered pairs (A, B) covering V(big) with big[A] ~ key1, big[B] ~ key2."""
    kg = key_graph(big)
    s = kg.n
    masks = kg.neighbor_masks()
    sub_key_cache: dict[int, CanonicalKey] = {}

    def subkey(mask: int) -> CanonicalKey:
        hit = sub_key_cache.get(mask)
        if hit is not None:
            return hit
        verts = list(bits(mask))
        k = len(verts)
        local = [0] * k
        for i, u in enumerate(verts):
            for j in range(i + 1, k):
                if masks[u] >> verts[j] & 1:
                    local[i] |= 1 << j
                    local[j] |= 1 << i
        key = CanonicalKey(k, _canonical_bits(k, pack_edge_bits(k, local)))
        sub_key_cache[mask] = key
        return key

    c_size = key2.n - (s - key1.n)
    if c_size < 0:
        return 0
    total = 0
    fm = full_mask(s)
    for a_verts in combinations(range(s), key1.n):
        a_mask = mask_of(a_verts)
        if subkey(a_mask) != key1:
            continue
        rest = fm & ~a_mask
        for c_verts in combinations(a_verts, c_size):
            if subkey(rest | mask_of(c_verts)) == key2:
                total += 1
    return total


_PRODUCT_CACHE: dict[tuple, dict[CanonicalKey, int]] = {}


def product_expand(
    key1: CanonicalKey,
    key2: CanonicalKey,
    delta_cap: int | None = None,
    size_cap: int = ALGEBRA_CAP,
) -> dict[CanonicalKey, int]:
    """Expand ind(H1,.) * ind(H2,.) as sum_K N(H1,H2;K) ind(K,.).

    N(H1,H2;K) counts the ordered pairs of subsets of V(K) that cover V(K)
    and induce H1, H2; the identity holds for every graph, and keys over the
    degree cap are dropped (their counts vanish on that graph class).
    """
    if key1.n + key2.n > size_cap:
        raise BudgetExceededError(
            f"product_expand capped at {size_cap} total vertices "
            f"(got {key1.n}+{key2.n})",
            cap_name="algebra_cap",
        )
    if key1.n == 0:
        return {key2: 1}
    if key2.n == 0:
        return {key1: 1}
    if (key2.n, key2.bits) < (key1.n, key1.bits):
        key1, key2 = key2, key1
    cache_key = (key1, key2, delta_cap)
    hit = _PRODUCT_CACHE.get(cache_key)
    if hit is not None:
        return dict(hit)
    result: dict[CanonicalKey, int] = {}
    for cand in _glue_candidates(key_graph(key1), key_graph(key2), delta_cap):
        cnt = _cover_count(cand, key1, key2)
        if cnt:
            result[cand] = cnt
    _PRODUCT_CACHE[cache_key] = result
    return dict(result)


def evaluate_combination(comb: dict[CanonicalKey, Fraction], g: Graph) -> Fraction:
    """Evaluate a formal combination of induced counts on a concrete graph."""
    if not comb:
        return Fraction(0)
    kmax = max(key.n for key in comb)
    total = Fraction(0)
    census = connected_census(g, kmax)
    for key, coeff in comb.items():
        if key_is_connected(key):
            cnt = census.get(key, 0)
        else:
            from .oracles import brute_force_ind

            cnt = brute_force_ind(key_graph(key), g)
        total += coeff * cnt
    return total


# ---------------------------------------------------------------------------
# power-sum expansions over connected keys

_PS_CACHE: dict[tuple[int, int], dict[CanonicalKey, Fraction]] = {}


def _effective_cap(t: int, delta_cap: int | None) -> int:
    # keys in the order-t expansion have <= t vertices, so degree <= t-1
    hard = max(t - 1, 0)
    return hard if delta_cap is None else min(delta_cap, hard)


def power_sum_expansion(
    t: int,
    delta_cap: int | None = None,
    size_cap: int = ALGEBRA_CAP,
) -> dict[CanonicalKey, Fraction]:
    """Order-t power sum as an exact combination of connected induced counts.

    Built by the Newton recursion inside the key algebra, with the isolated
    set count entering as a plain key at each order; disconnected keys must
    cancel exactly and a nonzero leftover raises (tripwire, not a state).
    """
    if t < 1:
        raise ValueError("power sums start at order 1")
    if t > size_cap:
        raise BudgetExceededError(
            f"power_sum_expansion capped at order {size_cap} (got {t}); "
            "raise the algebra cap to go further",
            cap_name="algebra_cap",
        )
    eff = _effective_cap(t, delta_cap)
    cached = _PS_CACHE.get((t, eff))
    if cached is not None:
        return dict(cached)
    if t == 1:
        result = {K1_KEY: Fraction(-1)}
    else:
        acc: dict[CanonicalKey, Fraction] = {edgeless_key(t): Fraction(-t)}
        for i in range(1, t):
            ii_key = edgeless_key(i)
            for lkey, coeff in power_sum_expansion(t - i, eff, size_cap).items():
                for kk, cnt in product_expand(ii_key, lkey, eff, size_cap).items():
                    acc[kk] = acc.get(kk, Fraction(0)) - coeff * cnt
        result = {}
        for key, coeff in acc.items():
            if coeff == 0:
                continue
            if not key_is_connected(key):
                raise InternalConsistencyError(
                    f"disconnected key {key} survived with coefficient {coeff} "
                    f"in power sum {t}"
                )
            result[key] = coeff
    for key in result:
        if key.n > t or key_max_degree(key) > eff:
            raise InternalConsistencyError(f"key {key} out of bounds for order {t}")
    _PS_CACHE[(t, eff)] = result
    return dict(result)


def expansion_term_stats(t: int, delta_cap: int | None = None) -> dict:
    """Term counts of the order-t expansion (no a-priori bound is assumed)."""
    exp = power_sum_expansion(t, delta_cap)
    by_size: dict[int, int] = {}
    for key in exp:
        by_size[key.n] = by_size.get(key.n, 0) + 1
    return {
        "order": t,
        "terms": len(exp),
        "max_key_vertices": max((k.n for k in exp), default=0),
        "terms_by_size": dict(sorted(by_size.items())),
    }


# ---------------------------------------------------------------------------
# Newton identities

def newton_ps_to_alpha(p: Sequence[Fraction], m: int) -> list[Fraction]:
    """Power sums p_1..p_m to coefficients alpha_0..alpha_m (alpha_0 = 1)."""
    alpha: list[Fraction] = [Fraction(1)]
    for t in range(1, m + 1):
        s = sum((alpha[i] * p[t - i - 1] for i in range(t)), Fraction(0))
        alpha.append(-s / t)
    return alpha


def newton_alpha_to_ps(alpha: Sequence[Fraction], m: int) -> list[Fraction]:
    """Coefficients alpha_0..alpha_m to power sums p_1..p_m."""
    if not alpha or alpha[0] != 1:
        raise ValueError("alpha_0 must be 1")
    a = list(alpha) + [Fraction(0)] * max(0, m + 1 - len(alpha))
    p: list[Fraction] = []
    for t in range(1, m + 1):
        s = sum((a[i] * p[t - i - 1] for i in range(1, t)), Fraction(0))
        p.append(-t * a[t] - s)
    return p


# ---------------------------------------------------------------------------
# the engine

def compute_alpha(
    g: Graph,
    m: int,
    delta_cap: int | None = None,
    algebra_cap: int = ALGEBRA_CAP,
) -> list[int]:
    """First coefficients alpha_0..alpha_m of the independence polynomial.

    Time poly(n) for fixed m and max degree: one census of connected sets up
    to size m, then the cached expansions and the Newton identities.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m > algebra_cap:
        raise BudgetExceededError(
            f"compute_alpha capped at m <= {algebra_cap}; "
            "use brute_force_independence_coeffs at desk scale",
            cap_name="algebra_cap",
        )
    cap = delta_cap if delta_cap is not None else max_degree(g)
    census = connected_census(g, min(m, max(g.n, 1))) if m >= 1 else {}
    p = []
    for t in range(1, m + 1):
        exp = power_sum_expansion(t, cap, algebra_cap)
        val = Fraction(0)
        for key, coeff in exp.items():
            cnt = census.get(key, 0)
            if cnt:
                val += coeff * cnt
        p.append(val)
    alpha = newton_ps_to_alpha(p, m)
    out = []
    for t, a in enumerate(alpha):
        if a.denominator != 1:
            raise InternalConsistencyError(f"alpha_{t} = {a} is not an integer")
        out.append(int(a))
    return out


# ---------------------------------------------------------------------------
# expansion disk cache

def _write_rational(buf: bytearray, x: Fraction) -> None:
    num, den = x.numerator, x.denominator
    sign = 1 if num < 0 else 0
    mag = abs(num)
    nb = mag.to_bytes((mag.bit_length() + 7) // 8 or 1, "big")
    db = den.to_bytes((den.bit_length() + 7) // 8 or 1, "big")
    buf.append(sign)
    buf.extend(struct.pack("<I", len(nb)))
    buf.extend(nb)
    buf.extend(struct.pack("<I", len(db)))
    buf.extend(db)


def _read_rational(data: bytes, off: int) -> tuple[Fraction, int]:
    sign = data[off]
    off += 1
    (nlen,) = struct.unpack_from("<I", data, off)
    off += 4
    num = int.from_bytes(data[off : off + nlen], "big")
    off += nlen
    (dlen,) = struct.unpack_from("<I", data, off)
    off += 4
    den = int.from_bytes(data[off : off + dlen], "big")
    off += dlen
    return Fraction(-num if sign else num, den), off


def save_expansion_cache(path) -> int:
    """Persist every in-memory expansion; returns the record count."""
    buf = bytearray()
    buf.extend(_CACHE_MAGIC)
    buf.extend(struct.pack("<HI", _CACHE_VERSION, len(_PS_CACHE)))
    for (t, cap), exp in sorted(_PS_CACHE.items()):
        buf.extend(struct.pack("<HHI", t, cap, len(exp)))
        for key, coeff in sorted(exp.items()):
            buf.extend(struct.pack("<BQ", key.n, key.bits))
            _write_rational(buf, coeff)
    with open(path, "wb") as fh:
        fh.write(bytes(buf))
    return len(_PS_CACHE)


def load_expansion_cache(path) -> int:
    """Merge expansions from a cache file; returns the record count loaded."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != _CACHE_MAGIC:
        raise ValueError("not an expansion cache file")
    try:
        version, count = struct.unpack_from("<HI", data, 4)
        if version != _CACHE_VERSION:
            raise ValueError(f"unsupported cache version {version}")
        off = 10
        loaded = {}
        for _ in range(count):
            t, cap, nterms = struct.unpack_from("<HHI", data, off)
            off += 8
            exp: dict[CanonicalKey, Fraction] = {}
            for _ in range(nterms):
                k, ebits = struct.unpack_from("<BQ", data, off)
                off += 9
                coeff, off = _read_rational(data, off)
                exp[CanonicalKey(k, ebits)] = coeff
            loaded[(t, cap)] = exp
    except (struct.error, IndexError):
        raise ValueError("truncated or corrupt expansion cache file") from None
    _PS_CACHE.update(loaded)
    return count


def reset_expansion_cache() -> None:
    _PS_CACHE.clear()
    _PRODUCT_CACHE.clear()
