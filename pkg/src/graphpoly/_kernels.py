"""Hot counting loops, JIT-compiled with numba when available.

Each kernel has a pure-Python twin with the same semantics (suffix ``_py``).
The wrappers at the bottom dispatch per call: the jitted path is used when
numba imported, the env flag allows it, and the instance fits 64-bit masks
(n <= 62, subgraph keys <= 10 vertices). Set ``GRAPHPOLY_NUMBA=0`` to force
the pure path everywhere; ``backend()`` reports which one is active.

Exact big-integer and rational arithmetic stays outside this module.
"""

from __future__ import annotations

import os
from typing import Iterator, Sequence

import numpy as np

_env = os.environ.get("GRAPHPOLY_NUMBA", "1")
NUMBA_ENABLED = _env not in ("0", "false", "no")
if NUMBA_ENABLED:
    try:
        from numba import njit
        from numba.core import types
        from numba.typed import Dict
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

_MAX_MASK_BITS = 62
_KEY_SIZE_SHIFT = 48


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "python"


# ---------------------------------------------------------------------------
# independent-set size counts (coefficients of the independence polynomial)

def independence_counts_py(nbr: Sequence[int], n: int) -> list[int]:
    closed = [nbr[v] | (1 << v) for v in range(n)]
    alpha = [0] * (n + 1)
    alpha[0] = 1

    def rec(free: int, size: int) -> None:
        while free:
            low = free & -free
            v = low.bit_length() - 1
            alpha[size + 1] += 1
            rec(free & ~closed[v], size + 1)
            free ^= low

    rec((1 << n) - 1, 0)
    while len(alpha) > 1 and alpha[-1] == 0:
        alpha.pop()
    return alpha


if NUMBA_ENABLED:

    @njit(cache=True)
    def _independence_counts_nb(closed: np.ndarray, n: int) -> np.ndarray:
        alpha = np.zeros(n + 1, dtype=np.int64)
        alpha[0] = 1
        cap = 4 * (n + 2) * (n + 2)
        st_free = np.empty(cap, dtype=np.int64)
        st_size = np.empty(cap, dtype=np.int64)
        sp = 0
        st_free[0] = (np.int64(1) << n) - 1
        st_size[0] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            free = st_free[sp]
            size = st_size[sp]
            while free != 0:
                low = free & -free
                v = 0
                while (low >> v) & 1 == 0:
                    v += 1
                alpha[size + 1] += 1
                st_free[sp] = free & ~closed[v]
                st_size[sp] = size + 1
                sp += 1
                free ^= low
        return alpha


def independence_counts(nbr: Sequence[int], n: int) -> list[int]:
    """alpha_k = number of independent sets of size k, trailing zeros trimmed."""
    if NUMBA_ENABLED and n <= _MAX_MASK_BITS:
        closed = np.array([nbr[v] | (1 << v) for v in range(n)], dtype=np.int64)
        alpha = [int(x) for x in _independence_counts_nb(closed, n)]
        while len(alpha) > 1 and alpha[-1] == 0:
            alpha.pop()
        return alpha
    return independence_counts_py(nbr, n)


# ---------------------------------------------------------------------------
# connected induced-set enumeration and census

def iter_connected_masks(nbr: Sequence[int], n: int, kmax: int) -> Iterator[int]:
    """Every connected vertex set of size 1..kmax, each exactly once.

    Grow-from-least-vertex rule: a set with minimum vertex v is only ever
    extended by vertices > v, and each new vertex enters via the extension
    frontier the moment it first becomes reachable, so no set repeats.
    """
    for root in range(n):
        above = -1 << (root + 1)
        stack = [(1 << root, nbr[root] & above, nbr[root])]
        while stack:
            s, ext, seen_nbrs = stack.pop()
            yield s
            if bin(s).count("1") == kmax:
                continue
            while ext:
                low = ext & -ext
                u = low.bit_length() - 1
                ext ^= low
                excl = nbr[u] & ~s & ~seen_nbrs & above
                stack.append((s | low, ext | excl, seen_nbrs | nbr[u]))


def _edge_code(s: int, nbr: Sequence[int]) -> tuple[int, int]:
    """(size, packed edge bits) of the induced subgraph on mask s.

    Packing matches graphs.pack_edge_bits: upper triangle column by column,
    earliest bits most significant.
    """
    verts = []
    m = s
    while m:
        low = m & -m
        verts.append(low.bit_length() - 1)
        m ^= low
    k = len(verts)
    code = 0
    for j in range(k):
        for i in range(j):
            code = code << 1 | (nbr[verts[i]] >> verts[j] & 1)
    return k, code


def connected_census_py(nbr: Sequence[int], n: int, kmax: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for s in iter_connected_masks(nbr, n, kmax):
        k, code = _edge_code(s, nbr)
        key = (k << _KEY_SIZE_SHIFT) | code
        counts[key] = counts.get(key, 0) + 1
    return counts


if NUMBA_ENABLED:

    @njit(cache=True)
    def _connected_census_nb(nbr: np.ndarray, n: int, kmax: int) -> "Dict":
        counts = Dict.empty(types.int64, types.int64)
        cap = 1024
        st_s = np.empty(cap, dtype=np.int64)
        st_e = np.empty(cap, dtype=np.int64)
        st_nb = np.empty(cap, dtype=np.int64)
        vlist = np.empty(kmax + 1, dtype=np.int64)
        for root in range(n):
            above = np.int64(-1) << (root + 1)
            sp = 0
            st_s[0] = np.int64(1) << root
            st_e[0] = nbr[root] & above
            st_nb[0] = nbr[root]
            sp = 1
            while sp > 0:
                sp -= 1
                s = st_s[sp]
                ext = st_e[sp]
                seen = st_nb[sp]
                # census key of s
                size = 0
                m = s
                while m != 0:
                    low = m & -m
                    v = 0
                    while (low >> v) & 1 == 0:
                        v += 1
                    vlist[size] = v
                    size += 1
                    m ^= low
                code = np.int64(0)
                for j in range(size):
                    for i in range(j):
                        code = code << 1 | (nbr[vlist[i]] >> vlist[j] & 1)
                key = (np.int64(size) << _KEY_SIZE_SHIFT) | code
                if key in counts:
                    counts[key] += 1
                else:
                    counts[key] = 1
                if size == kmax:
                    continue
                while ext != 0:
                    low = ext & -ext
                    u = 0
                    while (low >> u) & 1 == 0:
                        u += 1
                    ext ^= low
                    if sp >= cap:
                        ncap = cap * 2
                        tmp_s = np.empty(ncap, dtype=np.int64)
                        tmp_e = np.empty(ncap, dtype=np.int64)
                        tmp_nb = np.empty(ncap, dtype=np.int64)
                        tmp_s[:cap] = st_s
                        tmp_e[:cap] = st_e
                        tmp_nb[:cap] = st_nb
                        st_s, st_e, st_nb = tmp_s, tmp_e, tmp_nb
                        cap = ncap
                    excl = nbr[u] & ~s & ~seen & above
                    st_s[sp] = s | low
                    st_e[sp] = ext | excl
                    st_nb[sp] = seen | nbr[u]
                    sp += 1
        return counts


def connected_census(nbr: Sequence[int], n: int, kmax: int) -> dict[tuple[int, int], int]:
    """Counts of connected induced sets, keyed by (size, packed edge bits)."""
    if NUMBA_ENABLED and n <= _MAX_MASK_BITS and kmax <= 10:
        arr = np.array(list(nbr), dtype=np.int64)
        raw = _connected_census_nb(arr, n, kmax)
        out = {}
        for key, cnt in raw.items():
            out[(int(key) >> _KEY_SIZE_SHIFT, int(key) & ((1 << _KEY_SIZE_SHIFT) - 1))] = int(cnt)
        return out
    raw_py = connected_census_py(nbr, n, kmax)
    return {
        (key >> _KEY_SIZE_SHIFT, key & ((1 << _KEY_SIZE_SHIFT) - 1)): cnt
        for key, cnt in raw_py.items()
    }


# ---------------------------------------------------------------------------
# minimal-code canonicalization (the bulk cost of the product algebra)

if NUMBA_ENABLED:

    @njit(cache=True)
    def _min_code_nb(k: int, nbr: np.ndarray) -> np.int64:
        total_bits = k * (k - 1) // 2
        best = np.int64(-1)
        placed = np.empty(k, dtype=np.int64)
        codes = np.zeros(k + 1, dtype=np.int64)
        cv = np.empty((k, k), dtype=np.int64)
        cw = np.empty((k, k), dtype=np.int64)
        osig = np.empty((k, k), dtype=np.int64)
        csig = np.empty((k, k), dtype=np.int64)
        cnt = np.zeros(k, dtype=np.int64)
        idx = np.zeros(k, dtype=np.int64)
        used = np.int64(0)
        depth = 0
        build = True
        while True:
            if build:
                c = 0
                for v in range(k):
                    if (used >> v) & 1:
                        continue
                    word = np.int64(0)
                    for i in range(depth):
                        word = (word << 1) | ((nbr[placed[i]] >> v) & 1)
                    op = nbr[v] & ~used & ~(np.int64(1) << v)
                    cl = (nbr[v] & ~used) | (np.int64(1) << v)
                    dup = False
                    for j in range(c):
                        if cw[depth, j] == word and (
                            osig[depth, j] == op or csig[depth, j] == cl
                        ):
                            dup = True
                            break
                    if dup:
                        continue
                    cv[depth, c] = v
                    cw[depth, c] = word
                    osig[depth, c] = op
                    csig[depth, c] = cl
                    c += 1
                for a in range(1, c):
                    wv = cw[depth, a]
                    vv = cv[depth, a]
                    ov = osig[depth, a]
                    lv = csig[depth, a]
                    b = a - 1
                    while b >= 0 and cw[depth, b] > wv:
                        cw[depth, b + 1] = cw[depth, b]
                        cv[depth, b + 1] = cv[depth, b]
                        osig[depth, b + 1] = osig[depth, b]
                        csig[depth, b + 1] = csig[depth, b]
                        b -= 1
                    cw[depth, b + 1] = wv
                    cv[depth, b + 1] = vv
                    osig[depth, b + 1] = ov
                    csig[depth, b + 1] = lv
                cnt[depth] = c
                idx[depth] = 0
                build = False
            if idx[depth] >= cnt[depth]:
                depth -= 1
                if depth < 0:
                    break
                used &= ~(np.int64(1) << placed[depth])
                continue
            i = idx[depth]
            idx[depth] = i + 1
            v = cv[depth, i]
            ncode = (codes[depth] << depth) | cw[depth, i]
            nbits = (depth + 1) * depth // 2
            if best >= 0 and ncode > (best >> (total_bits - nbits)):
                continue
            placed[depth] = v
            used |= np.int64(1) << v
            codes[depth + 1] = ncode
            depth += 1
            if depth == k:
                if best < 0 or codes[k] < best:
                    best = codes[k]
                depth -= 1
                used &= ~(np.int64(1) << placed[depth])
                continue
            build = True
        if best < 0:
            return np.int64(0)
        return best


def min_code(k: int, nbr: Sequence[int], fallback) -> int:
    """Lexicographically minimal packed adjacency code over vertex orderings."""
    if NUMBA_ENABLED and 2 <= k <= 10:
        return int(_min_code_nb(k, np.array(list(nbr), dtype=np.int64)))
    return fallback(k, nbr)


# ---------------------------------------------------------------------------
# signed edge-subset censuses (random cluster sums, polymer weights)

def signed_component_census_py(edges: Sequence[tuple[int, int]], n: int) -> list[int]:
    m = len(edges)
    acc = [0] * (n + 1)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sub in range(1 << m):
        for i in range(n):
            parent[i] = i
        comps = n
        bitsleft = sub
        popa = 0
        while bitsleft:
            e = (bitsleft & -bitsleft).bit_length() - 1
            bitsleft &= bitsleft - 1
            popa += 1
            ru, rv = find(edges[e][0]), find(edges[e][1])
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        acc[comps] += 1 if popa % 2 == 0 else -1
    return acc


if NUMBA_ENABLED:

    @njit(cache=True)
    def _signed_component_census_nb(eu: np.ndarray, ev: np.ndarray, n: int) -> np.ndarray:
        m = eu.shape[0]
        acc = np.zeros(n + 1, dtype=np.int64)
        parent = np.empty(n, dtype=np.int64)
        for sub in range(1 << m):
            for i in range(n):
                parent[i] = i
            comps = n
            par = 0
            for e in range(m):
                if (sub >> e) & 1:
                    par ^= 1
                    x = eu[e]
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    y = ev[e]
                    while parent[y] != y:
                        parent[y] = parent[parent[y]]
                        y = parent[y]
                    if x != y:
                        parent[x] = y
                        comps -= 1
            if par == 0:
                acc[comps] += 1
            else:
                acc[comps] -= 1
        return acc


def signed_component_census(edges: Sequence[tuple[int, int]], n: int) -> list[int]:
    """acc[k] = sum over edge subsets F with k components of (-1)^|F|.

    Components counted on all n vertices; acc[k] for k=1..n are exactly the
    chromatic polynomial coefficients via the random cluster sum.
    """
    if NUMBA_ENABLED and len(edges) > 0:
        eu = np.array([e[0] for e in edges], dtype=np.int64)
        ev = np.array([e[1] for e in edges], dtype=np.int64)
        return [int(x) for x in _signed_component_census_nb(eu, ev, n)]
    return signed_component_census_py(edges, n)


# ---------------------------------------------------------------------------
# batched exact spanning-tree counts (int64-safe up to 12 vertices)

SPANNING_KERNEL_MAX = 12


def spanning_counts_py(nbr: Sequence[int], masks: Sequence[int], tau_fn) -> list[int]:
    return [tau_fn(s) for s in masks]


if NUMBA_ENABLED:

    @njit(cache=True)
    def _spanning_counts_nb(nbr: np.ndarray, masks: np.ndarray) -> np.ndarray:
        out = np.empty(masks.shape[0], dtype=np.int64)
        verts = np.empty(64, dtype=np.int64)
        mat = np.empty((SPANNING_KERNEL_MAX, SPANNING_KERNEL_MAX), dtype=np.int64)
        for idx in range(masks.shape[0]):
            s = masks[idx]
            k = 0
            m = s
            while m != 0:
                low = m & -m
                v = 0
                while (low >> v) & 1 == 0:
                    v += 1
                verts[k] = v
                k += 1
                m ^= low
            if k == 1:
                out[idx] = 1
                continue
            # Laplacian cofactor on local labels 1..k-1
            d = k - 1
            for i in range(d):
                for j in range(d):
                    mat[i, j] = 0
            for i in range(1, k):
                deg = 0
                for j in range(k):
                    if j != i and (nbr[verts[i]] >> verts[j]) & 1:
                        deg += 1
                        if j >= 1:
                            mat[i - 1, j - 1] = -1
                mat[i - 1, i - 1] = deg
            # Bareiss, int64-exact for d <= 11
            sign = 1
            prev = 1
            det = np.int64(0)
            singular = False
            for i in range(d - 1):
                if mat[i, i] == 0:
                    found = False
                    for r in range(i + 1, d):
                        if mat[r, i] != 0:
                            for c in range(d):
                                t = mat[i, c]
                                mat[i, c] = mat[r, c]
                                mat[r, c] = t
                            sign = -sign
                            found = True
                            break
                    if not found:
                        singular = True
                        break
                for r in range(i + 1, d):
                    for c in range(i + 1, d):
                        mat[r, c] = (mat[r, c] * mat[i, i] - mat[r, i] * mat[i, c]) // prev
                    mat[r, i] = 0
                prev = mat[i, i]
            if singular:
                out[idx] = 0
            else:
                det = sign * mat[d - 1, d - 1]
                out[idx] = det
        return out


def spanning_tree_counts(nbr: Sequence[int], n: int, masks: Sequence[int], tau_fn) -> list[int]:
    """Spanning-tree counts of the subgraphs induced by each mask.

    tau_fn(mask) is the exact big-integer fallback; the jitted path handles
    sets of at most SPANNING_KERNEL_MAX vertices (int64-safe by the Hadamard
    bound), larger sets fall back individually.
    """
    masks = list(masks)
    if not masks:
        return []
    if NUMBA_ENABLED and n <= _MAX_MASK_BITS:
        small_idx = [i for i, s in enumerate(masks) if bin(s).count("1") <= SPANNING_KERNEL_MAX]
        out: list[int] = [0] * len(masks)
        if small_idx:
            arr = np.array(list(nbr), dtype=np.int64)
            small = np.array([masks[i] for i in small_idx], dtype=np.int64)
            vals = _spanning_counts_nb(arr, small)
            for i, v in zip(small_idx, vals):
                out[i] = int(v)
        for i, s in enumerate(masks):
            if bin(s).count("1") > SPANNING_KERNEL_MAX:
                out[i] = tau_fn(s)
        return out
    return spanning_counts_py(nbr, masks, tau_fn)
