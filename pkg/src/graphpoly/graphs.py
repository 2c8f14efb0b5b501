"""Undirected simple graphs and the basic algorithms everything else builds on.

Graphs are immutable: a vertex count plus sorted adjacency tuples. Vertex
sets are plain Python ints used as bitmasks (bit v set = vertex v present),
which works uniformly for any number of vertices; the jitted kernels are the
only place a 64-bit width limit applies.

Canonical forms for small graphs (<= 10 vertices by default) are computed by
a pruned search for the lexicographically minimal packed adjacency code over
all vertex orderings. Two graphs get the same key iff they are isomorphic.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .errors import BudgetExceededError, GraphParseError

CANONICAL_CAP = 10


# ---------------------------------------------------------------------------
# bitmask helpers

def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


# ---------------------------------------------------------------------------
# graph type

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbor_masks(self) -> tuple[int, ...]:
        return _neighbor_masks(self)


@lru_cache(maxsize=4096)
def _neighbor_masks(g: Graph) -> tuple[int, ...]:
    return tuple(mask_of(a) for a in g.adj)


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel: vertex v becomes perm[v]."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    edges = list(g1.edges()) + [(u + off, v + off) for u, v in g2.edges()]
    return Graph.from_edges(g1.n + g2.n, edges)


# ---------------------------------------------------------------------------
# parsing and serialization

def parse_edge_list(text: str) -> Graph:
    """Parse lines "u v", optional leading "n <count>", '#' comments."""
    declared_n = None
    edges = []
    max_seen = -1
    first_data_line = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if first_data_line and parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphParseError("bad vertex-count line, expected 'n <count>'", lineno)
            declared_n = int(parts[1])
            first_data_line = False
            continue
        first_data_line = False
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphParseError(f"negative vertex in {line!r}", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    n = declared_n if declared_n is not None else max_seen + 1
    if max_seen >= n:
        raise GraphParseError(f"vertex {max_seen} out of range for declared n={n}")
    return Graph.from_edges(n, edges)


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [[u, v] for u, v in g.edges()]})


def graph_from_json(text: str) -> Graph:
    obj = json.loads(text)
    return Graph.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])


# ---------------------------------------------------------------------------
# basic algorithms

def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adj), default=0)


def induced_subgraph(g: Graph, vset: int) -> tuple[Graph, list[int]]:
    """Subgraph induced by bitmask vset, plus the old-vertex list (remap record)."""
    verts = list(bits(vset))
    if verts and verts[-1] >= g.n:
        raise ValueError(f"vertex {verts[-1]} out of range")
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for u in verts:
        for w in g.adj[u]:
            if u < w and w in index:
                edges.append((index[u], index[w]))
    return Graph.from_edges(len(verts), edges), verts


def is_connected(g: Graph) -> bool:
    # 0-vertex graph is not connected by convention; 1-vertex graph is.
    if g.n == 0:
        return False
    masks = g.neighbor_masks()
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= masks[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full_mask(g.n)


def connected_components(g: Graph) -> list[int]:
    """Vertex-set bitmasks of the components, ordered by least vertex."""
    masks = g.neighbor_masks()
    remaining = full_mask(g.n)
    out = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= masks[v]
            frontier = nxt & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def _bareiss_det(mat: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    m = [row[:] for row in mat]
    k = len(m)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[k - 1][k - 1]


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees via a Laplacian cofactor, exact integers."""
    if g.n == 0:
        raise ValueError("spanning_tree_count needs at least one vertex")
    if g.n == 1:
        return 1
    if not is_connected(g):
        return 0
    k = g.n - 1
    mat = [[0] * k for _ in range(k)]
    for i in range(1, g.n):
        mat[i - 1][i - 1] = g.degree(i)
        for j in g.adj[i]:
            if j >= 1:
                mat[i - 1][j - 1] = -1
    return _bareiss_det(mat)


# ---------------------------------------------------------------------------
# canonical keys for small graphs

class CanonicalKey(NamedTuple):
    """Isomorphism-invariant key: vertex count + minimal packed edge code."""

    n: int
    bits: int


def pack_edge_bits(k: int, nbr_masks: Sequence[int]) -> int:
    """Pack the upper triangle, column by column, earliest bits most significant."""
    code = 0
    for j in range(k):
        for i in range(j):
            code = code << 1 | (nbr_masks[i] >> j & 1)
    return code


def unpack_edge_bits(k: int, code: int) -> tuple[int, ...]:
    """Inverse of pack_edge_bits, back to neighbor masks."""
    masks = [0] * k
    for j in reversed(range(k)):
        for i in reversed(range(j)):
            if code & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            code >>= 1
    return tuple(masks)


def _min_code(k: int, nbr: Sequence[int]) -> int:
    """Lexicographically minimal packed code over all vertex orderings.

    Depth-first placement with three prunings: candidates tried in ascending
    word order, branches abandoned once the partial code exceeds the best
    prefix, and interchangeable twin vertices (identical neighborhoods among
    the unplaced part) collapsed to one branch.
    """
    total_bits = k * (k - 1) // 2
    best = None

    def extend(placed: tuple[int, ...], used: int, code: int, nbits: int) -> None:
        nonlocal best
        j = len(placed)
        if j == k:
            if best is None or code < best:
                best = code
            return
        cands = []
        for v in range(k):
            if used >> v & 1:
                continue
            word = 0
            for p in placed:
                word = word << 1 | (nbr[p] >> v & 1)
            cands.append((word, v))
        cands.sort()
        seen = set()
        for word, v in cands:
            open_sig = (word, nbr[v] & ~used & ~(1 << v))
            closed_sig = (word, (nbr[v] & ~used) | 1 << v)
            if open_sig in seen or closed_sig in seen:
                continue
            seen.add(open_sig)
            seen.add(closed_sig)
            ncode = code << j | word
            nb = nbits + j
            if best is not None and ncode > best >> (total_bits - nb):
                continue
            extend(placed + (v,), used | 1 << v, ncode, nb)

    extend((), 0, 0, 0)
    return best if best is not None else 0


@lru_cache(maxsize=1 << 18)
def _canonical_bits(k: int, raw_bits: int) -> int:
    if k <= 1:
        return 0
    from . import _kernels

    return _kernels.min_code(k, unpack_edge_bits(k, raw_bits), _min_code)


def canonical_key(g: Graph, cap: int = CANONICAL_CAP) -> CanonicalKey:
    if g.n > cap:
        raise BudgetExceededError(
            f"canonical_key supports at most {cap} vertices, got {g.n}",
            cap_name="canonical_cap",
        )
    raw = pack_edge_bits(g.n, g.neighbor_masks())
    return CanonicalKey(g.n, _canonical_bits(g.n, raw))


def canonical_key_of_masks(k: int, nbr_masks: Sequence[int]) -> CanonicalKey:
    """canonical_key for a subgraph already given as local neighbor masks."""
    return CanonicalKey(k, _canonical_bits(k, pack_edge_bits(k, nbr_masks)))


@lru_cache(maxsize=1 << 16)
def key_graph(key: CanonicalKey) -> Graph:
    """A concrete representative graph of the key (canonically labeled)."""
    masks = unpack_edge_bits(key.n, key.bits)
    edges = [(i, j) for i in range(key.n) for j in bits(masks[i]) if i < j]
    return Graph.from_edges(key.n, edges)


def key_is_connected(key: CanonicalKey) -> bool:
    return is_connected(key_graph(key))


def key_max_degree(key: CanonicalKey) -> int:
    return max_degree(key_graph(key))


# ---------------------------------------------------------------------------
# generators

def generate(kind: str, *params: int, seed: int | None = None) -> Graph:
    """Named graph families. Random kinds require a seed."""
    if kind == "path":
        (n,) = params
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "complete":
        (n,) = params
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "star":
        (leaves,) = params
        return Graph.from_edges(leaves + 1, [(0, i + 1) for i in range(leaves)])
    if kind == "complete_bipartite":
        a, b = params
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if kind == "grid":
        rows, cols = params
        def vid(r, c):
            return r * cols + c
        edges = []
        for r in range(rows):
            for c in range(cols):
                if c + 1 < cols:
                    edges.append((vid(r, c), vid(r, c + 1)))
                if r + 1 < rows:
                    edges.append((vid(r, c), vid(r + 1, c)))
        return Graph.from_edges(rows * cols, edges)
    if kind == "random_regular":
        n, d = params
        if seed is None:
            raise ValueError("random_regular requires a seed")
        if n * d % 2 != 0:
            raise ValueError("random_regular needs n*d even")
        return _random_regular(n, d, seed)
    if kind == "random_tree":
        (n,) = params
        if seed is None:
            raise ValueError("random_tree requires a seed")
        return _random_tree(n, seed)
    raise ValueError(f"unknown generator kind {kind!r}")


def _random_regular(n: int, d: int, seed: int) -> Graph:
    rng = random.Random(seed)
    for _ in range(2000):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return Graph.from_edges(n, sorted(edges))
    raise RuntimeError(f"random_regular({n},{d}) failed to find a simple pairing")


def _random_tree(n: int, seed: int) -> Graph:
    if n <= 1:
        return Graph.from_edges(n, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    rng = random.Random(seed)
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, v = leaves[0], leaves[1]
    edges.append((u, v))
    return Graph.from_edges(n, edges)
