"""Simple undirected graphs stored as one adjacency bitmask per vertex."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .config import LIMITS
from .errors import Graph6Error, SizeError


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``rows[v]`` has bit ``u`` set iff uv is an edge."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.n > LIMITS.vertex_cap:
            raise SizeError(f"graph on {self.n} vertices exceeds cap {LIMITS.vertex_cap}")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside the graph")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in members(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Graph":
        n = len(matrix)
        return cls(n, tuple(to_mask(j for j in range(n) if matrix[i][j]) for i in range(n)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(members(self.rows[v]))

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in members(self.rows[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def to_graph6(self) -> str:
        return encode_graph6(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={encode_graph6(self)!r})"


def _raw(n: int, rows: tuple[int, ...]) -> Graph:
    # internal fast path: rows already known to be a valid adjacency
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "rows", rows)
    return g


# --- constructors for the usual small families ---------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


# --- basic operations ---------------------------------------------------

def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return _raw(g.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(g.rows)))


def induced_mask(g: Graph, mask: int) -> Graph:
    """Induced subgraph on ``mask``; new vertex i is the i-th smallest original label."""
    verts = members(mask)
    rows = []
    for v in verts:
        r = g.rows[v] & mask
        row = 0
        for i, u in enumerate(verts):
            if r >> u & 1:
                row |= 1 << i
        rows.append(row)
    return _raw(len(verts), tuple(rows))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    vs = set(vertices)
    for v in vs:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise ValueError(f"vertex {v!r} is not in a graph on {g.n} vertices")
    return induced_mask(g, to_mask(vs))


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel so that old vertex v becomes ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of range(n)")
    rows = [0] * g.n
    for v, r in enumerate(g.rows):
        rows[perm[v]] = to_mask(perm[u] for u in members(r))
    return _raw(g.n, tuple(rows))


def add_vertex(g: Graph, neighborhood: int) -> Graph:
    """Append vertex n adjacent to the vertices in the mask ``neighborhood``."""
    n = g.n
    rows = [r | (1 << n) if neighborhood >> v & 1 else r for v, r in enumerate(g.rows)]
    rows.append(neighborhood)
    if n + 1 > LIMITS.vertex_cap:
        raise SizeError(f"graph on {n + 1} vertices exceeds cap {LIMITS.vertex_cap}")
    return _raw(n + 1, tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_mask(g, g.vertex_mask & ~(1 << v))


def component_masks(g: Graph) -> list[int]:
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def edges_within(g: Graph, mask: int) -> int:
    return sum((g.rows[v] & mask).bit_count() for v in members(mask)) // 2


def edges_crossing(g: Graph, mask: int) -> int:
    outside = g.vertex_mask & ~mask
    return sum((g.rows[v] & outside).bit_count() for v in members(mask))


def bfs_distance(g: Graph, source: int, target: int, removed_edge: tuple[int, int] | None = None) -> int | None:
    """Shortest path length, optionally ignoring one edge; None if unreachable."""
    if source == target:
        return 0
    rows = list(g.rows)
    if removed_edge is not None:
        a, b = removed_edge
        rows[a] &= ~(1 << b)
        rows[b] &= ~(1 << a)
    seen = frontier = 1 << source
    dist = 0
    while frontier:
        dist += 1
        nxt = 0
        for v in members(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        if frontier >> target & 1:
            return dist
        seen |= frontier
    return None


def subsets_of_size(mask: int, k: int) -> Iterator[int]:
    for combo in combinations(members(mask), k):
        yield to_mask(combo)


# --- graph6 ----------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise SizeError("graph6 supports at most 68719476735 vertices; only the 258047 form is implemented")


def encode_graph6_bytes(g: Graph) -> bytes:
    bits = []
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5])
        for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def encode_graph6(g: Graph) -> str:
    return encode_graph6_bytes(g).decode("ascii")


def decode_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c!r} outside the printable graph6 range", i)
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("8-byte vertex counts are not supported", 1)
        if len(data) < 4:
            raise Graph6Error("truncated vertex-count header", len(data))
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        start = 4
    else:
        n = data[0] - 63
        start = 1
    if n > LIMITS.vertex_cap:
        raise SizeError(f"graph6 header declares {n} vertices, cap is {LIMITS.vertex_cap}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[start:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}", start + min(len(body), need))
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("non-zero padding bits", start + need - 1)
    return Graph(n, tuple(rows))
