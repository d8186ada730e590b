"""Canonical labeling, isomorphism, automorphism groups and orbits.

The canonical labeling is an individualization-refinement search: the
vertex partition is refined to an equitable one, a vertex of the first
non-singleton cell is individualized, and the search recurses until the
partition is discrete.  Every leaf is a labeling; the canonical form is the
leaf whose relabeled adjacency rows are lexicographically largest.  Two
leaves with equal relabeled rows differ by an automorphism, which is used to
prune sibling branches and, collected along the first path, yields a base and
strong generating set for the automorphism group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Iterator, Sequence

from .config import LIMITS
from .errors import SizeError
from .graph import Graph, _raw, encode_graph6_bytes, members, to_mask

Perm = tuple[int, ...]


def _refine(rows: Sequence[int], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    stack = [to_mask(c) for c in cells]
    while stack:
        if len(cells) == len(rows):
            break
        w = stack.pop()
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            counts = [(rows[v] & w).bit_count() for v in c]
            first = counts[0]
            if all(k == first for k in counts):
                out.append(c)
                continue
            groups: dict[int, list[int]] = {}
            for v, k in zip(c, counts):
                groups.setdefault(k, []).append(v)
            for k in sorted(groups):
                part = tuple(groups[k])
                out.append(part)
                stack.append(to_mask(part))
        cells = out
    return cells


class _Backjump(Exception):
    def __init__(self, depth: int):
        self.depth = depth


class _Search:
    def __init__(self, g: Graph):
        self.rows = g.rows
        self.n = g.n
        self.leaves: dict[tuple[int, ...], tuple[Perm, tuple[int, ...]]] = {}
        self.best_cert: tuple[int, ...] | None = None
        self.best_lab: Perm = ()
        self.generators: list[Perm] = []
        self.base: tuple[int, ...] | None = None

    def run(self) -> None:
        if self.n == 0:
            self.best_cert, self.best_lab, self.base = (), (), ()
            return
        try:
            self._node([tuple(range(self.n))], ())
        except _Backjump:  # pragma: no cover - root never backjumps past itself
            pass

    def _cert(self, lab: Perm) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        rows = self.rows
        out = []
        for v in lab:
            r = 0
            for u in members(rows[v]):
                r |= 1 << pos[u]
            out.append(r)
        return tuple(out)

    def _leaf(self, cells, path) -> None:
        lab = tuple(c[0] for c in cells)
        cert = self._cert(lab)
        if self.base is None:
            self.base = path
        seen = self.leaves.get(cert)
        if seen is None:
            self.leaves[cert] = (lab, path)
            if self.best_cert is None or cert > self.best_cert:
                self.best_cert, self.best_lab = cert, lab
            return
        old_lab, old_path = seen
        # old_lab[i] and lab[i] play the same role, so v -> old_lab[pos_new(v)] is an automorphism
        auto = [0] * self.n
        for a, b in zip(lab, old_lab):
            auto[b] = a
        self.generators.append(tuple(auto))
        common = 0
        for a, b in zip(path, old_path):
            if a != b:
                break
            common += 1
        raise _Backjump(common)

    def _orbit_rep(self, prefix: tuple[int, ...]):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            if all(gen[p] == p for p in prefix):
                for x, y in enumerate(gen):
                    rx, ry = find(x), find(y)
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        return find

    def _node(self, cells, path) -> None:
        cells = _refine(self.rows, cells)
        depth = len(path)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self._leaf(cells, path)
            return
        cell = cells[target]
        tried: list[int] = []
        for v in sorted(cell):
            if tried:
                find = self._orbit_rep(path)
                rv = find(v)
                if any(find(u) == rv for u in tried):
                    continue
            tried.append(v)
            child = cells[:target] + [(v,), tuple(x for x in cell if x != v)] + cells[target + 1:]
            try:
                self._node(child, path + (v,))
            except _Backjump as jump:
                if jump.depth < depth:
                    raise


@lru_cache(maxsize=1 << 18)
def _search(g: Graph) -> _Search:
    if g.n > LIMITS.vertex_cap:
        raise SizeError(f"graph on {g.n} vertices exceeds cap {LIMITS.vertex_cap}")
    s = _Search(g)
    s.run()
    s.leaves = None
    return s


# --- canonical form -------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """``key`` is the graph6 encoding of the canonically relabeled graph.

    ``labeling[i]`` is the original vertex placed at canonical position i.
    """

    key: bytes
    labeling: Perm

    @property
    def graph(self) -> Graph:
        from .graph import decode_graph6

        return decode_graph6(self.key)


def canonical_form(g: Graph) -> CanonicalForm:
    s = _search(g)
    return CanonicalForm(encode_graph6_bytes(_raw(g.n, s.best_cert)), s.best_lab)


@lru_cache(maxsize=1 << 20)
def canonical_key(g: Graph) -> bytes:
    return encode_graph6_bytes(_raw(g.n, _search(g).best_cert))


def canonical_graph(g: Graph) -> Graph:
    return _raw(g.n, _search(g).best_cert)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_key(g) == canonical_key(h)


def an_isomorphism(g: Graph, h: Graph) -> Perm | None:
    """A vertex map phi with g.adjacent(u, v) == h.adjacent(phi[u], phi[v])."""
    if not are_isomorphic(g, h):
        return None
    lg, lh = _search(g).best_lab, _search(h).best_lab
    phi = [0] * g.n
    for a, b in zip(lg, lh):
        phi[a] = b
    return tuple(phi)


def isomorphisms(g: Graph, h: Graph) -> Iterator[Perm]:
    phi = an_isomorphism(g, h)
    if phi is None:
        return
    for alpha in automorphism_group(g).elements():
        yield tuple(phi[alpha[v]] for v in range(g.n))


# --- permutation helpers -------------------------------------------------

def compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    order = 1
    for s in range(len(p)):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = lcm(order, length)
    return order


def image_mask(p: Perm, mask: int) -> int:
    out = 0
    for v in members(mask):
        out |= 1 << p[v]
    return out


def is_automorphism(g: Graph, p: Perm) -> bool:
    return all(image_mask(p, g.rows[v]) == g.rows[p[v]] for v in range(g.n))


# --- automorphism group --------------------------------------------------

@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[frozenset[int], ...]

    def block_of(self, v: int) -> frozenset[int]:
        for b in self.blocks:
            if v in b:
                return b
        raise ValueError(f"vertex {v} not covered")

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class AutomorphismGroup:
    n: int
    generators: tuple[Perm, ...]
    base: tuple[int, ...]
    transversals: tuple[tuple[Perm, ...], ...] = field(repr=False)

    @property
    def identity(self) -> Perm:
        return tuple(range(self.n))

    @property
    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def elements(self) -> Iterator[Perm]:
        """Every group element exactly once, as products of coset representatives."""
        ident = self.identity
        for choice in product(*self.transversals):
            p = ident
            for t in choice:
                p = compose(p, t)
            yield p

    @property
    def materialized(self) -> tuple[Perm, ...] | None:
        if self.order > LIMITS.materialize_order:
            return None
        return _materialize(self)

    @property
    def element_orders(self) -> Counter | None:
        elems = self.materialized
        if elems is None:
            return None
        return Counter(perm_order(p) for p in elems)

    def max_element_order_at_most(self, bound: int) -> bool:
        orders = self.element_orders
        if orders is not None:
            return max(orders) <= bound
        return all(perm_order(p) <= bound for p in self.elements())

    def orbits(self) -> VertexPartition:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            for x, y in enumerate(gen):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        blocks: dict[int, set[int]] = {}
        for v in range(self.n):
            blocks.setdefault(find(v), set()).add(v)
        return VertexPartition(tuple(frozenset(blocks[r]) for r in sorted(blocks)))

    def mask_orbit(self, mask: int) -> frozenset[int]:
        """Orbit of a vertex subset (as bitmask) under the group action."""
        seen = {mask}
        frontier = [mask]
        while frontier:
            m = frontier.pop()
            for gen in self.generators:
                img = image_mask(gen, m)
                if img not in seen:
                    seen.add(img)
                    frontier.append(img)
        return frozenset(seen)

    def is_trivial(self) -> bool:
        return self.order == 1


@lru_cache(maxsize=4096)
def _materialize(group: AutomorphismGroup) -> tuple[Perm, ...]:
    return tuple(group.elements())


def _stabilizer_chain(n: int, generators: Sequence[Perm], base: Sequence[int]) -> tuple[tuple[Perm, ...], ...]:
    ident = tuple(range(n))
    transversals = []
    for d, b in enumerate(base):
        gens = [g for g in generators if all(g[p] == p for p in base[:d])]
        reps = {b: ident}
        frontier = [b]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in reps:
                    reps[y] = compose(g, reps[x])
                    frontier.append(y)
        transversals.append(tuple(reps[y] for y in sorted(reps)))
    return tuple(transversals)


@lru_cache(maxsize=1 << 16)
def automorphism_group(g: Graph) -> AutomorphismGroup:
    if g.n > LIMITS.vertex_cap:
        raise SizeError(f"graph on {g.n} vertices exceeds cap {LIMITS.vertex_cap}")
    s = _search(g)
    base = tuple(s.base or ())
    gens = tuple(dict.fromkeys(s.generators))
    return AutomorphismGroup(g.n, gens, base, _stabilizer_chain(g.n, gens, base))


def orbits(g: Graph) -> VertexPartition:
    return automorphism_group(g).orbits()


def orbit_masks(g: Graph) -> list[int]:
    return [to_mask(b) for b in orbits(g).blocks]


def brute_force_automorphisms(g: Graph) -> list[Perm]:
    """All automorphisms by scanning every permutation; an oracle for small n."""
    from itertools import permutations

    return [p for p in permutations(range(g.n)) if is_automorphism(g, p)]


def brute_force_key(g: Graph) -> tuple[int, ...]:
    """Max relabeled adjacency over all n! labelings; independent canonical oracle."""
    from itertools import permutations

    best = None
    for lab in permutations(range(g.n)):
        pos = inverse(lab)
        cert = tuple(image_mask(pos, g.rows[v]) for v in lab)
        if best is None or cert > best:
            best = cert
    return best or ()
