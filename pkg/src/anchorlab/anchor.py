"""Anchors (unique proper induced subgraphs), shadows, shadow anchors and anchor extension.

Vertex sets cross the public API as ``frozenset[int]``; internally they are
bitmasks.  A shadow on a graph ``h`` is a subset of V(h).  When a shadow comes
from a host set inside a bigger graph, it keeps the host's original labels and
is translated to ``h = induced_subgraph(g, host)`` through the ascending-label
convention of ``induced_subgraph``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .canon import AutomorphismGroup, automorphism_group, canonical_key, image_mask
from .deck import mask_keys, pattern_buckets
from .errors import NotFoundError
from .graph import Graph, induced_mask, members, to_mask


def _as_mask(g: Graph, s: Iterable[int] | int) -> int:
    if isinstance(s, int):
        m = s
    else:
        s = list(s)
        for v in s:
            if not (isinstance(v, int) and 0 <= v < g.n):
                raise ValueError(f"vertex {v!r} is not in a graph on {g.n} vertices")
        m = to_mask(s)
    if m & ~g.vertex_mask:
        raise ValueError("vertex set leaves the graph")
    return m


def _proper(g: Graph, m: int) -> None:
    if m == 0 or m == g.vertex_mask:
        raise ValueError("anchors are proper: the vertex set must be non-empty and miss some vertex")


# --- anchors ---------------------------------------------------------------

def is_anchor_mask(g: Graph, m: int) -> bool:
    if m == 0 or m == g.vertex_mask:
        return False
    k = m.bit_count()
    return len(pattern_buckets(g, k)[mask_keys(g, k)[m]]) == 1


def is_anchor(g: Graph, s: Iterable[int]) -> bool:
    m = _as_mask(g, s)
    _proper(g, m)
    return is_anchor_mask(g, m)


def anchor_masks_of_order(g: Graph, k: int) -> list[int]:
    if not 1 <= k < g.n:
        return []
    return sorted(ms[0] for ms in pattern_buckets(g, k).values() if len(ms) == 1)


def anchors_of_order(g: Graph, k: int) -> list[frozenset[int]]:
    return [frozenset(members(m)) for m in anchor_masks_of_order(g, k)]


@lru_cache(maxsize=1 << 16)
def anchor_number(g: Graph) -> int:
    """Smallest anchor order; n when there is no anchor (graphs on <= 1 vertex included)."""
    for k in range(1, g.n):
        for ms in pattern_buckets(g, k).values():
            if len(ms) == 1:
                return k
    return g.n


def is_anchor_free(g: Graph) -> bool:
    return anchor_number(g) == g.n


def all_anchor_masks(g: Graph) -> list[int]:
    out = []
    for k in range(1, g.n):
        out.extend(anchor_masks_of_order(g, k))
    return out


def cover_mask(g: Graph, h: Graph) -> int:
    copies = pattern_buckets(g, h.n).get(canonical_key(h)) if h.n <= g.n else None
    if not copies:
        raise NotFoundError("pattern does not occur in the graph")
    out = 0
    for m in copies:
        out |= m
    return out


def cover(g: Graph, h: Graph) -> frozenset[int]:
    """Union of the vertex sets of all induced copies of h."""
    return frozenset(members(cover_mask(g, h)))


# --- shadows ---------------------------------------------------------------

@dataclass(frozen=True)
class Shadow:
    host: frozenset[int]
    bits: frozenset[int]

    def __post_init__(self):
        if not self.bits <= self.host:
            raise ValueError("a shadow must lie inside its host")

    @classmethod
    def on(cls, h: Graph, bits: Iterable[int]) -> "Shadow":
        return cls(frozenset(range(h.n)), frozenset(bits))


@dataclass(frozen=True)
class ShadowSet:
    host: frozenset[int]
    shadows: tuple[Shadow, ...]
    # residue vertex casting each shadow, when built from a graph
    sources: tuple[int, ...] | None = None

    def __post_init__(self):
        for s in self.shadows:
            if s.host != self.host:
                raise ValueError("all shadows of a set share one host")

    @classmethod
    def on(cls, h: Graph, shadows: Iterable[Iterable[int]]) -> "ShadowSet":
        host = frozenset(range(h.n))
        return cls(host, tuple(Shadow(host, frozenset(b)) for b in shadows))

    def __len__(self) -> int:
        return len(self.shadows)

    def subset(self, indices: Sequence[int]) -> "ShadowSet":
        src = None if self.sources is None else tuple(self.sources[i] for i in indices)
        return ShadowSet(self.host, tuple(self.shadows[i] for i in indices), src)


def shadow(g: Graph, hset: Iterable[int], v: int) -> Shadow:
    hm = _as_mask(g, hset)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} is not in the graph")
    if hm >> v & 1:
        raise ValueError("a shadow is cast by a vertex outside the host")
    return Shadow(frozenset(members(hm)), frozenset(members(g.rows[v] & hm)))


def shadow_set(g: Graph, hset: Iterable[int]) -> ShadowSet:
    """One shadow per residue vertex, in ascending order of the residue vertex."""
    hm = _as_mask(g, hset)
    host = frozenset(members(hm))
    residue = members(g.vertex_mask & ~hm)
    return ShadowSet(host, tuple(Shadow(host, frozenset(members(g.rows[v] & hm))) for v in residue), residue)


def _local(h: Graph, host: frozenset[int], bits: frozenset[int]) -> int:
    """Shadow bits translated to the labels of h."""
    if len(host) != h.n:
        raise ValueError("shadow host does not match the graph")
    if host == frozenset(range(h.n)):
        return to_mask(bits)
    order = {v: i for i, v in enumerate(sorted(host))}
    return to_mask(order[b] for b in bits)


def _local_set(h: Graph, ss: ShadowSet) -> list[int]:
    return [_local(h, ss.host, s.bits) for s in ss.shadows]


def _elements(group: AutomorphismGroup):
    return group.materialized or tuple(group.elements())


def shadow_isomorphic(h: Graph, s1: Shadow, s2: Shadow) -> bool:
    if s1.host != s2.host:
        raise ValueError("shadows live on different hosts")
    a, b = _local(h, s1.host, s1.bits), _local(h, s2.host, s2.bits)
    if a.bit_count() != b.bit_count():
        return False
    return b in automorphism_group(h).mask_orbit(a)


def is_shadow_fixed(h: Graph, s: Shadow) -> bool:
    a = _local(h, s.host, s.bits)
    return all(image_mask(p, a) == a for p in automorphism_group(h).generators)


def _multiset_canon(elems, masks: Sequence[int]) -> tuple[int, ...]:
    return min(tuple(sorted(image_mask(p, m) for m in masks)) for p in elems)


def _multiset_stabilizer(elems, masks: Sequence[int]):
    target = sorted(masks)
    return [p for p in elems if sorted(image_mask(p, m) for m in masks) == target]


def is_shadow_transitive(h: Graph, ss: ShadowSet) -> bool:
    masks = _local_set(h, ss)
    if len(set(masks)) <= 1:
        return True
    stab = _multiset_stabilizer(_elements(automorphism_group(h)), masks)
    first = masks[0]
    reach = {image_mask(p, first) for p in stab}
    return set(masks) <= reach


def shadow_set_isomorphic(h: Graph, a: ShadowSet, b: ShadowSet) -> bool:
    if a.host != b.host:
        raise ValueError("shadow sets live on different hosts")
    ma, mb = _local_set(h, a), _local_set(h, b)
    if len(ma) != len(mb):
        return False
    target = sorted(mb)
    return any(sorted(image_mask(p, m) for m in ma) == target for p in _elements(automorphism_group(h)))


def _shadow_anchor_indices(h: Graph, masks: Sequence[int], proper: bool = True) -> tuple[int, ...] | None:
    r = len(masks)
    if r == 0:
        return None
    elems = _elements(automorphism_group(h))
    top = r - 1 if proper else r
    for size in range(1, top + 1):
        buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for idx in combinations(range(r), size):
            key = _multiset_canon(elems, [masks[i] for i in idx])
            buckets.setdefault(key, []).append(idx)
        unique = sorted(v[0] for v in buckets.values() if len(v) == 1)
        if unique:
            return unique[0]
    return None


def find_shadow_anchor(h: Graph, ss: ShadowSet, proper: bool = True) -> tuple[int, ...] | None:
    """Indices of a smallest sub-multiset of ``ss`` that no other sub-multiset is isomorphic to.

    Subsets are indexed by position, so two equal shadows are different
    members.  With ``proper`` (the default) the whole multiset is not a
    candidate: it is trivially unique and extending by it leaves no residue.
    """
    return _shadow_anchor_indices(h, _local_set(h, ss), proper)


# --- extension -------------------------------------------------------------

@dataclass(frozen=True)
class AnchorReport:
    anchor_vertices: frozenset[int]
    residue_vertices: frozenset[int]
    shadow_set: ShadowSet
    is_maximal: bool
    steps: tuple[str, ...] = field(default=())

    @property
    def anchor_order(self) -> int:
        return len(self.anchor_vertices)

    def to_dict(self) -> dict:
        return {
            "anchor_vertices": sorted(self.anchor_vertices),
            "residue_vertices": sorted(self.residue_vertices),
            "anchor_order": self.anchor_order,
            "shadows": [
                {"source": src, "bits": sorted(s.bits)}
                for src, s in zip(self.shadow_set.sources or (), self.shadow_set.shadows)
            ],
            "is_maximal": self.is_maximal,
            "steps": list(self.steps),
        }


def _lift(residue_mask: int, local: int) -> int:
    verts = members(residue_mask)
    return to_mask(verts[i] for i in members(local))


def _residue_anchor(g: Graph, hm: int) -> int | None:
    rm = g.vertex_mask & ~hm
    residue = induced_mask(g, rm)
    for k in range(1, residue.n):
        found = anchor_masks_of_order(residue, k)
        if found:
            keyed = sorted((canonical_key(induced_mask(residue, m)), members(m), m) for m in found)
            return _lift(rm, keyed[0][2])
    return None


def _shadow_anchor_extension(g: Graph, hm: int) -> int | None:
    residue = members(g.vertex_mask & ~hm)
    h = induced_mask(g, hm)
    hverts = members(hm)
    order = {v: i for i, v in enumerate(hverts)}
    masks = [to_mask(order[u] for u in members(g.rows[v] & hm)) for v in residue]
    idx = _shadow_anchor_indices(h, masks, proper=True)
    if idx is None:
        return None
    return to_mask(residue[i] for i in idx)


def _superset_anchor(g: Graph, hm: int) -> int | None:
    rest = members(g.vertex_mask & ~hm)
    for size in range(1, len(rest)):
        for combo in combinations(rest, size):
            m = hm | to_mask(combo)
            if is_anchor_mask(g, m):
                return m
    return None


def is_maximal_anchor(g: Graph, hset: Iterable[int]) -> bool:
    hm = _as_mask(g, hset)
    if not is_anchor_mask(g, hm):
        raise ValueError("not an anchor")
    return _superset_anchor(g, hm) is None


def residue_is_anchor_free(g: Graph, hset: Iterable[int]) -> bool:
    hm = _as_mask(g, hset)
    return is_anchor_free(induced_mask(g, g.vertex_mask & ~hm))


def shadows_anchor_free(g: Graph, hset: Iterable[int]) -> bool:
    return _shadow_anchor_extension(g, _as_mask(g, hset)) is None


def extend_to_maximal(g: Graph, hset: Iterable[int]) -> AnchorReport:
    """Grow an anchor until no strictly larger anchor contains it.

    Each round prefers a smallest anchor of the residue, then a smallest
    shadow anchor of the residue's shadows, and only then scans supersets
    directly (the first two rules can stall before true maximality).
    """
    hm = _as_mask(g, hset)
    _proper(g, hm)
    if not is_anchor_mask(g, hm):
        raise ValueError("the starting vertex set is not an anchor")
    steps = []
    while True:
        add = _residue_anchor(g, hm)
        rule = "residue-anchor"
        if add is None:
            add = _shadow_anchor_extension(g, hm)
            rule = "shadow-anchor"
        if add is None:
            sup = _superset_anchor(g, hm)
            rule = "superset"
            add = None if sup is None else sup & ~hm
        if add is None:
            break
        hm |= add
        steps.append(f"{rule}:{sorted(members(add))}")
    assert residue_is_anchor_free(g, members(hm)) and shadows_anchor_free(g, members(hm))
    return AnchorReport(
        frozenset(members(hm)),
        frozenset(members(g.vertex_mask & ~hm)),
        shadow_set(g, members(hm)),
        True,
        tuple(steps),
    )


def anchor_report(g: Graph, hset: Iterable[int]) -> AnchorReport:
    hm = _as_mask(g, hset)
    return AnchorReport(
        frozenset(members(hm)),
        frozenset(members(g.vertex_mask & ~hm)),
        shadow_set(g, members(hm)),
        is_maximal_anchor(g, members(hm)),
    )
