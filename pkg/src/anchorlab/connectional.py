"""Connections of subgraphs to the rest of the graph and connectional anchors.

A subgraph that is not unique by structure can still be told apart from its
other copies by how it attaches to the rest of the graph.  Only two kinds of
distinction are certified here as visible from the deck: structural
uniqueness, and a crossing-edge margin large enough to survive the deletion
of any outside vertex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .anchor import Shadow, ShadowSet, _as_mask, _proper, is_anchor_mask
from .canon import are_isomorphic, image_mask, isomorphisms
from .deck import pattern_buckets, mask_keys
from .graph import Graph, edges_crossing, induced_mask, members, to_mask


class UniquenessKind(enum.Enum):
    STRUCTURAL = "Structural"
    CONNECTIONAL_BY_EDGE_COUNT = "ConnectionalByEdgeCount"
    CONNECTIONAL_OTHER = "ConnectionalOther"
    NOT_UNIQUE = "NotUnique"


@dataclass(frozen=True)
class Connection:
    part: Graph
    rest: Graph
    # one shadow per part vertex (ascending), cast on the rest's vertex set
    shadows: ShadowSet


def _mask(g: Graph, s) -> int:
    m = _as_mask(g, s)
    _proper(g, m)
    return m


def connection(g: Graph, s: Iterable[int] | int) -> Connection:
    m = _mask(g, s)
    rm = g.vertex_mask & ~m
    host = frozenset(members(rm))
    shadows = tuple(Shadow(host, frozenset(members(g.rows[v] & rm))) for v in members(m))
    return Connection(induced_mask(g, m), induced_mask(g, rm), ShadowSet(host, shadows, members(m)))


def _local_shadows(g: Graph, m: int) -> list[int]:
    """Shadows of m's vertices on the rest, in the rest's local labels."""
    rest = members(g.vertex_mask & ~m)
    pos = {v: i for i, v in enumerate(rest)}
    return [to_mask(pos[u] for u in members(g.rows[v] & ~m & g.vertex_mask)) for v in members(m)]


def _similar_masks(g: Graph, a: int, b: int) -> bool:
    if a == b:
        return True
    pa, pb = induced_mask(g, a), induced_mask(g, b)
    if not are_isomorphic(pa, pb):
        return False
    ra, rb = induced_mask(g, g.vertex_mask & ~a), induced_mask(g, g.vertex_mask & ~b)
    if not are_isomorphic(ra, rb):
        return False
    sa, sb = _local_shadows(g, a), _local_shadows(g, b)
    target = sorted(sb)
    return any(sorted(image_mask(phi, x) for x in sa) == target for phi in isomorphisms(ra, rb))


def connections_similar(g: Graph, s1: Iterable[int] | int, s2: Iterable[int] | int) -> bool:
    """Parts isomorphic, rests isomorphic, and some rest isomorphism carries one shadow multiset onto the other."""
    return _similar_masks(g, _mask(g, s1), _mask(g, s2))


def f_value(g: Graph, s: Iterable[int] | int) -> int:
    """Degree sum over s, i.e. twice the inner edges plus the crossing edges."""
    return sum(g.rows[v].bit_count() for v in members(_as_mask(g, s)))


def copies(g: Graph, m: int) -> tuple[int, ...]:
    """All vertex sets inducing the same graph as m."""
    k = m.bit_count()
    return pattern_buckets(g, k)[mask_keys(g, k)[m]]


def uniqueness_kind(g: Graph, s: Iterable[int] | int) -> UniquenessKind:
    m = _mask(g, s)
    others = [t for t in copies(g, m) if t != m]
    if not others:
        return UniquenessKind.STRUCTURAL
    mine = edges_crossing(g, m)
    cross = [edges_crossing(g, t) for t in others]
    if all(c < mine for c in cross) or all(c > mine for c in cross):
        return UniquenessKind.CONNECTIONAL_BY_EDGE_COUNT
    if not any(_similar_masks(g, m, t) for t in others):
        return UniquenessKind.CONNECTIONAL_OTHER
    return UniquenessKind.NOT_UNIQUE


def max_degree_unique_subgraph(g: Graph, use_min: bool = False) -> tuple[frozenset[int], UniquenessKind]:
    """The vertices of maximum (or minimum) degree and why their subgraph is unique.

    The returned set always has the strictly extreme degree sum among the
    copies of its pattern, so the kind is never NotUnique.
    """
    degs = g.degrees()
    if len(set(degs)) <= 1:
        raise ValueError("the graph is regular; the construction needs two distinct degrees")
    target = min(degs) if use_min else max(degs)
    m = to_mask(v for v in range(g.n) if degs[v] == target)
    others = [t for t in copies(g, m) if t != m]
    if not others:
        return frozenset(members(m)), UniquenessKind.STRUCTURAL
    return frozenset(members(m)), UniquenessKind.CONNECTIONAL_BY_EDGE_COUNT


@dataclass(frozen=True)
class Certificate:
    """Why a vertex set is distinguishable in every card that contains it.

    ``kind`` is "structural" or "edge-margin".  For an edge margin, every card
    containing the set keeps at least ``card_min`` crossing edges, while no
    other copy ever has more than ``others_max``.
    """

    kind: str
    card_min: int | None = None
    others_max: int | None = None

    @property
    def margin(self) -> int | None:
        if self.card_min is None or self.others_max is None:
            return None
        return self.card_min - self.others_max

    def to_dict(self) -> dict:
        return {"kind": self.kind, "card_min": self.card_min, "others_max": self.others_max, "margin": self.margin}


def edge_margin(g: Graph, m: int) -> Certificate | None:
    """Edge-margin certificate for m, or None when the margin is not strictly positive."""
    others = [t for t in copies(g, m) if t != m]
    if not others:
        return None
    outside = members(g.vertex_mask & ~m)
    if len(outside) < 2:
        return None
    cross = edges_crossing(g, m)
    # cards containing m delete one outside vertex, removing its edges into m
    card_min = cross - max((g.rows[x] & m).bit_count() for x in outside)
    others_max = max(edges_crossing(g, t) for t in others)
    if card_min > others_max:
        return Certificate("edge-margin", card_min, others_max)
    return None


def certify(g: Graph, m: int) -> Certificate | None:
    if m == 0 or m == g.vertex_mask:
        return None
    if is_anchor_mask(g, m):
        return Certificate("structural")
    return edge_margin(g, m)


def find_connectional_anchor(g: Graph, max_order: int | None = None) -> list[tuple[frozenset[int], Certificate]]:
    """Vertex sets up to ``max_order`` whose distinction is certified, smallest first."""
    top = g.n - 1 if max_order is None else min(max_order, g.n - 1)
    out = []
    for k in range(1, top + 1):
        for ms in pattern_buckets(g, k).values():
            for m in ms:
                cert = Certificate("structural") if len(ms) == 1 else edge_margin(g, m)
                if cert is not None:
                    out.append((frozenset(members(m)), cert))
    return out

