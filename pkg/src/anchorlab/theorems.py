"""Reconstruction criteria and a classifier that explains why a graph is reconstructible.

Each checker searches for a witness of one criterion and returns it, or None.
Checkers take an anchor test: ``structural`` accepts only unique induced
subgraphs, ``connectional`` also accepts sets certified by an edge margin.
``classify`` runs cheap global properties first, then every checker on the
graph and its complement, then the connectional variants, then bookkeeping
for anchor-free graphs and graphs with anchor number n-1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .anchor import anchor_number, is_anchor_mask
from .canon import automorphism_group, brute_force_automorphisms, canonical_key, image_mask, perm_order
from .connectional import Certificate, certify
from .graph import Graph, add_vertex, bfs_distance, complement, induced_mask, is_connected, members, to_mask

AnchorTest = Callable[[Graph, int], "Certificate | None"]


def structural(g: Graph, m: int) -> Certificate | None:
    if m and m != g.vertex_mask and is_anchor_mask(g, m):
        return Certificate("structural")
    return None


def connectional(g: Graph, m: int) -> Certificate | None:
    return certify(g, m)


class Reason(enum.Enum):
    REGULAR = "Regular"
    DISCONNECTED = "Disconnected"
    COMPLEMENT_DISCONNECTED = "ComplementDisconnected"
    FIXED_SHADOW = "FixedShadow"
    DISTANCE = "Distance"
    ASYMMETRIC_DISTINCT_SHADOWS = "AsymmetricDistinctShadows"
    NEIGHBORS_ANCHOR = "NeighborsAnchor"
    ORBIT_REMOVAL = "OrbitRemoval"
    ASYMMETRIC_N2 = "AsymmetricN2"
    TWO_ORBIT_SMALL_AUT = "TwoOrbitSmallAut"
    CONNECTIONAL_VARIANT = "ConnectionalVariant"
    ANCHOR_FREE = "AnchorFree"
    ANCHOR_NUMBER_N1 = "AnchorNumberN1"
    UNEXPLAINED = "Unexplained"


@dataclass(frozen=True)
class Witness:
    criterion: Reason
    anchor: frozenset[int]
    vertices: tuple[int, ...] = ()
    certificate: Certificate | None = None
    details: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion.value,
            "anchor": sorted(self.anchor),
            "vertices": list(self.vertices),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "details": {k: v for k, v in self.details.items() if k != "classes"},
        }


def _residue_pairs(g: Graph):
    for v, w in combinations(range(g.n), 2):
        yield v, w, g.vertex_mask & ~(1 << v) & ~(1 << w)


def _local_shadow(g: Graph, hm: int, v: int) -> int:
    pos = {u: i for i, u in enumerate(members(hm))}
    return to_mask(pos[u] for u in members(g.rows[v] & hm))


# --- checkers --------------------------------------------------------------

def check_fixed_shadow(g: Graph, anchor_test: AnchorTest = structural) -> Witness | None:
    """(n-2)-anchor H = g - {v, w} on which the shadow of v or of w is fixed by Aut(H)."""
    if g.n < 3:
        return None
    for v, w, hm in _residue_pairs(g):
        cert = anchor_test(g, hm)
        if cert is None:
            continue
        gens = automorphism_group(induced_mask(g, hm)).generators
        for x, y in ((v, w), (w, v)):
            s = _local_shadow(g, hm, x)
            if all(image_mask(p, s) == s for p in gens):
                return Witness(Reason.FIXED_SHADOW, frozenset(members(hm)), (x, y), cert)
    return None


def separation(g: Graph, v: int, w: int) -> int | None:
    """Shortest v-w path length if v, w are non-adjacent, else the shortest cycle through edge vw."""
    if g.adjacent(v, w):
        d = bfs_distance(g, v, w, removed_edge=(v, w))
        return None if d is None else d + 1
    return bfs_distance(g, v, w)


def placement_classes(g: Graph, hm: int, v: int, w: int) -> dict[bytes, set]:
    """Completion class -> separation values, over all Aut(H)-moves of w's shadow with v's fixed."""
    h = induced_mask(g, hm)
    k = h.n
    sv, sw = _local_shadow(g, hm, v), _local_shadow(g, hm, w)
    edge = (1 << k) if g.adjacent(v, w) else 0
    classes: dict[bytes, set] = {}
    with_v = add_vertex(h, sv)
    for place in sorted(automorphism_group(h).mask_orbit(sw)):
        comp = add_vertex(with_v, place | edge)
        classes.setdefault(canonical_key(comp), set()).add(separation(comp, k, k + 1))
    return classes


def distance_determines(g: Graph, hm: int, v: int, w: int, strict: bool = False) -> tuple[bool, dict]:
    classes = placement_classes(g, hm, v, w)
    own = separation(g, v, w)
    seen: dict = {}
    injective = True
    for key, values in classes.items():
        for val in values:
            if seen.setdefault(val, key) != key:
                injective = False
    # the actual graph's value points to its own class only
    own_key = canonical_key(g)
    sharp = all(key == own_key for key, values in classes.items() if own in values)
    details = {
        "placement_classes": len(classes),
        "separation": own,
        "injective": injective,
        "strict": strict,
        "classes": classes,
    }
    return (injective if strict else sharp), details


def check_distance(g: Graph, anchor_test: AnchorTest = structural, strict: bool = False) -> Witness | None:
    """(n-2)-anchor H = g - {v, w} where the v-w separation pins down how both shadows sit on H."""
    if g.n < 3:
        return None
    for v, w, hm in _residue_pairs(g):
        cert = anchor_test(g, hm)
        if cert is None:
            continue
        ok, details = distance_determines(g, hm, v, w, strict)
        if ok:
            return Witness(Reason.DISTANCE, frozenset(members(hm)), (v, w), cert, details)
    return None


def _candidate_anchors(g: Graph, anchor_test: AnchorTest, sizes: Iterable[int]):
    for k in sizes:
        for combo in combinations(range(g.n), k):
            m = to_mask(combo)
            cert = anchor_test(g, m)
            if cert is not None:
                yield m, cert


def check_asymmetric_distinct_shadows(g: Graph, anchor_test: AnchorTest = structural) -> Witness | None:
    """Asymmetric anchor with at least two residue vertices, no two of which share a shadow."""
    if g.n < 3:
        return None
    for hm, cert in _candidate_anchors(g, anchor_test, range(g.n - 2, 0, -1)):
        if not automorphism_group(induced_mask(g, hm)).is_trivial():
            continue
        residue = members(g.vertex_mask & ~hm)
        shadows = [g.rows[x] & hm for x in residue]
        if len(set(shadows)) == len(shadows):
            return Witness(Reason.ASYMMETRIC_DISTINCT_SHADOWS, frozenset(members(hm)), residue, cert)
    return None


def check_neighbors_anchor(g: Graph, anchor_test: AnchorTest = structural) -> Witness | None:
    """A vertex whose neighbourhood, or whose non-neighbourhood, induces an anchor."""
    if g.n < 3:
        return None
    for v in range(g.n):
        nbrs = g.rows[v]
        for m, side in ((nbrs, "neighbors"), (g.vertex_mask & ~nbrs & ~(1 << v), "non-neighbors")):
            if not m:
                continue
            cert = anchor_test(g, m)
            if cert is not None:
                return Witness(Reason.NEIGHBORS_ANCHOR, frozenset(members(m)), (v,), cert, {"side": side})
    return None


def check_orbit_removal(g: Graph, anchor_test: AnchorTest = structural) -> Witness | None:
    """An orbit of at least three vertices whose removal leaves an anchor."""
    if g.n < 4:
        return None
    for block in automorphism_group(g).orbits().blocks:
        if len(block) < 3 or len(block) == g.n:
            continue
        hm = g.vertex_mask & ~to_mask(block)
        cert = anchor_test(g, hm)
        if cert is not None:
            return Witness(Reason.ORBIT_REMOVAL, frozenset(members(hm)), tuple(sorted(block)), cert)
    return None


def check_two_orbit_small_aut(g: Graph, anchor_test: AnchorTest = structural) -> Witness | None:
    """A two-vertex orbit over an anchor whose automorphisms all have order at most three."""
    if g.n < 4:
        return None
    for block in automorphism_group(g).orbits().blocks:
        if len(block) != 2:
            continue
        hm = g.vertex_mask & ~to_mask(block)
        cert = anchor_test(g, hm)
        if cert is None:
            continue
        if automorphism_group(induced_mask(g, hm)).max_element_order_at_most(3):
            return Witness(Reason.TWO_ORBIT_SMALL_AUT, frozenset(members(hm)), tuple(sorted(block)), cert)
    return None


def check_asymmetric_n2(g: Graph, anchor_test: AnchorTest = structural) -> Witness | None:
    """An asymmetric anchor on n-2 vertices."""
    if g.n < 3:
        return None
    for v, w, hm in _residue_pairs(g):
        cert = anchor_test(g, hm)
        if cert is not None and automorphism_group(induced_mask(g, hm)).is_trivial():
            return Witness(Reason.ASYMMETRIC_N2, frozenset(members(hm)), (v, w), cert)
    return None


CHECKERS: dict[Reason, Callable[..., Witness | None]] = {
    Reason.FIXED_SHADOW: check_fixed_shadow,
    Reason.DISTANCE: check_distance,
    Reason.ASYMMETRIC_DISTINCT_SHADOWS: check_asymmetric_distinct_shadows,
    Reason.NEIGHBORS_ANCHOR: check_neighbors_anchor,
    Reason.ORBIT_REMOVAL: check_orbit_removal,
    Reason.ASYMMETRIC_N2: check_asymmetric_n2,
    Reason.TWO_ORBIT_SMALL_AUT: check_two_orbit_small_aut,
}


# --- classification ----------------------------------------------------------

@dataclass(frozen=True)
class ReasonClassification:
    reason: Reason
    on_complement: bool = False
    witness: Witness | None = None

    def to_dict(self) -> dict:
        return {
            "reason": self.reason.value,
            "on_complement": self.on_complement,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


DEFAULT_ORDER: tuple[Reason, ...] = (
    Reason.FIXED_SHADOW,
    Reason.DISTANCE,
    Reason.ASYMMETRIC_DISTINCT_SHADOWS,
    Reason.NEIGHBORS_ANCHOR,
    Reason.ORBIT_REMOVAL,
    Reason.ASYMMETRIC_N2,
    Reason.TWO_ORBIT_SMALL_AUT,
)


def classify(
    g: Graph,
    order: Sequence[Reason] = DEFAULT_ORDER,
    use_connectional: bool = True,
    bookkeeping_first: bool = False,
) -> ReasonClassification:
    """First applicable reason, in fixed precedence.

    ``order`` is the sequence of theorem checkers tried (each on g, then on its
    complement).  ``bookkeeping_first`` moves the anchor-free and n-1 labels
    ahead of the connectional variants.
    """
    if g.n < 3:
        raise ValueError("classification covers graphs on at least 3 vertices")
    if g.is_regular():
        return ReasonClassification(Reason.REGULAR)
    if not is_connected(g):
        return ReasonClassification(Reason.DISCONNECTED)
    gc = complement(g)
    if not is_connected(gc):
        return ReasonClassification(Reason.COMPLEMENT_DISCONNECTED, True)
    for reason in order:
        for target, flipped in ((g, False), (gc, True)):
            w = CHECKERS[reason](target, structural)
            if w is not None:
                return ReasonClassification(reason, flipped, w)
    if bookkeeping_first:
        found = _bookkeeping(g)
        if found is not None:
            return found
    if use_connectional:
        for reason in order:
            for target, flipped in ((g, False), (gc, True)):
                w = CHECKERS[reason](target, connectional)
                if w is not None:
                    return ReasonClassification(Reason.CONNECTIONAL_VARIANT, flipped, w)
    found = _bookkeeping(g)
    if found is not None:
        return found
    return ReasonClassification(Reason.UNEXPLAINED)


def _bookkeeping(g: Graph) -> ReasonClassification | None:
    a = anchor_number(g)
    if a == g.n:
        return ReasonClassification(Reason.ANCHOR_FREE)
    if a == g.n - 1:
        return ReasonClassification(Reason.ANCHOR_NUMBER_N1)
    return None


# --- independent re-validation -------------------------------------------------

def _brute_count(g: Graph, m: int) -> int:
    h = induced_mask(g, m)
    key = canonical_key(h)
    k = m.bit_count()
    return sum(1 for c in combinations(range(g.n), k) if canonical_key(induced_mask(g, to_mask(c))) == key)


def _brute_anchor_ok(g: Graph, m: int, cert: Certificate | None) -> bool:
    if cert is None or m == 0 or m == g.vertex_mask:
        return False
    if cert.kind == "structural":
        return _brute_count(g, m) == 1
    if cert.kind == "edge-margin":
        key = canonical_key(induced_mask(g, m))
        k = m.bit_count()
        others = [to_mask(c) for c in combinations(range(g.n), k)]
        others = [t for t in others if t != m and canonical_key(induced_mask(g, t)) == key]
        outside = [x for x in range(g.n) if not m >> x & 1]
        cross = lambda s: sum(1 for u in members(s) for x in range(g.n) if not s >> x & 1 and g.adjacent(u, x))
        card_min = min(cross(m) - sum(1 for u in members(m) if g.adjacent(u, x)) for x in outside)
        return bool(others) and card_min > max(cross(t) for t in others)
    return False


def _brute_group(h: Graph):
    return brute_force_automorphisms(h)


def validate_witness(g: Graph, c: ReasonClassification) -> bool:
    """Re-check a classification from scratch with brute-force primitives (small n only)."""
    r = c.reason
    if r is Reason.UNEXPLAINED:
        return False
    if r is Reason.REGULAR:
        return len(set(g.degrees())) == 1
    if r is Reason.DISCONNECTED:
        return not is_connected(g)
    if r is Reason.COMPLEMENT_DISCONNECTED:
        return not is_connected(complement(g))
    if r in (Reason.ANCHOR_FREE, Reason.ANCHOR_NUMBER_N1):
        sizes = range(1, g.n) if r is Reason.ANCHOR_FREE else range(1, g.n - 1)
        no_small = all(_brute_count(g, to_mask(s)) > 1 for k in sizes for s in combinations(range(g.n), k))
        if r is Reason.ANCHOR_FREE:
            return no_small
        has_n1 = any(_brute_count(g, g.vertex_mask & ~(1 << v)) == 1 for v in range(g.n))
        return no_small and has_n1
    target = complement(g) if c.on_complement else g
    w = c.witness
    if w is None:
        return False
    return _validate_theorem(target, w)


def _validate_theorem(g: Graph, w: Witness) -> bool:
    hm = to_mask(w.anchor)
    if not _brute_anchor_ok(g, hm, w.certificate):
        return False
    h = induced_mask(g, hm)
    kind = w.criterion
    if kind is Reason.FIXED_SHADOW:
        v = w.vertices[0]
        s = _local_shadow(g, hm, v)
        return len(w.vertices) == 2 and hm.bit_count() == g.n - 2 and all(image_mask(p, s) == s for p in _brute_group(h))
    if kind is Reason.DISTANCE:
        v, x = w.vertices
        if hm.bit_count() != g.n - 2:
            return False
        # recompute the placements from the full brute-force group
        sv, sx = _local_shadow(g, hm, v), _local_shadow(g, hm, x)
        k = h.n
        edge = (1 << k) if g.adjacent(v, x) else 0
        classes: dict[bytes, set] = {}
        for p in _brute_group(h):
            comp = add_vertex(add_vertex(h, sv), image_mask(p, sx) | edge)
            classes.setdefault(canonical_key(comp), set()).add(separation(comp, k, k + 1))
        own = separation(g, v, x)
        if w.details.get("strict", True):
            vals = [val for values in classes.values() for val in values]
            return len(vals) == len(set(vals))
        return all(key == canonical_key(g) for key, values in classes.items() if own in values)
    if kind is Reason.ASYMMETRIC_DISTINCT_SHADOWS:
        residue = [x for x in range(g.n) if not hm >> x & 1]
        shadows = [g.rows[x] & hm for x in residue]
        return len(_brute_group(h)) == 1 and len(residue) >= 2 and len(set(shadows)) == len(shadows)
    if kind is Reason.NEIGHBORS_ANCHOR:
        (v,) = w.vertices
        nb = g.rows[v]
        return hm in (nb, g.vertex_mask & ~nb & ~(1 << v))
    if kind is Reason.ORBIT_REMOVAL or kind is Reason.TWO_ORBIT_SMALL_AUT:
        block = to_mask(w.vertices)
        if block | hm != g.vertex_mask or block & hm:
            return False
        autos = _brute_group(g)
        v0 = w.vertices[0]
        orbit = {p[v0] for p in autos}
        if orbit != set(w.vertices):
            return False
        if kind is Reason.ORBIT_REMOVAL:
            return len(orbit) >= 3
        return len(orbit) == 2 and all(perm_order(p) <= 3 for p in _brute_group(h))
    if kind is Reason.ASYMMETRIC_N2:
        return hm.bit_count() == g.n - 2 and len(_brute_group(h)) == 1
    return False
