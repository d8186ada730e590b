"""Decks, induced-subgraph counting and the brute-force reconstruction oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .canon import canonical_key
from .config import LIMITS
from .errors import SizeError
from .graph import (
    Graph,
    component_masks,
    decode_graph6,
    delete_vertex,
    induced_mask,
    members,
    to_mask,
)


@lru_cache(maxsize=1 << 14)
def pattern_buckets(g: Graph, k: int) -> dict[bytes, tuple[int, ...]]:
    """Group every k-subset of V(g) (as a bitmask) by the canonical key of what it induces."""
    buckets: dict[bytes, list[int]] = {}
    for combo in combinations(range(g.n), k):
        m = to_mask(combo)
        buckets.setdefault(canonical_key(induced_mask(g, m)), []).append(m)
    return {key: tuple(ms) for key, ms in buckets.items()}


@lru_cache(maxsize=1 << 14)
def mask_keys(g: Graph, k: int) -> dict[int, bytes]:
    return {m: key for key, ms in pattern_buckets(g, k).items() for m in ms}


@dataclass(frozen=True)
class SubgraphCount:
    host_order: int
    pattern_order: int
    count: int

    def __int__(self) -> int:
        return self.count


@dataclass(frozen=True)
class Deck:
    """Multiset of cards, stored as the sorted tuple of their canonical keys."""

    n: int
    cards: tuple[bytes, ...]

    def __post_init__(self):
        if len(self.cards) != self.n:
            raise ValueError(f"a deck of a {self.n}-vertex graph has {self.n} cards, got {len(self.cards)}")
        if tuple(sorted(self.cards)) != self.cards:
            raise ValueError("cards must be sorted; build decks with Deck.from_cards")

    @classmethod
    def from_cards(cls, cards: Iterable[Graph]) -> "Deck":
        cards = list(cards)
        n = len(cards)
        for c in cards:
            if c.n != n - 1:
                raise ValueError(f"every card of an {n}-card deck has {n - 1} vertices, got {c.n}")
        return cls(n, tuple(sorted(canonical_key(c) for c in cards)))

    @classmethod
    def from_graph6_lines(cls, text: str) -> "Deck":
        lines = [ln.strip() for ln in text.splitlines()]
        return cls.from_cards(decode_graph6(ln) for ln in lines if ln and not ln.startswith("#"))

    def multiplicities(self) -> Counter:
        return Counter(self.cards)

    def card_graphs(self) -> list[Graph]:
        return [decode_graph6(c) for c in self.cards]

    def to_graph6_lines(self) -> str:
        return "".join(c.decode("ascii") + "\n" for c in self.cards)

    def num_edges(self) -> int | None:
        """Edge count of the original graph; None when n <= 2 (not determined)."""
        if self.n <= 2:
            return None
        total = sum(g.num_edges for g in self.card_graphs())
        return total // (self.n - 2)

    def degree_sequence(self) -> tuple[int, ...] | None:
        m = self.num_edges()
        if m is None:
            return None
        return tuple(sorted(m - c.num_edges for c in self.card_graphs()))


def deck(g: Graph) -> Deck:
    if g.n < 1:
        raise ValueError("the deck needs at least one vertex")
    return Deck(g.n, tuple(sorted(canonical_key(delete_vertex(g, v)) for v in range(g.n))))


def subgraph_count(g: Graph, h: Graph) -> SubgraphCount:
    if h.n > g.n:
        raise ValueError(f"pattern on {h.n} vertices cannot occur in a host on {g.n}")
    count = len(pattern_buckets(g, h.n).get(canonical_key(h), ()))
    return SubgraphCount(g.n, h.n, count)


def count_from_deck(d: Deck, h: Graph) -> SubgraphCount:
    """Kelly counting: each copy of h misses exactly n - |h| vertices, so it sits in that many cards."""
    k = h.n
    if k >= d.n:
        raise ValueError("Kelly's lemma only covers patterns with fewer vertices than the graph")
    total = sum(mult * subgraph_count(decode_graph6(card), h).count for card, mult in d.multiplicities().items())
    q, r = divmod(total, d.n - k)
    if r:
        raise ValueError("inconsistent deck: card counts are not divisible by n - |V(h)|")
    return SubgraphCount(d.n, k, q)


def spanning_disconnected_count(g: Graph, h: Graph) -> SubgraphCount:
    """Number of partitions of V(g) into blocks whose induced graphs are the components of h.

    Edges between blocks are unrestricted.  Blocks matched to isomorphic
    components are unordered, so 2K2 inside 2K2 counts once.
    """
    if h.n != g.n:
        raise ValueError("the pattern must span the host")
    comps = component_masks(h)
    if len(comps) < 2:
        raise ValueError("the pattern must be disconnected")
    need = Counter(canonical_key(induced_mask(h, m)) for m in comps)
    sizes = {canonical_key(induced_mask(h, m)): m.bit_count() for m in comps}

    def count(rest: int, need: Counter) -> int:
        if not rest:
            return 1
        low = rest & -rest
        others = rest & ~low
        total = 0
        for key, size in sizes.items():
            if not need[key]:
                continue
            for combo in combinations(members(others), size - 1):
                block = low | to_mask(combo)
                if canonical_key(induced_mask(g, block)) == key:
                    need[key] -= 1
                    total += count(rest & ~block, need)
                    need[key] += 1
        return total

    return SubgraphCount(g.n, h.n, count(g.vertex_mask, need))


def brute_force_reconstruct(d: Deck) -> list[Graph]:
    """Every graph (up to isomorphism) whose deck equals d."""
    if d.n > LIMITS.oracle_cap:
        raise SizeError(f"oracle scans at most n={LIMITS.oracle_cap}, deck has n={d.n}")
    from .enumeration import enumerate_graphs

    target_degrees = d.degree_sequence()
    out = []
    for cand in enumerate_graphs(d.n):
        if target_degrees is not None and tuple(sorted(cand.degrees())) != target_degrees:
            continue
        if deck(cand) == d:
            out.append(cand)
    return out


def is_reconstructible(g: Graph) -> bool:
    return len(brute_force_reconstruct(deck(g))) == 1

