"""Exhaustive generation of graphs up to isomorphism and the statistics built on it.

Generation is canonical augmentation: every class on n vertices is produced
from exactly one parent class on n-1 vertices, the one obtained by deleting
the canonical deletion vertex.  That vertex is a maximum-degree vertex, chosen
among the maximum-degree vertices by canonical position, so most children are
rejected by a degree test before any canonical labeling is computed.
"""

from __future__ import annotations

import csv
import io
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .canon import _Search, canonical_key
from .config import LIMITS
from .errors import SizeError
from .graph import Graph, _raw, add_vertex, complement, encode_graph6, encode_graph6_bytes, induced_mask

KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}


def _check_cap(n: int, long: bool = False) -> None:
    cap = LIMITS.enumeration_long_cap if long else LIMITS.enumeration_cap
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        hint = "" if long else " (pass long=True to go one higher)"
        raise SizeError(f"enumeration is capped at n={cap}{hint}")


def _same_orbit(n: int, generators: list[tuple[int, ...]], a: int, b: int) -> bool:
    if a == b:
        return True
    seen = {a}
    frontier = [a]
    while frontier:
        x = frontier.pop()
        for gen in generators:
            y = gen[x]
            if y == b:
                return True
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return False


def children(parent: Graph) -> Iterator[Graph]:
    """Canonically parented one-vertex extensions of ``parent``, one per class."""
    n = parent.n
    seen: set[bytes] = set()
    for nbhd in range(1 << n):
        child = add_vertex(parent, nbhd)
        degs = child.degrees()
        top = max(degs)
        if degs[n] != top:
            continue
        tops = [v for v in range(n + 1) if degs[v] == top]
        s = _Search(child)
        s.run()
        if len(tops) > 1:
            pos = {v: i for i, v in enumerate(s.best_lab)}
            deletion = max(tops, key=pos.__getitem__)
            if not _same_orbit(n + 1, s.generators, n, deletion):
                continue
        key = encode_graph6_bytes(_raw(n + 1, s.best_cert))
        if key in seen:
            continue
        seen.add(key)
        yield _raw(n + 1, s.best_cert)


def _generate(n: int) -> Iterator[Graph]:
    if n == 0:
        yield _raw(0, ())
        return
    for parent in enumerate_graphs(n - 1):
        yield from children(parent)


@lru_cache(maxsize=None)
def _cached(n: int) -> tuple[Graph, ...]:
    return tuple(_generate(n))


def enumerate_graphs(n: int, long: bool = False) -> tuple[Graph, ...]:
    """All graphs on n vertices, one canonical representative per class.

    Results for n <= 8 are cached in memory; larger n is produced fresh.
    """
    _check_cap(n, long)
    if n <= 8:
        return _cached(n)
    return tuple(_generate(n))


def iter_graphs(n: int, long: bool = False) -> Iterator[Graph]:
    """Streaming variant that never holds the n-vertex level in memory."""
    _check_cap(n, long)
    if n <= 8:
        yield from _cached(n)
    else:
        yield from _generate(n)


def labeled_classes(n: int) -> set[bytes]:
    """Canonical keys of all 2^C(n,2) labeled graphs; brute-force oracle for small n."""
    pairs = [(i, j) for j in range(n) for i in range(j)]
    keys = set()
    for bits in range(1 << len(pairs)):
        rows = [0] * n
        for b, (i, j) in enumerate(pairs):
            if bits >> b & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        keys.add(canonical_key(_raw(n, tuple(rows))))
    return keys


# --- tables ----------------------------------------------------------------

@dataclass
class TableRow:
    n: int
    histogram: dict[int, int]
    total: int

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.histogram.get(k, 0) for k in range(2, self.n + 1))

    def csv_rows(self) -> list[tuple[int, int, int]]:
        return [(self.n, k, self.histogram.get(k, 0)) for k in range(2, self.n + 1)]


def anchor_number_histogram(n: int, long: bool = False) -> TableRow:
    from .anchor import anchor_number

    if n < 2:
        raise ValueError("anchor numbers are defined from n = 2")
    hist: Counter = Counter()
    total = 0
    for g in iter_graphs(n, long):
        hist[anchor_number(g)] += 1
        total += 1
    return TableRow(n, dict(sorted(hist.items())), total)


@dataclass
class AnchorFreeStats:
    n: int
    total_graphs: int
    anchor_free: int
    anchor_n1: int
    formal: int
    informal: int
    formal_anchor_free: int = 0
    formal_n1: int = 0
    informal_graph6: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.anchor_free + self.anchor_n1


def _is_k1_union_anchor_free(g: Graph) -> bool:
    from .anchor import is_anchor_free

    for v in range(g.n):
        if g.rows[v] == 0:
            rest = g.vertex_mask & ~(1 << v)
            if is_anchor_free(induced_mask(g, rest)):
                return True
    return False


def is_formal(g: Graph) -> bool:
    """Formal members of the Anch in {n, n-1} family.

    Anchor-free graphs are formal when vertex-transitive; graphs with anchor
    number n-1 are formal when they (or their complements) are an isolated
    vertex plus an anchor-free graph.
    """
    from .anchor import anchor_number
    from .canon import orbits

    a = anchor_number(g)
    if a == g.n:
        return len(orbits(g)) == 1
    if a == g.n - 1:
        return _is_k1_union_anchor_free(g) or _is_k1_union_anchor_free(complement(g))
    return False


def anchorfree_stats(n: int, long: bool = False) -> AnchorFreeStats:
    from .anchor import anchor_number

    stats = AnchorFreeStats(n, 0, 0, 0, 0, 0)
    for g in iter_graphs(n, long):
        stats.total_graphs += 1
        a = anchor_number(g)
        if a < n - 1:
            continue
        if a == n:
            stats.anchor_free += 1
        else:
            stats.anchor_n1 += 1
        if is_formal(g):
            stats.formal += 1
            if a == n:
                stats.formal_anchor_free += 1
            else:
                stats.formal_n1 += 1
        else:
            stats.informal += 1
            stats.informal_graph6.append(encode_graph6(g))
    return stats


@dataclass
class CensusResult:
    n: int
    graphs: int
    distinct_decks: int
    collisions: list[tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.collisions and self.graphs == self.distinct_decks


def reconstruction_census(n: int) -> CensusResult:
    """Check that no two non-isomorphic n-vertex graphs share a deck."""
    from .deck import deck

    if n > LIMITS.census_cap:
        raise SizeError(f"census is capped at n={LIMITS.census_cap}")
    if n < 1:
        raise ValueError("decks need at least one vertex")
    by_deck: dict[tuple[bytes, ...], Graph] = {}
    collisions = []
    graphs = enumerate_graphs(n)
    for g in graphs:
        d = deck(g).cards
        other = by_deck.get(d)
        if other is not None:
            # exact comparison, not just a hash match
            if canonical_key(other) != canonical_key(g):
                collisions.append((encode_graph6(other), encode_graph6(g)))
            continue
        by_deck[d] = g
    return CensusResult(n, len(graphs), len(by_deck), collisions)


# --- rendering -------------------------------------------------------------

def histogram_text(rows: list[TableRow]) -> str:
    width = max(r.n for r in rows)
    head = "     " + "".join(f"{'k=' + str(k):>9}" for k in range(2, width + 1)) + f"{'Total':>9}"
    lines = [head]
    for r in rows:
        cells = "".join(f"{r.histogram.get(k, 0) if k <= r.n else '':>9}" for k in range(2, width + 1))
        lines.append(f"n={r.n:<3}" + cells + f"{r.total:>9}")
    return "\n".join(lines)


def histogram_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "count"])
    for r in rows:
        w.writerows(r.csv_rows())
    return buf.getvalue()


def anchor_free_text(stats: list[AnchorFreeStats]) -> str:
    lines = [f"{'':6}{'#':>8}{'Anch=n or n-1':>16}{'Formal+Informal':>18}"]
    for s in stats:
        pct = 100.0 * s.total / s.total_graphs if s.total_graphs else 0.0
        lines.append(f"n={s.n:<4}{s.total_graphs:>8}{s.total:>9} ({pct:4.1f}%){s.formal:>10}+{s.informal:<6}")
    return "\n".join(lines)


def anchor_free_csv(stats: list[AnchorFreeStats]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "graphs", "anchor_free", "anchor_n1", "total", "formal", "informal"])
    for s in stats:
        w.writerow([s.n, s.total_graphs, s.anchor_free, s.anchor_n1, s.total, s.formal, s.informal])
    return buf.getvalue()



# --- anchor extension and (n-2)-anchor statistics ----------------------------

@dataclass
class ExtensionOutcomes:
    """Where anchor extension stops, per graph.

    Extension starts from a smallest anchor and adds residue anchors or
    shadow anchors until at most two vertices remain outside or neither rule
    applies.  ``orbit`` counts stops with at least three outside vertices
    forming one orbit of the graph, ``pair`` stops with exactly two outside
    vertices, ``single`` with one, ``other`` everything else; graphs without
    anchors are ``no_anchor``.
    """

    n: int
    orbit: int = 0
    pair: int = 0
    single: int = 0
    other: int = 0
    no_anchor: int = 0
    other_graph6: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.orbit + self.pair + self.single + self.other + self.no_anchor


def extension_outcome(g: Graph) -> str:
    from .anchor import _residue_anchor, _shadow_anchor_extension, anchor_masks_of_order, anchor_number
    from .canon import orbit_masks

    a = anchor_number(g)
    if a == g.n:
        return "no_anchor"
    hm = anchor_masks_of_order(g, a)[0]
    while (g.n - hm.bit_count()) > 2:
        add = _residue_anchor(g, hm)
        if add is None:
            add = _shadow_anchor_extension(g, hm)
        if add is None:
            break
        hm |= add
    rm = g.vertex_mask & ~hm
    r = rm.bit_count()
    if r == 1:
        return "single"
    if r == 2:
        return "pair"
    return "orbit" if rm in orbit_masks(g) else "other"


def extension_outcomes(n: int, long: bool = False) -> ExtensionOutcomes:
    out = ExtensionOutcomes(n)
    for g in iter_graphs(n, long):
        kind = extension_outcome(g)
        setattr(out, kind, getattr(out, kind) + 1)
        if kind == "other":
            out.other_graph6.append(encode_graph6(g))
    return out


@dataclass
class Frequency:
    n: int
    hits: int
    total: int

    @property
    def rate(self) -> float:
        return self.hits / self.total if self.total else 0.0


def asymmetric_n2_frequency(n: int, long: bool = False) -> Frequency:
    """How many n-vertex graphs have an asymmetric anchor on n-2 vertices."""
    from .theorems import check_asymmetric_n2

    hits = total = 0
    for g in iter_graphs(n, long):
        total += 1
        hits += check_asymmetric_n2(g) is not None
    return Frequency(n, hits, total)


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    rows = [0] * n
    for j in range(n):
        for i in range(j):
            if rng.random() < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def sample_asymmetric_n2(n: int, samples: int, seed: int = 0) -> Frequency:
    """Same measurement on uniformly random labeled graphs, for n beyond exhaustive reach."""
    from .theorems import check_asymmetric_n2

    rng = random.Random(seed)
    hits = sum(check_asymmetric_n2(random_graph(n, rng)) is not None for _ in range(samples))
    return Frequency(n, hits, samples)
