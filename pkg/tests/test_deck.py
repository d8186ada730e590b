import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from anchorlab.canon import canonical_key, orbits
from anchorlab.deck import (
    Deck,
    brute_force_reconstruct,
    count_from_deck,
    deck,
    is_reconstructible,
    spanning_disconnected_count,
    subgraph_count,
)
from anchorlab.enumeration import enumerate_graphs
from anchorlab.errors import SizeError
from anchorlab.graph import (
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    path_graph,
    star_graph,
)

from conftest import graphs


def key(g):
    return canonical_key(g)


def test_deck_examples():
    assert deck(path_graph(3)).multiplicities() == {key(complete_graph(2)): 2, key(empty_graph(2)): 1}
    assert deck(complete_graph(3)).multiplicities() == {key(complete_graph(2)): 3}
    assert deck(cycle_graph(5)).multiplicities() == {key(path_graph(4)): 5}


def test_deck_validation():
    with pytest.raises(ValueError):
        deck(empty_graph(0))
    with pytest.raises(ValueError):
        Deck.from_cards([path_graph(2), path_graph(3)])
    with pytest.raises(ValueError):
        Deck(2, (b"A_",))


def test_deck_text_round_trip():
    d = deck(star_graph(3))
    assert Deck.from_graph6_lines("# comment\n" + d.to_graph6_lines() + "\n") == d


def test_edge_count_and_degrees_from_deck():
    g = path_graph(5)
    d = deck(g)
    assert d.num_edges() == 4
    assert d.degree_sequence() == tuple(sorted(g.degrees()))
    assert deck(complete_graph(2)).num_edges() is None


@pytest.mark.parametrize(
    "g, h, count",
    [
        (path_graph(4), complete_graph(2), 3),
        (complete_graph(4), complete_graph(3), 4),
        (cycle_graph(5), path_graph(3), 5),
    ],
)
def test_subgraph_count_examples(g, h, count):
    assert subgraph_count(g, h).count == count


def test_subgraph_count_by_direct_enumeration():
    g = cycle_graph(5)
    h = path_graph(3)
    direct = sum(1 for s in combinations(range(5), 3) if key(induced_subgraph(g, s)) == key(h))
    assert direct == subgraph_count(g, h).count


def test_subgraph_count_rejects_large_pattern():
    with pytest.raises(ValueError):
        subgraph_count(path_graph(3), path_graph(4))


def test_count_from_deck_examples():
    assert count_from_deck(deck(path_graph(3)), complete_graph(2)).count == 2
    assert count_from_deck(deck(complete_graph(3)), empty_graph(2)).count == 0
    assert count_from_deck(deck(cycle_graph(5)), path_graph(3)).count == 5
    with pytest.raises(ValueError):
        count_from_deck(deck(path_graph(3)), path_graph(3))


def test_count_from_deck_detects_inconsistent_deck():
    bogus = Deck.from_cards([complete_graph(3), empty_graph(3), empty_graph(3), empty_graph(3)])
    # each edge of a 4-vertex graph sits on exactly 2 cards, so the card edge total is even; here it is 3
    with pytest.raises(ValueError):
        count_from_deck(bogus, complete_graph(2))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=6), graphs(min_n=1, max_n=5))
def test_kelly_identity(g, h):
    if h.n >= g.n:
        return
    assert count_from_deck(deck(g), h) == subgraph_count(g, h)


def test_spanning_disconnected_examples():
    k2k1 = disjoint_union(complete_graph(2), empty_graph(1))
    assert spanning_disconnected_count(k2k1, k2k1).count == 1
    two_k2 = disjoint_union(complete_graph(2), complete_graph(2))
    assert spanning_disconnected_count(two_k2, two_k2).count == 1
    # blocks induce the components while edges between blocks are free: {a,b}|{c} and {b,c}|{a}
    assert spanning_disconnected_count(path_graph(3), k2k1).count == 2
    assert spanning_disconnected_count(complete_graph(4), disjoint_union(complete_graph(2), complete_graph(2))).count == 3


def test_spanning_disconnected_errors():
    with pytest.raises(ValueError):
        spanning_disconnected_count(path_graph(3), path_graph(3))
    with pytest.raises(ValueError):
        spanning_disconnected_count(path_graph(3), empty_graph(2))


def test_spanning_count_brute_force():
    rng = random.Random(3)
    for g in enumerate_graphs(5):
        h = rng.choice([disjoint_union(path_graph(2), path_graph(3)), disjoint_union(empty_graph(1), cycle_graph(4)),
                        disjoint_union(complete_graph(2), empty_graph(1), path_graph(2))])
        comps = sorted(len(c) for c in _components(h))
        total = 0
        for parts in _set_partitions(list(range(5))):
            if sorted(len(p) for p in parts) != comps:
                continue
            got = sorted(key(induced_subgraph(g, p)) for p in parts)
            want = sorted(key(induced_subgraph(h, c)) for c in _components(h))
            total += got == want
        assert spanning_disconnected_count(g, h).count == total


def _components(h):
    from anchorlab.graph import component_masks, members

    return [members(m) for m in component_masks(h)]


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def test_brute_force_reconstruct_examples():
    assert [key(g) for g in brute_force_reconstruct(deck(path_graph(3)))] == [key(path_graph(3))]
    assert [key(g) for g in brute_force_reconstruct(deck(complete_graph(3)))] == [key(complete_graph(3))]
    two = brute_force_reconstruct(deck(complete_graph(2)))
    assert sorted(key(g) for g in two) == sorted([key(complete_graph(2)), key(empty_graph(2))])
    assert not is_reconstructible(complete_graph(2))


def test_oracle_scale_cap():
    with pytest.raises(SizeError):
        brute_force_reconstruct(deck(empty_graph(9)))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_oracle_completeness(n):
    for g in enumerate_graphs(n):
        assert [key(h) for h in brute_force_reconstruct(deck(g))] == [key(g)]


@pytest.mark.parametrize("n", range(2, 8))
def test_identical_cards_iff_vertex_transitive(n):
    for g in enumerate_graphs(n):
        d = deck(g)
        assert (len(set(d.cards)) == 1) == (len(orbits(g)) == 1)


@given(graphs(min_n=1, max_n=7))
def test_complement_deck(g):
    cards = sorted(key(complement(c)) for c in deck(g).card_graphs())
    assert tuple(cards) == deck(complement(g)).cards
