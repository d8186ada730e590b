"""Per-graph reasons over the small connected family, against a reference table.

    python scripts/reason_atlas.py [--json out.json]

The family is every atlas graph on 3..6 vertices that is connected, not
regular, has a connected complement and at most half of all possible edges.
For each graph the script prints the reference reason, whether that reason's
checker finds a witness on the graph or its complement, and what classify
picks under two precedences.  Needs networkx for the atlas.
"""

import argparse
import json
from collections import Counter

import networkx as nx

from anchorlab.anchor import anchor_number
from anchorlab.graph import Graph, complement, encode_graph6, is_connected
from anchorlab.theorems import CHECKERS, Reason, classify, structural

REFERENCE = {
    14: "AnchorFree", 30: "AnchorNumberN1", 31: "Distance", 34: "Distance", 35: "Distance", 36: "NeighborsAnchor", 37: "NeighborsAnchor", 78: "AnchorNumberN1",
    79: "Distance", 80: "Distance", 81: "NeighborsAnchor", 83: "AnchorFree", 93: "Distance", 94: "OrbitRemoval", 95: "Distance", 96: "Distance",
    97: "Distance", 98: "Distance", 99: "Distance", 100: "Distance", 102: "NeighborsAnchor", 103: "NeighborsAnchor", 104: "Distance", 112: "Distance",
    113: "Distance", 114: "Distance", 115: "Distance", 118: "Distance", 119: "NeighborsAnchor", 120: "NeighborsAnchor", 121: "NeighborsAnchor", 122: "Distance",
    123: "NeighborsAnchor", 124: "NeighborsAnchor", 125: "Distance", 126: "NeighborsAnchor", 127: "NeighborsAnchor", 128: "Distance", 129: "Distance", 130: "AnchorFree",
}
LABEL = {
    Reason.DISTANCE: "Distance",
    Reason.NEIGHBORS_ANCHOR: "NeighborsAnchor",
    Reason.ORBIT_REMOVAL: "OrbitRemoval",
    Reason.ANCHOR_FREE: "AnchorFree",
    Reason.ANCHOR_NUMBER_N1: "AnchorNumberN1",
}
CHECK = {"Distance": Reason.DISTANCE, "NeighborsAnchor": Reason.NEIGHBORS_ANCHOR, "OrbitRemoval": Reason.ORBIT_REMOVAL}


def from_nx(G) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return Graph.from_edges(len(idx), [(idx[u], idx[v]) for u, v in G.edges()])


def in_family(g: Graph) -> bool:
    return (
        3 <= g.n <= 6
        and not g.is_regular()
        and is_connected(g)
        and is_connected(complement(g))
        and 2 * g.num_edges <= g.n * (g.n - 1) // 2
    )


def applies(g: Graph, label: str) -> bool:
    if label == "AnchorFree":
        return anchor_number(g) == g.n
    if label == "AnchorNumberN1":
        return anchor_number(g) == g.n - 1
    return any(CHECKERS[CHECK[label]](t, structural) is not None for t in (g, complement(g)))


def label(c) -> str:
    return LABEL.get(c.reason, c.reason.value)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--json")
    args = ap.parse_args()
    atlas = nx.graph_atlas_g()
    family = {i for i, G in enumerate(atlas) if in_family(from_nx(G))}
    rows = []
    for i in sorted(family | set(REFERENCE)):
        g = from_nx(atlas[i])
        ref = REFERENCE.get(i, "-")
        default = classify(g)
        narrow = classify(
            g,
            order=(Reason.NEIGHBORS_ANCHOR, Reason.DISTANCE, Reason.ORBIT_REMOVAL),
            use_connectional=False,
            bookkeeping_first=True,
        )
        rows.append(
            {
                "index": i,
                "graph6": encode_graph6(g),
                "in_family": i in family,
                "reference": ref,
                "reference_applies": ref != "-" and applies(g, ref),
                "default": label(default),
                "default_on_complement": default.on_complement,
                "narrow": label(narrow),
            }
        )
    print(f"{'G':>4} {'graph6':8} {'family':6} {'ref':10} {'applies':7} {'default':22} {'narrow':10}")
    for r in rows:
        print(
            f"{r['index']:>4} {r['graph6']:8} {str(r['in_family']):6} {r['reference']:10} "
            f"{str(r['reference_applies']):7} {r['default']:22} {r['narrow']:10}"
        )
    print()
    print("reference:", dict(Counter(REFERENCE.values())))
    print("narrow:   ", dict(Counter(r["narrow"] for r in rows if r["index"] in REFERENCE)))
    print("default:  ", dict(Counter(r["default"] for r in rows if r["index"] in REFERENCE)))
    print("agree per graph (narrow):", sum(r["narrow"] == r["reference"] for r in rows))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
