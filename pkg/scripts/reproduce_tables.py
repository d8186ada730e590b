"""Reproduce the anchor-number histogram and the Anch in {n, n-1} split.

    python scripts/reproduce_tables.py --n 5..8
    python scripts/reproduce_tables.py --n 9 --long --json n9.json

One enumeration pass per n feeds both tables.
"""

import argparse
import json
import time
from collections import Counter

from anchorlab.anchor import anchor_number
from anchorlab.cli import parse_range
from anchorlab.enumeration import AnchorFreeStats, TableRow, is_formal, iter_graphs, histogram_text, anchor_free_text
from anchorlab.graph import encode_graph6


def one_pass(n: int, long: bool):
    hist: Counter = Counter()
    stats = AnchorFreeStats(n, 0, 0, 0, 0, 0)
    for g in iter_graphs(n, long):
        a = anchor_number(g)
        hist[a] += 1
        stats.total_graphs += 1
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
    return TableRow(n, dict(sorted(hist.items())), stats.total_graphs), stats


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=parse_range, default=parse_range("5..7"))
    ap.add_argument("--long", action="store_true")
    ap.add_argument("--json", help="also write the raw numbers here")
    args = ap.parse_args()
    rows, stats, timing = [], [], {}
    for n in args.n:
        t = time.time()
        r, s = one_pass(n, args.long)
        timing[n] = round(time.time() - t, 1)
        rows.append(r)
        stats.append(s)
        print(f"n={n} done in {timing[n]} s", flush=True)
    print(histogram_text(rows))
    print()
    print(anchor_free_text(stats))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(
                {
                    "seconds": timing,
                    "histogram": {r.n: r.histogram for r in rows},
                    "anchor_free": {s.n: vars(s) for s in stats},
                },
                fh,
                indent=1,
            )


if __name__ == "__main__":
    main()
