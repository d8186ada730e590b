"""Command-line entry point: ``anchorlab <subcommand> ...``.

Exit codes: 0 on success, 1 on a domain error (bad graph6, size cap, invalid
deck), 2 on a usage error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Iterable, Sequence

from .anchor import anchor_masks_of_order, anchor_number, anchors_of_order, extend_to_maximal
from .canon import automorphism_group, canonical_key
from .config import LIMITS
from .deck import Deck, count_from_deck, deck, brute_force_reconstruct
from .errors import AnchorLabError, SizeError
from .graph import Graph, complement, decode_graph6, encode_graph6, members


def parse_range(text: str) -> list[int]:
    """``"7"`` -> [7]; ``"5..8"`` -> [5, 6, 7, 8]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None


def _read_source(src: str, stdin) -> str:
    if src == "-":
        return stdin.read()
    if os.path.isfile(src):
        with open(src, encoding="ascii") as fh:
            return fh.read()
    return src


def _graphs(src: str, stdin) -> list[Graph]:
    lines = [ln.strip() for ln in _read_source(src, stdin).splitlines()]
    graphs = [decode_graph6(ln) for ln in lines if ln and not ln.startswith("#")]
    if not graphs:
        raise AnchorLabError("no graphs in input")
    return graphs


# --- record builders ---------------------------------------------------------

def _analyze(g: Graph) -> dict:
    a = anchor_number(g)
    rec = {
        "graph6": encode_graph6(g),
        "n": g.n,
        "edges": g.num_edges,
        "canonical": canonical_key(g).decode("ascii"),
        "aut_order": automorphism_group(g).order,
        "orbits": [sorted(b) for b in automorphism_group(g).orbits().blocks],
        "anchor_number": a,
    }
    if a < g.n:
        start = anchor_masks_of_order(g, a)[0]
        report = extend_to_maximal(g, members(start))
        rec["anchor"] = list(members(start))
        rec["maximal_anchor"] = sorted(report.anchor_vertices)
        rec["residue"] = sorted(report.residue_vertices)
        rec["extension_steps"] = list(report.steps)
    else:
        rec["anchor"] = None
        rec["maximal_anchor"] = None
        rec["residue"] = None
        rec["extension_steps"] = []
    return rec


def _anchors(g: Graph, max_order: int | None) -> list[dict]:
    top = g.n - 1 if max_order is None else min(max_order, g.n - 1)
    out = []
    for k in range(1, top + 1):
        for s in anchors_of_order(g, k):
            out.append({"graph6": encode_graph6(g), "order": k, "vertices": sorted(s)})
    return out


def _classify(g: Graph) -> dict:
    from .theorems import classify

    rec = {"graph6": encode_graph6(g)}
    rec.update(classify(g).to_dict())
    return rec


# --- rendering -------------------------------------------------------------------

def _flat(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def render(records: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records if len(records) != 1 else records[0], indent=2, sort_keys=True) + "\n"
    if not records:
        return ""
    if fmt == "csv":
        keys: list[str] = []
        for r in records:
            keys.extend(k for k in r if k not in keys)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: _flat(r.get(k)) for k in keys})
        return buf.getvalue()
    blocks = []
    for r in records:
        blocks.append("\n".join(f"{k}: {_flat(v)}" for k, v in r.items()))
    return "\n\n".join(blocks) + "\n"


# --- subcommands -----------------------------------------------------------------

def _maybe_complement(graphs: Iterable[Graph], flag: bool) -> list[Graph]:
    return [complement(g) if flag else g for g in graphs]


def cmd_analyze(args, stdin) -> tuple[list[dict], str | None]:
    return [_analyze(g) for g in _maybe_complement(_graphs(args.graph, stdin), args.complement)], None


def cmd_anchors(args, stdin):
    out = []
    for g in _maybe_complement(_graphs(args.graph, stdin), args.complement):
        out.extend(_anchors(g, args.max_order))
    return out, None


def cmd_classify(args, stdin):
    return [_classify(g) for g in _maybe_complement(_graphs(args.graph, stdin), args.complement)], None


def cmd_deck(args, stdin):
    out = []
    for g in _maybe_complement(_graphs(args.graph, stdin), args.complement):
        d = deck(g)
        if args.count is not None:
            h = decode_graph6(args.count)
            out.append({"graph6": encode_graph6(g), "pattern": encode_graph6(h), "count": count_from_deck(d, h).count})
        else:
            for card, mult in sorted(d.multiplicities().items()):
                out.append({"graph6": encode_graph6(g), "card": card.decode("ascii"), "multiplicity": mult})
    return out, None


def cmd_reconstruct(args, stdin):
    d = Deck.from_graph6_lines(_read_source(args.deck, stdin))
    if d.n == 0:
        raise AnchorLabError("the deck file holds no cards")
    found = brute_force_reconstruct(d)
    return [{"graph6": encode_graph6(g), "canonical": canonical_key(g).decode("ascii")} for g in found], None


def cmd_census(args, stdin):
    from .enumeration import reconstruction_census

    out = []
    for n in args.n:
        r = reconstruction_census(n)
        out.append({"n": r.n, "graphs": r.graphs, "distinct_decks": r.distinct_decks, "collisions": len(r.collisions), "ok": r.ok})
    return out, None


def cmd_tables(args, stdin):
    from . import enumeration as en

    cap = LIMITS.enumeration_long_cap if args.long else LIMITS.table_cap
    sampled = args.table == "asym" and args.samples
    if sampled:
        # sampling never enumerates, so only the vertex cap applies
        cap = LIMITS.vertex_cap
    for n in args.n:
        if n > cap:
            raise SizeError(f"n={n} exceeds the table cap {cap}" + ("" if args.long or sampled else "; pass --long"))
    if args.table == "histogram":
        rows = [en.anchor_number_histogram(n, args.long) for n in args.n]
        if args.format == "text":
            return [], en.histogram_text(rows) + "\n"
        if args.format == "csv":
            return [], en.histogram_csv(rows)
        return [{"n": r.n, "histogram": {str(k): v for k, v in r.histogram.items()}, "total": r.total} for r in rows], None
    if args.table == "free":
        stats = [en.anchorfree_stats(n, args.long) for n in args.n]
        if args.format == "text":
            return [], en.anchor_free_text(stats) + "\n"
        if args.format == "csv":
            return [], en.anchor_free_csv(stats)
        return [
            {
                "n": s.n,
                "graphs": s.total_graphs,
                "anchor_free": s.anchor_free,
                "anchor_n1": s.anchor_n1,
                "total": s.total,
                "formal": s.formal,
                "informal": s.informal,
                "informal_graph6": s.informal_graph6,
            }
            for s in stats
        ], None
    # asymmetric (n-2)-anchor frequency, exhaustive or sampled
    out = []
    for n in args.n:
        f = en.sample_asymmetric_n2(n, args.samples, args.seed) if args.samples else en.asymmetric_n2_frequency(n, args.long)
        out.append({"n": n, "hits": f.hits, "total": f.total, "rate": round(f.rate, 6), "sampled": bool(args.samples)})
    return out, None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anchorlab", description="Graph anchors, decks and reconstruction criteria.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph_arg=True):
        if graph_arg:
            sp.add_argument("graph", help="graph6 string, a file of graph6 lines, or - for standard input")
            sp.add_argument("--complement", action="store_true", help="work on the complement")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    sp = sub.add_parser("analyze", help="anchor number, maximal extension and orbits")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("anchors", help="list anchors by order")
    common(sp)
    sp.add_argument("--max-order", type=int, default=None)
    sp.set_defaults(func=cmd_anchors)

    sp = sub.add_parser("classify", help="which criterion explains reconstructibility")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("deck", help="cards with multiplicities, or a Kelly count with --count")
    common(sp)
    sp.add_argument("--count", metavar="PATTERN", help="graph6 pattern to count from the deck")
    sp.set_defaults(func=cmd_deck)

    sp = sub.add_parser("reconstruct", help="all graphs whose deck matches a deck file")
    sp.add_argument("deck", help="file of graph6 cards, one per line, or - for standard input")
    common(sp, graph_arg=False)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("census", help="check that decks separate all graphs on n vertices")
    sp.add_argument("--n", type=parse_range, default=parse_range("3..6"))
    common(sp, graph_arg=False)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("tables", help="anchor-number tables over all graphs on n vertices")
    sp.add_argument("--n", type=parse_range, required=True)
    sp.add_argument("--table", choices=("histogram", "free", "asym"), default="histogram")
    sp.add_argument("--long", action="store_true", help="allow n up to the long cap")
    sp.add_argument("--samples", type=int, default=0, help="with --table asym: random labeled graphs instead of enumeration")
    sp.add_argument("--seed", type=int, default=0)
    common(sp, graph_arg=False)
    sp.set_defaults(func=cmd_tables)
    return p


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        records, text = args.func(args, stdin)
    except (AnchorLabError, ValueError) as exc:
        print(f"anchorlab: error: {exc}", file=stderr)
        return 1
    stdout.write(text if text is not None else render(records, args.format))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
