"""Where does anchor extension stop, and how common are asymmetric (n-2)-anchors?

    python scripts/extension_study.py --n 5..8
    python scripts/extension_study.py --asym-samples 500 --asym-n 9 --seed 1

Extension starts from a smallest anchor and grows by residue anchors, then
shadow anchors, until at most two vertices remain outside or neither rule
applies.  The stop is an orbit of at least three outside vertices, a pair, a
single vertex, or something else; the "other" graphs are listed.
"""

import argparse

from anchorlab.cli import parse_range
from anchorlab.enumeration import asymmetric_n2_frequency, extension_outcomes, sample_asymmetric_n2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=parse_range, default=parse_range("5..7"))
    ap.add_argument("--long", action="store_true")
    ap.add_argument("--asym-n", type=int, default=9)
    ap.add_argument("--asym-samples", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'n':>3}{'orbit':>8}{'pair':>8}{'single':>8}{'other':>8}{'no anchor':>11}{'total':>8}")
    for n in args.n:
        o = extension_outcomes(n, args.long)
        print(f"{n:>3}{o.orbit:>8}{o.pair:>8}{o.single:>8}{o.other:>8}{o.no_anchor:>11}{o.total:>8}")
        if o.other_graph6:
            print("    other:", " ".join(o.other_graph6))
    print()
    for n in args.n:
        f = asymmetric_n2_frequency(n, args.long)
        print(f"asymmetric (n-2)-anchor, n={n}: {f.hits}/{f.total} = {f.rate:.4f}")
    if args.asym_samples:
        f = sample_asymmetric_n2(args.asym_n, args.asym_samples, args.seed)
        print(f"sampled n={args.asym_n}, seed {args.seed}: {f.hits}/{f.total} = {f.rate:.4f}")


if __name__ == "__main__":
    main()
