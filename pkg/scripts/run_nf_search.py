"""Exhaustive search of the Noether-Fano system with a timing report.

Writes the search report as JSON (rationals never appear; all values are
integers) and prints a one-line summary.

    python3 scripts/run_nf_search.py --a-max 10 --b-abs 20 --workers 4 --out nf_report.json
"""

import argparse
import json
import sys

from polarcyl.nfdescent import SearchBounds, exhaustive_search


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--a-max", type=int, default=10)
    ap.add_argument("--b-abs", type=int, default=20)
    ap.add_argument("--n-max", type=int)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", help="write the full report here instead of stdout")
    args = ap.parse_args()
    report = exhaustive_search(SearchBounds(args.a_max, args.b_abs, args.n_max), workers=args.workers)
    doc = report.to_dict()
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    degenerate = sum(1 for h in report.hits if h.descent and h.descent.degenerate)
    print(f"a <= {args.a_max}, |b| <= {args.b_abs}: {len(report.hits)} hits, "
          f"all descend strictly: {report.all_descend()}, a' = 0 cases: {degenerate}, "
          f"{report.nodes_visited} nodes in {report.seconds:.2f} s", file=sys.stderr)
    return 0 if report.all_descend() else 1


if __name__ == "__main__":
    sys.exit(main())
