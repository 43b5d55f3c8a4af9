"""Recompute every classified row: Hilbert polynomial, fiber dimension, Betti table and h-probes.

Usage: python3 scripts/reproduce_tables.py [--table T2|T3|T4] [--jobs N] [--json]
"""

import argparse
import json
import sys

from singdist.corpus import load_corpus, run_regressions
from singdist.distributions import fiber_dimension
from singdist.syzygy import format_betti_grid, hilbert_polynomial, minimal_free_resolution


def summarize(table=None):
    corpus = load_corpus()
    out = []
    for row in corpus.rows:
        if table and row.table != table:
            continue
        I = row.ideal()
        res = minimal_free_resolution(I)
        out.append(
            {
                "id": row.id,
                "label": row.label,
                "hilbert_polynomial": str(hilbert_polynomial(I)),
                "fiber_linear_dim": fiber_dimension(I, row.degree),
                "betti": res.betti_json(),
                "grid": format_betti_grid(res.betti()),
                "h": row.h_text,
            }
        )
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--table", choices=["T2", "T3", "T4"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    a = p.parse_args(argv)

    rows = summarize(a.table)
    report = run_regressions(table=a.table, jobs=a.jobs)
    if a.json:
        print(json.dumps({"rows": rows, "regressions": report.to_json()}, indent=2))
    else:
        for r in rows:
            print(f"{r['id']:<6} {r['label']}")
            print(f"       HP {r['hilbert_polynomial']}, fiber dim {r['fiber_linear_dim']}, h = {r['h']}")
            for line in r["grid"].splitlines():
                print("       " + line)
        print()
        print(report.to_text())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
