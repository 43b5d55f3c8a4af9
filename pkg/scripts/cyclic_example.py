"""Check the singular scheme of the cyclic example form in degrees 1 and 2 on P^3.

Usage: python3 scripts/cyclic_example.py [--degree 1 2] [--json]
"""

import argparse
import json
import sys
import time

from singdist.distributions import example_form, reducedness_test, verify_main_theorem2
from singdist.parsing import parse_ring


def run(d):
    p3 = parse_ring("ring x0,x1,x2,x3")
    start = time.perf_counter()
    report = verify_main_theorem2(example_form(p3, d))
    cert = reducedness_test(report.singular_ideal)
    elapsed = time.perf_counter() - start
    return report, cert, elapsed


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--degree", type=int, nargs="+", default=[1, 2])
    p.add_argument("--json", action="store_true")
    a = p.parse_args(argv)

    ok = True
    out = []
    for d in a.degree:
        report, cert, elapsed = run(d)
        ok &= report.ok
        data = report.to_json()
        data["length"] = cert.length
        data["reduced"] = cert.reduced
        data["seconds"] = round(elapsed, 2)
        out.append(data)
        if not a.json:
            print(f"degree {d}: length {cert.length}, reduced {cert.reduced}, {elapsed:.2f}s")
            for c in report.checks:
                print(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
    if a.json:
        print(json.dumps(out, indent=2))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
