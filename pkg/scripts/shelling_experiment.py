#!/usr/bin/env python3
"""Constrained-shelling search: success rates and key-lemma defect profiles.

For each cell with d in {4,5} and each vertex v of the special facet, a
point y is placed beyond the facet close to v and a shelling line through
y is searched for whose order starts with the facets containing y and
continues with the rest of the star of v.  Each certificate found is
checked for nonnegative prefix defects; the per-closeness success counts
show how tight the placement needs to be.

Usage: python3 scripts/shelling_experiment.py [--n-span 4] [--out report.json]
"""

import argparse
import json
import sys
from collections import Counter

sys.path.insert(0, "src")

from aspoly.curves import almost_cyclic_points
from aspoly.enumerative import ASPParams
from aspoly.errors import DegeneracyError, ShellingSearchError
from aspoly.hull import (
    constrained_line_shelling,
    designate_special,
    detect_asp,
    key_shelling_defects,
    stack_over_special,
)


def attempt(geom, y_id, v, closenesses):
    for closeness in closenesses:
        try:
            stacked = stack_over_special(geom, toward=v, closeness=closeness, cap=None)
            cert = constrained_line_shelling(stacked, y_id, v, seed=closeness)
            return closeness, cert
        except (ShellingSearchError, DegeneracyError):
            continue
    return None, None


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-span", type=int, default=4)
    ap.add_argument("--closeness", type=int, nargs="+", default=[12, 20, 28, 40])
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    by_closeness = Counter()
    rows = []
    attempted = certified = negatives = 0
    for d in (4, 5):
        for s in (0, 1, 2, 3):
            for n in range(d + s + 1, d + s + args.n_span + 1):
                p = ASPParams(d, n, s)
                geom = detect_asp(almost_cyclic_points(p), cap=None)
                if geom.ball is None:
                    geom = designate_special(geom, range(1, d + 1))
                for v in range(1, d + s + 1):
                    attempted += 1
                    closeness, cert = attempt(geom, n + 1, v, args.closeness)
                    if cert is None:
                        rows.append({"cell": [d, n, s], "v": v, "status": "inconclusive"})
                        continue
                    certified += 1
                    by_closeness[closeness] += 1
                    defects = key_shelling_defects(cert, n + 1, v)
                    min_defect = min(x for row in defects for x in row)
                    if min_defect < 0:
                        negatives += 1
                    rows.append(
                        {
                            "cell": [d, n, s],
                            "v": v,
                            "status": "certified",
                            "closeness": closeness,
                            "min_defect": min_defect,
                            "final_defects": list(defects[-1]),
                        }
                    )
    summary = {
        "attempted": attempted,
        "certified": certified,
        "rate": round(certified / attempted, 4) if attempted else None,
        "negative_defects": negatives,
        "certificates_by_closeness": dict(sorted(by_closeness.items())),
        "rows": rows,
    }
    text = json.dumps(summary, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(
        f"\n{certified}/{attempted} certified, {negatives} negative-defect certificates",
        file=sys.stderr,
    )
    return 1 if negatives else 0


if __name__ == "__main__":
    sys.exit(main())
