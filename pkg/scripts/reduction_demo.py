#!/usr/bin/env python3
"""Walk one clause set through the whole reduction pipeline, verbosely.

Takes a built-in family name, refutes it, normalizes the refutation,
builds the substitution, certifies every family clause and then runs
the oracle reduction over every assignment.
"""

import argparse
import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gammakit.clauses import format_clause  # noqa: E402
from gammakit.fixtures import (complete_contradiction, dp_refutation,  # noqa: E402
                               er_from_resolution, pigeonhole_clauses,
                               random_unsat_3cnf)
from gammakit.gamma import clause_count  # noqa: E402
from gammakit.normalize import check_normalized, normalize_er  # noqa: E402
from gammakit.reduction import (apply_oracle, build_substitution,  # noqa: E402
                                params_for, verify_reduction)

FAMILIES = {
    "contradiction-1": lambda: complete_contradiction(1),
    "contradiction-2": lambda: complete_contradiction(2),
    "php-2-1": lambda: pigeonhole_clauses(2, 1),
    "random-3cnf": lambda: random_unsat_3cnf(4, 11)[0],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("family", choices=sorted(FAMILIES), nargs="?",
                    default="contradiction-2")
    args = ap.parse_args()

    delta = FAMILIES[args.family]()
    print(f"input set ({len(delta)} clauses):")
    for i, c in enumerate(delta, 1):
        print(f"  {i}: {format_clause(c)}")

    refutation = dp_refutation(delta)
    print(f"refutation by variable elimination: {len(refutation.steps)} steps")

    ner = normalize_er(delta, er_from_resolution(delta, refutation))
    assert check_normalized(ner) is None
    print(f"normalized: s={ner.s} gates, k={ner.k} rows, "
          f"width bound {ner.width_bound()}")

    params = params_for(ner)
    print(f"family parameters: n=0 s={params.s} k={params.k} t={params.t}, "
          f"{clause_count(params)['total']} clauses")

    subst = build_substitution(delta, ner)
    print(f"substitution width: {subst.width}")

    start = time.monotonic()
    cert = verify_reduction(delta, params, subst)
    counts = cert.counts()
    print(f"verified in {time.monotonic() - start:.1f}s: "
          f"a={counts['a']} b={counts['b']} c={counts['c']}")

    variables = sorted({v for c in delta for v in c.variables()},
                       key=lambda v: int(v[1:]))
    for bits in itertools.product((0, 1), repeat=len(variables)):
        alpha = dict(zip(variables, bits))
        r = apply_oracle(params, subst, alpha, delta, cert)
        word = "".join(str(b) for b in bits)
        print(f"  alpha={word}: falsified input clause {r.delta_index} "
              f"({format_clause(r.delta_clause)}), "
              f"{r.total_queries} oracle queries, "
              f"max {r.max_queries_per_var} per variable")
    return 0


if __name__ == "__main__":
    sys.exit(main())
