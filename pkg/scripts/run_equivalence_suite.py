#!/usr/bin/env python3
"""Run the equivalence-functor verification harness over the standard suite.

Every (graph, move-spec) pair in the suite is verified in every requested
category: the four checks are coproduct preservation, functoriality,
round trips up to isomorphism, and hom-set bijectivity where enumerable.
With --include-corrupted each pair is rerun with one functor component
deliberately corrupted; the harness must catch every control that has
something to corrupt (degenerate instances, e.g. with only zero dimension
vectors or an edgeless moved graph, leave the control vacuous and are
reported as such).  Exits nonzero when any pair misbehaves.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from flowcat.cli import load_category
from flowcat.diagrams import (
    canonical_diagram,
    enumerate_diagrams,
    random_diagram,
    solve_dimension_vectors,
)
from flowcat.functors import (
    CorruptedPair,
    standard_verification_suite,
    verify_equivalence,
)

DEFAULT_CATEGORIES = ("poset:chain2", "finset:4", "mat:2:3")


def probe_pool(cat, g, rng, bound=3):
    """A small spread of source diagrams used only to decide whether a
    corrupted control has anything to corrupt."""
    if cat.is_thin:
        return list(enumerate_diagrams(cat, g))
    pool = []
    for dims in solve_dimension_vectors(g, bound):
        pool.append(canonical_diagram(cat, g, dims))
        pool.append(random_diagram(cat, g, dims, rng))
    return pool


def main(argv=None):
    parser = argparse.ArgumentParser(
        description=__doc__.splitlines()[0], formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    parser.add_argument(
        "--category",
        action="append",
        dest="categories",
        metavar="SPEC",
        help="category spec (repeatable); default: " + ", ".join(DEFAULT_CATEGORIES),
    )
    parser.add_argument("--samples", type=int, default=8)
    parser.add_argument("--seed", type=int, default=20260815)
    parser.add_argument(
        "--include-corrupted",
        action="store_true",
        help="also run each pair with a corrupted component as a negative control",
    )
    parser.add_argument("--json", metavar="PATH", help="dump all reports as a JSON list")
    args = parser.parse_args(argv)

    specs = args.categories or list(DEFAULT_CATEGORIES)
    suite = standard_verification_suite()
    reports = []
    failures = 0
    for spec in specs:
        cat = load_category(spec)
        for label, pair in suite:
            start = time.perf_counter()
            report = verify_equivalence(cat, pair, samples=args.samples, seed=args.seed)
            elapsed = time.perf_counter() - start
            ok = report.verdict == "pass"
            failures += not ok
            print(
                f"{report.verdict:<6} {cat.name:<12} {pair.move:<12} {label} "
                f"({elapsed:.2f}s)"
            )
            reports.append(report.to_dict())
            if args.include_corrupted:
                bad = CorruptedPair(pair)
                control = verify_equivalence(
                    cat, bad, samples=args.samples, seed=args.seed
                )
                caught = control.verdict == "fail"
                rng = random.Random(args.seed)
                vacuous = not any(
                    bad.can_corrupt(cat, d)
                    for d in probe_pool(cat, pair.source, rng)
                )
                if caught:
                    note = "caught"
                elif vacuous:
                    note = "vacuous (nothing to corrupt on this instance)"
                else:
                    note = "NOT CAUGHT"
                    failures += 1
                print(f"       corrupted control: {note}")
                reports.append(control.to_dict())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)
        print(f"wrote {len(reports)} reports to {args.json}")
    print(f"{len(reports)} runs, {failures} misbehaving")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
