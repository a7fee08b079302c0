#!/usr/bin/env python3
"""Counterexample mining over the default corpus: for each property, list
the rings where it fails, with witnesses where the deciders produced one.

Usage:
    python scripts/find_counterexamples.py [property ...]
"""

import sys

sys.path.insert(0, "src")

from philab.phiclass import PROPERTY_NAMES, Budgets     # noqa: E402
from philab.theoremlab import (                          # noqa: E402
    build_corpus,
    classify_corpus,
    default_corpus_specs,
)


def main() -> int:
    props = sys.argv[1:] or list(PROPERTY_NAMES)
    rings = build_corpus(default_corpus_specs())
    reports, errors, hard = classify_corpus(rings, Budgets())
    for label, msg in sorted(errors.items()):
        print(f"# skipped {label}: {msg}", file=sys.stderr)
    if hard:
        for label, msg in sorted(hard.items()):
            print(f"# INTERNAL INCONSISTENCY {label}: {msg}", file=sys.stderr)
        return 1
    for prop in props:
        if prop not in PROPERTY_NAMES:
            print(f"unknown property {prop!r}", file=sys.stderr)
            return 3
        print(f"== {prop}: false on ==")
        for label in sorted(reports):
            v = reports[label].verdicts.get(prop)
            if v is None or v.value is not False:
                continue
            line = f"  {label}"
            if v.witness:
                line += f"  [{v.witness}]"
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
