#!/usr/bin/env python3
"""Run every theorem suite over the default corpus and print the report.

Usage:
    python scripts/run_suites.py [--format json|markdown] [--seed N]

Exit code follows the suite contract: 0 pass, 1 violation, 2 inconclusive.
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from philab.phiclass import Budgets               # noqa: E402
from philab.theoremlab import emit_report, run_check   # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--format", choices=("json", "markdown"), default="markdown")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    started = time.monotonic()
    report = run_check(budgets=Budgets(seed=args.seed))
    sys.stdout.write(emit_report(report, args.format))
    print(f"wall-clock: {time.monotonic() - started:.1f}s", file=sys.stderr)
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
