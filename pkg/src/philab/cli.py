"""Command-line front end: classify, corpus, check, search.

Exit codes: 0 pass, 1 definite violation, 2 inconclusive-only issues,
3 usage error.  Timing goes to stderr so reports stay byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import theoremlab as tl
from .errors import ParseError, PhilabError
from .phiclass import Budgets, classify


def _budgets(args) -> Budgets:
    kw = {}
    if getattr(args, "deg_bound", None) is not None:
        kw["deg_bound"] = args.deg_bound
    if getattr(args, "norm_bound", None) is not None:
        kw["norm_bound"] = args.norm_bound
    if getattr(args, "budget", None) is not None:
        kw["pair_budget"] = args.budget
    if getattr(args, "seed", None) is not None:
        kw["seed"] = args.seed
    return Budgets(**kw)


def _add_budget_flags(p):
    p.add_argument("--deg-bound", type=int, default=None,
                   help="degree bound for Gaussian sweeps (default 1)")
    p.add_argument("--norm-bound", type=int, default=None,
                   help="generator norm bound for pullback sweeps (default 30)")
    p.add_argument("--budget", "--pair-budget", type=int, default=None,
                   help="pair budget before sampling kicks in (default 10^6)")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for sampled checks (default 42)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="philab",
                                 description="ring classification and "
                                             "theorem-suite runner")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a single ring spec")
    p.add_argument("ringspec")
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    _add_budget_flags(p)

    p = sub.add_parser("corpus", help="show or validate a corpus")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--default", action="store_true")
    g.add_argument("--file")

    p = sub.add_parser("check", help="run theorem suites over a corpus")
    p.add_argument("--suite", default="all",
                   help="comma-separated suite ids or 'all'")
    p.add_argument("--corpus-file", default=None)
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    _add_budget_flags(p)

    p = sub.add_parser("search", help="list corpus rings by property verdict")
    p.add_argument("--property", required=True)
    p.add_argument("--negate", action="store_true")
    p.add_argument("--corpus-file", default=None)
    _add_budget_flags(p)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return tl.EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return tl.EXIT_USAGE
    except PhilabError as e:
        print(f"error: {e}", file=sys.stderr)
        return tl.EXIT_VIOLATION


def _dispatch(args) -> int:
    if args.command == "classify":
        R = tl.parse_any_ring_spec(args.ringspec)
        rep = classify(R, _budgets(args))
        if args.format == "json":
            print(json.dumps(rep.to_dict(), sort_keys=True, indent=2))
        else:
            print(f"# {rep.label}")
            for k, v in sorted(rep.verdicts.items()):
                line = f"- {k}: {v.to_dict()['value']} [{v.method}]"
                if v.witness:
                    line += f" witness: {v.witness}"
                print(line)
            for k, v in sorted(rep.routes.items()):
                print(f"- route {k}: {v.to_dict()['value']} [{v.method}]")
        return tl.EXIT_PASS

    if args.command == "corpus":
        specs = tl.default_corpus_specs() if args.default \
            else tl.read_corpus_file(args.file)
        rings = tl.build_corpus(specs)
        for R in rings:
            extra = f"order={R.order}" if hasattr(R, "order") else "infinite"
            print(f"{R.label}\t{extra}")
        return tl.EXIT_PASS

    if args.command == "check":
        suites = tuple(s.strip() for s in args.suite.split(",") if s.strip())
        specs = tl.read_corpus_file(args.corpus_file) if args.corpus_file else None
        started = time.monotonic()
        report = tl.run_check(specs=specs, suites=suites, budgets=_budgets(args))
        elapsed = time.monotonic() - started
        sys.stdout.write(tl.emit_report(report, args.format))
        print(f"wall-clock: {elapsed:.1f}s", file=sys.stderr)
        print(report["summary"], file=sys.stderr)
        return report["exit_code"]

    if args.command == "search":
        specs = tl.read_corpus_file(args.corpus_file) if args.corpus_file \
            else tl.default_corpus_specs()
        rings = tl.build_corpus(specs)
        reports, errors, _ = tl.classify_corpus(rings, _budgets(args))
        hits = tl.search_property(reports, args.property, args.negate)
        for label in hits:
            rep = reports[label]
            v = rep.verdicts[args.property]
            line = label
            if v.witness:
                line += f"\twitness: {v.witness}"
            print(line)
        for label, msg in sorted(errors.items()):
            print(f"# skipped {label}: {msg}", file=sys.stderr)
        return tl.EXIT_PASS

    return tl.EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
