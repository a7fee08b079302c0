"""Corpus builder, theorem-suite runner, and deterministic report emitter.

A suite passes when it finds zero definite violations; bounded/sampled
passes stay qualified in the per-ring verdicts.  Reports contain no wall
clock or other volatile data, so identical corpus + seed gives
byte-identical output.
"""

from __future__ import annotations

import concurrent.futures
import json
import os
from dataclasses import dataclass, field

from . import dividedext as dx
from . import idealcalc as ic
from . import phiclass as ph
from . import polycontent as pc
from .errors import InternalInconsistency, ParseError, PhilabError
from .finring import parse_ring_spec
from .phiclass import Budgets, seed_for

SCHEMA = "phi-lab-report/1"
SUITE_IDS = ("t1", "t2", "t3", "t4", "t5", "cor0", "t11", "pi", "examples", "diagram")

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


@dataclass(frozen=True)
class CorpusSpec:
    specs: tuple
    budgets: Budgets = Budgets()
    suites: tuple = SUITE_IDS


def default_corpus_specs() -> list[str]:
    """Mix of positives, non-phi negatives, and the non-maximal quadratic
    backend so every suite has a discriminating member."""
    specs = [f"Zn:{n}" for n in range(2, 33)]
    specs += ["trunc:2:2,2", "trunc:2:2", "trunc:3:2", "trunc:2:3"]
    specs += ["prod:Zn:2|Zn:2", "prod:Zn:2|Zn:3", "prod:Zn:4|Zn:2"]
    specs += ["triv:Zn:2|Zm:2", "triv:Zn:4|Zm:2", "triv:Zn:9|Zm:3"]
    specs += ["divext:Z", "divext:Zloc:2", "divext:quad:-1:1",
              "divext:quad:-1:2", "selfext:Z"]
    return specs


def parse_any_ring_spec(text: str):
    text = text.strip()
    if text.startswith("divext:") or text.startswith("selfext:"):
        return dx.parse_divided_spec(text)
    return parse_ring_spec(text)


def build_corpus(specs) -> list:
    rings = []
    seen = set()
    for s in specs:
        R = parse_any_ring_spec(s)
        if R.label in seen:
            continue
        seen.add(R.label)
        rings.append(R)
    return rings


def read_corpus_file(path: str) -> list[str]:
    specs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                specs.append(line)
    return specs


@dataclass
class SuiteResult:
    suite: str
    status: str = "pass"            # pass | fail | inconclusive
    checks: int = 0
    violations: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def finish(self):
        if self.violations:
            self.status = "fail"
        elif self.inconclusive:
            self.status = "inconclusive"
        return self

    def to_dict(self) -> dict:
        return {"status": self.status, "checks": self.checks,
                "violations": sorted(self.violations),
                "inconclusive": sorted(self.inconclusive),
                "notes": sorted(self.notes)}


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("PHILAB_WORKERS", "1")))
    except ValueError:
        return 1


def classify_corpus(rings, budgets: Budgets):
    """Classify every ring; errors downgrade to per-ring entries.

    Returns (reports, errors): reports maps label -> ClassificationReport,
    errors maps label -> message.  InternalInconsistency is re-raised by
    suites as a definite violation, so it is kept separate.
    """
    reports, errors, hard = {}, {}, {}

    def work(R):
        return ph.classify(R, budgets)

    n = _workers()
    if n == 1:
        for R in rings:
            try:
                reports[R.label] = work(R)
            except InternalInconsistency as e:
                hard[R.label] = str(e)
            except PhilabError as e:
                errors[R.label] = str(e)
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=n) as ex:
            futs = {ex.submit(work, R): R for R in rings}
            for fut in concurrent.futures.as_completed(futs):
                R = futs[fut]
                try:
                    reports[R.label] = fut.result()
                except InternalInconsistency as e:
                    hard[R.label] = str(e)
                except PhilabError as e:
                    errors[R.label] = str(e)
    return reports, errors, hard


def _route_vs_r3(result: SuiteResult, reports, route_name: str):
    for label in sorted(reports):
        rep = reports[label]
        if not rep.routes:
            continue
        r3 = rep.routes.get("r3_quotient_domain")
        other = rep.routes.get(route_name)
        if r3 is None or other is None:
            continue
        result.checks += 1
        if other.value is None:
            result.inconclusive.append(f"{label}: {route_name} inconclusive "
                                       f"({other.note or other.method})")
        elif r3.value is not None and other.value != r3.value:
            result.violations.append(
                f"{label}: {route_name}={other.value} vs r3={r3.value}")


def run_suite(suite: str, rings, reports, budgets: Budgets,
              errors=None, hard=None) -> SuiteResult:
    errors = errors or {}
    hard = hard or {}
    result = SuiteResult(suite=suite)
    for label, msg in sorted(errors.items()):
        result.inconclusive.append(f"{label}: {msg}")
    for label, msg in sorted(hard.items()):
        result.violations.append(f"{label}: internal inconsistency: {msg}")
    by_label = {R.label: R for R in rings}

    if suite == "t1":
        _route_vs_r3(result, reports, "r7_lattice_distributivity")
    elif suite == "t3":
        _route_vs_r3(result, reports, "r9_residual_sum")
        _route_vs_r3(result, reports, "r10_residual_intersection")
    elif suite == "t4":
        _route_vs_r3(result, reports, "r11_product_identity")
    elif suite == "t2":
        for label in sorted(reports):
            rep = reports[label]
            if rep.value("phi_ring") is not True:
                continue
            expected = rep.value("phi_prufer")
            if expected is None:
                result.inconclusive.append(f"{label}: no Prufer-like consensus")
                continue
            sweep = ph.t2_sweep(by_label[label], budgets)
            result.checks += sweep["checked"]
            if sweep["all_ok"] != expected:
                if expected:
                    result.violations.append(
                        f"{label}: factorization failed: {sweep['failures'][0]}")
                else:
                    result.violations.append(
                        f"{label}: no factorization failure found in bounds "
                        "despite a definite negative verdict")
            elif not expected:
                result.notes.append(
                    f"{label}: factorization fails as expected, e.g. "
                    f"{sweep['failures'][0]}")
    elif suite == "t5":
        for label in sorted(reports):
            rep = reports[label]
            if rep.kind != "finite" or rep.value("phi_ring") is not True:
                continue
            result.checks += 1
            gv = rep.verdicts["gaussian_nonnil"]
            if gv.value is False:
                result.violations.append(
                    f"{label}: non-nilpotent content equation fails: {gv.witness}")
            elif gv.value is None:
                result.inconclusive.append(f"{label}: {gv.note or gv.method}")
    elif suite == "cor0":
        for label in sorted(reports):
            rep = reports[label]
            if not rep.routes:
                continue
            vals = {k: v.value for k, v in rep.routes.items() if v.value is not None}
            result.checks += len(vals)
            if len(set(vals.values())) > 1:
                result.violations.append(f"{label}: route disagreement {vals}")
        result.notes.append(f"rings classified: {len(reports)}")
    elif suite == "t11":
        for label in sorted(reports):
            rep = reports[label]
            if rep.value("phi_ring") is not True:
                continue
            try:
                t11 = ph.check_t11_bezout(by_label[label], budgets, report=rep)
            except PhilabError as e:
                result.inconclusive.append(f"{label}: {e}")
                continue
            if not t11.get("applicable"):
                continue
            result.checks += t11["checked"]
            if not t11["all_ok"]:
                result.violations.append(
                    f"{label}: non-principal 2-generated ideal {t11['failures'][0]}")
    elif suite == "pi":
        target = reports.get("divext:Z")
        if target is None:
            result.inconclusive.append("divext:Z not in corpus")
        else:
            pi = ph.check_primary_irreducible(by_label["divext:Z"],
                                              budgets.primary_bound)
            result.checks += len(pi["rows"])
            if not pi["biconditional_holds"]:
                bad = [r for r in pi["rows"]
                       if not (r["primary"] == r["irreducible"] == r["prime_power"])]
                result.violations.append(f"primary/irreducible mismatch at {bad[0]}")
            if not pi["nonnil_primes_maximal"]:
                result.violations.append("a nonnil prime pullback is not maximal")
    elif suite == "examples":
        _examples_suite(result, rings, reports, budgets)
    elif suite == "diagram":
        _diagram_suite(result, reports)
    else:
        raise ParseError(f"unknown suite id {suite!r}")
    return result.finish()


_DIAGRAM_EDGES = (
    ("arithmetical", "gaussian_all"),
    ("gaussian_all", "gaussian_nonnil"),
    ("phi_vnr", "phi_prufer"),
    ("phi_chained", "phi_prufer"),
    ("phi_wgldim_eq0", "phi_wgldim_le1"),
    ("phi_wgldim_le1", "phi_prufer"),
    ("phi_prufer", "classical_prufer"),
)

_PHI_ONLY_EDGES = (
    ("gaussian_all", "phi_prufer"),
)


def _diagram_suite(result: SuiteResult, reports):
    for label in sorted(reports):
        rep = reports[label]
        edges = _DIAGRAM_EDGES
        if rep.value("phi_ring") is True:
            edges = edges + _PHI_ONLY_EDGES
        for src, dst in edges:
            a, b = rep.value(src), rep.value(dst)
            if a is None or b is None:
                continue
            result.checks += 1
            if a and not b:
                result.violations.append(f"{label}: {src} does not imply {dst}")
    datapoints = [label for label in sorted(reports)
                  if reports[label].value("classical_prufer") is True
                  and reports[label].value("phi_ring") is False]
    result.notes.append(
        f"prufer-without-phi datapoints: {len(datapoints)}"
        + (f" (e.g. {datapoints[0]})" if datapoints else ""))


def _examples_suite(result: SuiteResult, rings, reports, budgets: Budgets):
    by_label = {R.label: R for R in rings}
    rep = reports.get("trunc:2:2,2")
    if rep is None:
        result.inconclusive.append("trunc:2:2,2 not in corpus")
    else:
        R = by_label["trunc:2:2,2"]
        for prop, want in (("phi_ring", True), ("phi_vnr", True),
                           ("phi_prufer", True), ("gaussian_all", False)):
            result.checks += 1
            if rep.value(prop) is not want:
                result.violations.append(
                    f"trunc:2:2,2: {prop} = {rep.value(prop)}, expected {want}")
        for rkey, rv in rep.routes.items():
            result.checks += 1
            if rv.value is not True:
                result.violations.append(f"trunc:2:2,2: route {rkey} is {rv.value}")
        wit = rep.verdicts["gaussian_all"].witness
        x, y = R.elem_index("x"), R.elem_index("y")
        expected_poly = pc.poly(R, [y, x])
        g1 = pc.ring_gaussian_checks(R, 1, budgets.pair_budget,
                                     budgets.sample_pairs,
                                     seed_for(budgets.seed, R.label))
        result.checks += 1
        if g1.witness_all != (expected_poly, expected_poly):
            result.violations.append(
                f"expected the degree-1 witness pair (xZ+y, xZ+y), got {wit}")
        else:
            prod = pc.poly_mul(expected_poly, expected_poly)
            cprod = ic.ideal_product(pc.content(expected_poly),
                                     pc.content(expected_poly))
            xy = ic.span(R, [R.elem_index("x*y")])
            if not prod.is_zero() or cprod != xy or cprod.is_zero():
                result.violations.append(
                    "witness pair does not satisfy fg = 0 with "
                    "c(f)c(g) = (xy) != 0")
        g2 = pc.ring_gaussian_checks(R, 2, budgets.pair_budget,
                                     budgets.sample_pairs,
                                     seed_for(budgets.seed, R.label))
        result.checks += 1
        if not g2.gaussian_nonnil_f:
            result.violations.append(
                f"non-nilpotent pairs at degree 2 failed: {g2.witness_nonnil}")
        if g2.nonnil_pairs_checked < budgets.sample_pairs:
            result.inconclusive.append(
                f"only {g2.nonnil_pairs_checked} non-nilpotent pairs sampled")
        result.notes.append(f"degree-2 sweep method: {g2.method}")
    if "divext:Zloc:2" not in by_label:
        result.inconclusive.append("divext:Zloc:2 not in corpus")
    else:
        R2 = by_label["divext:Zloc:2"]
        ann = dx.annihilator_membership(R2, budget=budgets.sample_budget,
                                        seed=seed_for(budgets.seed, R2.label))
        result.checks += len(ann["checks"])
        for name, ok in ann["checks"]:
            if not ok:
                result.violations.append(f"divext:Zloc:2: {name} failed")


def run_check(specs=None, suites=("all",), budgets: Budgets = Budgets()) -> dict:
    """Build the corpus, classify, run the selected suites, emit report data."""
    if specs is None:
        specs = default_corpus_specs()
    selected = SUITE_IDS if "all" in suites else tuple(suites)
    for s in selected:
        if s not in SUITE_IDS:
            raise ParseError(f"unknown suite id {s!r}")
    rings = build_corpus(specs)
    reports, errors, hard = classify_corpus(rings, budgets)
    suite_results = {}
    for sid in selected:
        suite_results[sid] = run_suite(sid, rings, reports, budgets,
                                       errors=errors, hard=hard)
    passed = sum(1 for r in suite_results.values() if r.status == "pass")
    if any(r.status == "fail" for r in suite_results.values()):
        exit_code = EXIT_VIOLATION
    elif any(r.status == "inconclusive" for r in suite_results.values()):
        exit_code = EXIT_INCONCLUSIVE
    else:
        exit_code = EXIT_PASS
    return {
        "schema": SCHEMA,
        "seed": budgets.seed,
        "budgets": budgets.to_dict(),
        "corpus": [R.label for R in rings],
        "rings": {label: rep.to_dict() for label, rep in reports.items()},
        "ring_errors": dict(sorted(errors.items())),
        "suites": {sid: r.to_dict() for sid, r in suite_results.items()},
        "summary": f"suites: {passed}/{len(suite_results)} pass",
        "exit_code": exit_code,
    }


def emit_report(report: dict, format: str = "json") -> str:
    """Deterministic serialization: sorted keys, no volatile fields."""
    if format == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if format != "markdown":
        raise ParseError(f"unknown format {format!r}")
    lines = [f"# {report['schema']}", "",
             f"- seed: {report['seed']}",
             f"- corpus: {len(report['corpus'])} rings",
             f"- {report['summary']}", "", "## Suites", ""]
    for sid in sorted(report["suites"]):
        s = report["suites"][sid]
        lines.append(f"### {sid}: {s['status']} ({s['checks']} checks)")
        for v in s["violations"]:
            lines.append(f"- VIOLATION: {v}")
        for v in s["inconclusive"]:
            lines.append(f"- inconclusive: {v}")
        for v in s["notes"]:
            lines.append(f"- note: {v}")
        lines.append("")
    lines.append("## Rings")
    lines.append("")
    for label in sorted(report["rings"]):
        rep = report["rings"][label]
        verdicts = ", ".join(f"{k}={v['value']}"
                             for k, v in sorted(rep["verdicts"].items()))
        lines.append(f"- **{label}**: {verdicts}")
    return "\n".join(lines) + "\n"


def search_property(reports: dict, prop: str, negate: bool = False) -> list[str]:
    if prop not in ph.PROPERTY_NAMES:
        raise ParseError(f"unknown property {prop!r}; "
                         f"choose from {', '.join(ph.PROPERTY_NAMES)}")
    want = False if negate else True
    return [label for label in sorted(reports)
            if reports[label].value(prop) is want]
