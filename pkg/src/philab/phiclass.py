"""Classification engine: aggregates every decider with multiple independent
routes to the Prufer-like verdict, plus the theorem-shaped checks.

Route policy: a verdict of false always carries an exactly verified witness
and counts as definite; a "no violation within bound" sweep yields a soft
true (method tagged bounded(..)).  Two definite verdicts that disagree are
an implementation bug and raise InternalInconsistency; a bounded true that
contradicts a definite false is downgraded to inconclusive after one bound
escalation.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

from . import dividedext as dx
from . import domainkit as dk
from . import idealcalc as ic
from . import polycontent as pc
from .errors import (
    BudgetExceeded,
    InternalInconsistency,
    NotContained,
    NotNonnil,
    NotPhiRing,
    OutOfTableRange,
    UnsupportedFamily,
)
from .finring import FiniteRing, nil_prime_witness, phi_image, quotient_ring


@dataclass(frozen=True)
class Budgets:
    """Knobs for every bounded sweep; defaults complete the corpus in minutes."""

    deg_bound: int = 1
    pair_budget: int = 10 ** 6
    sample_pairs: int = 10 ** 4
    norm_bound: int = 30
    norm_bound_escalated: int = 64
    exponent_bound: int = 20
    ideal_budget: int = 4096
    sample_budget: int = 10 ** 3
    primary_bound: int = 200
    seed: int = 42

    def to_dict(self) -> dict:
        return {
            "deg_bound": self.deg_bound,
            "pair_budget": self.pair_budget,
            "sample_pairs": self.sample_pairs,
            "norm_bound": self.norm_bound,
            "norm_bound_escalated": self.norm_bound_escalated,
            "exponent_bound": self.exponent_bound,
            "ideal_budget": self.ideal_budget,
            "sample_budget": self.sample_budget,
            "primary_bound": self.primary_bound,
            "seed": self.seed,
        }


def seed_for(seed: int, label: str) -> int:
    """Stable per-ring sub-seed (independent of PYTHONHASHSEED)."""
    digest = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclass
class Verdict:
    value: bool | None               # None = inconclusive
    method: str
    witness: str | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        out = {"value": {True: "true", False: "false", None: "inconclusive"}[self.value],
               "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out


def _is_definite(v: Verdict) -> bool:
    """False verdicts carry verified witnesses and are always definite; true
    verdicts are definite unless they came from a bounded/sampled sweep."""
    if v.value is None:
        return False
    if v.value is False:
        return True
    return not (v.method.startswith("bounded") or v.method.startswith("sampled"))


@dataclass
class ClassificationReport:
    label: str
    kind: str                        # "finite" | "divided-extension"
    order: int | None = None
    verdicts: dict = field(default_factory=dict)
    routes: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"label": self.label, "kind": self.kind,
               "verdicts": {k: v.to_dict() for k, v in sorted(self.verdicts.items())},
               "routes": {k: v.to_dict() for k, v in sorted(self.routes.items())}}
        if self.order is not None:
            out["order"] = self.order
        if self.notes:
            out["notes"] = sorted(self.notes)
        return out

    def value(self, prop: str):
        v = self.verdicts.get(prop)
        return None if v is None else v.value


ROUTE_NAMES = ("r3_quotient_domain", "r7_lattice_distributivity",
               "r9_residual_sum", "r10_residual_intersection",
               "r11_product_identity", "r12_locally_principal")


# ---------------------------------------------------------------------------
# phi-ring detection

def is_phi_ring(R) -> Verdict:
    """Nilradical is a divided prime: pair scan + ideal comparability for
    finite rings; structural for K/D extensions, search for self modules."""
    if isinstance(R, FiniteRing):
        w = nil_prime_witness(R)
        if w is not None:
            a, b = w
            return Verdict(False, "exhaustive",
                           witness=f"{R.elem_name(a)}*{R.elem_name(b)} nilpotent, "
                                   "factors are not")
        nil = ic.nilradical(R)
        for J in ic.enumerate_ideals(R):
            if not (J <= nil or nil <= J):
                return Verdict(False, "exhaustive",
                               witness=f"nilradical incomparable with {J!r}")
        return Verdict(True, "exhaustive")
    check = dx.divided_check(R, budget=64, seed=seed_for(0, R.label))
    if R.module == "fractions":
        if not check["verdict"]:
            raise InternalInconsistency("divisible module failed divided check")
        return Verdict(True, "structural",
                       note="quotient by the nil part is the base domain; "
                            "nil part is divided since the module is divisible")
    if check["verdict"]:
        return Verdict(None, check["method"], note="no failure found within budget")
    nil_w, elem_w = check["witness"]
    return Verdict(False, "exhaustive",
                   witness=f"nil element {nil_w} escapes the principal ideal of {elem_w}")


# ---------------------------------------------------------------------------
# finite-ring scans

def _finite_strongly_phi(R: FiniteRing, phi: Verdict) -> Verdict:
    zd, nil = R.zerodivisors(), R.nilpotents()
    if phi.value is not True:
        return Verdict(False, "exhaustive", note="not a phi-ring")
    if zd == nil:
        return Verdict(True, "exhaustive")
    x = min(zd - nil)
    return Verdict(False, "exhaustive",
                   witness=f"{R.elem_name(x)} is a zerodivisor but not nilpotent")


def _finite_phi_chained(R: FiniteRing, phi: Verdict) -> Verdict:
    if phi.value is not True:
        return Verdict(False, "exhaustive", note="not a phi-ring")
    nil = R.nilpotents()
    outside = [x for x in R.elements() if x not in nil]
    divides = {}
    for a in outside:
        divides[a] = {R.mul(a, r) for r in R.elements()}
    for a in outside:
        for b in outside:
            if b not in divides[a] and a not in divides[b]:
                return Verdict(False, "exhaustive",
                               witness=f"{R.elem_name(a)} and {R.elem_name(b)} "
                                       "do not divide one another")
    return Verdict(True, "exhaustive")


def _finite_phi_vnr(R: FiniteRing, phi: Verdict) -> Verdict:
    if phi.value is not True:
        return Verdict(False, "exhaustive", note="not a phi-ring")
    leftover = set(R.elements()) - R.units() - R.nilpotents()
    if not leftover:
        return Verdict(True, "exhaustive",
                       note="local with maximal ideal equal to the nilradical")
    x = min(leftover)
    return Verdict(False, "exhaustive",
                   witness=f"{R.elem_name(x)} is neither a unit nor nilpotent")


def _finite_classical_prufer(R: FiniteRing) -> Verdict:
    regular = [x for x in R.elements() if x not in R.zerodivisors()]
    if any(x not in R.units() for x in regular):
        raise InternalInconsistency(
            f"finite ring {R.label} has a regular non-unit")
    return Verdict(True, "exhaustive",
                   note="every regular element is a unit, so every regular "
                        "ideal is the unit ideal")


def _finite_arithmetical(R: FiniteRing, budget: int) -> Verdict:
    try:
        ideals = ic.enumerate_ideals(R, budget)
    except BudgetExceeded as e:
        return Verdict(None, "exhaustive", note=str(e))
    inter = {}
    summ = {}

    def ix(I, J):
        k = (I.mask, J.mask) if I.mask <= J.mask else (J.mask, I.mask)
        if k not in inter:
            inter[k] = ic.ideal_intersect(I, J)
        return inter[k]

    def sm(I, J):
        k = (I.mask, J.mask) if I.mask <= J.mask else (J.mask, I.mask)
        if k not in summ:
            summ[k] = ic.ideal_sum(I, J)
        return summ[k]

    for I in ideals:
        for J in ideals:
            for K in ideals:
                if ix(I, sm(J, K)) != sm(ix(I, J), ix(I, K)):
                    return Verdict(False, "exhaustive",
                                   witness=f"I={I!r}, J={J!r}, K={K!r}")
    return Verdict(True, "exhaustive")


def _total_ring_is_self(R) -> Verdict:
    if isinstance(R, FiniteRing):
        units, zd = R.units(), R.zerodivisors()
        if units & zd or units | zd != set(R.elements()):
            raise InternalInconsistency("unit/zerodivisor partition failed")
        return Verdict(True, "exhaustive",
                       note="every element is a unit or a zerodivisor")
    return Verdict(True, "structural",
                   note="every non-unit is a zerodivisor, so T(R) = R")


# ---------------------------------------------------------------------------
# multiroute Prufer-like verdicts

def phi_prufer_multiroute(R, budgets: Budgets = Budgets()) -> dict:
    """The independent routes, checked against each other.

    Finite rings: quotient field test (r3), exhaustive nonnil-ideal sweeps
    (r7, r9, r10, r11), localization at every maximal ideal (r12).  Divided
    extensions: base-domain test (r3), bounded pullback-triple sweeps
    (r7, r9, r10, r11 with the product-distributes-over-intersection form),
    valuation exponents (r12, Z and Zloc backends).
    """
    phi = is_phi_ring(R)
    if phi.value is not True:
        raise NotPhiRing(f"{R.label} is not a phi-ring")
    if isinstance(R, FiniteRing):
        routes = _finite_routes(R, budgets)
    else:
        routes = _divext_routes(R, budgets)
    _check_route_consistency(R, routes)
    return routes


def _check_route_consistency(R, routes: dict):
    definite = {k: v for k, v in routes.items() if _is_definite(v)}
    values = {v.value for v in definite.values()}
    if len(values) > 1:
        detail = ", ".join(f"{k}={v.value}" for k, v in sorted(definite.items()))
        raise InternalInconsistency(
            f"route contradiction on {R.label}: {detail}")
    if values == {False}:
        # soft trues that survived escalation are downgraded, not trusted
        for k, v in routes.items():
            if v.value is True and not _is_definite(v):
                routes[k] = Verdict(None, v.method,
                                    note="bound too small: definite false "
                                         "route overrides this sweep")


def route_consensus(routes: dict) -> Verdict:
    definite = [v for v in routes.values() if _is_definite(v)]
    if definite:
        val = definite[0].value
        names = ",".join(sorted(k for k, v in routes.items() if _is_definite(v)))
        w = next((v.witness for v in definite if v.witness), None)
        return Verdict(val, f"multiroute({names})", witness=w)
    soft = [v for v in routes.values() if v.value is True]
    if soft:
        return Verdict(True, "bounded(multiroute)",
                       note="all routes agree up to their bounds")
    return Verdict(None, "multiroute", note="no route reached a verdict")


def _finite_routes(R: FiniteRing, budgets: Budgets) -> dict:
    routes = {}
    nil = frozenset(R.nilpotents())
    Q, _ = quotient_ring(R, nil, f"{R.label}/nil")
    nonunits = [x for x in Q.elements() if x != Q.zero and x not in Q.units()]
    if nonunits:
        routes["r3_quotient_domain"] = Verdict(
            False, "exhaustive",
            witness=f"non-unit {Q.elem_name(nonunits[0])} in the reduced quotient")
    else:
        routes["r3_quotient_domain"] = Verdict(
            True, "exhaustive", note="reduced quotient is a field")

    ideals = ic.enumerate_ideals(R, budgets.ideal_budget)
    nonnil = [I for I in ideals if ic.is_nonnil_ideal(I)]
    note = "nonnil lattice is {R}" if len(nonnil) == 1 else None

    def sweep(check, name):
        for I in nonnil:
            for J in nonnil:
                for K in ideals if name in ("r9", "r10") else nonnil:
                    w = check(I, J, K)
                    if w is not None:
                        return Verdict(False, "exhaustive", witness=w)
        return Verdict(True, "exhaustive", note=note)

    def r7(I, J, K):
        lhs = ic.ideal_intersect(I, ic.ideal_sum(J, K))
        rhs = ic.ideal_sum(ic.ideal_intersect(I, J), ic.ideal_intersect(I, K))
        return None if lhs == rhs else f"I={I!r}, J={J!r}, K={K!r}"

    def r9(I, J, K):
        lhs = ic.residual(ic.ideal_sum(I, J), K)
        rhs = ic.ideal_sum(ic.residual(I, K), ic.residual(J, K))
        return None if lhs == rhs else f"I={I!r}, J={J!r}, K={K!r}"

    def r10(I, J, K):
        lhs = ic.residual(K, ic.ideal_intersect(I, J))
        rhs = ic.ideal_sum(ic.residual(K, I), ic.residual(K, J))
        return None if lhs == rhs else f"I={I!r}, J={J!r}, K={K!r}"

    def r11(I, J, K):
        lhs = ic.ideal_product(ic.ideal_intersect(I, J), K)
        rhs = ic.ideal_intersect(ic.ideal_product(I, K), ic.ideal_product(J, K))
        return None if lhs == rhs else f"I={I!r}, J={J!r}, K={K!r}"

    routes["r7_lattice_distributivity"] = sweep(r7, "r7")
    routes["r9_residual_sum"] = sweep(r9, "r9")
    routes["r10_residual_intersection"] = sweep(r10, "r10")
    routes["r11_product_identity"] = sweep(r11, "r11")

    ok = True
    witness = None
    for P in ic.maximal_ideals(R, budgets.ideal_budget):
        Q, surj = ic.localize_at(R, P)
        for I in nonnil:
            image = ic.span(Q, {surj[x] for x in I.members()})
            if not any(ic.span(Q, [g]) == image for g in Q.elements()):
                ok = False
                witness = f"{I!r} not principal at {P!r}"
                break
        if not ok:
            break
    routes["r12_locally_principal"] = (
        Verdict(True, "exhaustive", note=note) if ok
        else Verdict(False, "exhaustive", witness=witness))
    return routes


def _divext_routes(R, budgets: Budgets) -> dict:
    D = R.domain
    routes = {}
    prufer, wit = dk.is_prufer_domain(D, budgets.norm_bound_escalated)
    routes["r3_quotient_domain"] = Verdict(
        prufer, "by-quotient-theorem",
        witness=None if wit is None else f"non-invertible {wit.describe()}",
        note="reduces to the base domain via the reduced quotient")

    expect_false = not prufer

    def pools():
        yield budgets.norm_bound
        if expect_false:
            yield budgets.norm_bound_escalated

    def bounded_sweep(identity):
        bound = budgets.norm_bound
        for bound in pools():
            pool = dx.ideal_pool(R, bound)
            w = _pullback_triple_sweep(pool, identity)
            if w is not None:
                return Verdict(False, f"bounded(norm<={bound})",
                               witness=w)
        if expect_false:
            return Verdict(None, f"bounded(norm<={bound})",
                           note="no witness within bounds; r3 governs")
        return Verdict(True, f"bounded(norm<={bound})")

    routes["r7_lattice_distributivity"] = bounded_sweep(_id_r7)
    routes["r9_residual_sum"] = bounded_sweep(_id_r9)
    routes["r10_residual_intersection"] = bounded_sweep(_id_r10)
    routes["r11_product_identity"] = bounded_sweep(_id_r11)

    if D.kind in ("Z", "Zloc"):
        ok = True
        for rep in dx.ideal_pool(R, budgets.norm_bound):
            if D.kind == "Z":
                n = rep.dj.g
                primes = [p for p in range(2, n + 1) if n % p == 0 and dk._is_prime(p)]
                for p in primes:
                    loc = dk.zloc(p)
                    img = dk.dom_from_generators(loc, [n])
                    if img != dk.DomIdeal(loc, k=dk.vp(p, n)):
                        ok = False
            else:
                img = rep.dj
                if img != dk.DomIdeal(D, k=img.k):
                    ok = False
        routes["r12_locally_principal"] = Verdict(
            ok, "valuation-exponents",
            note="local components are powers of the maximal ideal")
    else:
        routes["r12_locally_principal"] = Verdict(
            None, "by-quotient-theorem",
            note="skipped for quadratic backends; r3 governs")
    return routes


def _op_cache(op):
    cache = {}

    def f(I, J):
        k = (I, J)
        got = cache.get(k)
        if got is None:
            got = op(I, J)
            cache[k] = got
        return got
    return f


def _pullback_triple_sweep(pool, identity):
    """First violating triple (deterministic: pool order), or None."""
    ops = {
        "sum": _op_cache(lambda A, B: dk.dom_sum(A, B)),
        "inter": _op_cache(lambda A, B: dk.dom_intersect(A, B)),
        "prod": _op_cache(lambda A, B: dk.dom_product(A, B)),
        "res": _op_cache(lambda A, B: dk.dom_residual(A, B)),
    }
    for I in pool:
        for J in pool:
            for K in pool:
                if not identity(ops, I.dj, J.dj, K.dj):
                    return (f"I={I.describe()}, J={J.describe()}, "
                            f"K={K.describe()}")
    return None


def _id_r7(ops, I, J, K):
    lhs = ops["inter"](I, ops["sum"](J, K))
    rhs = ops["sum"](ops["inter"](I, J), ops["inter"](I, K))
    return lhs == rhs


def _id_r9(ops, I, J, K):
    lhs = ops["res"](ops["sum"](I, J), K)
    rhs = ops["sum"](ops["res"](I, K), ops["res"](J, K))
    return lhs == rhs


def _id_r10(ops, I, J, K):
    lhs = ops["res"](K, ops["inter"](I, J))
    rhs = ops["sum"](ops["res"](K, I), ops["res"](K, J))
    return lhs == rhs


def _id_r11(ops, I, J, K):
    # product distributes over intersection: (I n J)K = IK n JK
    lhs = ops["prod"](ops["inter"](I, J), K)
    rhs = ops["inter"](ops["prod"](I, K), ops["prod"](J, K))
    return lhs == rhs


# ---------------------------------------------------------------------------
# classify

def classify(R, budgets: Budgets = Budgets()) -> ClassificationReport:
    if isinstance(R, FiniteRing):
        return _classify_finite(R, budgets)
    return _classify_divext(R, budgets)


def _classify_finite(R: FiniteRing, budgets: Budgets) -> ClassificationReport:
    rep = ClassificationReport(label=R.label, kind="finite", order=R.order)
    v = rep.verdicts
    phi = is_phi_ring(R)
    v["phi_ring"] = phi
    v["strongly_phi"] = _finite_strongly_phi(R, phi)
    v["phi_chained"] = _finite_phi_chained(R, phi)
    v["phi_vnr"] = _finite_phi_vnr(R, phi)
    v["classical_prufer"] = _finite_classical_prufer(R)
    v["total_ring_is_self"] = _total_ring_is_self(R)
    v["arithmetical"] = _finite_arithmetical(R, budgets.ideal_budget)
    v["semilocal"] = Verdict(True, "exhaustive", note="finitely many ideals")

    g = pc.ring_gaussian_checks(R, budgets.deg_bound, budgets.pair_budget,
                                budgets.sample_pairs, seed_for(budgets.seed, R.label))
    v["gaussian_all"] = Verdict(
        g.gaussian_all_f, g.method if g.method.startswith("sampled")
        else f"bounded(deg<={g.deg_bound};{g.method})",
        witness=None if g.witness_all is None else
        f"f={g.witness_all[0]!r}, g={g.witness_all[1]!r}")
    v["gaussian_nonnil"] = Verdict(
        g.gaussian_nonnil_f, g.method if g.method.startswith("sampled")
        else f"bounded(deg<={g.deg_bound};{g.method})",
        witness=None if g.witness_nonnil is None else
        f"f={g.witness_nonnil[0]!r}, g={g.witness_nonnil[1]!r}")

    if phi.value is True:
        routes = phi_prufer_multiroute(R, budgets)
        rep.routes = routes
        v["phi_prufer"] = route_consensus(routes)
        v["phi_bezout"] = Verdict(
            True, "derived", note="reduced quotient of a finite phi-ring is a field")
        _finite_cor0_extras(R, rep, budgets)
        if len([I for I in ic.enumerate_ideals(R, budgets.ideal_budget)
                if ic.is_nonnil_ideal(I)]) == 1:
            rep.notes.append("degenerate: the only nonnil ideal is R itself")
    else:
        v["phi_prufer"] = Verdict(False, "definitional", note="not a phi-ring")
        v["phi_bezout"] = Verdict(False, "definitional", note="not a phi-ring")
    _derived_homological(v)
    return rep


def _finite_cor0_extras(R: FiniteRing, rep: ClassificationReport, budgets: Budgets):
    v = rep.verdicts
    Q, surj = phi_image(R)
    if any(surj[x] == surj[R.zero] for x in R.elements() if x != R.zero):
        raise InternalInconsistency(
            f"finite phi-ring {R.label} has a nontrivial phi-kernel")
    v["cor0_2_phi_image_prufer"] = _finite_classical_prufer(Q)
    nil_q = frozenset(Q.nilpotents())
    QQ, _ = quotient_ring(Q, nil_q, f"{Q.label}/nil")
    field = all(x == QQ.zero or x in QQ.units() for x in QQ.elements())
    v["cor0_4_phi_image_quotient_prufer"] = Verdict(
        field, "exhaustive", note="reduced quotient of the phi-image is a field")
    ok = True
    for P in ic.enumerate_ideals(R, budgets.ideal_budget):
        if not ic.is_prime_ideal(P):
            continue
        L, _ = ic.localize_at(R, P)
        LL, _ = quotient_ring(L, frozenset(L.nilpotents()), f"{L.label}/nil")
        if not all(x == LL.zero or x in LL.units() for x in LL.elements()):
            ok = False
    v["cor0_5_local_quotients_valuation"] = Verdict(
        ok, "exhaustive",
        note="localizations at primes have field reduced quotients")
    v["cor0_6_local_quotients_valuation_maximal"] = Verdict(
        ok, "exhaustive",
        note="maximal ideals are prime; same scan restricted")


def _classify_divext(R, budgets: Budgets) -> ClassificationReport:
    rep = ClassificationReport(label=R.label, kind="divided-extension")
    v = rep.verdicts
    D = R.domain
    phi = is_phi_ring(R)
    v["phi_ring"] = phi
    v["total_ring_is_self"] = _total_ring_is_self(R)
    v["classical_prufer"] = Verdict(
        True, "structural",
        note="regular elements are units, so regular ideals are the unit ideal")
    if phi.value is not True:
        v["phi_prufer"] = Verdict(False, "definitional", note="not a phi-ring")
        for name in ("strongly_phi", "phi_chained", "phi_vnr", "phi_bezout"):
            v[name] = Verdict(False, "definitional", note="not a phi-ring")
        v["semilocal"] = Verdict(dk.traits(D).is_semilocal, "by-quotient-theorem")
        _derived_homological(v)
        return rep

    v["strongly_phi"] = Verdict(
        False, "by-quotient-theorem",
        witness=f"({dk.format_elem(D, _first_nonunit(D))}, 0) is a zerodivisor "
                "but not nilpotent",
        note="zerodivisors are exactly non-units; equality with the nil part "
             "would force the base domain to be a field")
    chained, wit = dk.is_valuation_domain(D)
    v["phi_chained"] = Verdict(
        chained, "by-quotient-theorem",
        witness=None if wit is None else
        f"incomparable {wit[0].describe()} and {wit[1].describe()}")
    v["phi_vnr"] = Verdict(
        False, "by-quotient-theorem",
        note="the maximal ideal strictly exceeds the nil part unless the "
             "base domain is a field")
    try:
        tr = dk.traits(D)
        v["phi_bezout"] = Verdict(tr.is_bezout, "by-quotient-theorem")
        v["semilocal"] = Verdict(tr.is_semilocal, "by-quotient-theorem")
    except OutOfTableRange as e:
        v["phi_bezout"] = Verdict(None, "by-quotient-theorem", note=str(e))
        v["semilocal"] = Verdict(False, "by-quotient-theorem")
    routes = phi_prufer_multiroute(R, budgets)
    rep.routes = routes
    v["phi_prufer"] = route_consensus(routes)
    v["gaussian_all"] = Verdict(None, "not-computed",
                                note="infinite family; out of scope")
    v["gaussian_nonnil"] = Verdict(None, "not-computed",
                                   note="infinite family; out of scope")
    v["arithmetical"] = Verdict(None, "not-computed",
                                note="infinite family; out of scope")
    v["cor0_2_phi_image_prufer"] = Verdict(
        v["phi_prufer"].value, "derived",
        note="phi-image level conditions reduce to the quotient-domain route")
    v["cor0_4_phi_image_quotient_prufer"] = Verdict(
        v["phi_prufer"].value, "derived",
        note="phi-image level conditions reduce to the quotient-domain route")
    _derived_homological(v)
    return rep


def _first_nonunit(D: dk.DomainHandle):
    if D.kind == "Z":
        return 2
    if D.kind == "Zloc":
        return D.p
    return (2, 0)


def _derived_homological(v: dict):
    """Weak-global-dimension labels, emitted strictly as derived verdicts."""
    vnr = v.get("phi_vnr")
    v["phi_wgldim_eq0"] = Verdict(
        vnr.value, "derived",
        note="equivalent to the phi-von-Neumann-regular verdict")
    prufer = v.get("phi_prufer")
    strong = v.get("strongly_phi")
    if prufer is None or prufer.value is None or strong is None or strong.value is None:
        val = None
    else:
        val = prufer.value and strong.value
    v["phi_wgldim_le1"] = Verdict(
        val, "derived",
        note="equivalent to: Prufer-like verdict together with zerodivisors "
             "equal to nilpotents")
    v["nonnil_semihereditary"] = Verdict(
        val, "derived", note="equivalent to the weak-dimension-at-most-one label")


# ---------------------------------------------------------------------------
# theorem-shaped checks

def check_t2_factorization(R, I, J) -> dict:
    """Exact factorization criterion: a nonnil K with I = J*K exists iff
    J*(I:J) = I, in which case K = (I:J)."""
    if isinstance(R, FiniteRing):
        if not (ic.is_nonnil_ideal(I) and ic.is_nonnil_ideal(J)):
            raise NotNonnil("both ideals must be nonnil")
        if not I <= J:
            raise NotContained("I must be contained in J")
        K = ic.residual(I, J)
        prod = ic.ideal_product(J, K)
        return {"exists": prod == I, "K": K, "product": prod}
    if not I <= J:
        raise NotContained("I must be contained in J")
    K = dx.nonnil_calc(I, J)["residual"]
    prod = dx.nonnil_calc(J, K)["product"]
    return {"exists": prod == I, "K": K, "product": prod}


def t2_sweep(R, budgets: Budgets = Budgets()) -> dict:
    """Run the factorization criterion over all bounded contained pairs."""
    failures = []
    checked = 0
    if isinstance(R, FiniteRing):
        nonnil = [I for I in ic.enumerate_ideals(R, budgets.ideal_budget)
                  if ic.is_nonnil_ideal(I)]
        for I in nonnil:
            for J in nonnil:
                if not I <= J:
                    continue
                checked += 1
                res = check_t2_factorization(R, I, J)
                if not res["exists"]:
                    failures.append(f"I={I!r}, J={J!r}, K={res['K']!r}")
    else:
        pool = dx.ideal_pool(R, budgets.norm_bound)
        for I in pool:
            for J in pool:
                if not I <= J:
                    continue
                checked += 1
                res = check_t2_factorization(R, I, J)
                if not res["exists"]:
                    failures.append(
                        f"I={I.describe()}, J={J.describe()}, "
                        f"J*(I:J)={res['product'].describe()}")
    return {"checked": checked, "failures": failures, "all_ok": not failures}


def _primary_int(n: int) -> bool:
    """nZ primary in Z, by residue-pair scan."""
    if n <= 1:
        return False
    L = n.bit_length()
    nilpotent_mod = [pow(b, L, n) == 0 for b in range(n)]
    for a in range(n):
        for b in range(n):
            if (a * b) % n == 0 and a % n != 0 and not nilpotent_mod[b]:
                return False
    return True


def _irreducible_int(n: int) -> bool:
    """nZ x M irreducible: no proper divisor pair with lcm n."""
    if n <= 1:
        return False
    divs = [d for d in range(1, n) if n % d == 0]
    for i, d1 in enumerate(divs):
        for d2 in divs[i:]:
            if d1 * d2 // _gcd(d1, d2) == n:
                return False
    return True


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _is_prime_power(n: int) -> bool:
    if n <= 1:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


def check_primary_irreducible(R, bound: int = 200) -> dict:
    """Primary vs irreducible for the pullback ideals n Z x M of the
    integer-based extension; vacuous for finite rings."""
    if isinstance(R, FiniteRing):
        return {"vacuous": True,
                "note": "finite phi-rings have no proper nonnil ideal"}
    if not (R.domain.kind == "Z" and R.module == "fractions"):
        raise UnsupportedFamily("primary/irreducible check targets divext:Z")
    rows = []
    agree = True
    for n in range(1, bound + 1):
        p = _primary_int(n)
        i = _irreducible_int(n)
        pp = _is_prime_power(n)
        rows.append({"n": n, "primary": p, "irreducible": i, "prime_power": pp})
        if not (p == i == pp):
            agree = False
    hyp = all(
        dk.dom_sum(dk.DomIdeal(R.domain, g=p), dk.DomIdeal(R.domain, g=a))
        == dk.dom_unit(R.domain)
        for p in range(2, 51) if _is_prime(p)
        for a in range(1, p))
    return {"vacuous": False, "rows": rows, "biconditional_holds": agree,
            "nonnil_primes_maximal": hyp}


def _is_prime(n: int) -> bool:
    return dk._is_prime(n)


def check_t11_bezout(R, budgets: Budgets = Budgets(), report=None) -> dict:
    """Semi-local + Prufer-like implies two-generated nonnil ideals are
    principal; reports not-applicable otherwise."""
    phi = is_phi_ring(R)
    if phi.value is not True:
        raise NotPhiRing(f"{R.label} is not a phi-ring")
    if report is None:
        report = classify(R, budgets)
    semilocal = report.value("semilocal")
    prufer = report.value("phi_prufer")
    if semilocal is not True or prufer is not True:
        return {"applicable": False, "semilocal": semilocal, "phi_prufer": prufer,
                "phi_bezout": report.value("phi_bezout")}
    failures = []
    checked = 0
    if isinstance(R, FiniteRing):
        seen = set()
        for x in R.elements():
            for y in R.elements():
                I = ic.span(R, [x, y])
                if I.mask in seen or not ic.is_nonnil_ideal(I):
                    continue
                seen.add(I.mask)
                checked += 1
                if not any(ic.span(R, [g]) == I for g in R.elements()):
                    failures.append(f"span{{{R.elem_name(x)},{R.elem_name(y)}}}")
    else:
        D = R.domain
        if D.kind != "Zloc":
            return {"applicable": False, "semilocal": semilocal,
                    "phi_prufer": prufer, "note": "no semilocal backend"}
        for a in range(budgets.exponent_bound + 1):
            for b in range(budgets.exponent_bound + 1):
                checked += 1
                gens = [R.elem(Fraction(D.p) ** a), R.elem(Fraction(D.p) ** b)]
                I = dx.nonnil_span(R, gens)
                single = dx.nonnil_span(R, [R.elem(Fraction(D.p) ** min(a, b))])
                if I != single:
                    failures.append(f"p^{a}, p^{b}")
    return {"applicable": True, "semilocal": True, "phi_prufer": True,
            "checked": checked, "failures": failures, "all_ok": not failures}


PROPERTY_NAMES = (
    "phi_ring", "strongly_phi", "phi_chained", "phi_vnr", "phi_prufer",
    "phi_bezout", "gaussian_all", "gaussian_nonnil", "arithmetical",
    "classical_prufer", "semilocal", "phi_wgldim_eq0", "phi_wgldim_le1",
    "nonnil_semihereditary", "total_ring_is_self",
)
