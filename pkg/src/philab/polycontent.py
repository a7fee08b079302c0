"""Polynomials over finite rings, content ideals, and bounded Gaussian checks.

Gaussianness quantifies over all polynomials, so no finite procedure
decides it; every verdict here is explicitly qualified by a degree bound.
Pair sweeps switch to seeded sampling above the pair budget.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import BudgetExceeded, MixedRings
from .finring import FiniteRing
from .idealcalc import FiniteIdeal, ideal_product, span, zero_ideal

PAIR_BUDGET = 10 ** 6
SAMPLE_PAIRS = 10 ** 4


class PolyOverRing:
    """Coefficient vector over a FiniteRing; trailing zeros trimmed."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: FiniteRing, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == ring.zero:
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, PolyOverRing) and self.ring is other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.ring.zero:
                continue
            nm = self.ring.elem_name(c)
            base = "" if i == 0 else ("Z" if i == 1 else f"Z^{i}")
            if i == 0:
                terms.append(nm)
            elif nm == self.ring.elem_name(self.ring.one):
                terms.append(base)
            else:
                terms.append(f"({nm}){base}")
        return "poly(" + " + ".join(terms) + ")"


def poly(R: FiniteRing, coeffs) -> PolyOverRing:
    return PolyOverRing(R, coeffs)


def poly_mul(f: PolyOverRing, g: PolyOverRing) -> PolyOverRing:
    if f.ring is not g.ring:
        raise MixedRings("polynomials over different rings")
    R = f.ring
    if f.is_zero() or g.is_zero():
        return PolyOverRing(R, ())
    out = [R.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a == R.zero:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] = R.add(out[i + j], R.mul(a, b))
    return PolyOverRing(R, out)


def content(f: PolyOverRing) -> FiniteIdeal:
    """Ideal generated by the coefficients; memoized per coefficient set."""
    R = f.ring
    key = frozenset(f.coeffs)
    cached = R._content_cache.get(key)
    if cached is None:
        cached = span(R, key) if key else zero_ideal(R)
        R._content_cache[key] = cached
    return cached


def poly_is_nilpotent(f: PolyOverRing) -> bool:
    nil = f.ring.nilpotents()
    return all(c in nil for c in f.coeffs)


@dataclass(frozen=True)
class GaussianVerdict:
    status: str                  # "gaussian-up-to-bound" | "not-gaussian"
    deg_bound: int
    witness: PolyOverRing | None = None


def is_gaussian_poly(f: PolyOverRing, deg_bound: int,
                     pair_budget: int = PAIR_BUDGET) -> GaussianVerdict:
    """Check c(fg) = c(f)c(g) for every g of degree <= deg_bound."""
    R = f.ring
    count = R.order ** (deg_bound + 1)
    if count > pair_budget:
        raise BudgetExceeded(f"{count} polynomials exceed budget {pair_budget}")
    cf = content(f)
    for vec in itertools.product(R.elements(), repeat=deg_bound + 1):
        g = PolyOverRing(R, vec)
        if content(poly_mul(f, g)) != ideal_product(cf, content(g)):
            return GaussianVerdict("not-gaussian", deg_bound, g)
    return GaussianVerdict("gaussian-up-to-bound", deg_bound)


@dataclass(frozen=True)
class RingGaussianReport:
    deg_bound: int
    method: str
    gaussian_all_f: bool
    gaussian_nonnil_f: bool
    witness_all: tuple | None
    witness_nonnil: tuple | None
    pairs_checked: int
    nonnil_pairs_checked: int


def ring_gaussian_checks(R: FiniteRing, deg_bound: int,
                         pair_budget: int = PAIR_BUDGET,
                         sample_pairs: int = SAMPLE_PAIRS,
                         seed: int = 0) -> RingGaussianReport:
    """Sweep c(fg) = c(f)c(g) over all pairs up to the degree bound.

    gaussian_all_f quantifies over every pair; gaussian_nonnil_f restricts
    both factors to non-nilpotent polynomials.  Full sweep when the pair
    count fits the budget, else seeded sampling with at least sample_pairs
    non-nilpotent pairs examined.  Witnesses from full sweeps are the
    lexicographically smallest failing coefficient-vector pairs.
    """
    n = R.order
    width = deg_bound + 1
    vec_count = n ** width
    total_pairs = vec_count * vec_count
    mul_t, add_t = R.mul_table, R.add_table
    nil = R.nilpotents()

    # interned content id per coefficient tuple, plus product table of contents
    content_of = {}
    ideals = []
    ideal_index = {}

    def cid(vec):
        got = content_of.get(vec)
        if got is None:
            I = content(PolyOverRing(R, vec))
            got = ideal_index.get(I.mask)
            if got is None:
                got = len(ideals)
                ideal_index[I.mask] = got
                ideals.append(I)
            content_of[vec] = got
        return got

    prod_cache = {}

    def cprod(i, j):
        key = (i, j) if i <= j else (j, i)
        got = prod_cache.get(key)
        if got is None:
            P = ideal_product(ideals[key[0]], ideals[key[1]])
            got = ideal_index.get(P.mask)
            if got is None:
                got = len(ideals)
                ideal_index[P.mask] = got
                ideals.append(P)
            prod_cache[key] = got
        return got

    def check_pair(fv, gv):
        """True when c(fg) = c(f)c(g)."""
        out = [R.zero] * (2 * width - 1)
        for i, a in enumerate(fv):
            if a == R.zero:
                continue
            row = mul_t[a]
            for j, b in enumerate(gv):
                if b != R.zero:
                    k = i + j
                    out[k] = add_t[out[k]][row[b]]
        return cid(tuple(out)) == cprod(cid(fv), cid(gv))

    witness_all = witness_nonnil = None
    pairs = nonnil_pairs = 0
    if total_pairs <= pair_budget:
        method = f"exhaustive(pairs={total_pairs})"
        vectors = list(itertools.product(R.elements(), repeat=width))
        nonnil_flags = [any(c not in nil for c in v) for v in vectors]
        for fi, fv in enumerate(vectors):
            for gi, gv in enumerate(vectors):
                pairs += 1
                both_nonnil = nonnil_flags[fi] and nonnil_flags[gi]
                nonnil_pairs += both_nonnil
                if check_pair(fv, gv):
                    continue
                if witness_all is None:
                    witness_all = (fv, gv)
                if both_nonnil and witness_nonnil is None:
                    witness_nonnil = (fv, gv)
            if witness_all is not None and witness_nonnil is not None:
                break
    else:
        rng = random.Random(seed)
        method = f"sampled(seed={seed},pairs>={sample_pairs})"
        while nonnil_pairs < sample_pairs:
            fv = tuple(rng.randrange(n) for _ in range(width))
            gv = tuple(rng.randrange(n) for _ in range(width))
            pairs += 1
            both_nonnil = (any(c not in nil for c in fv)
                           and any(c not in nil for c in gv))
            nonnil_pairs += both_nonnil
            if check_pair(fv, gv):
                continue
            if witness_all is None:
                witness_all = (fv, gv)
            if both_nonnil and witness_nonnil is None:
                witness_nonnil = (fv, gv)

    return RingGaussianReport(
        deg_bound=deg_bound,
        method=method,
        gaussian_all_f=witness_all is None,
        gaussian_nonnil_f=witness_nonnil is None,
        witness_all=_wrap_witness(R, witness_all),
        witness_nonnil=_wrap_witness(R, witness_nonnil),
        pairs_checked=pairs,
        nonnil_pairs_checked=nonnil_pairs,
    )


def _wrap_witness(R, w):
    if w is None:
        return None
    return (PolyOverRing(R, w[0]), PolyOverRing(R, w[1]))
