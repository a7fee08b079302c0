"""Exact ideal arithmetic, predicates, and localization for finite rings.

Ideals are stored as membership bitmasks over element indices, so all
lattice operations and definitional predicates reduce to integer bit
twiddling plus exhaustive element scans.
"""

from __future__ import annotations

from .errors import BudgetExceeded, InternalInconsistency, MixedRings, NotPrime
from .finring import FiniteRing, quotient_ring

IDEAL_BUDGET = 4096


class FiniteIdeal:
    """An ideal of a FiniteRing: membership bitmask plus optional generators."""

    __slots__ = ("ring", "mask", "gens")

    def __init__(self, ring: FiniteRing, mask: int, gens=None):
        self.ring = ring
        self.mask = mask
        self.gens = tuple(gens) if gens is not None else None

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask >> idx & 1)

    def members(self):
        return [i for i in self.ring.elements() if self.mask >> i & 1]

    def size(self) -> int:
        return bin(self.mask).count("1")

    def __eq__(self, other):
        return (isinstance(other, FiniteIdeal) and self.ring is other.ring
                and self.mask == other.mask)

    def __hash__(self):
        return hash((id(self.ring), self.mask))

    def __le__(self, other):
        _same_ring(self, other)
        return self.mask & other.mask == self.mask

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def is_zero(self) -> bool:
        return self.mask == 1 << self.ring.zero

    def is_unit_ideal(self) -> bool:
        return self.mask == (1 << self.ring.order) - 1

    def __repr__(self):
        names = [self.ring.elem_name(i) for i in self.members()]
        shown = ",".join(names[:8]) + (",.." if len(names) > 8 else "")
        return f"Ideal({self.ring.label}; {{{shown}}})"


def _same_ring(I: FiniteIdeal, J: FiniteIdeal):
    if I.ring is not J.ring:
        raise MixedRings(f"{I.ring.label} vs {J.ring.label}")


def _mask_of(elems) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def span(R: FiniteRing, gens) -> FiniteIdeal:
    """Least ideal containing gens: close under ring multiples, then sums."""
    gens = sorted(set(gens))
    scaled = {R.zero}
    for g in gens:
        for r in R.elements():
            scaled.add(R.mul(r, g))
    members = set(scaled)
    frontier = list(scaled)
    while frontier:
        nxt = []
        for a in frontier:
            for b in scaled:
                s = R.add(a, b)
                if s not in members:
                    members.add(s)
                    nxt.append(s)
        frontier = nxt
    return FiniteIdeal(R, _mask_of(members), gens)


def zero_ideal(R: FiniteRing) -> FiniteIdeal:
    return FiniteIdeal(R, 1 << R.zero, ())


def unit_ideal(R: FiniteRing) -> FiniteIdeal:
    return FiniteIdeal(R, (1 << R.order) - 1, (R.one,))


def nilradical(R: FiniteRing) -> FiniteIdeal:
    return FiniteIdeal(R, _mask_of(R.nilpotents()))


def ideal_sum(I: FiniteIdeal, J: FiniteIdeal) -> FiniteIdeal:
    _same_ring(I, J)
    return span(I.ring, I.members() + J.members())


def ideal_intersect(I: FiniteIdeal, J: FiniteIdeal) -> FiniteIdeal:
    _same_ring(I, J)
    return FiniteIdeal(I.ring, I.mask & J.mask)


def ideal_product(I: FiniteIdeal, J: FiniteIdeal) -> FiniteIdeal:
    _same_ring(I, J)
    R = I.ring
    prods = {R.mul(a, b) for a in I.members() for b in J.members()}
    return span(R, prods)


def lattice_ops(I: FiniteIdeal, J: FiniteIdeal) -> dict:
    return {
        "sum": ideal_sum(I, J),
        "intersection": ideal_intersect(I, J),
        "product": ideal_product(I, J),
    }


def residual(I: FiniteIdeal, J: FiniteIdeal) -> FiniteIdeal:
    """(I : J) = {x : xJ is contained in I}, by exhaustive scan."""
    _same_ring(I, J)
    R = I.ring
    jm = J.members()
    members = [x for x in R.elements() if all(R.mul(x, j) in I for j in jm)]
    return FiniteIdeal(R, _mask_of(members))


def radical(I: FiniteIdeal) -> FiniteIdeal:
    """{x : x^k in I for some k}, by elementwise power scan."""
    R = I.ring
    members = set()
    for x in R.elements():
        p, seen = x, set()
        while p not in seen:
            seen.add(p)
            if p in I:
                members.add(x)
                break
            p = R.mul(p, x)
    return FiniteIdeal(R, _mask_of(members))


def enumerate_ideals(R: FiniteRing, budget: int = IDEAL_BUDGET):
    """All ideals of R by generator-extension BFS from the zero ideal.

    Memoized per ring; sorted by (size, mask) so downstream sweeps are
    deterministic.
    """
    if R._ideal_cache is not None:
        return R._ideal_cache
    zero = zero_ideal(R)
    found = {zero.mask: zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for I in frontier:
            base = I.members()
            for x in R.elements():
                if x in I:
                    continue
                J = span(R, base + [x])
                if J.mask not in found:
                    if len(found) >= budget:
                        raise BudgetExceeded(
                            f"more than {budget} ideals in {R.label}")
                    found[J.mask] = J
                    nxt.append(J)
        frontier = nxt
    out = sorted(found.values(), key=lambda I: (I.size(), I.mask))
    R._ideal_cache = out
    return out


def is_prime_ideal(I: FiniteIdeal) -> bool:
    return prime_witness(I) is None and not I.is_unit_ideal()


def prime_witness(I: FiniteIdeal):
    """Smallest (a, b) outside I with a*b in I, or None when prime."""
    R = I.ring
    if I.is_unit_ideal():
        return None
    outside = [x for x in R.elements() if x not in I]
    for a in outside:
        for b in outside:
            if R.mul(a, b) in I:
                return (a, b)
    return None


def is_maximal_ideal(I: FiniteIdeal) -> bool:
    R = I.ring
    if I.is_unit_ideal():
        return False
    full = (1 << R.order) - 1
    return all(span(R, I.members() + [x]).mask == full
               for x in R.elements() if x not in I)


def is_primary_ideal(I: FiniteIdeal) -> bool:
    R = I.ring
    if I.is_unit_ideal():
        return False
    rad = radical(I)
    for a in R.elements():
        for b in R.elements():
            if R.mul(a, b) in I and a not in I and b not in rad:
                return False
    return True


def is_irreducible_ideal(I: FiniteIdeal, budget: int = IDEAL_BUDGET) -> bool:
    """Proper and not an intersection of two strictly larger ideals."""
    if I.is_unit_ideal():
        return False
    bigger = [J for J in enumerate_ideals(I.ring, budget) if I < J]
    for a in range(len(bigger)):
        for b in range(a, len(bigger)):
            if bigger[a].mask & bigger[b].mask == I.mask:
                return False
    return True


def is_divided_ideal(I: FiniteIdeal, budget: int = IDEAL_BUDGET) -> bool:
    return all(J <= I or I <= J for J in enumerate_ideals(I.ring, budget))


def is_nonnil_ideal(I: FiniteIdeal) -> bool:
    nil = nilradical(I.ring)
    return I.mask & ~nil.mask != 0


def predicates(I: FiniteIdeal, budget: int = IDEAL_BUDGET) -> dict:
    return {
        "is_prime": is_prime_ideal(I),
        "is_maximal": is_maximal_ideal(I),
        "is_primary": is_primary_ideal(I),
        "is_irreducible": is_irreducible_ideal(I, budget),
        "is_divided": is_divided_ideal(I, budget),
        "is_nonnil": is_nonnil_ideal(I),
    }


def maximal_ideals(R: FiniteRing, budget: int = IDEAL_BUDGET):
    return [I for I in enumerate_ideals(R, budget) if is_maximal_ideal(I)]


def localize_at(R: FiniteRing, P: FiniteIdeal):
    """Localization of a finite ring at a prime P, realized as a quotient.

    R_P is R / I_P with I_P = {r : s*r = 0 for some s outside P}: the
    S-torsion elements for S = R \\ P.  Finiteness makes every image of
    s outside P a unit in the quotient; both facts are asserted per call.
    """
    if P.ring is not R:
        raise MixedRings("ideal belongs to a different ring")
    if not is_prime_ideal(P):
        raise NotPrime(f"{P!r} is not prime")
    S = [s for s in R.elements() if s not in P]
    IP = frozenset(r for r in R.elements()
                   if any(R.mul(s, r) == R.zero for s in S))
    Q, surj = quotient_ring(R, IP, f"{R.label}@loc")
    kernel = frozenset(x for x in R.elements() if surj[x] == surj[R.zero])
    if kernel != IP:
        raise InternalInconsistency("localization kernel mismatch")
    q_units = Q.units()
    for s in S:
        if surj[s] not in q_units:
            raise InternalInconsistency(
                f"{R.elem_name(s)} outside P does not map to a unit")
    return Q, surj


def intersection_of_primes(R: FiniteRing, budget: int = IDEAL_BUDGET) -> FiniteIdeal:
    """Intersection of all prime ideals; cross-oracle for the nilradical."""
    mask = (1 << R.order) - 1
    found = False
    for I in enumerate_ideals(R, budget):
        if is_prime_ideal(I):
            mask &= I.mask
            found = True
    if not found:
        raise InternalInconsistency(f"no prime ideals found in {R.label}")
    return FiniteIdeal(R, mask)


def parse_ideal_literal(R: FiniteRing, text: str) -> FiniteIdeal:
    """Parse "span{a,b,..}" with element indices or names."""
    text = text.strip()
    if not (text.startswith("span{") and text.endswith("}")):
        from .errors import ParseError
        raise ParseError(f"ideal literal must look like span{{..}}, got {text!r}")
    body = text[5:-1].strip()
    gens = [] if not body else [R.elem_index(t.strip()) for t in body.split(",")]
    return span(R, gens)
