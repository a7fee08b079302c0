"""Computable integral domains with exact finitely-generated-ideal arithmetic.

Three backends: Z, Z localized at a prime p, and quadratic orders of
conductor f in Q(sqrt(d)).  Ideals are a nonnegative generator (Z), a
valuation exponent (Zloc), or a 2x2 upper-triangular Hermite-normal-form
lattice over the order's basis with a positive denominator for fractional
ideals (quad).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InternalInconsistency,
    InvalidModulus,
    MixedDomains,
    OutOfTableRange,
    ParseError,
    ZeroIdeal,
    ZeroIdealResidualDividend,
)

# Complete list of imaginary quadratic fields with class number one
# (Baker-Heegner-Stark); used as a cross-check against enumeration.
IMAG_CLASS_NUMBER_ONE = frozenset({-1, -2, -3, -7, -11, -19, -43, -67, -163})
IMAG_TABLE_RANGE = 163

# Squarefree d <= REAL_TABLE_RANGE with real quadratic class number one.
REAL_CLASS_NUMBER_ONE = frozenset(
    {2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43, 46, 47})
REAL_TABLE_RANGE = 47


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class DomainHandle:
    """One of Z, Z_(p), or the order of conductor f in Q(sqrt(d)).

    For quad handles the basis is (1, theta) with theta = f*omega, where
    omega = sqrt(d) for d != 1 mod 4 and (1+sqrt(d))/2 otherwise; theta
    satisfies theta^2 = nn + tt*theta.
    """

    kind: str                 # "Z" | "Zloc" | "quad"
    p: int = 0                # Zloc only
    d: int = 0                # quad only, squarefree, not 0 or 1
    f: int = 1                # quad only, conductor >= 1

    @property
    def tt(self) -> int:
        if self.d % 4 == 1:
            return self.f
        return 0

    @property
    def nn(self) -> int:
        if self.d % 4 == 1:
            return self.f * self.f * (self.d - 1) // 4
        return self.f * self.f * self.d

    @property
    def label(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Zloc":
            return f"Zloc:{self.p}"
        return f"quad:{self.d}:{self.f}"

    def __repr__(self):
        return f"DomainHandle({self.label})"


def int_domain() -> DomainHandle:
    return DomainHandle("Z")


def zloc(p: int) -> DomainHandle:
    if not _is_prime(p):
        raise InvalidModulus(f"Zloc needs a prime, got {p}")
    return DomainHandle("Zloc", p=p)


def quad_order(d: int, f: int) -> DomainHandle:
    if d in (0, 1) or not _is_squarefree(d):
        raise ParseError(f"d must be squarefree and not 0 or 1, got {d}")
    if f < 1:
        raise ParseError(f"conductor must be >= 1, got {f}")
    return DomainHandle("quad", d=d, f=f)


def parse_domain_spec(text: str, pos: int = 0) -> DomainHandle:
    if text == "Z":
        return int_domain()
    if text.startswith("Zloc:"):
        try:
            return zloc(int(text[5:]))
        except (ValueError, InvalidModulus):
            raise ParseError(f"bad prime in {text!r}", pos + 5)
    if text.startswith("quad:"):
        parts = text[5:].split(":")
        if len(parts) != 2:
            raise ParseError("quad spec needs quad:<d>:<f>", pos)
        try:
            return quad_order(int(parts[0]), int(parts[1]))
        except ValueError:
            raise ParseError(f"bad quad spec {text!r}", pos)
    raise ParseError(f"unknown domain spec {text!r}", pos)


# ---------------------------------------------------------------------------
# element arithmetic
#
# Z: int.  Zloc: Fraction with denominator coprime to p.  quad: (u, v) ints
# meaning u + v*theta; K-elements are (Fraction, Fraction) pairs.

def qmul(D: DomainHandle, x, y):
    """Product in the order (or its fraction field for Fraction pairs)."""
    u1, v1 = x
    u2, v2 = y
    return (u1 * u2 + v1 * v2 * D.nn, u1 * v2 + u2 * v1 + v1 * v2 * D.tt)


def qconj(D: DomainHandle, x):
    u, v = x
    return (u + v * D.tt, -v)


def qnorm(D: DomainHandle, x):
    u, v = x
    return u * u + u * v * D.tt - v * v * D.nn


def qinv(D: DomainHandle, x):
    """Inverse in K = Q(sqrt d) as a pair of Fractions."""
    n = qnorm(D, x)
    if n == 0:
        raise ZeroDivisionError("zero element")
    cu, cv = qconj(D, x)
    return (Fraction(cu, n), Fraction(cv, n))


def vp(p: int, q: Fraction) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ZeroDivisionError("valuation of zero")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def elem_is_unit(D: DomainHandle, a) -> bool:
    if D.kind == "Z":
        return a in (1, -1)
    if D.kind == "Zloc":
        return a != 0 and vp(D.p, Fraction(a)) == 0
    return a != (0, 0) and qnorm(D, a) in (1, -1)


def elem_is_zero(D: DomainHandle, a) -> bool:
    if D.kind == "quad":
        return a == (0, 0)
    return a == 0


def elem_zero(D: DomainHandle):
    return (0, 0) if D.kind == "quad" else (0 if D.kind == "Z" else Fraction(0))


def elem_one(D: DomainHandle):
    return (1, 0) if D.kind == "quad" else (1 if D.kind == "Z" else Fraction(1))


def elem_in_domain(D: DomainHandle, a) -> bool:
    """Whether a K-element actually lies in D."""
    if D.kind == "Z":
        return Fraction(a).denominator == 1
    if D.kind == "Zloc":
        return Fraction(a).denominator % D.p != 0
    u, v = a
    return Fraction(u).denominator == 1 and Fraction(v).denominator == 1


def format_elem(D: DomainHandle, a) -> str:
    if D.kind == "quad":
        u, v = a
        return f"{u}+{v}w" if v else str(u)
    return str(a)


# ---------------------------------------------------------------------------
# 2x2 Hermite normal form lattices (rows are coordinates over the basis (1, theta))

def _ext_gcd(a: int, b: int):
    """(g, u, v) with u*a + v*b = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_rows(rows):
    """Canonical HNF ((a, b), (0, c)) of the row span; None for the zero span.

    a, c > 0 and 0 <= b < c.  Raises for rank-1 spans: ideals of an order
    are full rank, so a rank-1 input signals a caller bug.
    """
    rows = [(int(x), int(y)) for x, y in rows if (x, y) != (0, 0)]
    if not rows:
        return None
    g, comb = 0, (0, 0)
    for x, y in rows:
        if x == 0:
            continue
        g2, u, v = _ext_gcd(g, x)
        comb = (u * comb[0] + v * x, u * comb[1] + v * y)
        g = g2
    ys = [y for x, y in rows if x == 0]
    if g:
        a, b = comb
        for x, y in rows:
            if x:
                q = x // a
                ys.append(y - q * b)
    c = 0
    for y in ys:
        c = math.gcd(c, y)
    if g == 0 or c == 0:
        raise InternalInconsistency("rank-deficient lattice span")
    b = comb[1] % c
    return ((g, b), (0, c))


def lat_member(mat, x: int, y: int) -> bool:
    (a, b), (_, c) = mat
    if x % a:
        return False
    return (y - (x // a) * b) % c == 0


def _lat_normalize(mat, den: int):
    (a, b), (_, c) = mat
    g = math.gcd(math.gcd(a, b), math.gcd(c, den))
    if den < 0:
        g = -g
    a, b, c, den = a // g, b // g, c // g, den // g
    return ((a, b % c), (0, c)), den


def _lat_dual(mat, den: int):
    """Coordinate dual: rows of den * (M^-1)^T, used for intersections."""
    (a, b), (_, c) = mat
    return _lat_normalize(hnf_rows([(den * c, 0), (-den * b, den * a)]), a * c)


def _lat_sum(m1, d1, m2, d2):
    L = d1 * d2 // math.gcd(d1, d2)
    s1, s2 = L // d1, L // d2
    rows = [(x * s1, y * s1) for x, y in m1] + [(x * s2, y * s2) for x, y in m2]
    return _lat_normalize(hnf_rows(rows), L)


def _lat_intersect(m1, d1, m2, d2):
    u1, e1 = _lat_dual(m1, d1)
    u2, e2 = _lat_dual(m2, d2)
    s, ds = _lat_sum(u1, e1, u2, e2)
    return _lat_dual(s, ds)


def _lat_product(D: DomainHandle, m1, d1, m2, d2):
    rows = []
    for r1 in m1:
        for r2 in m2:
            rows.append(qmul(D, r1, r2))
    return _lat_normalize(hnf_rows(rows), d1 * d2)


# ---------------------------------------------------------------------------
# ideals

class DomIdeal:
    """A finitely generated (fractional) ideal over a DomainHandle.

    Payloads: Z -> nonnegative generator g; Zloc -> valuation exponent k
    (None for the zero ideal); quad -> (hnf matrix, denominator), with the
    zero ideal stored as mat None.
    """

    __slots__ = ("domain", "g", "k", "mat", "den")

    def __init__(self, domain: DomainHandle, g=0, k=None, mat=None, den=1):
        self.domain = domain
        self.g = g
        self.k = k
        self.mat = mat
        self.den = den
        if domain.kind == "quad" and mat is not None:
            self._assert_closed()

    def _assert_closed(self):
        D = self.domain
        for row in self.mat:
            tx, ty = qmul(D, row, (0, 1))
            if not lat_member(self.mat, tx, ty):
                raise InternalInconsistency(
                    f"lattice {self.mat} not closed under theta in {D.label}")

    def is_zero(self) -> bool:
        if self.domain.kind == "Z":
            return self.g == 0
        if self.domain.kind == "Zloc":
            return self.k is None
        return self.mat is None

    def is_integral(self) -> bool:
        if self.domain.kind == "Z":
            return True
        if self.domain.kind == "Zloc":
            return self.is_zero() or self.k >= 0
        return self.den == 1

    def norm(self):
        """Index data: |g| for Z, p^k for Zloc, det/den^2 for quad."""
        if self.domain.kind == "Z":
            return abs(self.g)
        if self.domain.kind == "Zloc":
            return None if self.k is None else Fraction(self.domain.p) ** self.k
        if self.mat is None:
            return 0
        (a, _), (_, c) = self.mat
        return Fraction(a * c, self.den * self.den)

    def key(self):
        if self.domain.kind == "Z":
            return (self.g,)
        if self.domain.kind == "Zloc":
            return (self.k,)
        return (self.mat, self.den)

    def __eq__(self, other):
        return (isinstance(other, DomIdeal) and self.domain == other.domain
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.domain, self.key()))

    def __repr__(self):
        return f"DomIdeal({self.domain.label}; {self.describe()})"

    def describe(self) -> str:
        if self.domain.kind == "Z":
            return f"{self.g}Z"
        if self.domain.kind == "Zloc":
            return "0" if self.k is None else f"p^{self.k}"
        if self.mat is None:
            return "0"
        (a, b), (_, c) = self.mat
        s = f"[[{a},{b}],[0,{c}]]"
        return s if self.den == 1 else s + f"/{self.den}"

    def contains_elem(self, x) -> bool:
        D = self.domain
        if D.kind == "Z":
            return x == 0 if self.g == 0 else x % self.g == 0
        if D.kind == "Zloc":
            if self.k is None:
                return x == 0
            return x == 0 or vp(D.p, Fraction(x)) >= self.k
        if self.mat is None:
            return x == (0, 0)
        u, v = Fraction(x[0]) * self.den, Fraction(x[1]) * self.den
        if u.denominator != 1 or v.denominator != 1:
            return False
        return lat_member(self.mat, int(u), int(v))

    def contains_ideal(self, other) -> bool:
        _same_domain(self, other)
        D = self.domain
        if D.kind == "Z":
            return other.g == 0 or (self.g != 0 and other.g % self.g == 0)
        if D.kind == "Zloc":
            return other.k is None or (self.k is not None and other.k >= self.k)
        if other.mat is None:
            return True
        if self.mat is None:
            return False
        for x, y in other.mat:
            if not self.contains_elem((Fraction(x, other.den), Fraction(y, other.den))):
                return False
        return True


def _same_domain(I: DomIdeal, J: DomIdeal):
    if I.domain != J.domain:
        raise MixedDomains(f"{I.domain.label} vs {J.domain.label}")


def dom_zero(D: DomainHandle) -> DomIdeal:
    if D.kind == "Z":
        return DomIdeal(D, g=0)
    if D.kind == "Zloc":
        return DomIdeal(D, k=None)
    return DomIdeal(D, mat=None)


def dom_unit(D: DomainHandle) -> DomIdeal:
    if D.kind == "Z":
        return DomIdeal(D, g=1)
    if D.kind == "Zloc":
        return DomIdeal(D, k=0)
    return DomIdeal(D, mat=((1, 0), (0, 1)), den=1)


def dom_from_generators(D: DomainHandle, gens) -> DomIdeal:
    """Ideal generated by domain elements."""
    gens = [g for g in gens if not elem_is_zero(D, g)]
    if not gens:
        return dom_zero(D)
    if D.kind == "Z":
        g = 0
        for x in gens:
            g = math.gcd(g, x)
        return DomIdeal(D, g=g)
    if D.kind == "Zloc":
        return DomIdeal(D, k=min(vp(D.p, Fraction(x)) for x in gens))
    rows = []
    for x in gens:
        rows.append(x)
        rows.append(qmul(D, x, (0, 1)))
    mat, den = _lat_normalize(hnf_rows(rows), 1)
    return DomIdeal(D, mat=mat, den=den)


def dom_principal(D: DomainHandle, x) -> DomIdeal:
    return dom_from_generators(D, [x])


def dom_from_hnf(D: DomainHandle, mat, den: int = 1) -> DomIdeal:
    mat, den = _lat_normalize(hnf_rows(mat), den)
    return DomIdeal(D, mat=mat, den=den)


def dom_sum(I: DomIdeal, J: DomIdeal) -> DomIdeal:
    _same_domain(I, J)
    D = I.domain
    if I.is_zero():
        return J
    if J.is_zero():
        return I
    if D.kind == "Z":
        return DomIdeal(D, g=math.gcd(I.g, J.g))
    if D.kind == "Zloc":
        return DomIdeal(D, k=min(I.k, J.k))
    mat, den = _lat_sum(I.mat, I.den, J.mat, J.den)
    return DomIdeal(D, mat=mat, den=den)


def dom_product(I: DomIdeal, J: DomIdeal) -> DomIdeal:
    _same_domain(I, J)
    D = I.domain
    if I.is_zero() or J.is_zero():
        return dom_zero(D)
    if D.kind == "Z":
        return DomIdeal(D, g=I.g * J.g)
    if D.kind == "Zloc":
        return DomIdeal(D, k=I.k + J.k)
    mat, den = _lat_product(D, I.mat, I.den, J.mat, J.den)
    return DomIdeal(D, mat=mat, den=den)


def dom_intersect(I: DomIdeal, J: DomIdeal) -> DomIdeal:
    _same_domain(I, J)
    D = I.domain
    if I.is_zero() or J.is_zero():
        return dom_zero(D)
    if D.kind == "Z":
        return DomIdeal(D, g=I.g * J.g // math.gcd(I.g, J.g))
    if D.kind == "Zloc":
        return DomIdeal(D, k=max(I.k, J.k))
    mat, den = _lat_intersect(I.mat, I.den, J.mat, J.den)
    return DomIdeal(D, mat=mat, den=den)


def fractional_colon(I: DomIdeal, J: DomIdeal) -> DomIdeal:
    """(I : J) in the fraction field: {x in K : xJ contained in I}.

    Supported for Zloc (exponent may go negative) and quad backends; the
    Z backend only ever needs the integral residual.
    """
    _same_domain(I, J)
    D = I.domain
    if J.is_zero():
        raise ZeroIdealResidualDividend("(I : J) requires J nonzero")
    if I.is_zero():
        return dom_zero(D)
    if D.kind == "Z":
        raise InternalInconsistency("fractional colon is not used over Z")
    if D.kind == "Zloc":
        return DomIdeal(D, k=I.k - J.k)
    # {x : x w in I} = I * w^{-1} for each basis element w = row / J.den of J;
    # w^{-1} = J.den * conj(row) / N(row), so scale I.mat rows by conj(row)*J.den
    # over denominator I.den * N(row) and intersect across the two rows.
    acc = None
    for row in J.mat:
        n = qnorm(D, row)
        conj = qconj(D, row)
        rows = [tuple(c * J.den for c in qmul(D, r, conj)) for r in I.mat]
        mat, den = _lat_normalize(hnf_rows(rows), I.den * n)
        acc = (mat, den) if acc is None else _lat_intersect(acc[0], acc[1], mat, den)
    return DomIdeal(D, mat=acc[0], den=acc[1])


def dom_residual(I: DomIdeal, J: DomIdeal) -> DomIdeal:
    """Integral residual (I : J) = {x in D : xJ contained in I}."""
    _same_domain(I, J)
    D = I.domain
    if J.is_zero():
        raise ZeroIdealResidualDividend("(I : J) requires J nonzero")
    if I.is_zero():
        return dom_zero(D)
    if D.kind == "Z":
        return DomIdeal(D, g=I.g // math.gcd(I.g, J.g))
    if D.kind == "Zloc":
        return DomIdeal(D, k=max(I.k - J.k, 0))
    frac = fractional_colon(I, J)
    mat, den = _lat_intersect(frac.mat, frac.den, ((1, 0), (0, 1)), 1)
    return DomIdeal(D, mat=mat, den=den)


def dom_ideal_ops(D: DomainHandle, I: DomIdeal, J: DomIdeal) -> dict:
    if I.domain != D or J.domain != D:
        raise MixedDomains("ideal does not belong to this handle")
    return {
        "sum": dom_sum(I, J),
        "product": dom_product(I, J),
        "intersection": dom_intersect(I, J),
        "residual": dom_residual(I, J),
    }


def is_invertible_ideal(D: DomainHandle, I: DomIdeal):
    """(invertible?, witness) where witness is the product I * (D : I)."""
    if I.is_zero():
        raise ZeroIdeal("invertibility requires a nonzero ideal")
    if D.kind in ("Z", "Zloc"):
        return True, dom_unit(D)
    inv = fractional_colon(dom_unit(D), I)
    prod = dom_product(I, inv)
    return prod == dom_unit(D), prod


# ---------------------------------------------------------------------------
# quad ideal enumeration and classification oracles

def enumerate_quad_ideals(D: DomainHandle, norm_bound: int):
    """All nonzero integral ideals of norm <= norm_bound, sorted by
    (norm, a, b)."""
    if D.kind != "quad":
        raise MixedDomains("quad handle required")
    out = []
    for n in range(1, norm_bound + 1):
        for a in range(1, n + 1):
            if n % a:
                continue
            c = n // a
            for b in range(c):
                mat = ((a, b), (0, c))
                tx, ty = qmul(D, (a, b), (0, 1))
                if not lat_member(mat, tx, ty):
                    continue
                tx, ty = qmul(D, (0, c), (0, 1))
                if not lat_member(mat, tx, ty):
                    continue
                out.append(DomIdeal(D, mat=mat, den=1))
    out.sort(key=lambda I: (I.norm(), I.mat))
    return out


def quad_is_principal(D: DomainHandle, I: DomIdeal) -> bool:
    """Principality by bounded element search; imaginary d only."""
    if D.d > 0:
        raise OutOfTableRange("principality search implemented for d < 0 only")
    n = int(I.norm())
    disc = D.tt * D.tt + 4 * D.nn   # discriminant of x^2 - tt x - nn; negative here
    vmax = int(math.isqrt(4 * n // -disc)) + 1
    for v in range(-vmax, vmax + 1):
        # u^2 + tt*u*v - nn*v^2 = n  =>  (2u + tt*v)^2 = 4n + disc*v^2
        rhs = 4 * n + disc * v * v
        if rhs < 0:
            continue
        r = math.isqrt(rhs)
        if r * r != rhs:
            continue
        for sign in (1, -1):
            num = sign * r - D.tt * v
            if num % 2:
                continue
            u = num // 2
            if (u, v) == (0, 0):
                continue
            if dom_principal(D, (u, v)) == I:
                return True
    return False


def imag_class_number_is_one(D: DomainHandle) -> bool:
    """Minkowski-bound ideal-class enumeration for the maximal imaginary order."""
    if D.f != 1 or D.d > 0:
        raise InternalInconsistency("maximal imaginary order required")
    disc = D.d if D.d % 4 == 1 else 4 * D.d
    bound = int(2 * math.sqrt(abs(disc)) / math.pi)
    result = all(quad_is_principal(D, I)
                 for I in enumerate_quad_ideals(D, max(bound, 1)))
    if abs(D.d) <= IMAG_TABLE_RANGE and result != (D.d in IMAG_CLASS_NUMBER_ONE):
        raise InternalInconsistency(
            f"class-number enumeration disagrees with table for d={D.d}")
    return result


def is_prufer_domain(D: DomainHandle, sample_norm_bound: int = 64):
    """(verdict, witness ideal or None).

    Z and Zloc are principal ideal domains.  A quadratic order is Prufer
    iff it is the maximal order (f = 1): Noetherian Prufer = Dedekind =
    integrally closed.  The maximality criterion decides; a sampled
    invertibility scan over ideals of norm <= sample_norm_bound
    cross-checks it and supplies a concrete witness for f >= 2.
    """
    if D.kind in ("Z", "Zloc"):
        return True, None
    verdict = D.f == 1
    witness = None
    for I in enumerate_quad_ideals(D, sample_norm_bound):
        ok, _ = is_invertible_ideal(D, I)
        if not ok:
            witness = I
            break
    if verdict and witness is not None:
        raise InternalInconsistency(
            f"maximal order {D.label} has non-invertible ideal {witness.describe()}")
    if not verdict and witness is None:
        raise InternalInconsistency(
            f"no non-invertible ideal of norm <= {sample_norm_bound} in {D.label}")
    return verdict, witness


def is_valuation_domain(D: DomainHandle):
    """(verdict, witness pair of incomparable ideals or None)."""
    if D.kind == "Zloc":
        return True, None
    if D.kind == "Z":
        return False, (dom_principal(D, 2), dom_principal(D, 3))
    return False, (dom_principal(D, (2, 0)), dom_principal(D, (3, 0)))


@dataclass(frozen=True)
class DomainTraits:
    is_bezout: bool
    is_semilocal: bool


def traits(D: DomainHandle) -> DomainTraits:
    """Bezout and semilocal flags.

    Quad Bezout = maximal order with class number one; imaginary class
    numbers are established by Minkowski-bound enumeration (cross-checked
    against the complete h=1 table), real ones come from a curated table.
    """
    if D.kind == "Z":
        return DomainTraits(is_bezout=True, is_semilocal=False)
    if D.kind == "Zloc":
        return DomainTraits(is_bezout=True, is_semilocal=True)
    if D.f != 1:
        return DomainTraits(is_bezout=False, is_semilocal=False)
    if D.d < 0:
        if abs(D.d) > IMAG_TABLE_RANGE:
            raise OutOfTableRange(f"|d| = {abs(D.d)} beyond imaginary table range")
        bez = imag_class_number_is_one(D)
    else:
        if D.d > REAL_TABLE_RANGE:
            raise OutOfTableRange(f"d = {D.d} beyond real table range")
        bez = D.d in REAL_CLASS_NUMBER_ONE
    return DomainTraits(is_bezout=bez, is_semilocal=False)
