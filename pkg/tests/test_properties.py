"""Property-based invariants with hypothesis."""

import math
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from philab import dividedext as dx
from philab import domainkit as dk
from philab import finring as fr
from philab import idealcalc as ic

RINGS = [fr.make_zn(n) for n in (4, 6, 8, 9, 12)]
RINGS.append(fr.make_truncated_poly(2, [2, 2]))

Z = dk.int_domain()
ZEXT = dx.make_divided_ext(Z)
QUADS = [dk.quad_order(-1, 1), dk.quad_order(-1, 2), dk.quad_order(5, 2),
         dk.quad_order(-3, 1)]


@given(st.sampled_from(RINGS), st.sets(st.integers(0, 15), max_size=3))
def test_span_is_closed(R, gens):
    gens = {g % R.order for g in gens}
    I = ic.span(R, gens)
    mem = I.members()
    for a in mem:
        for b in mem:
            assert R.add(a, b) in I
        for r in R.elements():
            assert R.mul(r, a) in I


@given(st.sampled_from(RINGS), st.integers(0, 15), st.integers(0, 15),
       st.integers(0, 15))
def test_residual_adjunction(R, gi, gj, gk):
    I = ic.span(R, [gi % R.order])
    J = ic.span(R, [gj % R.order])
    K = ic.span(R, [gk % R.order])
    assert (ic.ideal_product(J, K) <= I) == (K <= ic.residual(I, J))


@given(st.sampled_from(RINGS), st.integers(0, 15), st.integers(0, 15),
       st.integers(0, 15))
def test_one_sided_distributivity(R, gi, gj, gk):
    I = ic.span(R, [gi % R.order])
    J = ic.span(R, [gj % R.order])
    K = ic.span(R, [gk % R.order])
    lhs = ic.ideal_sum(ic.ideal_intersect(I, J), ic.ideal_intersect(I, K))
    assert lhs <= ic.ideal_intersect(I, ic.ideal_sum(J, K))


@given(st.integers(1, 400), st.integers(1, 400))
def test_int_ideal_ops_match_gcd_arithmetic(g, h):
    ops = dk.dom_ideal_ops(Z, dk.DomIdeal(Z, g=g), dk.DomIdeal(Z, g=h))
    assert ops["sum"].g == math.gcd(g, h)
    assert ops["intersection"].g == math.lcm(g, h)
    assert ops["product"].g == g * h
    assert ops["residual"].g == g // math.gcd(g, h)


@given(st.sampled_from(QUADS),
       st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
                min_size=1, max_size=3))
def test_quad_hnf_idempotent(D, gens):
    I = dk.dom_from_generators(D, gens)
    if I.is_zero():
        return
    assert dk.dom_from_hnf(D, I.mat, I.den) == I
    (a, b), (z, c) = I.mat
    assert z == 0 and a > 0 and c > 0 and 0 <= b < c


@given(st.sampled_from(QUADS),
       st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
       st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
       st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
@settings(max_examples=60)
def test_quad_ops_commutative_associative(D, x, y, z):
    gens = [g for g in (x, y, z) if g != (0, 0)]
    if len(gens) < 3:
        return
    A = dk.dom_principal(D, gens[0])
    B = dk.dom_principal(D, gens[1])
    C = dk.dom_principal(D, gens[2])
    assert dk.dom_sum(A, B) == dk.dom_sum(B, A)
    assert dk.dom_product(A, B) == dk.dom_product(B, A)
    assert dk.dom_sum(dk.dom_sum(A, B), C) == dk.dom_sum(A, dk.dom_sum(B, C))
    assert dk.dom_product(dk.dom_product(A, B), C) == \
        dk.dom_product(A, dk.dom_product(B, C))


@given(st.sampled_from(QUADS),
       st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
       st.tuples(st.integers(-8, 8), st.integers(-8, 8)))
@settings(max_examples=60)
def test_quad_intersection_against_membership(D, x, y):
    if x == (0, 0) or y == (0, 0):
        return
    A = dk.dom_principal(D, x)
    B = dk.dom_principal(D, y)
    C = dk.dom_intersect(A, B)
    for u in range(-6, 7):
        for v in range(-6, 7):
            assert C.contains_elem((u, v)) == \
                (A.contains_elem((u, v)) and B.contains_elem((u, v)))


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 4))
def test_module_reduction_is_canonical(num, den):
    q = Fraction(num, den)
    m = ZEXT.reduce_mod(q)
    assert 0 <= m < 1
    assert (q - m).denominator == 1
    assert ZEXT.reduce_mod(m) == m


@given(st.integers(-10 ** 4, 10 ** 4), st.integers(1, 512))
def test_zloc_reduction_splits_off_p_part(num, den):
    R2 = dx.make_divided_ext(dk.zloc(2))
    q = Fraction(num, den)
    m = R2.reduce_mod(q)
    assert 0 <= m < 1
    assert m.denominator & (m.denominator - 1) == 0    # a power of two
    rest = q - m
    assert rest.denominator % 2 == 1                   # remainder is 2-integral


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
@settings(max_examples=80)
def test_divext_ring_axioms_sampled(a1, a2, a3, n1, n2, n3):
    x = ZEXT.elem(a1, Fraction(n1, 64))
    y = ZEXT.elem(a2, Fraction(n2, 64))
    z = ZEXT.elem(a3, Fraction(n3, 64))
    assert ZEXT.add(x, y) == ZEXT.add(y, x)
    assert ZEXT.mul(x, y) == ZEXT.mul(y, x)
    assert ZEXT.mul(ZEXT.mul(x, y), z) == ZEXT.mul(x, ZEXT.mul(y, z))
    assert ZEXT.mul(x, ZEXT.add(y, z)) == \
        ZEXT.add(ZEXT.mul(x, y), ZEXT.mul(x, z))
    assert ZEXT.add(x, ZEXT.neg(x)) == ZEXT.zero()
    assert ZEXT.mul(x, ZEXT.one()) == x


@given(st.integers(2, 24))
@settings(max_examples=25)
def test_make_zn_passes_axiom_verification(n):
    R = fr.make_zn(n)          # constructor verifies the axioms exhaustively
    assert R.order == n


@given(st.sampled_from(RINGS), st.integers(0, 15), st.integers(0, 15))
def test_zerodivisors_and_units_partition(R, a, b):
    x = (a * R.order + b) % R.order
    assert (x in R.units()) != (x in R.zerodivisors())
