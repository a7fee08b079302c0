from fractions import Fraction

import pytest

from philab import domainkit as dk
from philab.errors import (
    OutOfTableRange,
    ParseError,
    ZeroIdeal,
    ZeroIdealResidualDividend,
)

Z = dk.int_domain()
Z2 = dk.zloc(2)
GAUSS = dk.quad_order(-1, 1)
NONMAX = dk.quad_order(-1, 2)


def int_ideal(g):
    return dk.DomIdeal(Z, g=g)


def brute_int_ops(g, h, bound=4000):
    """Smallest positive elements of the sum/intersection/product/residual
    sets, computed directly from integer sets."""
    sums = {a * g + b * h for a in range(-60, 61) for b in range(-60, 61)}
    sum_gen = min(x for x in sums if x > 0)
    inter_gen = next(x for x in range(1, bound) if x % g == 0 and x % h == 0)
    res_gen = next(x for x in range(1, bound) if (x * h) % g == 0)
    return sum_gen, inter_gen, g * h, res_gen


@pytest.mark.parametrize("g,h", [(4, 6), (12, 18), (5, 7), (9, 24), (30, 42)])
def test_int_ops_against_brute_force(g, h):
    ops = dk.dom_ideal_ops(Z, int_ideal(g), int_ideal(h))
    s, i, p, r = brute_int_ops(g, h)
    assert ops["sum"].g == s
    assert ops["intersection"].g == i
    assert ops["product"].g == p
    assert ops["residual"].g == r


def test_zloc_exponent_calculus():
    a, b = dk.DomIdeal(Z2, k=2), dk.DomIdeal(Z2, k=3)
    ops = dk.dom_ideal_ops(Z2, a, b)
    assert ops["sum"].k == 2
    assert ops["intersection"].k == 3
    assert ops["product"].k == 5
    assert ops["residual"].k == 0
    assert dk.dom_residual(b, a).k == 1


def test_residual_zero_dividend_errors():
    with pytest.raises(ZeroIdealResidualDividend):
        dk.dom_residual(int_ideal(4), int_ideal(0))
    with pytest.raises(ZeroIdeal):
        dk.is_invertible_ideal(Z, int_ideal(0))


def test_mixed_domains_rejected():
    from philab.errors import MixedDomains
    with pytest.raises(MixedDomains):
        dk.dom_sum(int_ideal(4), dk.DomIdeal(Z2, k=1))
    with pytest.raises(MixedDomains):
        dk.dom_ideal_ops(Z, int_ideal(4), dk.DomIdeal(Z2, k=1))


def test_quad_hnf_canonical_and_idempotent():
    I = dk.dom_from_generators(NONMAX, [(2, 0), (0, 1)])
    assert I.mat == ((2, 0), (0, 1)) and I.den == 1
    again = dk.dom_from_hnf(NONMAX, I.mat, I.den)
    assert again == I


def test_quad_colon_example():
    # ((2, 2i) : (2, 2i)) in Z[2i] is the full Gaussian order Z[i]
    J = dk.dom_from_generators(NONMAX, [(2, 0), (0, 1)])
    colon = dk.fractional_colon(J, J)
    assert colon.contains_elem((1, 0))
    assert colon.contains_elem((0, Fraction(1, 2)))        # i = theta/2
    assert not dk.dom_unit(NONMAX).contains_elem((0, Fraction(1, 2)))
    assert colon != dk.dom_unit(NONMAX)


def test_invertibility_examples():
    ok, wit = dk.is_invertible_ideal(Z, int_ideal(6))
    assert ok
    I = dk.dom_from_generators(GAUSS, [(2, 0), (1, 1)])
    ok, wit = dk.is_invertible_ideal(GAUSS, I)
    assert ok and wit == dk.dom_unit(GAUSS)
    assert I == dk.dom_principal(GAUSS, (1, 1))
    J = dk.dom_from_generators(NONMAX, [(2, 0), (0, 1)])
    ok, wit = dk.is_invertible_ideal(NONMAX, J)
    assert not ok
    assert wit == J   # I * I^{-1} = I for this ideal


def test_prufer_oracle():
    assert dk.is_prufer_domain(Z) == (True, None)
    assert dk.is_prufer_domain(Z2) == (True, None)
    ok, wit = dk.is_prufer_domain(GAUSS)
    assert ok and wit is None
    ok, wit = dk.is_prufer_domain(NONMAX)
    assert not ok
    assert wit.norm() == 2       # the (2, 2i) witness, found within norm 64
    assert wit == dk.dom_from_generators(NONMAX, [(2, 0), (0, 1)])


def test_valuation_oracle():
    assert dk.is_valuation_domain(Z2) == (True, None)
    ok, (a, b) = dk.is_valuation_domain(Z)
    assert not ok
    assert not a.contains_ideal(b) and not b.contains_ideal(a)
    ok, (a, b) = dk.is_valuation_domain(GAUSS)
    assert not ok
    assert not a.contains_ideal(b) and not b.contains_ideal(a)


def test_traits():
    assert dk.traits(Z) == dk.DomainTraits(is_bezout=True, is_semilocal=False)
    assert dk.traits(Z2) == dk.DomainTraits(is_bezout=True, is_semilocal=True)
    assert dk.traits(GAUSS).is_bezout
    assert not dk.traits(GAUSS).is_semilocal
    assert not dk.traits(NONMAX).is_bezout
    assert not dk.traits(dk.quad_order(-5, 1)).is_bezout      # h(-20) = 2
    assert dk.traits(dk.quad_order(-2, 1)).is_bezout
    assert dk.traits(dk.quad_order(5, 1)).is_bezout
    assert not dk.traits(dk.quad_order(10, 1)).is_bezout      # h = 2


def test_traits_out_of_table():
    with pytest.raises(OutOfTableRange):
        dk.traits(dk.quad_order(-165, 1))
    with pytest.raises(OutOfTableRange):
        dk.traits(dk.quad_order(53, 1))


def test_norm_multiplicativity_in_maximal_order():
    ideals = dk.enumerate_quad_ideals(GAUSS, 20)
    for I in ideals[:12]:
        for J in ideals[:12]:
            assert dk.dom_product(I, J).norm() == I.norm() * J.norm()


def test_invertible_times_inverse_is_unit():
    for I in dk.enumerate_quad_ideals(GAUSS, 25):
        ok, prod = dk.is_invertible_ideal(GAUSS, I)
        assert ok and prod == dk.dom_unit(GAUSS)


def test_enumerate_quad_ideals_sorted_and_closed():
    ideals = dk.enumerate_quad_ideals(NONMAX, 16)
    norms = [I.norm() for I in ideals]
    assert norms == sorted(norms)
    assert dk.dom_unit(NONMAX) == ideals[0]
    for I in ideals:
        theta_I = dk.dom_product(dk.dom_principal(NONMAX, (0, 1)), I)
        assert I.contains_ideal(theta_I)


@pytest.mark.parametrize("D", [NONMAX, GAUSS, dk.quad_order(5, 2)],
                         ids=lambda d: d.label)
def test_quad_ops_against_membership_oracle(D):
    # includes non-invertible ideals of the non-maximal orders
    ideals = dk.enumerate_quad_ideals(D, 10)[:14]
    box = [(u, v) for u in range(-8, 9) for v in range(-8, 9)]
    for I in ideals:
        for J in ideals:
            S = dk.dom_sum(I, J)
            assert S.contains_ideal(I) and S.contains_ideal(J)
            X = dk.dom_intersect(I, J)
            for e in box:
                assert X.contains_elem(e) == \
                    (I.contains_elem(e) and J.contains_elem(e))
            P = dk.dom_product(I, J)
            assert I.contains_ideal(P) and J.contains_ideal(P)
            R = dk.dom_residual(I, J)
            for e in box:
                expected = all(I.contains_elem(dk.qmul(D, e, row))
                               for row in J.mat)
                assert R.contains_elem(e) == expected


def test_parse_domain_spec():
    assert dk.parse_domain_spec("Z").kind == "Z"
    assert dk.parse_domain_spec("Zloc:2").p == 2
    q = dk.parse_domain_spec("quad:-1:2")
    assert (q.d, q.f) == (-1, 2)
    with pytest.raises(ParseError):
        dk.parse_domain_spec("quad:4:1")       # not squarefree
    with pytest.raises(ParseError):
        dk.parse_domain_spec("Zloc:6")
