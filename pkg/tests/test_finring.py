import pytest

from philab import finring as fr
from philab.errors import (
    InternalInconsistency,
    InvalidModule,
    InvalidModulus,
    InvalidOrder,
    ParseError,
    PhiRingRequired,
    TooLarge,
)


def test_make_zn_basics():
    R = fr.make_zn(4)
    assert R.mul(2, 2) == 0
    assert R.nilpotents() == {0, 2}
    assert fr.make_zn(6).nilpotents() == {0}


def test_make_zn_rejects_zero_ring():
    with pytest.raises(InvalidOrder):
        fr.make_zn(1)
    with pytest.raises(InvalidOrder):
        fr.make_zn(0)


def test_truncated_poly_example_ring():
    R = fr.make_truncated_poly(2, [2, 2])
    assert R.order == 16
    x, y = R.elem_index("x"), R.elem_index("y")
    assert R.mul(x, x) == R.zero
    assert R.mul(y, y) == R.zero
    xy = R.elem_index("x*y")
    assert R.mul(x, y) == xy
    # nilpotents are exactly the 8 elements with zero constant term
    assert len(R.nilpotents()) == 8
    assert all(R.one not in (n,) for n in R.nilpotents())


def test_truncated_poly_single_variable():
    R = fr.make_truncated_poly(2, [2])
    assert R.order == 4
    x = R.elem_index("x")
    assert R.mul(x, x) == R.zero


def test_truncated_poly_exponent_one_collapses():
    R = fr.make_truncated_poly(3, [1])
    assert R.order == 3
    assert R.units() == {1, 2}


def test_truncated_poly_errors():
    with pytest.raises(InvalidModulus):
        fr.make_truncated_poly(4, [2])
    with pytest.raises(TooLarge):
        fr.make_truncated_poly(2, [2, 2, 2, 2])  # 2^16 elements


def test_trivial_ext_multiplication_law():
    A = fr.make_zn(4)
    M = fr.module_zm(A, 2)
    R = fr.make_trivial_ext(A, M)
    i = R.elem_index("(2,1)")
    j = R.elem_index("(3,1)")
    assert R.elem_name(R.mul(i, j)) == "(2,1)"


def test_trivial_ext_z2_is_dual_numbers():
    A = fr.make_zn(2)
    R = fr.make_trivial_ext(A, fr.module_zm(A, 2))
    assert fr.is_isomorphic(R, fr.make_truncated_poly(2, [2]))


def test_trivial_ext_z4_z2_nilpotents():
    A = fr.make_zn(4)
    R = fr.make_trivial_ext(A, fr.module_zm(A, 2))
    assert R.order == 8
    names = {R.elem_name(i) for i in R.nilpotents()}
    assert names == {"(0,0)", "(0,1)", "(2,0)", "(2,1)"}


def test_module_zm_requires_divisor():
    with pytest.raises(InvalidModule):
        fr.module_zm(fr.make_zn(4), 3)


def test_module_verification_catches_broken_action():
    A = fr.make_zn(4)
    M = fr.module_zm(A, 2)
    bad = [list(row) for row in M.action_table]
    bad[2][1] = 1      # action of 2 on 1 must be 0 in Z/2
    with pytest.raises(InvalidModule):
        fr.FiniteModule(A, 2, M.add_table, bad, "broken")


def test_product_ring_negatives():
    R = fr.make_product(fr.make_zn(2), fr.make_zn(2))
    a = R.elem_index("(1,0)")
    b = R.elem_index("(0,1)")
    assert R.mul(a, b) == R.zero
    assert R.nilpotents() == {R.zero}
    assert fr.nil_prime_witness(R) is not None


def test_product_z2_z3_is_z6():
    assert fr.is_isomorphic(fr.make_product(fr.make_zn(2), fr.make_zn(3)),
                            fr.make_zn(6))
    assert not fr.is_isomorphic(fr.make_zn(4),
                                fr.make_product(fr.make_zn(2), fr.make_zn(2)))


def test_product_z4_z2_has_two_maximal_ideals():
    from philab import idealcalc as ic
    R = fr.make_product(fr.make_zn(4), fr.make_zn(2))
    assert len(ic.maximal_ideals(R)) == 2


def test_units_zerodivisors_partition():
    for R in (fr.make_zn(12), fr.make_truncated_poly(2, [2, 2]),
              fr.make_product(fr.make_zn(4), fr.make_zn(2))):
        units, zd = R.units(), R.zerodivisors()
        assert units | zd == set(R.elements())
        assert not units & zd


def test_phi_image_identity_on_phi_rings():
    # every finite phi-ring in the corpus families has trivial phi-kernel
    phi_corpus = [fr.make_zn(n) for n in (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)]
    phi_corpus += [fr.make_truncated_poly(2, [2, 2]),
                   fr.make_truncated_poly(2, [3]),
                   fr.make_truncated_poly(3, [2])]
    A = fr.make_zn(4)
    phi_corpus.append(fr.make_trivial_ext(A, fr.module_zm(A, 2)))
    for R in phi_corpus:
        Q, surj = fr.phi_image(R)
        kernel = [x for x in R.elements() if surj[x] == surj[R.zero]]
        assert kernel == [R.zero]
        assert Q.order == R.order


def test_phi_image_rejects_non_phi():
    with pytest.raises(PhiRingRequired):
        fr.phi_image(fr.make_zn(6))


def test_axiom_verification_catches_bad_table():
    R = fr.make_zn(3)
    broken = [list(row) for row in R.mul_table]
    broken[2][2] = 2  # 2*2 should be 1 mod 3
    with pytest.raises(InternalInconsistency):
        fr.FiniteRing(3, R.add_table, broken, 0, 1, "broken")


def test_quotient_ring_by_nilradical():
    R = fr.make_zn(12)
    Q, surj = fr.quotient_ring(R, frozenset({0, 6}), "Z12/nil")
    assert Q.order == 6
    assert fr.is_isomorphic(Q, fr.make_zn(6))
    assert surj[6] == surj[0]


def test_parse_ring_spec_round_trips():
    for spec in ("Zn:8", "trunc:2:2,2", "prod:Zn:2|Zn:3", "triv:Zn:4|Zm:2",
                 "triv:Zn:2|self"):
        R = fr.parse_ring_spec(spec)
        assert R.label == spec


def test_parse_ring_spec_nested_product():
    R = fr.parse_ring_spec("prod:Zn:2|prod:Zn:2|Zn:3")
    assert R.order == 12


def test_parse_ring_spec_errors_carry_position():
    with pytest.raises(ParseError) as e:
        fr.parse_ring_spec("Zn:banana")
    assert e.value.pos == 3
    with pytest.raises(ParseError):
        fr.parse_ring_spec("frobnicate:2")
