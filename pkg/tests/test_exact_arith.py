from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from foliations.errors import NotDivisible, ParseError
from foliations.exact_arith import (
    MultiPoly,
    poly_parse,
    uni_coeffs,
    uni_divmod,
    uni_exact_div,
    uni_from_coeffs,
    uni_gcd,
    uni_sqrt,
)


def P(text, n=3):
    return poly_parse(text, n)


def test_parse_reads_terms():
    assert P("z1^2 + 2*z1*z2").terms == {(2, 0, 0): 1, (1, 1, 0): 2}
    assert P("0", 2).terms == {}
    assert P("-1/2*z2^3 + z1 - z1", 2).terms == {(0, 3): Fraction(-1, 2)}


def test_parse_accepts_implicit_product_and_whitespace():
    assert P(" 3 z1 z2 ^ 2 ") == P("3*z1*z2^2")
    assert P("-z3") == -P("z3")


@pytest.mark.parametrize("bad", ["z1 +", "z17", "z0", "2/0*z1", "z1^", "z1 ** 2", "x1"])
def test_parse_errors_carry_offsets(bad):
    with pytest.raises(ParseError) as info:
        P(bad)
    assert info.value.offset >= 0


def test_substitute_examples():
    u1, u2, u3 = (MultiPoly.var(i, 3) for i in range(3))
    assert P("z1*z2").substitute([u1, u1 * u2, u3]) == u1 * u1 * u2
    assert P("z1 + z3").substitute([u1, u1 * u2, u3]) == u1 + u3
    v1 = MultiPoly.var(0, 2)
    assert ((P("z1", 2) + P("z2", 2)) ** 2).substitute([v1, -v1]).is_zero()


def test_vanish_order_examples():
    assert P("z1^2*z3 + z1*z2").vanish_order(2) == 2
    assert P("z3^5").vanish_order(2) == 0
    assert MultiPoly.zero(3).vanish_order(2) == float("inf")


def test_divide_monomial_power_examples():
    assert P("z1^3 + z1^2*z2").divide_monomial_power(0, 2) == P("z1 + z2")
    with pytest.raises(NotDivisible):
        P("z1*z2").divide_monomial_power(0, 2)
    assert MultiPoly.zero(3).divide_monomial_power(0, 5).is_zero()


def test_derivative_examples():
    assert P("z1^3", 1).derivative(0) == P("3*z1^2", 1)
    assert MultiPoly.constant(7, 2).derivative(1).is_zero()
    assert P("z1^2*z2").derivative(1) == P("z1^2")


def test_printing_round_trips():
    p = P("-1/2*z2^3 + 7*z1*z3 - 4")
    assert poly_parse(p.to_string(), 3) == p
    assert str(MultiPoly.zero(2)) == "0"


# -- property tests against sympy -------------------------------------------------

exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: MultiPoly(3, d))
Z = sympy.symbols("z1:4")


def to_sympy(p):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(z**e for z, e in zip(Z, ex))
                            for ex, c in p.items()))


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_ring_operations_match_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0
    assert (a + b) - b == a


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys, polys)
def test_substitution_is_a_ring_map(a, b, g1, g2):
    imgs = [g1, g2, MultiPoly.var(2, 3)]
    assert (a * b).substitute(imgs) == a.substitute(imgs) * b.substitute(imgs)
    assert (a + b).substitute(imgs) == a.substitute(imgs) + b.substitute(imgs)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_leibniz_rule(a, b):
    for v in range(3):
        assert (a * b).derivative(v) == a.derivative(v) * b + a * b.derivative(v)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_canonical_printing_round_trip(a):
    assert poly_parse(a.to_string(), 3) == a


# -- univariate helpers ------------------------------------------------------------

def test_univariate_division_and_gcd():
    a = uni_from_coeffs([-1, 0, 1])          # x^2 - 1
    b = uni_from_coeffs([1, 1])              # x + 1
    q, r = uni_divmod(a, b)
    assert q == uni_from_coeffs([-1, 1]) and r.is_zero()
    assert uni_exact_div(a, uni_from_coeffs([2, 1])) is None
    assert uni_gcd(a * 3, uni_from_coeffs([1, 2, 1])) == b
    assert uni_coeffs(a) == [-1, 0, 1]


def test_univariate_square_root():
    s = uni_from_coeffs([Fraction(1, 2), -3, 2])
    assert uni_sqrt(s * s) in (s, -s)
    assert uni_sqrt(uni_from_coeffs([0, 1])) is None
    assert uni_sqrt(uni_from_coeffs([2])) is None
    assert uni_sqrt(uni_from_coeffs([Fraction(9, 4)])) == uni_from_coeffs([Fraction(3, 2)])
