from fractions import Fraction as F

import mpmath
from hypothesis import given, strategies as st

from lpbound.ratpoly import (
    Poly,
    format_rational,
    parse_scalar,
    poly_derivative,
    poly_eval,
    poly_from_roots,
)
from lpbound.interpolate import LOWER_T1

from conftest import rationals

polys = st.lists(rationals(), max_size=8).map(Poly)


def test_eval_examples():
    assert poly_eval(Poly([0, 1]), F(1, 2)) == F(1, 2)
    assert poly_eval(Poly(), F(7, 3)) == 0
    assert poly_eval(Poly([F(-1, 4), 0, 1]), F(1, 2)) == 0


def test_derivative_examples():
    assert poly_derivative(Poly([0, 0, 1])) == Poly([0, 2])
    assert poly_derivative(Poly([5])) == Poly()
    assert poly_derivative(Poly([0, -1, 0, 1])) == Poly([-1, 0, 3])


def test_from_roots_examples():
    assert poly_from_roots([-1, -1]) == Poly([1, 2, 1])
    assert poly_from_roots([]) == Poly([1])
    pp9 = poly_from_roots(LOWER_T1.nodes[:9])
    assert pp9.degree == 9 and pp9.leading() == 1


def test_trailing_zeros_dropped():
    assert Poly([1, 0, 0]).coeffs == (F(1),)
    assert Poly([0, 0]).degree == -1


def test_rational_serialization():
    assert format_rational(F(3, 1)) == "3"
    assert format_rational(F(-118957, 811814400)) == "-118957/811814400"
    assert parse_scalar("-118957/811814400") == F(-118957, 811814400)
    assert isinstance(parse_scalar("0.25"), mpmath.mpf)


def test_mixed_kinds_promote():
    p = Poly([F(1, 3), 1]) + Poly([mpmath.mpf("0.5")])
    assert p.is_float
    assert abs(p(F(1)) - mpmath.mpf(11) / 6) < mpmath.mpf(10) ** -14


@given(polys, polys, rationals())
def test_eval_multiplicative(p, q, t):
    assert poly_eval(p * q, t) == poly_eval(p, t) * poly_eval(q, t)


@given(polys, polys, rationals())
def test_eval_additive(p, q, t):
    assert (p + q)(t) == p(t) + q(t)
    assert (p - q)(t) == p(t) - q(t)


@given(st.lists(rationals(), max_size=10))
def test_from_roots_properties(roots):
    p = poly_from_roots(roots)
    assert p.degree == len(roots)
    assert p.leading() == 1
    assert all(p(r) == 0 for r in roots)


@given(polys)
def test_derivative_degree(p):
    if p.degree >= 1:
        assert poly_derivative(p).degree == p.degree - 1
