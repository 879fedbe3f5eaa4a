from fractions import Fraction as F

import mpmath
import pytest

from lpbound.potentials import (
    PotentialDomainError,
    PotentialSpecError,
    abs_monotone_witness,
    gaussian,
    parse_potential,
    poly_potential_from_shifted_basis,
    riesz,
    uniform_grid,
)

ABSCISSAE = [F(-1), F(-1, 2), F(1, 2), F(-1, 3), F(1, 3), F(-1, 6), F(1, 6), F(0)]


def test_eval_examples():
    assert riesz(2)(F(1, 2)) == 1
    assert riesz(2)(F(-1)) == F(1, 4)
    assert gaussian(F(1, 2))(F(1)) == 1


def test_riesz_infinite_at_one():
    with pytest.raises(PotentialDomainError):
        riesz(4)(F(1))


def test_order_limit():
    with pytest.raises(ValueError):
        riesz(2)(F(0), 14)


@pytest.mark.parametrize("s", [2, 4, 6])
def test_even_riesz_exact_at_abscissae(s):
    h = riesz(s)
    for t in ABSCISSAE:
        for k in range(4):
            assert isinstance(h(t, k), F)


def test_riesz_values():
    h = riesz(2)
    assert [h(t) for t in ABSCISSAE] == [F(1, 4), F(1, 3), F(1), F(3, 8), F(3, 4), F(3, 7), F(3, 5), F(1, 2)]


@pytest.mark.parametrize("spec", ["riesz:s=2", "riesz:s=3", "riesz:s=4", "gauss:sigma=1", "gauss:sigma=1/2", "poly:[1,2,0,3]"])
def test_derivatives_match_finite_differences(spec):
    h = parse_potential(spec)
    pts = [F(j, 12) for j in range(-5, 6)]
    with mpmath.workdps(50):
        for t in pts:
            x = mpmath.mpf(t.numerator) / t.denominator
            for k in range(1, 4):
                # mpmath.diff: central differences with internal extra precision
                fd = mpmath.diff(lambda u: mpmath.mpf(h(u)), x, k)
                exact = h(t, k)
                ex = mpmath.mpf(exact.numerator) / exact.denominator if isinstance(exact, F) else exact
                assert abs(fd - ex) <= mpmath.mpf(10) ** -20 * max(abs(ex), 1)


def test_gaussian_bounded_by_one():
    h = gaussian(2)
    for t in uniform_grid(51):
        assert h(t) < 1
    assert h(F(1)) == 1


def test_monotone_witness_riesz_and_gauss():
    grid = uniform_grid(101)
    for h in (riesz(4), gaussian(1)):
        rep = abs_monotone_witness(h, grid, 13)
        assert rep.passed and all(v > 0 for v in rep.minima.values())
        assert "not a proof" in rep.note


def test_monotone_witness_fails_for_negative_slope():
    from lpbound.potentials import polynomial_potential
    from lpbound.ratpoly import Poly

    rep = abs_monotone_witness(polynomial_potential(Poly([0, -1])), [F(0)], 1)
    assert not rep.passed
    assert (0, F(0)) in rep.failures or (1, F(0)) in rep.failures
    assert rep.minima[1] < 0


def test_shifted_basis():
    import math

    h = poly_potential_from_shifted_basis([0] * 12 + [1])
    assert h.claims_positive_12th
    assert h(F(1, 3), 12) == math.factorial(12)
    c = poly_potential_from_shifted_basis([1])
    assert all(c(F(0), k) == 0 for k in range(1, 5)) and c(F(0)) == 1
    lin = poly_potential_from_shifted_basis([0, 1])
    assert lin.claims_abs_monotone and not lin.claims_positive_12th
    assert lin(F(0), 12) == 0


def test_shifted_basis_rejects_negative():
    with pytest.raises(PotentialSpecError):
        poly_potential_from_shifted_basis([1, -1])


@pytest.mark.parametrize("spec", ["poly:[]", "riesz:s=x", "riesz:s=0", "gauss:sigma=-1", "gauss:sigma=abc", "lj:eps=1", "poly:[1,-2]"])
def test_bad_specs(spec):
    with pytest.raises(PotentialSpecError):
        parse_potential(spec)


def test_spec_roundtrip():
    for spec in ["poly:[0,0,1/2]", "riesz:s=4", "gauss:sigma=1/2"]:
        assert parse_potential(spec).spec == spec
