"""Potential functions h(t) of the inner product t, with derivative oracles.

Distances use |x - y|^2 = 2 - 2t.  Specifier grammar::

    poly:[c0,c1,...]     h = sum c_k (1 + t)^k, c_k >= 0
    riesz:s=<int>        h = (2 - 2t)^(-s/2)
    gauss:sigma=<q>      h = exp(2 sigma (t - 1))
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath

from .ratpoly import Poly, format_rational, parse_rational, to_mpf, to_scalar

MAX_ORDER = 13


class PotentialSpecError(ValueError):
    """Malformed potential specifier."""


class PotentialDomainError(ValueError):
    """Evaluation outside the potential's domain (e.g. Riesz at t = 1)."""


@dataclass(frozen=True)
class Potential:
    kind: str
    spec: str
    exact: bool
    finite_at_one: bool
    claims_abs_monotone: bool
    claims_positive_12th: bool
    poly: Poly | None = None
    s: int | None = None
    sigma: Fraction | None = None
    value: Callable | None = field(default=None, compare=False)
    derivative: Callable | None = field(default=None, compare=False)

    def __call__(self, t, k: int = 0):
        return eval_potential(self, t, k)

    def eval(self, t, k: int = 0):
        return eval_potential(self, t, k)

    def __str__(self):
        return self.spec


def _rising(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


def eval_potential(h: Potential, t, k: int = 0):
    """h^(k)(t); exact Fraction when ``h.exact`` and t is rational."""
    if k < 0 or k > MAX_ORDER:
        raise ValueError(f"derivative order must be in 0..{MAX_ORDER}")
    t = to_scalar(t)
    if t == 1 and not h.finite_at_one:
        raise PotentialDomainError(f"{h.spec} is infinite at t = 1")
    if t > 1 or t < -1:
        raise PotentialDomainError(f"t = {t} outside [-1, 1]")

    if h.kind == "polynomial":
        p = h.poly
        for _ in range(k):
            p = p.derivative()
        return p(t)

    if h.kind == "riesz":
        half = Fraction(h.s, 2)
        if h.exact and isinstance(t, Fraction):
            # half + k is an integer here
            return 2 ** k * _rising(half, k) / (2 - 2 * t) ** int(half + k)
        tt = to_mpf(t)
        coeff = mpmath.mpf(2) ** k * mpmath.rf(to_mpf(half), k)
        return coeff * (2 - 2 * tt) ** (-(to_mpf(half) + k))

    if h.kind == "gaussian":
        a = 2 * to_mpf(h.sigma)
        return a ** k * mpmath.exp(a * (to_mpf(t) - 1))

    if h.kind == "custom":
        if k == 0:
            return h.value(t)
        if h.derivative is None:
            raise ValueError("custom potential has no derivative oracle")
        return h.derivative(t, k)

    raise ValueError(f"unknown potential kind {h.kind!r}")


def poly_potential_from_shifted_basis(c: Sequence) -> Potential:
    """Absolutely monotone polynomial sum c_k (1 + t)^k with all c_k >= 0."""
    c = [to_scalar(x) for x in c]
    if any(x < 0 for x in c):
        raise PotentialSpecError("shifted-basis coefficients must be nonnegative")
    p = Poly()
    base = Poly([1, 1])
    for k, ck in enumerate(c):
        if ck:
            p = p + (base ** k).scale(ck)
    spec = "poly:[" + ",".join(format_rational(x) for x in c) + "]"
    return Potential(
        kind="polynomial",
        spec=spec,
        exact=True,
        finite_at_one=True,
        claims_abs_monotone=True,
        claims_positive_12th=any(x > 0 for x in c[12:]),
        poly=p,
    )


def polynomial_potential(p: Poly, name: str | None = None) -> Potential:
    """Arbitrary rational polynomial; makes no monotonicity claim."""
    p = Poly(p)
    return Potential(
        kind="polynomial",
        spec=name or "polynomial:[" + ",".join(format_rational(c) for c in p.coeffs) + "]",
        exact=True,
        finite_at_one=True,
        claims_abs_monotone=False,
        claims_positive_12th=False,
        poly=p,
    )


def riesz(s: int) -> Potential:
    if int(s) != s or s <= 0:
        raise PotentialSpecError("riesz exponent must be a positive integer")
    s = int(s)
    return Potential(
        kind="riesz",
        spec=f"riesz:s={s}",
        exact=s % 2 == 0,
        finite_at_one=False,
        claims_abs_monotone=True,
        claims_positive_12th=True,
        s=s,
    )


def gaussian(sigma) -> Potential:
    sigma = Fraction(sigma)
    if sigma <= 0:
        raise PotentialSpecError("gauss sigma must be positive")
    return Potential(
        kind="gaussian",
        spec=f"gauss:sigma={format_rational(sigma)}",
        exact=False,
        finite_at_one=True,
        claims_abs_monotone=True,
        claims_positive_12th=True,
        sigma=sigma,
    )


def custom(
    name: str,
    value: Callable,
    derivative: Callable | None = None,
    *,
    exact: bool = False,
    finite_at_one: bool = True,
    claims_abs_monotone: bool = False,
    claims_positive_12th: bool = False,
) -> Potential:
    return Potential(
        kind="custom",
        spec=f"custom:{name}",
        exact=exact,
        finite_at_one=finite_at_one,
        claims_abs_monotone=claims_abs_monotone,
        claims_positive_12th=claims_positive_12th,
        value=value,
        derivative=derivative,
    )


_POLY_RE = re.compile(r"^poly:\[(.*)\]$")
_RIESZ_RE = re.compile(r"^riesz:s=([+-]?\d+)$")
_GAUSS_RE = re.compile(r"^gauss:sigma=([^\s]+)$")


def parse_potential(spec: str) -> Potential:
    spec = spec.strip()
    m = _POLY_RE.match(spec)
    if m:
        body = m.group(1).strip()
        if not body:
            raise PotentialSpecError("empty coefficient list")
        try:
            coeffs = [parse_rational(x) for x in body.split(",")]
        except ValueError as exc:
            raise PotentialSpecError(str(exc)) from None
        return poly_potential_from_shifted_basis(coeffs)
    m = _RIESZ_RE.match(spec)
    if m:
        return riesz(int(m.group(1)))
    m = _GAUSS_RE.match(spec)
    if m:
        try:
            sigma = parse_rational(m.group(1))
        except ValueError as exc:
            raise PotentialSpecError(str(exc)) from None
        return gaussian(sigma)
    raise PotentialSpecError(
        f"invalid potential {spec!r}; expected poly:[c0,...], riesz:s=<int> or gauss:sigma=<rational>"
    )


@dataclass
class MonotonicityReport:
    potential: str
    max_order: int
    minima: dict
    failures: list
    passed: bool
    note: str = "falsification check on a finite grid, not a proof"

    def to_json(self) -> dict:
        return {
            "potential": self.potential,
            "max_order": self.max_order,
            "minima": {str(k): mpmath.nstr(to_mpf(v), 20) for k, v in self.minima.items()},
            "failures": [{"order": k, "t": str(t)} for k, t in self.failures],
            "passed": self.passed,
            "note": self.note,
        }


def abs_monotone_witness(h: Potential, grid: Iterable, max_order: int) -> MonotonicityReport:
    """Check h^(k)(t) >= 0 on ``grid`` for k <= max_order."""
    grid = list(grid)
    minima, failures = {}, []
    for k in range(max_order + 1):
        vals = [(eval_potential(h, t, k), t) for t in grid]
        lo = min(v for v, _ in vals)
        minima[k] = lo
        failures += [(k, t) for v, t in vals if v < 0]
    return MonotonicityReport(h.spec, max_order, minima, failures, not failures)


def uniform_grid(points: int = 101, lo=Fraction(-1), hi=Fraction(1)) -> list[Fraction]:
    """``points`` equally spaced rationals strictly inside (lo, hi)."""
    step = (Fraction(hi) - Fraction(lo)) / (points + 1)
    return [lo + step * (j + 1) for j in range(points)]

