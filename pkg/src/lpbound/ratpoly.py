"""Exact rational scalars and dense univariate polynomials.

Rationals are :class:`fractions.Fraction`.  Polynomials store their
coefficients in ascending order with no trailing zeros.  The same class
also carries :mod:`mpmath` ``mpf`` coefficients for the high-precision
float pipeline; mixed operands are promoted to ``mpf``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def is_float(x) -> bool:
    return isinstance(x, mpmath.mpf)


def to_mpf(x) -> mpmath.mpf:
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return mpmath.mpf(x)
    return mpmath.mpf(x)


def to_scalar(x):
    """Normalize ``x`` to a Fraction, or keep it as mpf."""
    if isinstance(x, (Fraction, mpmath.mpf)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"unsupported scalar {x!r}")


def parse_rational(s: str) -> Fraction:
    if not _RATIONAL_RE.match(str(s)):
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(str(s).replace(" ", ""))


def parse_scalar(s: str):
    """Parse "p/q" or "p" as Fraction, anything else as an mpf decimal."""
    s = str(s).strip()
    if _RATIONAL_RE.match(s):
        return parse_rational(s)
    return mpmath.mpf(s)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x, digits: int | None = None) -> str:
    if isinstance(x, mpmath.mpf):
        if digits is None:
            digits = mpmath.mp.dps
        return mpmath.nstr(x, digits, strip_zeros=False)
    return format_rational(x)


def _promote(values: Sequence) -> list:
    if any(isinstance(v, mpmath.mpf) for v in values):
        return [to_mpf(v) for v in values]
    return [to_scalar(v) for v in values]


class Poly:
    """Immutable dense polynomial, ``coeffs[k]`` is the coefficient of t**k."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = _promote(list(coeffs))
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def constant(cls, a) -> "Poly":
        return cls([a])

    @classmethod
    def monomial(cls, k: int, a=1) -> "Poly":
        return cls([0] * k + [a])

    @classmethod
    def identity(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        return poly_from_roots(roots)

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def is_float(self) -> bool:
        return any(isinstance(c, mpmath.mpf) for c in self._c)

    def leading(self):
        return self._c[-1] if self._c else Fraction(0)

    def __getitem__(self, k: int):
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __bool__(self):
        return bool(self._c)

    def __call__(self, t):
        return poly_eval(self, t)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"Poly([{', '.join(format_scalar(c) for c in self._c)}])"

    def __neg__(self):
        return Poly(-c for c in self._c)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = list(self._c), list(other._c)
        n = max(len(a), len(b))
        a += [Fraction(0)] * (n - len(a))
        b += [Fraction(0)] * (n - len(b))
        a, b = _promote(a), _promote(b)
        if any(is_float(x) for x in a + b):
            a, b = [to_mpf(x) for x in a], [to_mpf(x) for x in b]
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, mpmath.mpf)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly()
        a, b = self._c, other._c
        if self.is_float or other.is_float:
            a, b = [to_mpf(x) for x in a], [to_mpf(x) for x in b]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, a) -> "Poly":
        a = to_scalar(a)
        if is_float(a) or self.is_float:
            a = to_mpf(a)
            return Poly(to_mpf(c) * a for c in self._c)
        return Poly(c * a for c in self._c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "Poly":
        return poly_derivative(self)

    def to_float(self) -> "Poly":
        return Poly(to_mpf(c) for c in self._c)


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, mpmath.mpf)):
        return Poly([x])
    return NotImplemented


def poly_eval(p: Poly, t):
    """Horner evaluation; exact for Fraction input and coefficients."""
    t = to_scalar(t)
    if p.is_float or is_float(t):
        t = to_mpf(t)
        acc = mpmath.mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * t + to_mpf(c)
        return acc
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


def poly_derivative(p: Poly) -> Poly:
    return Poly(k * c for k, c in enumerate(p.coeffs) if k > 0)


def poly_from_roots(roots: Iterable) -> Poly:
    """Monic product of (t - r) over ``roots``; repeats allowed."""
    out = Poly([1])
    for r in roots:
        out = out * Poly([-to_scalar(r), 1])
    return out
