"""Normalized Gegenbauer polynomials P_i^(n) with P_i(1) = 1.

Basis changes are exact triangular solves.  The weight
(1 - t^2)^((n-3)/2) enters only through its moment ratios, which are
rational, so orthogonality can be checked exactly.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ratpoly import Poly, format_scalar, is_float, to_mpf, to_scalar

CACHE_DEGREE = 14

_cache: dict[int, list[Poly]] = {}
_lock = threading.Lock()


def _check_dim(n: int) -> None:
    if int(n) != n or n < 3:
        raise ValueError("dimension must be ≥ 3")


def _basis(n: int, upto: int) -> list[Poly]:
    _check_dim(n)
    with _lock:
        polys = _cache.get(n)
        if polys is None:
            polys = [Poly([1]), Poly([0, 1])]
            _cache[n] = polys
        t = Poly.identity()
        while len(polys) <= max(upto, CACHE_DEGREE):
            i = len(polys)
            nxt = (t * polys[i - 1]).scale(2 * i + n - 4) - polys[i - 2].scale(i - 1)
            polys.append(nxt.scale(Fraction(1, i + n - 3)))
        return polys


def gegenbauer_poly(n: int, i: int) -> Poly:
    """P_i^(n) from the three-term recurrence normalized at t = 1."""
    if i < 0:
        raise ValueError("degree must be >= 0")
    return _basis(n, i)[i]


def gegenbauer_polys(n: int, max_degree: int) -> list[Poly]:
    return list(_basis(n, max_degree)[: max_degree + 1])


@dataclass(frozen=True)
class GegenbauerExpansion:
    dim: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(to_scalar(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def f0(self):
        return self[0]

    def assemble(self) -> Poly:
        return assemble(self)

    def to_json(self, digits: int | None = None) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "gegenbauer": [format_scalar(c, digits) for c in self.coeffs],
        }


def expand(p: Poly, n: int) -> GegenbauerExpansion:
    """Coefficients f_i with sum f_i P_i^(n) = p, by back-substitution."""
    _check_dim(n)
    d = p.degree
    if d < 0:
        return GegenbauerExpansion(n, (Fraction(0),))
    basis = _basis(n, d)
    floaty = p.is_float
    rest = p
    f = [Fraction(0)] * (d + 1)
    for k in range(d, -1, -1):
        lead = basis[k].leading()
        c = rest[k]
        if floaty:
            fk = to_mpf(c) / to_mpf(lead)
        else:
            fk = c / lead
        f[k] = fk
        if fk != 0:
            rest = rest - basis[k].scale(fk)
    if floaty:
        f = [to_mpf(x) for x in f]
    return GegenbauerExpansion(n, tuple(f))


def assemble(e: GegenbauerExpansion) -> Poly:
    basis = _basis(e.dim, max(e.degree, 0))
    out = Poly()
    for i, c in enumerate(e.coeffs):
        if c != 0:
            out = out + basis[i].scale(c)
    return out


class WeightMoments:
    """Normalized moments of w(t) = (1 - t^2)^((n-3)/2) on [-1, 1]."""

    def __init__(self, n: int):
        _check_dim(n)
        self.n = n
        self._even = [Fraction(1)]

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        if k % 2:
            return Fraction(0)
        m = k // 2
        while len(self._even) <= m:
            j = len(self._even)
            self._even.append(self._even[-1] * Fraction(2 * j - 1, self.n + 2 * j - 2))
        return self._even[m]

    def integrate(self, p: Poly):
        """<p, 1> / <1, 1> under the weight."""
        if p.is_float:
            return sum((to_mpf(c) * to_mpf(self[k]) for k, c in enumerate(p.coeffs)), to_mpf(0))
        return sum((c * self[k] for k, c in enumerate(p.coeffs)), Fraction(0))


def orthogonality_residual(n: int, i: int, j: int) -> Fraction:
    """<P_i, P_j> / <1, 1>; zero exactly when i != j."""
    return WeightMoments(n).integrate(gegenbauer_poly(n, i) * gegenbauer_poly(n, j))


@dataclass(frozen=True)
class SignReport:
    signs: dict
    negative: tuple
    exceptions: frozenset
    admissible: bool

    def to_json(self) -> dict:
        return {
            "signs": {str(i): s for i, s in sorted(self.signs.items())},
            "negative": list(self.negative),
            "exceptions": sorted(self.exceptions),
            "admissible": self.admissible,
        }


def _sign(x) -> str:
    if x > 0:
        return "+"
    if x < 0:
        return "-"
    return "0"


def sign_report(e: GegenbauerExpansion, exceptions: Iterable[int] = ()) -> SignReport:
    """Classify f_i for i >= 1; admissible iff every negative index is excepted."""
    exc = frozenset(exceptions)
    signs = {i: _sign(c) for i, c in enumerate(e.coeffs) if i >= 1}
    negative = tuple(i for i, s in signs.items() if s == "-")
    return SignReport(signs, negative, exc, all(i in exc for i in negative))


def poly_json(n: int, i: int, p: Poly) -> dict:
    return {"dim": n, "degree": i, "coeffs": [format_scalar(c) for c in p.coeffs]}


def is_float_expansion(e: GegenbauerExpansion) -> bool:
    return any(is_float(c) for c in e.coeffs)
