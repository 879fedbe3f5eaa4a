"""Hermite interpolation in Newton form over rational node multisets."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Sequence

import mpmath

from .gegenbauer import GegenbauerExpansion, expand
from .potentials import Potential, eval_potential
from .ratpoly import Poly, format_rational, poly_from_roots, to_mpf, to_scalar

MAX_NODES = 16


@dataclass(frozen=True)
class NodeMultiset:
    nodes: tuple

    def __post_init__(self):
        nodes = tuple(Fraction(to_scalar(t)) for t in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if not nodes:
            raise ValueError("empty node multiset")
        if len(nodes) > MAX_NODES:
            raise ValueError(f"at most {MAX_NODES} nodes supported")
        seen = set()
        for key, _ in groupby(nodes):
            if key in seen:
                raise ValueError(f"repeated node {key} is not contiguous")
            seen.add(key)

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, i):
        return self.nodes[i]

    def distinct(self) -> list[tuple[Fraction, int]]:
        return [(key, len(list(grp))) for key, grp in groupby(self.nodes)]

    @property
    def max_multiplicity(self) -> int:
        return max(m for _, m in self.distinct())

    def to_json(self) -> list[str]:
        return [format_rational(t) for t in self.nodes]


def _ms(*xs) -> NodeMultiset:
    return NodeMultiset(tuple(Fraction(x) for x in xs))


F = Fraction
LOWER_T1 = _ms(-1, -1, F(-1, 2), F(-1, 2), F(-1, 3), F(-1, 6), 0, 0, F(1, 6), F(1, 3), F(1, 2), F(1, 2))
LOWER_T2 = _ms(-1, -1, F(-1, 2), F(-1, 3), F(-1, 6), F(-1, 6), 0, 0, F(1, 6), F(1, 6), F(1, 3), F(1, 2))
UPPER_T1 = _ms(-1, F(-1, 2), F(-1, 2), F(-1, 3), F(-1, 6), 0, 0, F(1, 6), F(1, 3), F(1, 2), F(1, 2), 1)
del F


@dataclass(frozen=True)
class AvoidSet:
    name: str
    intervals: tuple

    def contains(self, t) -> bool:
        return any(a < t < b for a, b in self.intervals)

    def complement(self, lo=Fraction(-1), hi=Fraction(1)) -> list[tuple[Fraction, Fraction]]:
        """Maximal closed subintervals of [lo, hi] outside the open intervals."""
        out, cur = [], lo
        for a, b in sorted(self.intervals):
            if a > cur:
                out.append((cur, min(a, hi)))
            cur = max(cur, b)
        if cur <= hi:
            out.append((cur, hi))
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "intervals": [[format_rational(a), format_rational(b)] for a, b in self.intervals],
        }


T1 = AvoidSet("T1", ((Fraction(-1, 3), Fraction(-1, 6)), (Fraction(1, 6), Fraction(1, 3))))
T2 = AvoidSet("T2", ((Fraction(-1, 2), Fraction(-1, 3)), (Fraction(1, 3), Fraction(1, 2))))
AVOID_SETS = {"T1": T1, "T2": T2}


def avoid_set(name: str) -> AvoidSet:
    try:
        return AVOID_SETS[name]
    except KeyError:
        raise ValueError(f"unknown avoid set {name!r}; expected T1 or T2") from None


@dataclass(frozen=True)
class DividedDifferenceTable:
    nodes: NodeMultiset
    columns: tuple  # columns[k][i] = h[t_i, ..., t_{i+k}]
    exact: bool

    @property
    def leading(self) -> tuple:
        """h[t_1], h[t_1, t_2], ..., h[t_1, ..., t_m]."""
        return tuple(col[0] for col in self.columns)


def _node_values(h: Potential, m: NodeMultiset, exact: bool):
    cache = {}

    def deriv(t, k):
        key = (t, k)
        if key not in cache:
            v = eval_potential(h, t if exact else to_mpf(t), k)
            cache[key] = v if exact else to_mpf(v)
        return cache[key]

    return deriv


def divided_differences(h: Potential, m: NodeMultiset) -> DividedDifferenceTable:
    """Confluent divided-difference table.

    Exact when ``h.exact``; otherwise computed in mpmath at the ambient
    precision.
    """
    exact = bool(h.exact)
    if m.max_multiplicity - 1 > 13:
        raise ValueError("multiplicity exceeds available derivative orders")
    deriv = _node_values(h, m, exact)
    x = list(m.nodes) if exact else [to_mpf(t) for t in m.nodes]
    col = [deriv(t, 0) for t in m.nodes]
    columns = [tuple(col)]
    n = len(x)
    for k in range(1, n):
        nxt = []
        for i in range(n - k):
            if m.nodes[i + k] == m.nodes[i]:
                d = deriv(m.nodes[i], k)
                nxt.append(d / math.factorial(k))
            else:
                nxt.append((col[i + 1] - col[i]) / (x[i + k] - x[i]))
        col = nxt
        columns.append(tuple(col))
    return DividedDifferenceTable(m, tuple(columns), exact)


def newton_basis(m: NodeMultiset) -> list[Poly]:
    """[1, (t - t_1), (t - t_1)(t - t_2), ...] up to length len(m)."""
    out = [Poly([1])]
    for t in m.nodes[:-1]:
        out.append(out[-1] * Poly([-t, 1]))
    return out


def hermite_interpolant(h: Potential, m: NodeMultiset) -> Poly:
    table = divided_differences(h, m)
    f = Poly()
    for c, pp in zip(table.leading, newton_basis(m)):
        f = f + pp.scale(c)
    if not table.exact:
        f = f.to_float()
    return f


def hermite_dense(h: Potential, m: NodeMultiset) -> Poly:
    """Hermite interpolant from the confluent Vandermonde system.

    Independent of the divided-difference route; used as a cross-check.
    """
    exact = bool(h.exact)
    n = len(m)
    rows, rhs = [], []
    for node, mult in m.distinct():
        for j in range(mult):
            row = []
            for k in range(n):
                if k < j:
                    row.append(0)
                else:
                    c = math.perm(k, j)
                    row.append(c * node ** (k - j))
            val = eval_potential(h, node if exact else to_mpf(node), j)
            rows.append(row)
            rhs.append(val)
    if exact:
        sol = solve_exact(rows, rhs)
        return Poly(sol)
    A = mpmath.matrix([[to_mpf(Fraction(v)) for v in r] for r in rows])
    b = mpmath.matrix([to_mpf(v) for v in rhs])
    sol = mpmath.lu_solve(A, b)
    return Poly([sol[i] for i in range(n)]).to_float()


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Gaussian elimination over Q for a nonsingular square system."""
    n = len(rows)
    a = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                fac = a[r][col]
                a[r] = [v - fac * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def partial_products(m: NodeMultiset, n: int) -> list[GegenbauerExpansion]:
    """Gegenbauer expansions of PP_r = (t - t_1)...(t - t_r), r = 1..len(m)-1."""
    return [expand(poly_from_roots(m.nodes[:r]), n) for r in range(1, len(m))]


@dataclass(frozen=True)
class SignPattern:
    intervals: tuple  # ((a, b, sign), ...)
    verdict: str

    def to_json(self) -> list[dict]:
        return [
            {"interval": [format_rational(a), format_rational(b)], "sign": s}
            for a, b, s in self.intervals
        ]


def remainder_sign(
    m: NodeMultiset | Iterable,
    extra_roots: Iterable = (),
    T: AvoidSet | None = None,
) -> SignPattern:
    """Sign of prod(t - t_i) * prod(t - r) on each piece of [-1, 1] minus T.

    Decided from root multiplicities: a piece has constant sign unless an
    odd-multiplicity root lies strictly inside it.
    """
    roots = list(m.nodes if isinstance(m, NodeMultiset) else m)
    roots += [Fraction(to_scalar(r)) for r in extra_roots]
    mult: dict[Fraction, int] = {}
    for r in roots:
        mult[Fraction(r)] = mult.get(Fraction(r), 0) + 1
    pieces = T.complement() if T is not None else [(Fraction(-1), Fraction(1))]
    out = []
    for a, b in pieces:
        if a == b:
            val = 1
            for r, k in mult.items():
                val *= (a - r) ** k
            out.append((a, b, "0" if val == 0 else ("+" if val > 0 else "-")))
            continue
        if any(a < r < b and k % 2 for r, k in mult.items()):
            out.append((a, b, "mixed"))
            continue
        # sign just right of a: each root above a contributes (-1)^multiplicity
        above = sum(k for r, k in mult.items() if r > a)
        out.append((a, b, "-" if above % 2 else "+"))
    signs = {s for _, _, s in out if s != "0"}
    if "mixed" in signs or signs == {"+", "-"}:
        verdict = "mixed"
    elif signs <= {"+"}:
        verdict = "nonnegative"
    else:
        verdict = "nonpositive"
    return SignPattern(tuple(out), verdict)
