"""Distance distributions of distance-invariant codes and their quadrature rules."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .gegenbauer import expand, gegenbauer_poly
from .potentials import Potential, eval_potential
from .ratpoly import Poly, format_rational, parse_rational, to_mpf, to_scalar


class DistributionError(ValueError):
    """Distribution data violates the count or symmetry invariants."""


class NotADesignError(ValueError):
    pass


class SingularSystemError(ValueError):
    pass


class DistributionInfeasible(ValueError):
    """Exact solution exists but is not a realizable distance distribution."""

    def __init__(self, reason: str, solution: dict):
        super().__init__(f"infeasible for a realizable code: {reason}")
        self.reason = reason
        self.solution = solution


@dataclass(frozen=True)
class DistanceDistribution:
    N: int
    entries: tuple  # ((t, A_t), ...) sorted by t
    antipodal: bool = False

    def __post_init__(self):
        raw = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        entries = tuple(sorted((Fraction(to_scalar(t)), A) for t, A in raw))
        object.__setattr__(self, "entries", entries)
        keys = [t for t, _ in entries]
        if len(set(keys)) != len(keys):
            raise DistributionError("duplicate inner product")
        for t, A in entries:
            if not -1 <= t < 1:
                raise DistributionError(f"inner product {t} outside [-1, 1)")
            if int(A) != A or A < 0:
                raise DistributionError(f"A_{t} = {A} is not a nonnegative integer")
        if sum(A for _, A in entries) != self.N - 1:
            raise DistributionError("counts must sum to N - 1")
        if self.antipodal:
            d = dict(entries)
            if d.get(Fraction(-1)) != 1:
                raise DistributionError("antipodal distribution needs A_{-1} = 1")
            for t, A in entries:
                if t != -1 and d.get(-t, 0) != A:
                    raise DistributionError(f"antipodal distribution needs A_{t} = A_{-t}")

    def __iter__(self):
        return iter(self.entries)

    def as_dict(self) -> dict:
        return dict(self.entries)

    @property
    def support(self) -> list[Fraction]:
        return [t for t, A in self.entries if A]

    @property
    def max_cosine(self) -> Fraction:
        return max(self.support)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "antipodal": self.antipodal,
            "entries": [{"t": format_rational(t), "A": int(A)} for t, A in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DistanceDistribution":
        return cls(
            int(data["N"]),
            tuple((parse_rational(e["t"]), int(e["A"])) for e in data["entries"]),
            bool(data.get("antipodal", False)),
        )


_h = Fraction(1, 2)
_th = Fraction(1, 3)
_s = Fraction(1, 6)
P48 = DistanceDistribution(
    52_416_000,
    (
        (Fraction(-1), 1),
        (-_h, 36_848), (_h, 36_848),
        (-_th, 1_678_887), (_th, 1_678_887),
        (-_s, 12_608_784), (_s, 12_608_784),
        (Fraction(0), 23_766_960),
    ),
    antipodal=True,
)
del _h, _th, _s


def design_energy(d: DistanceDistribution, h: Potential):
    """Per-point h-energy sum_t A_t h(t)."""
    vals = [(A, eval_potential(h, t)) for t, A in d.entries]
    if any(isinstance(v, mpmath.mpf) for _, v in vals):
        return mpmath.fsum(A * to_mpf(v) for A, v in vals)
    return sum((A * v for A, v in vals), Fraction(0))


def moment(d: DistanceDistribution, i: int, dim: int = 48) -> Fraction:
    """M_i / N = sum_t A_t P_i(t) + P_i(1)."""
    if i < 0:
        raise ValueError("moment index must be >= 0")
    p = gegenbauer_poly(dim, i)
    return sum((A * p(t) for t, A in d.entries), Fraction(0)) + p(Fraction(1))


@dataclass(frozen=True)
class QuadratureRule:
    dim: int
    abscissae: tuple
    weights: tuple
    degree: int

    def apply(self, p):
        """sum_j w_j p(x_j); ``p`` may be a Poly or a callable."""
        vals = [p(x) for x in self.abscissae]
        if any(isinstance(v, mpmath.mpf) for v in vals):
            return mpmath.fsum(to_mpf(w) * to_mpf(v) for w, v in zip(self.weights, vals))
        return sum((w * v for w, v in zip(self.weights, vals)), Fraction(0))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "nodes": [
                {"t": format_rational(x), "w": format_rational(w)}
                for x, w in zip(self.abscissae, self.weights)
            ],
        }


def design_strength(d: DistanceDistribution, dim: int = 48, limit: int | None = None) -> int:
    """Largest m with M_1 = ... = M_m = 0."""
    if limit is None:
        # positive weights on k nodes cannot be exact in degree 2k
        limit = 2 * (len(d.support) + 1)
    m = 0
    while m < limit and moment(d, m + 1, dim) == 0:
        m += 1
    return m


def quadrature_from(d: DistanceDistribution, dim: int = 48) -> QuadratureRule:
    tau = design_strength(d, dim)
    if tau < 1:
        raise NotADesignError("not a design distribution")
    xs = [t for t, A in d.entries if A] + [Fraction(1)]
    ws = [Fraction(A, d.N) for t, A in d.entries if A] + [Fraction(1, d.N)]
    return QuadratureRule(dim, tuple(xs), tuple(ws), tau)


def quadrature_residual(q: QuadratureRule, p: Poly):
    """Quadrature sum minus the constant Gegenbauer coefficient of ``p``."""
    f0 = expand(p, q.dim).f0
    val = q.apply(p)
    if isinstance(val, mpmath.mpf) or isinstance(f0, mpmath.mpf):
        return to_mpf(val) - to_mpf(f0)
    return val - f0


def _rank_reduce(rows: list[list[Fraction]]):
    """Reduced row echelon form over Q; returns (rref, pivot columns)."""
    a = [list(r) for r in rows]
    ncols = len(a[0]) - 1 if a else 0
    pivots, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [v / p for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                fac = a[i][c]
                a[i] = [v - fac * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def solve_distribution(
    inner_products: Iterable,
    N: int,
    design_strength: int,
    antipodal: bool,
    dim: int = 48,
) -> DistanceDistribution:
    """Recover A_t from the count and moment constraints by exact elimination.

    Under ``antipodal`` the unknowns are symmetric pairs and only even
    moments are imposed; the odd ones are checked afterwards.
    """
    ts = sorted({Fraction(to_scalar(t)) for t in inner_products})
    if antipodal:
        classes = []
        for t in ts:
            if t == -1:
                classes.append((t,))
            elif t <= 0:
                classes.append((t,) if t == 0 else (t, -t))
            elif -t not in ts:
                classes.append((-t, t))
    else:
        classes = [(t,) for t in ts]
    indices = [i for i in range(1, design_strength + 1) if not antipodal or i % 2 == 0]
    rows = [[Fraction(len(c)) for c in classes] + [Fraction(N - 1)]]
    for i in indices:
        p = gegenbauer_poly(dim, i)
        rows.append([sum((p(t) for t in c), Fraction(0)) for c in classes] + [Fraction(-1)])
    rref, pivots = _rank_reduce(rows)
    k = len(classes)
    for row in rref[len(pivots):]:
        if row[-1] != 0:
            raise SingularSystemError("constraint system is inconsistent")
    if len(pivots) < k:
        raise SingularSystemError("constraint system is singular")
    solution = {}
    for r, c in enumerate(pivots):
        for t in classes[c]:
            solution[t] = rref[r][-1]
    for t in ts:
        solution.setdefault(t, Fraction(0))

    bad = [t for t, A in solution.items() if A < 0]
    if bad:
        raise DistributionInfeasible(f"negative counts at t = {', '.join(map(str, bad))}", solution)
    frac = [t for t, A in solution.items() if A.denominator != 1]
    if frac:
        raise DistributionInfeasible(f"non-integral counts at t = {', '.join(map(str, frac))}", solution)
    try:
        d = DistanceDistribution(N, tuple((t, int(A)) for t, A in solution.items()), antipodal)
    except DistributionError as exc:
        raise DistributionInfeasible(str(exc), solution) from None
    for i in range(1, design_strength + 1):
        if moment(d, i, dim) != 0:
            raise DistributionInfeasible(f"moment {i} does not vanish", solution)
    return d
