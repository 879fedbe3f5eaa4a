"""Zero-input reproduction checklist over the built-in 48-dimensional data."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from . import paperdata
from .certify import (
    DEFAULT_PRECISION,
    GUARD_DIGITS,
    lower_certificate,
    sandwich_report,
    upper_certificate,
)
from .designs import P48, moment, quadrature_from, quadrature_residual, solve_distribution
from .gegenbauer import gegenbauer_poly
from .interpolate import LOWER_T1, LOWER_T2, UPPER_T1, T1, T2, partial_products, remainder_sign
from .potentials import parse_potential
from .ratpoly import Poly, format_scalar


@dataclass
class Item:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"item": self.name, "passed": self.passed, "detail": self.detail}


def _corrupted_tables(corrupt: str | None) -> dict:
    tables = dict(paperdata.PARTIAL_PRODUCT_TABLES)
    if corrupt:
        avoid, r, i = corrupt.split(":")
        key = (avoid, int(r))
        row = list(tables[key])
        row[int(i)] += 1
        tables[key] = tuple(row)
    return tables


def coefficient_items(tables: dict) -> list[Item]:
    items = []
    multisets = {"T1": LOWER_T1, "T2": LOWER_T2}
    for avoid, m in multisets.items():
        pps = partial_products(m, 48)
        for r in (9, 10, 11):
            got = pps[r - 1].coeffs
            want = tables[(avoid, r)]
            for i, w in enumerate(want):
                g = got[i] if i < len(got) else None
                items.append(Item(f"{avoid} g_{i},{r}", g == w, f"{format_scalar(g)} vs {format_scalar(w)}"))
        pos = all(all(c >= 0 for c in pps[r - 1].coeffs) for r in range(1, 9))
        items.append(Item(f"{avoid} PP_1..PP_8 positive definite", pos))
    return items


def design_items() -> list[Item]:
    items = []
    try:
        d = solve_distribution(paperdata.DESIGN_SUPPORT, paperdata.DESIGN_N, paperdata.DESIGN_STRENGTH, True)
        ok = d.as_dict() == paperdata.DESIGN_COUNTS
        items.append(Item("distribution solve", ok, "reproduces the published counts" if ok else str(d.as_dict())))
    except ValueError as exc:
        items.append(Item("distribution solve", False, str(exc)))
    items.append(Item("built-in distribution", P48.as_dict() == paperdata.DESIGN_COUNTS))

    for i in list(range(1, 12)) + [13, 14]:
        v = moment(P48, i)
        items.append(Item(f"moment M_{i} = 0", v == 0, format_scalar(v)))
    v = moment(P48, 12)
    items.append(Item("moment M_12 != 0 (computed)", v != 0, format_scalar(v)))

    q = quadrature_from(P48)
    items.append(Item("quadrature strength 11", q.degree == 11, str(q.degree)))
    items.append(Item("quadrature weights sum to 1", sum(q.weights) == 1))
    for k in range(12):
        r = quadrature_residual(q, Poly.monomial(k))
        items.append(Item(f"quadrature exact on t^{k}", r == 0, format_scalar(r)))
    r = quadrature_residual(q, Poly.monomial(12))
    items.append(Item("quadrature inexact on t^12", r != 0, format_scalar(r)))
    r = quadrature_residual(q, gegenbauer_poly(48, 14))
    items.append(Item("quadrature exact on P_14", r == 0, format_scalar(r)))

    for label, m, extra, T, want in (
        ("lower T1", LOWER_T1, (), T1, "nonnegative"),
        ("lower T2", LOWER_T2, (), T2, "nonnegative"),
        ("upper T1", UPPER_T1, (), T1, "nonpositive"),
    ):
        pat = remainder_sign(m, extra, T)
        items.append(Item(f"remainder sign {label}", pat.verdict == want, pat.verdict))
    return items


def certificate_items(precision: int) -> list[Item]:
    items = []
    for spec in paperdata.EXACT_SUITE + paperdata.FLOAT_SUITE:
        h = parse_potential(spec)
        strict = not h.exact
        for avoid in ("T1", "T2"):
            c = lower_certificate(h, avoid, precision=precision)
            bad = [k.name for k in c.checks if not k.passed]
            items.append(Item(f"lower {avoid} {spec} valid", c.valid, ", ".join(bad) or format_scalar(c.gap, 8)))
            coeffs = c.expansion.coeffs
            if avoid == "T1":
                idx = [i for i in range(1, 12) if i != 3]
                ok = all(coeffs[i] > 0 if strict else coeffs[i] >= 0 for i in idx)
                items.append(Item(f"lower T1 {spec} f_i {'>' if strict else '>='} 0 (i != 3)", ok))
            else:
                ok = all(coeffs[i] > 0 for i in range(1, 12))
                items.append(Item(f"lower T2 {spec} f_i > 0", ok))
        if h.finite_at_one:
            c = upper_certificate(h, "T1", precision=precision)
            bad = [k.name for k in c.checks if not k.passed]
            items.append(Item(f"upper T1 {spec} valid", c.valid, ", ".join(bad) or format_scalar(c.gap, 8)))
            s = sandwich_report(h, precision=precision)
            items.append(Item(f"sandwich {spec}", s.equal))
    s = sandwich_report("poly:[1]", precision=precision)
    items.append(Item("sandwich poly:[1] = N - 1", s.equal and s.energy == paperdata.DESIGN_N - 1))
    return items


def run_reproduction(precision: int = DEFAULT_PRECISION, corrupt: str | None = None) -> list[Item]:
    """Every check, in a fixed order.  ``corrupt`` ("T1:9:0") perturbs a table entry."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        items = coefficient_items(_corrupted_tables(corrupt))
        items += design_items()
    items += certificate_items(precision)
    return items
