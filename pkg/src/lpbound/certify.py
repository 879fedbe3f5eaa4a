"""Lower and upper LP energy-bound certificates for the 48-dimensional design.

A certificate stores raw inputs (potential spec, nodes, avoid set) next
to every derived quantity so that :func:`verify_certificate` can rebuild
and compare each of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import mpmath

from .designs import P48, DistanceDistribution, design_energy, quadrature_from
from .gegenbauer import GegenbauerExpansion, expand, sign_report
from .interpolate import (
    LOWER_T1,
    LOWER_T2,
    UPPER_T1,
    AvoidSet,
    NodeMultiset,
    avoid_set,
    hermite_interpolant,
    remainder_sign,
)
from .potentials import Potential, PotentialDomainError, eval_potential, parse_potential
from .ratpoly import Poly, format_scalar, parse_rational, parse_scalar, to_mpf

DEFAULT_PRECISION = 50
MIN_PRECISION = 30
GUARD_DIGITS = 20
DIM = 48
N48 = 52_416_000

ALL_CODES = "ALL_CODES"
DESIGN_TAU = "DESIGN_TAU"
MOMENT_EXCEPTIONS = "MOMENT_EXCEPTIONS"
UPPER_ALL_CODES = "UPPER_ALL_CODES"
CLASSES = (ALL_CODES, DESIGN_TAU, MOMENT_EXCEPTIONS, UPPER_ALL_CODES)

EXCEPT_THREE = frozenset({3})  # antipodal codes or 3-designs: M_3 = 0


def odd_indices(degree: int) -> frozenset:
    """Exception preset for antipodal codes, where all odd moments vanish."""
    return frozenset(range(1, degree + 1, 2))


class CertificateError(ValueError):
    """Potential or parameters rejected before a certificate is built."""


@dataclass(frozen=True)
class AdmissibilityClass:
    name: str
    exceptions: frozenset = frozenset()
    tau: int | None = None

    def __post_init__(self):
        if self.name not in CLASSES:
            raise ValueError(f"unknown admissibility class {self.name!r}")

    @property
    def narrative(self) -> str:
        if self.name == MOMENT_EXCEPTIONS and self.exceptions == EXCEPT_THREE:
            return "codes with M_3 = 0 (antipodal or spherical 3-design)"
        if self.name == MOMENT_EXCEPTIONS:
            return f"codes with M_i = 0 for i in {sorted(self.exceptions)}"
        if self.name == ALL_CODES:
            return "all codes"
        if self.name == DESIGN_TAU:
            return f"spherical {self.tau}-designs"
        return "all codes (upper)"


def tolerances(precision: int) -> dict:
    """Float-kind tolerances; 1e-30 / 1e-25 / 1e-20 at 50 digits."""
    return {
        "gap": mpmath.mpf(10) ** (-round(0.6 * precision)),
        "value": mpmath.mpf(10) ** (-round(0.5 * precision)),
        "curvature": mpmath.mpf(10) ** (-round(0.4 * precision)),
    }


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class BoundCertificate:
    direction: str
    dim: int
    N: int
    avoid: str
    nodes: tuple
    potential: str
    interpolant: Poly
    expansion: GegenbauerExpansion
    sign_exceptions: tuple
    klass: str
    bound: object
    design_energy: object
    gap: object
    checks: list = field(default_factory=list)
    precision: int = DEFAULT_PRECISION

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exact(self) -> bool:
        return not self.interpolant.is_float

    def to_json(self) -> dict:
        fmt = lambda x: None if x is None else format_scalar(x, self.precision)
        return {
            "direction": self.direction,
            "dim": self.dim,
            "N": self.N,
            "avoid": self.avoid,
            "nodes": [format_scalar(t) for t in self.nodes],
            "potential": self.potential,
            "interpolant_coeffs": [fmt(c) for c in self.interpolant.coeffs],
            "gegenbauer_coeffs": [fmt(c) for c in self.expansion.coeffs],
            "sign_exceptions": sorted(self.sign_exceptions),
            "class": self.klass,
            "bound": fmt(self.bound),
            "design_energy": fmt(self.design_energy),
            "gap": fmt(self.gap),
            "checks": [c.to_json() for c in self.checks],
        }

    @classmethod
    def from_json(cls, data: dict, precision: int = DEFAULT_PRECISION) -> "BoundCertificate":
        with mpmath.workdps(precision + GUARD_DIGITS):
            opt = lambda x: None if x is None else parse_scalar(x)
            interp = Poly(parse_scalar(c) for c in data["interpolant_coeffs"])
            exp = GegenbauerExpansion(
                int(data["dim"]), tuple(parse_scalar(c) for c in data["gegenbauer_coeffs"])
            )
            return cls(
                direction=data["direction"],
                dim=int(data["dim"]),
                N=int(data["N"]),
                avoid=data["avoid"],
                nodes=tuple(parse_rational(t) for t in data["nodes"]),
                potential=data["potential"],
                interpolant=interp,
                expansion=exp,
                sign_exceptions=tuple(int(i) for i in data["sign_exceptions"]),
                klass=data["class"],
                bound=opt(data["bound"]),
                design_energy=opt(data["design_energy"]),
                gap=opt(data["gap"]),
                checks=[Check(c["name"], bool(c["passed"]), c.get("detail", "")) for c in data["checks"]],
                precision=precision,
            )


def _close(a, b, tol, scale=None) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    a, b = to_mpf(a), to_mpf(b)
    if scale is None:
        scale = max(abs(a), abs(b), mpmath.mpf(1))
    return abs(a - b) <= tol * scale


def _sample_grid(pieces, per_piece: int, open_right_at_one: bool) -> list[Fraction]:
    pts = []
    for a, b in pieces:
        if a == b:
            pts.append(a)
            continue
        for j in range(per_piece + 1):
            t = a + (b - a) * Fraction(j, per_piece)
            if open_right_at_one and t == 1:
                t = 1 - (b - a) / (4 * per_piece)
            pts.append(t)
    return pts


def _interpolation_check(h: Potential, f: Poly, m: NodeMultiset, tol) -> Check:
    worst, bad = mpmath.mpf(0), []
    for node, mult in m.distinct():
        p = f
        for j in range(mult):
            hv = eval_potential(h, node, j)
            fv = p(node)
            if not _close(fv, hv, tol):
                bad.append(f"order {j} at {node}")
            elif not isinstance(fv, Fraction) or not isinstance(hv, Fraction):
                diff = abs(to_mpf(fv) - to_mpf(hv))
                worst = max(worst, diff)
            p = p.derivative()
    if bad:
        return Check("interpolation_conditions", False, "violated: " + "; ".join(bad))
    detail = "exact" if not f.is_float else f"max residual {mpmath.nstr(worst, 5)}"
    return Check("interpolation_conditions", True, detail)


def _margin_check(h: Potential, f: Poly, m: NodeMultiset, T: AvoidSet, direction: str, tol: dict) -> Check:
    """Float-kind sampling of the one-sided inequality with tangency slack at double nodes."""
    sgn = 1 if direction == "lower" else -1  # lower: h - f >= 0, upper: f - h >= 0
    pieces = T.complement()
    grid = _sample_grid(pieces, 64, not h.finite_at_one)
    grid += [t for t in m.nodes if h.finite_at_one or t != 1]
    worst = None
    for t in grid:
        v = sgn * (to_mpf(eval_potential(h, t)) - to_mpf(f(t)))
        worst = v if worst is None else min(worst, v)
        if v < -tol["value"]:
            return Check("tangency_margin", False, f"h - f violates the margin at t = {t}")
    f2 = f.derivative().derivative()
    for node, mult in m.distinct():
        if mult >= 2 and (h.finite_at_one or node != 1):
            c = sgn * (to_mpf(eval_potential(h, node, 2)) - to_mpf(f2(node)))
            if c < -tol["curvature"]:
                return Check("tangency_margin", False, f"curvature margin violated at double node {node}")
    return Check("tangency_margin", True, f"{len(grid)} samples, min {mpmath.nstr(worst, 5)}")


def _sign_check(e: GegenbauerExpansion, klass: str, exceptions: Iterable[int], tau: int | None, direction: str) -> Check:
    if klass == DESIGN_TAU:
        ok = e.degree <= tau
        return Check("gegenbauer_signs", ok, f"degree {e.degree} <= tau = {tau}" if ok else f"degree {e.degree} > tau = {tau}")
    if direction == "upper":
        # g_i <= 0 for i >= 1
        pos = [i for i, c in enumerate(e.coeffs) if i >= 1 and c > 0]
        return Check("gegenbauer_signs", not pos, f"positive indices {pos}" if pos else "all g_i <= 0")
    exc = exceptions if klass == MOMENT_EXCEPTIONS else ()
    rep = sign_report(e, exc)
    if rep.admissible:
        det = "all f_i >= 0 for i >= 1"
        if exc:
            det += f" outside exceptions {sorted(exc)} (signs there not asserted)"
        return Check("gegenbauer_signs", True, det)
    bad = [i for i in rep.negative if i not in rep.exceptions]
    return Check("gegenbauer_signs", False, f"negative coefficients at {bad}")


def _nodes_for(direction: str, T: AvoidSet) -> NodeMultiset:
    if direction == "lower":
        return LOWER_T1 if T.name == "T1" else LOWER_T2
    return UPPER_T1


def _class_for(direction: str, T: AvoidSet) -> tuple[str, frozenset]:
    if direction == "upper":
        return DESIGN_TAU, frozenset()
    if T.name == "T1":
        return MOMENT_EXCEPTIONS, EXCEPT_THREE
    return ALL_CODES, frozenset()


def _parse(h: Potential | str) -> Potential:
    return parse_potential(h) if isinstance(h, str) else h


def _build(
    direction: str,
    h: Potential,
    T: AvoidSet,
    n: int,
    N: int,
    precision: int,
    distribution: DistanceDistribution,
) -> BoundCertificate:
    if precision < MIN_PRECISION:
        raise CertificateError(f"precision must be >= {MIN_PRECISION} digits")
    tol = tolerances(precision)
    m = _nodes_for(direction, T)
    klass, exceptions = _class_for(direction, T)
    checks = []
    with mpmath.workdps(precision + GUARD_DIGITS):
        if direction == "lower":
            ok = h.claims_abs_monotone or h.claims_positive_12th
            checks.append(Check("potential_preconditions", ok, "absolutely monotone or h^(12) > 0 claimed" if ok else "no monotonicity claim"))
        else:
            ok = h.claims_abs_monotone or h.claims_positive_12th
            checks.append(Check("potential_preconditions", ok, "finite at 1, h^(12) >= 0 claimed" if ok else "no h^(12) >= 0 claim"))

        f = hermite_interpolant(h, m)
        checks.append(_interpolation_check(h, f, m, tol["gap"]))

        pattern = remainder_sign(m, (), T)
        want = "nonnegative" if direction == "lower" else "nonpositive"
        checks.append(Check("remainder_sign", pattern.verdict == want, f"{pattern.verdict} on [-1,1] \\ {T.name}"))

        if f.is_float:
            checks.append(_margin_check(h, f, m, T, direction, tol))

        e = expand(f, n)
        rule = quadrature_from(distribution, n)
        checks.append(_sign_check(e, klass, exceptions, rule.degree, direction))

        f1 = f(Fraction(1))
        bound = e.f0 * N - f1 if not f.is_float else to_mpf(e.f0) * N - to_mpf(f1)
        if f.degree <= rule.degree:
            via_rule = rule.apply(f)
            via_rule = via_rule * N - f1 if not f.is_float else to_mpf(via_rule) * N - to_mpf(f1)
            checks.append(Check("bound_routes_agree", _close(bound, via_rule, tol["gap"]), "f_0 N - f(1) vs quadrature sum"))
        else:
            checks.append(Check("bound_routes_agree", False, f"degree {f.degree} exceeds rule strength {rule.degree}"))

        try:
            energy = design_energy(distribution, h)
        except PotentialDomainError:
            energy = None
        if energy is None:
            gap = None
            checks.append(Check("equality_with_design_energy", True, "skipped: potential infinite at an abscissa"))
        else:
            if isinstance(bound, Fraction) and isinstance(energy, Fraction):
                gap = bound - energy
                checks.append(Check("equality_with_design_energy", gap == 0, "exact gap " + format_scalar(gap)))
            else:
                gap = to_mpf(bound) - to_mpf(energy)
                rel = abs(gap) / max(abs(to_mpf(energy)), mpmath.mpf(1))
                checks.append(Check("equality_with_design_energy", rel <= tol["gap"], f"relative gap {mpmath.nstr(rel, 5)}"))

        return BoundCertificate(
            direction=direction,
            dim=n,
            N=N,
            avoid=T.name,
            nodes=m.nodes,
            potential=h.spec,
            interpolant=f,
            expansion=e,
            sign_exceptions=tuple(sorted(exceptions)),
            klass=klass,
            bound=bound,
            design_energy=energy,
            gap=gap,
            checks=checks,
            precision=precision,
        )


def lower_certificate(
    h: Potential | str,
    T: AvoidSet | str,
    n: int = DIM,
    N: int = N48,
    precision: int = DEFAULT_PRECISION,
    distribution: DistanceDistribution = P48,
) -> BoundCertificate:
    h = _parse(h)
    T = avoid_set(T) if isinstance(T, str) else T
    if not (h.claims_abs_monotone or h.claims_positive_12th):
        raise CertificateError(f"{h.spec}: lower bound needs an absolutely monotone potential")
    return _build("lower", h, T, n, N, precision, distribution)


def upper_certificate(
    h: Potential | str,
    T: AvoidSet | str = "T1",
    n: int = DIM,
    N: int = N48,
    precision: int = DEFAULT_PRECISION,
    distribution: DistanceDistribution = P48,
) -> BoundCertificate:
    h = _parse(h)
    T = avoid_set(T) if isinstance(T, str) else T
    if not h.finite_at_one:
        raise CertificateError(f"{h.spec} is infinite at t = 1; upper bound needs h finite at 1")
    if not (h.claims_abs_monotone or h.claims_positive_12th):
        raise CertificateError(f"{h.spec}: upper bound needs h^(12) >= 0")
    return _build("upper", h, T, n, N, precision, distribution)


@dataclass
class VerificationReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _seq_close(xs, ys, tol) -> bool:
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        return False
    return all(_close(a, b, tol) for a, b in zip(xs, ys))


def verify_certificate(cert: BoundCertificate | dict, precision: int = DEFAULT_PRECISION) -> VerificationReport:
    """Recompute every quantity from the stored raw inputs and compare."""
    if isinstance(cert, dict):
        cert = BoundCertificate.from_json(cert, precision)
    tol = tolerances(precision)
    checks: list[Check] = []
    add = lambda name, ok, detail="": checks.append(Check(name, bool(ok), detail))

    try:
        h = parse_potential(cert.potential)
        T = avoid_set(cert.avoid)
    except ValueError as exc:
        add("inputs", False, str(exc))
        return VerificationReport(checks)
    if cert.direction not in ("lower", "upper"):
        add("inputs", False, f"unknown direction {cert.direction!r}")
        return VerificationReport(checks)
    add("inputs", True, f"{cert.direction} {cert.avoid} {cert.potential}")

    with mpmath.workdps(precision + GUARD_DIGITS):
        m = _nodes_for(cert.direction, T)
        add("nodes", tuple(cert.nodes) == m.nodes, "stored nodes match the built-in multiset")

        if cert.klass not in CLASSES:
            add("class", False, f"unknown class {cert.klass!r}")
            klass = None
        else:
            klass = cert.klass

        f = cert.interpolant
        fresh = hermite_interpolant(h, m)
        add("interpolant_rederived", _seq_close(f.coeffs, fresh.coeffs, tol["gap"]), "stored vs recomputed Newton form")
        checks.append(_interpolation_check(h, f, m, tol["gap"]))

        pattern = remainder_sign(m, (), T)
        want = "nonnegative" if cert.direction == "lower" else "nonpositive"
        add("remainder_sign", pattern.verdict == want, f"{pattern.verdict} on [-1,1] \\ {T.name}")
        if f.is_float:
            checks.append(_margin_check(h, f, m, T, cert.direction, tol))

        e_stored = cert.expansion
        e_fresh = expand(f, cert.dim)
        add("gegenbauer_rederived", _seq_close(e_stored.coeffs, e_fresh.coeffs, tol["gap"]), "stored vs re-expanded coefficients")

        rule = quadrature_from(P48, cert.dim)
        if klass is not None:
            checks.append(_sign_check(e_stored, klass, cert.sign_exceptions, rule.degree, cert.direction))

        f1 = f(Fraction(1))
        N = cert.N
        if f.is_float or any(isinstance(c, mpmath.mpf) for c in e_stored.coeffs):
            bound = to_mpf(e_stored.f0) * N - to_mpf(f1)
        else:
            bound = e_stored.f0 * N - f1
        ok = cert.bound is not None and _close(bound, cert.bound, tol["gap"])
        add("bound_recompute", ok, "stored f_0 N - f(1) vs stored bound")

        via_rule = rule.apply(f)
        via_rule = via_rule * N - f1 if not f.is_float else to_mpf(via_rule) * N - to_mpf(f1)
        ok = f.degree <= rule.degree and cert.bound is not None and _close(via_rule, cert.bound, tol["gap"])
        add("bound_quadrature", ok, "quadrature route vs stored bound")

        try:
            energy = design_energy(P48, h)
        except PotentialDomainError:
            energy = None
        if energy is None:
            add("design_energy", cert.design_energy is None, "potential infinite at an abscissa")
        else:
            ok = cert.design_energy is not None and _close(energy, cert.design_energy, tol["gap"])
            add("design_energy", ok, "recomputed design energy vs stored")
            if cert.bound is not None and cert.gap is not None:
                if isinstance(cert.bound, Fraction) and isinstance(energy, Fraction):
                    gap = cert.bound - energy
                    add("gap", gap == 0 and cert.gap == gap, "exact gap " + format_scalar(gap))
                else:
                    gap = to_mpf(cert.bound) - to_mpf(energy)
                    scale = max(abs(to_mpf(energy)), mpmath.mpf(1))
                    ok = abs(gap) <= tol["gap"] * scale and abs(to_mpf(cert.gap) - gap) <= tol["gap"] * scale
                    add("gap", ok, f"relative gap {mpmath.nstr(abs(gap) / scale, 5)}")
            else:
                add("gap", False, "missing bound or gap")
    return VerificationReport(checks)


@dataclass
class SandwichReport:
    potential: str
    lower_t1: object
    lower_t2: object
    upper_t1: object
    energy: object
    equal: bool
    certificates: list

    def to_json(self, precision: int = DEFAULT_PRECISION) -> dict:
        fmt = lambda x: None if x is None else format_scalar(x, precision)
        return {
            "potential": self.potential,
            "lower_T1": fmt(self.lower_t1),
            "lower_T2": fmt(self.lower_t2),
            "upper_T1": fmt(self.upper_t1),
            "design_energy": fmt(self.energy),
            "equal": self.equal,
            "valid": all(c.valid for c in self.certificates),
        }


def sandwich_report(h: Potential | str, precision: int = DEFAULT_PRECISION) -> SandwichReport:
    """Lower (T1, T2), upper (T1) bounds and the design energy side by side."""
    h = _parse(h)
    if not h.finite_at_one:
        raise CertificateError(f"{h.spec} is infinite at t = 1; sandwich needs an upper bound")
    tol = tolerances(precision)
    lo1 = lower_certificate(h, "T1", precision=precision)
    lo2 = lower_certificate(h, "T2", precision=precision)
    up = upper_certificate(h, "T1", precision=precision)
    energy = lo1.design_energy
    vals = [lo1.bound, lo2.bound, up.bound]
    with mpmath.workdps(precision + GUARD_DIGITS):
        equal = energy is not None and all(_close(v, energy, tol["gap"]) for v in vals)
    return SandwichReport(h.spec, lo1.bound, lo2.bound, up.bound, energy, equal, [lo1, lo2, up])

