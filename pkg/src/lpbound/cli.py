"""lpbound command line.

Exit codes: 0 success/valid, 1 verification failure, 2 usage or input
error, 3 infeasible distribution.
"""
from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import click
import mpmath

from . import designs
from .certify import (
    DEFAULT_PRECISION,
    GUARD_DIGITS,
    MIN_PRECISION,
    CertificateError,
    lower_certificate,
    sandwich_report,
    upper_certificate,
    verify_certificate,
)
from .designs import P48, DistanceDistribution
from .gegenbauer import expand, gegenbauer_poly, gegenbauer_polys, poly_json
from .interpolate import LOWER_T1, LOWER_T2, UPPER_T1, avoid_set, partial_products
from .potentials import PotentialDomainError, PotentialSpecError, parse_potential
from .ratpoly import Poly, format_scalar, parse_rational, poly_from_roots
from .reproduce import run_reproduction

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


@dataclass
class CliConfig:
    precision_digits: int = DEFAULT_PRECISION
    output_format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.precision_digits < MIN_PRECISION:
            raise click.UsageError(f"--precision must be ≥ {MIN_PRECISION}")


def common_options(fn):
    """--precision/--format/--out, accepted both globally and per command."""

    @click.option("--precision", type=int, default=None, help="Decimal digits for float-kind potentials.")
    @click.option("--format", "fmt", type=click.Choice(["json", "table"]), default=None)
    @click.option("--out", type=click.Path(dir_okay=False), default=None)
    @click.pass_context
    @functools.wraps(fn)
    def wrapper(ctx, precision, fmt, out, **kwargs):
        base = ctx.obj or CliConfig()
        cfg = CliConfig(
            precision if precision is not None else base.precision_digits,
            fmt or base.output_format,
            out or base.out,
        )
        return fn(cfg, **kwargs)

    return wrapper


def _table(data) -> str:
    if isinstance(data, list):
        if data and isinstance(data[0], dict):
            keys = list(data[0])
            rows = [[_cell(d.get(k)) for k in keys] for d in data]
            widths = [max(len(k), *(len(r[i]) for r in rows)) for i, k in enumerate(keys)]
            lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
            lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
            return "\n".join(lines)
        return "\n".join(_cell(x) for x in data)
    if isinstance(data, dict):
        w = max((len(k) for k in data), default=0)
        return "\n".join(f"{k.ljust(w)}  {_cell(v)}" for k, v in data.items())
    return _cell(data)


def _cell(v) -> str:
    if isinstance(v, list):
        return ", ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, ensure_ascii=False)
    if v is None:
        return "-"
    return str(v)


def emit(cfg: CliConfig, data) -> None:
    text = json.dumps(data, indent=2, ensure_ascii=False) if cfg.output_format == "json" else _table(data)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _rational_list(text: str) -> list[Fraction]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if not body.strip():
        return []
    try:
        return [parse_rational(x.strip().strip('"')) for x in body.split(",")]
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _potential(spec: str):
    try:
        return parse_potential(spec)
    except PotentialSpecError as exc:
        raise click.UsageError(str(exc)) from None


def _load_distribution(path: str | None) -> DistanceDistribution:
    if path is None:
        return P48
    try:
        with open(path) as fh:
            return DistanceDistribution.from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise click.UsageError(f"cannot read distribution: {exc}") from None


@click.group()
@click.option("--precision", type=int, default=DEFAULT_PRECISION, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def main(ctx, precision, fmt, out):
    """Exact LP energy-bound certificates for T-avoiding spherical codes."""
    ctx.obj = CliConfig(precision, fmt, out)


@main.command()
@click.option("--dim", type=int, required=True)
@click.option("--max-degree", type=int, required=True)
@common_options
def gegenbauer(cfg, dim, max_degree):
    """Print P_0..P_max in the monomial basis."""
    if dim < 3:
        raise click.UsageError("dimension must be ≥ 3")
    if max_degree < 0:
        raise click.UsageError("max degree must be ≥ 0")
    polys = gegenbauer_polys(dim, max_degree)
    emit(cfg, [poly_json(dim, i, p) for i, p in enumerate(polys)])


@main.command("expand")
@click.option("--dim", type=int, default=48, show_default=True)
@click.option("--coeffs", default=None, help="Monomial coefficients, ascending: [c0,c1,...].")
@click.option("--roots", default=None, help="Expand the monic product over these roots instead.")
@common_options
def expand_cmd(cfg, dim, coeffs, roots):
    """Gegenbauer expansion of a rational polynomial."""
    if dim < 3:
        raise click.UsageError("dimension must be ≥ 3")
    if (coeffs is None) == (roots is None):
        raise click.UsageError("give exactly one of --coeffs or --roots")
    p = Poly(_rational_list(coeffs)) if coeffs is not None else poly_from_roots(_rational_list(roots))
    emit(cfg, expand(p, dim).to_json())


@main.command("partial-products")
@click.option("--avoid", required=True)
@click.option("--bound", type=click.Choice(["lower", "upper"]), default="lower", show_default=True)
@click.option("--dim", type=int, default=48, show_default=True)
@common_options
def partial_products_cmd(cfg, avoid, bound, dim):
    """Gegenbauer expansions of PP_r for the built-in node multisets."""
    try:
        T = avoid_set(avoid)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if bound == "lower":
        m = LOWER_T1 if T.name == "T1" else LOWER_T2
    else:
        if T.name != "T1":
            raise click.UsageError("upper bound nodes exist only for T1")
        m = UPPER_T1
    rows = []
    for r, e in enumerate(partial_products(m, dim), start=1):
        rows.append({"r": r, "roots": [format_scalar(t) for t in m.nodes[:r]], **e.to_json()})
    emit(cfg, rows)


@main.group()
def distribution():
    """Distance distribution tools."""


@distribution.command("solve")
@click.option("--support", required=True, help="Inner products, e.g. -1,-1/2,1/2,0.")
@click.option("--N", "N", type=int, required=True)
@click.option("--strength", type=int, required=True)
@click.option("--antipodal/--no-antipodal", default=False)
@click.option("--dim", type=int, default=48, show_default=True)
@common_options
def distribution_solve(cfg, support, N, strength, antipodal, dim):
    """Solve for A_t from the design constraints."""
    try:
        d = designs.solve_distribution(_rational_list(support), N, strength, antipodal, dim)
    except designs.DistributionInfeasible as exc:
        emit(cfg, {
            "feasible": False,
            "reason": exc.reason,
            "solution": [{"t": format_scalar(t), "A": format_scalar(a)} for t, a in sorted(exc.solution.items())],
        })
        sys.exit(EXIT_INFEASIBLE)
    except designs.SingularSystemError as exc:
        raise click.UsageError(str(exc)) from None
    emit(cfg, d.to_json())


@main.command()
@click.option("--potential", required=True)
@click.option("--distribution", "dist_path", default=None, help="Distribution JSON (default: built-in).")
@common_options
def energy(cfg, potential, dist_path):
    """Design energy sum_t A_t h(t)."""
    h = _potential(potential)
    d = _load_distribution(dist_path)
    with mpmath.workdps(cfg.precision_digits + GUARD_DIGITS):
        try:
            e = designs.design_energy(d, h)
        except PotentialDomainError as exc:
            raise click.UsageError(str(exc)) from None
        emit(cfg, {"potential": h.spec, "N": d.N, "energy": format_scalar(e, cfg.precision_digits)})


@main.command()
@click.option("--max-degree", type=int, default=14, show_default=True)
@click.option("--dim", type=int, default=48, show_default=True)
@click.option("--distribution", "dist_path", default=None)
@common_options
def moments(cfg, max_degree, dim, dist_path):
    """Per-point moments M_i / N."""
    d = _load_distribution(dist_path)
    rows = []
    for i in range(1, max_degree + 1):
        v = designs.moment(d, i, dim)
        rows.append({"i": i, "moment_over_N": format_scalar(v), "zero": v == 0})
    emit(cfg, rows)


@main.command("quadrature-check")
@click.option("--max-degree", type=int, default=14, show_default=True)
@click.option("--dim", type=int, default=48, show_default=True)
@click.option("--distribution", "dist_path", default=None)
@common_options
def quadrature_check(cfg, max_degree, dim, dist_path):
    """Quadrature residuals on t^k and P_k."""
    d = _load_distribution(dist_path)
    try:
        q = designs.quadrature_from(d, dim)
    except designs.NotADesignError as exc:
        raise click.UsageError(str(exc)) from None
    rows = []
    for k in range(max_degree + 1):
        rm = designs.quadrature_residual(q, Poly.monomial(k))
        rp = designs.quadrature_residual(q, gegenbauer_poly(dim, k))
        rows.append({"k": k, "monomial_residual": format_scalar(rm), "gegenbauer_residual": format_scalar(rp)})
    emit(cfg, {"degree": q.degree, "weight_sum": format_scalar(sum(q.weights)), "residuals": rows})


@main.command()
@click.argument("direction", type=click.Choice(["lower", "upper"]))
@click.option("--avoid", default="T1", show_default=True)
@click.option("--potential", required=True)
@common_options
def certify(cfg, direction, avoid, potential):
    """Build a certificate; exit 0 if VALID, 1 if INVALID."""
    h = _potential(potential)
    try:
        T = avoid_set(avoid)
        build = lower_certificate if direction == "lower" else upper_certificate
        cert = build(h, T, precision=cfg.precision_digits)
    except (CertificateError, ValueError) as exc:
        raise click.UsageError(str(exc)) from None
    emit(cfg, cert.to_json())
    if not cert.valid:
        sys.exit(EXIT_FAIL)


@main.command()
@click.argument("cert_path", type=click.Path(exists=True, dir_okay=False))
@common_options
def verify(cfg, cert_path):
    """Re-derive every certificate entry; exit 0 pass, 1 fail."""
    try:
        with open(cert_path) as fh:
            data = json.load(fh)
        report = verify_certificate(data, cfg.precision_digits)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise click.UsageError(f"malformed certificate: {exc}") from None
    out = report.to_json()
    emit(cfg, out if cfg.output_format == "json" else out["checks"])
    if not report.passed:
        sys.exit(EXIT_FAIL)


@main.command()
@click.option("--potential", required=True)
@common_options
def sandwich(cfg, potential):
    """Lower (T1, T2) and upper (T1) bounds against the design energy."""
    h = _potential(potential)
    try:
        rep = sandwich_report(h, cfg.precision_digits)
    except CertificateError as exc:
        raise click.UsageError(str(exc)) from None
    emit(cfg, rep.to_json(cfg.precision_digits))
    if not rep.equal:
        sys.exit(EXIT_FAIL)


@main.command("reproduce-paper")
@click.option("--corrupt-table", default=None, hidden=True, help="Test hook: AVOID:r:i entry to perturb.")
@common_options
def reproduce_paper(cfg, corrupt_table):
    """Run every built-in reproduction check and print a checklist."""
    items = run_reproduction(cfg.precision_digits, corrupt_table)
    failed = [it for it in items if not it.passed]
    if cfg.output_format == "json":
        emit(cfg, {"passed": not failed, "items": [it.to_json() for it in items]})
    else:
        lines = [f"[{'PASS' if it.passed else 'FAIL'}] {it.name}" + (f"  ({it.detail})" if it.detail and not it.passed else "") for it in items]
        lines.append(f"{len(items) - len(failed)}/{len(items)} passed")
        text = "\n".join(lines)
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text + "\n")
        else:
            click.echo(text)
    if failed:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()
