import json
from fractions import Fraction as F

import mpmath
import pytest

from lpbound.certify import (
    ALL_CODES,
    MOMENT_EXCEPTIONS,
    BoundCertificate,
    CertificateError,
    lower_certificate,
    sandwich_report,
    upper_certificate,
    verify_certificate,
)
from lpbound.designs import P48, design_energy, quadrature_from
from lpbound.interpolate import LOWER_T1
from lpbound.potentials import parse_potential, polynomial_potential
from lpbound.ratpoly import Poly, poly_from_roots

T12 = "poly:[0,0,0,0,0,0,0,0,0,0,0,0,1]"
KEYS = ["direction", "dim", "N", "avoid", "nodes", "potential", "interpolant_coeffs",
        "gegenbauer_coeffs", "sign_exceptions", "class", "bound", "design_energy", "gap", "checks"]


@pytest.fixture(scope="module")
def riesz4_t1():
    return lower_certificate("riesz:s=4", "T1")


def test_gauss_t2_lower():
    c = lower_certificate("gauss:sigma=1", "T2")
    assert c.valid and c.klass == ALL_CODES
    assert abs(c.gap) <= mpmath.mpf(10) ** -30 * abs(c.design_energy)


def test_riesz4_t1_lower(riesz4_t1):
    c = riesz4_t1
    assert c.valid and c.klass == MOMENT_EXCEPTIONS and c.sign_exceptions == (3,)
    assert all(c.expansion.coeffs[i] > 0 for i in range(1, 12) if i != 3)
    assert c.bound == design_energy(P48, parse_potential("riesz:s=4"))
    assert c.gap == 0


def test_t12_lower_t1():
    c = lower_certificate(T12, "T1")
    h = parse_potential(T12)
    assert c.valid and c.gap == 0
    assert c.interpolant != h.poly
    assert c.interpolant == h.poly - poly_from_roots(LOWER_T1.nodes)


def test_upper_gauss_half():
    c = upper_certificate("gauss:sigma=1/2")
    assert c.valid
    assert abs(c.gap) <= mpmath.mpf(10) ** -30 * abs(c.design_energy)


def test_upper_t12_exact():
    c = upper_certificate(T12)
    assert c.valid and c.gap == 0 and c.interpolant.degree <= 11


def test_upper_rejects_riesz():
    with pytest.raises(CertificateError, match="infinite"):
        upper_certificate("riesz:s=2")


def test_lower_rejects_unclaimed_potential():
    with pytest.raises(CertificateError):
        lower_certificate(polynomial_potential(Poly([0, -1])), "T1")


def test_upper_t2_is_invalid():
    c = upper_certificate(T12, "T2")
    assert not c.valid
    assert [k.name for k in c.checks if not k.passed] == ["remainder_sign"]


def test_precision_floor():
    with pytest.raises(CertificateError):
        lower_certificate("gauss:sigma=1", "T1", precision=20)


def test_json_keys(riesz4_t1):
    js = riesz4_t1.to_json()
    assert list(js) == KEYS
    assert js["gap"] == "0"
    assert js["nodes"][:3] == ["-1", "-1", "-1/2"]


def test_bound_routes_agree_exactly():
    for spec in ("riesz:s=2", T12):
        for avoid in ("T1", "T2"):
            c = lower_certificate(spec, avoid)
            q = quadrature_from(P48)
            assert q.apply(c.interpolant) * c.N - c.interpolant(F(1)) == c.bound


def test_verify_roundtrip(riesz4_t1):
    rep = verify_certificate(json.loads(json.dumps(riesz4_t1.to_json())))
    assert rep.passed, [c for c in rep.checks if not c.passed]


def test_verify_float_roundtrip():
    c = lower_certificate("gauss:sigma=2", "T1")
    assert verify_certificate(c.to_json()).passed


def test_verify_detects_f0_tamper(riesz4_t1):
    js = riesz4_t1.to_json()
    num, den = js["gegenbauer_coeffs"][0].split("/")
    js["gegenbauer_coeffs"][0] = f"{int(num) + 1}/{den}"
    rep = verify_certificate(js)
    failed = {c.name for c in rep.checks if not c.passed}
    assert "bound_recompute" in failed and not rep.passed


def test_verify_detects_class_tamper():
    c = lower_certificate("riesz:s=4", "T1")
    js = c.to_json()
    js["class"] = ALL_CODES
    js["sign_exceptions"] = []
    js["gegenbauer_coeffs"][3] = "-1"
    rep = verify_certificate(js)
    failed = {k.name for k in rep.checks if not k.passed}
    assert "gegenbauer_signs" in failed


def test_class_all_codes_with_negative_f3():
    # PP_11 of the T1 multiset has a genuinely negative f_3
    h = polynomial_potential(poly_from_roots(LOWER_T1.nodes[:11]))
    f = h.poly
    from lpbound.certify import _sign_check
    from lpbound.gegenbauer import expand

    assert not _sign_check(expand(f, 48), ALL_CODES, (), 11, "lower").passed
    assert _sign_check(expand(f, 48), MOMENT_EXCEPTIONS, (3,), 11, "lower").passed


def test_from_json_roundtrip(riesz4_t1):
    back = BoundCertificate.from_json(riesz4_t1.to_json())
    assert back.to_json() == riesz4_t1.to_json()


def test_sandwich_values():
    s = sandwich_report(T12)
    assert s.equal and s.lower_t1 == s.lower_t2 == s.upper_t1 == s.energy
    s = sandwich_report("gauss:sigma=1")
    assert s.equal
    s = sandwich_report("poly:[1]")
    assert s.equal and s.energy == 52415999


def test_sandwich_needs_finite_at_one():
    with pytest.raises(CertificateError):
        sandwich_report("riesz:s=4")
