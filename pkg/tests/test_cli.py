import json

import pytest
from click.testing import CliRunner

from lpbound.cli import main

T12 = "poly:[0,0,0,0,0,0,0,0,0,0,0,0,1]"


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def test_gegenbauer(runner):
    res = run(runner, "gegenbauer", "--dim", "48", "--max-degree", "2")
    rows = json.loads(res.output)
    assert res.exit_code == 0
    assert rows[2] == {"dim": 48, "degree": 2, "coeffs": ["-1/47", "0", "48/47"]}


def test_gegenbauer_degree_zero(runner):
    rows = json.loads(run(runner, "gegenbauer", "--dim", "48", "--max-degree", "0").output)
    assert rows == [{"dim": 48, "degree": 0, "coeffs": ["1"]}]


def test_gegenbauer_bad_dim(runner):
    res = run(runner, "gegenbauer", "--dim", "2", "--max-degree", "3")
    assert res.exit_code == 2 and "dimension must be ≥ 3" in res.output


def test_expand(runner):
    res = run(runner, "expand", "--dim", "48", "--coeffs", "[0,0,1]")
    assert json.loads(res.output)["gegenbauer"] == ["1/48", "0", "47/48"]
    res = run(runner, "expand", "--roots", "-1,-1")
    # (t + 1)^2 = 1 + 2t + t^2 and t^2 = 1/48 + (47/48) P_2
    assert json.loads(res.output)["gegenbauer"] == ["49/48", "2", "47/48"]


def test_partial_products(runner):
    rows = json.loads(run(runner, "partial-products", "--avoid", "T1", "--bound", "lower").output)
    assert len(rows) == 11
    assert rows[9]["gegenbauer"][10] == "3260719/7364608"
    rows = json.loads(run(runner, "partial-products", "--avoid", "T2", "--bound", "lower").output)
    assert rows[8]["gegenbauer"][0] == "7903/40435200"


def test_partial_products_unknown_avoid(runner):
    assert run(runner, "partial-products", "--avoid", "T3", "--bound", "lower").exit_code == 2


def test_distribution_solve(runner):
    sup = "-1,-1/2,1/2,-1/3,1/3,-1/6,1/6,0"
    res = run(runner, "distribution", "solve", "--support", sup, "--N", "52416000", "--strength", "11", "--antipodal")
    data = json.loads(res.output)
    assert res.exit_code == 0
    assert {e["t"]: e["A"] for e in data["entries"]}["0"] == 23766960
    res = run(runner, "distribution", "solve", "--support", sup, "--N", "1000", "--strength", "11", "--antipodal")
    assert res.exit_code == 3


def test_energy_moments_quadrature(runner):
    res = run(runner, "energy", "--potential", "poly:[1]")
    assert json.loads(res.output)["energy"] == "52415999"
    rows = json.loads(run(runner, "moments").output)
    assert [r["i"] for r in rows if not r["zero"]] == [12]
    data = json.loads(run(runner, "quadrature-check", "--max-degree", "12").output)
    assert data["degree"] == 11 and data["weight_sum"] == "1"
    assert data["residuals"][12]["monomial_residual"] != "0"


def test_energy_with_distribution_file(runner, tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"N": 2, "antipodal": True, "entries": [{"t": "-1", "A": 1}]}))
    res = run(runner, "energy", "--potential", "riesz:s=2", "--distribution", str(p))
    assert json.loads(res.output)["energy"] == "1/4"


def test_certify_and_verify(runner, tmp_path):
    out = tmp_path / "c.json"
    res = run(runner, "certify", "lower", "--avoid", "T2", "--potential", "riesz:s=4", "--out", str(out))
    assert res.exit_code == 0
    cert = json.loads(out.read_text())
    assert cert["gap"] == "0"
    assert run(runner, "verify", str(out)).exit_code == 0

    cert["bound"] = "1" + cert["bound"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    assert run(runner, "verify", str(bad)).exit_code == 1

    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(runner, "verify", str(junk)).exit_code == 2


def test_certify_t12(runner):
    res = run(runner, "certify", "lower", "--avoid", "T1", "--potential", T12)
    assert res.exit_code == 0 and json.loads(res.output)["gap"] == "0"


def test_certify_upper_riesz_rejected(runner):
    assert run(runner, "certify", "upper", "--avoid", "T1", "--potential", "riesz:s=2").exit_code == 2


def test_certify_upper_t2_invalid(runner):
    assert run(runner, "certify", "upper", "--avoid", "T2", "--potential", T12).exit_code == 1


@pytest.mark.parametrize("spec", ["nope", "riesz:s=1.5", "poly:[1,a]"])
def test_bad_potential(runner, spec):
    assert run(runner, "certify", "lower", "--potential", spec).exit_code == 2


def test_precision_floor(runner):
    assert run(runner, "--precision", "20", "moments").exit_code == 2


def test_sandwich(runner):
    data = json.loads(run(runner, "sandwich", "--potential", "gauss:sigma=1").output)
    assert data["equal"] and data["valid"]


def test_table_format(runner):
    res = run(runner, "--format", "table", "gegenbauer", "--dim", "48", "--max-degree", "1")
    assert res.output.splitlines()[0].split() == ["dim", "degree", "coeffs"]


def test_deterministic_output(runner):
    a = run(runner, "certify", "lower", "--potential", "gauss:sigma=1").output
    b = run(runner, "certify", "lower", "--potential", "gauss:sigma=1").output
    assert a == b


def test_reproduce_paper(runner):
    res = run(runner, "reproduce-paper")
    data = json.loads(res.output)
    assert res.exit_code == 0 and data["passed"]
    assert sum(1 for it in data["items"] if it["item"].startswith(("T1 g_", "T2 g_"))) == 66


def test_reproduce_paper_low_precision(runner):
    assert run(runner, "reproduce-paper", "--precision", "30").exit_code == 0


def test_reproduce_paper_corrupted(runner):
    res = run(runner, "--format", "table", "reproduce-paper", "--corrupt-table", "T2:10:4")
    assert res.exit_code == 1
    assert "[FAIL] T2 g_4,10" in res.output
