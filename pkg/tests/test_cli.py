import json

import pytest

from oddrank.cli import RunConfig, format_series, main, parse_eta_quotient
from oddrank.series import QSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_pentagonal(capsys):
    code, out, _ = run(capsys, "expand", "--expr", "P(1;1)", "--prec", "8")
    assert code == 0
    assert out.splitlines()[0] == "1*q^0, -1*q^1, -1*q^2, 1*q^5, 1*q^7"
    assert out.splitlines()[-1] == "+ O(q^8)"
    code, out, _ = run(capsys, "expand", "--expr", "P(1;1)", "--prec", "8", "--json")
    assert json.loads(out)["coefficients"] == [1, -1, -1, 0, 0, 1, 0, 1]


def test_expand_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("ODDRANK_PREC", "5")
    code, out, _ = run(capsys, "expand", "--expr", "eta(50)/eta(2)")
    assert code == 0 and out.strip().endswith("O(q^5)")


def test_verify_t2(capsys):
    code, out, _ = run(capsys, "verify", "--id", "T2", "--prec", "60")
    assert code == 0 and "pass" in out


def test_verify_json_schema_and_out(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--id", "BR2", "--prec", "100", "--json", "--out", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["reports"][0]["name"] == "BR2"
    assert json.loads(path.read_text()) == doc


def test_congruence_commands(capsys):
    assert run(capsys, "congruence", "--alpha", "1", "--count", "5", "--via", "oracle")[0] == 0
    assert run(capsys, "congruence", "--alpha", "3", "--count", "30")[0] == 0
    code, _, err = run(capsys, "congruence", "--alpha", "3", "--count", "2", "--via", "oracle")
    assert code == 3 and "budget" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "17", "--modulus", "5", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["counts"]["1"] == doc["counts"]["2"] == 20
    code, out, _ = run(capsys, "oracle", "--n", "3")
    assert "total 3" in out


def test_arrays(capsys):
    code, out, _ = run(capsys, "arrays", "--family", "a00", "--k", "-5..10", "--n", "0..12", "--valuations")
    assert code == 0 and out.strip().endswith("all bounds hold")
    code, out, _ = run(capsys, "arrays", "--family", "c", "--alpha", "4", "--valuations", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]


def test_cusps(capsys):
    code, out, _ = run(capsys, "cusps", "--eta", "eta(5)^2*eta(10)^2/(eta(1)^2*eta(2)^2)", "--level", "10", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["modular"] and doc["orders"] == {"1": "-1", "2": "-1", "5": "1", "10": "1"}
    assert doc["total_order"] == "0"


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "verify")[0] == 1
    assert run(capsys, "verify", "--id", "NOPE")[0] == 1
    assert run(capsys, "expand", "--expr", "eta(2)")[0] == 1
    assert run(capsys, "expand", "--expr", "P(1;", "--prec", "3")[0] == 1
    assert run(capsys, "expand", "--expr", "q", "--prec", "0")[0] == 1
    assert run(capsys, "cusps", "--eta", "P(1;1)", "--level", "10")[0] == 1
    assert run(capsys, "cusps", "--eta", "eta(3)", "--level", "10")[0] == 1


def test_verification_failure_exit_code(capsys, monkeypatch):
    from oddrank import identities

    real = identities.verify
    monkeypatch.setattr(identities, "verify", lambda name, prec=None: real(name, prec, perturb=(3, 1)))
    assert run(capsys, "verify", "--id", "BR1", "--prec", "50")[0] == 2


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1", "--only", "7")
    assert code == 0 and out.count("[PASS]") == 2


def test_helpers():
    assert parse_eta_quotient("eta(1)^-2*eta(5)^2").pairs == {1: -2, 5: 2}
    s = QSeries(list(range(1, 13)), 0)
    lines = format_series(s).splitlines()
    assert len(lines) == 3 and lines[0].count("*q^") == 10
    with pytest.raises(ValueError):
        RunConfig("expand", precision=0)
