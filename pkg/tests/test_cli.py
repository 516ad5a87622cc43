import json

import pytest

from hlorentz.cli import EXIT_OK, EXIT_USAGE, main
from hlorentz.utils.exactalg import ONE


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_matrices_json(capsys):
    code, out = run(capsys, "matrices", "rh", "--format", "json")
    assert code == EXIT_OK
    payloads = json.loads(out)
    assert len(payloads) == 1
    assert payloads[0]["deformation"] is None
    assert len(payloads[0]["entries"]) == 16


def test_matrices_per_deformation(capsys):
    code, out = run(capsys, "matrices", "r3", "--format", "json")
    assert code == EXIT_OK
    assert [p["deformation"] for p in json.loads(out)] == [1, 2]


def test_unknown_matrix(capsys):
    assert main(["matrices", "nope"]) == EXIT_USAGE


def test_unknown_suite(capsys):
    assert main(["check", "nope"]) == EXIT_USAGE


def test_bad_rational(capsys):
    assert main(["matrices", "rh", "--h", "abc"]) == EXIT_USAGE


def test_bad_deformation(capsys):
    assert main(["matrices", "r3", "-d", "3"]) == EXIT_USAGE


def test_projectors_pass(capsys):
    code, out = run(capsys, "check", "projectors")
    assert code == EXIT_OK
    assert "projectors: PASS" in out


def test_appendix_json(capsys):
    code, out = run(capsys, "check", "exchange-appendix", "-d", "1", "--format", "json")
    assert code == EXIT_OK
    results = json.loads(out)
    assert len(results) == 1
    assert results[0]["pass"] is True
    assert results[0]["checks"][0]["witness"] == "256/256 entries equal"


def test_planewave_order_zero(capsys):
    assert main(["check", "planewave", "--order", "0"]) == EXIT_USAGE


def test_repn_rejects_zero_h(capsys):
    assert main(["check", "repn", "--h", "0"]) == EXIT_USAGE


def test_out_file(capsys, tmp_path):
    path = tmp_path / "report.txt"
    code, out = run(capsys, "check", "projectors", "--out", str(path))
    assert code == EXIT_OK
    assert path.read_text(encoding="utf-8") == out


def test_gamma_delta_undeformed(capsys):
    code, out = run(capsys, "matrices", "gamma-delta", "-d", "2", "--h", "0", "--format", "json")
    assert code == EXIT_OK
    entries = json.loads(out)[0]["entries"]
    one = ONE.canonical()
    assert entries[7] == one
    assert entries[8] == one
    assert sum(e == one for e in entries) == 2


def test_text_is_deterministic(capsys):
    _, first = run(capsys, "check", "frt", "-d", "2")
    _, second = run(capsys, "check", "frt", "-d", "2")
    assert first == second


@pytest.mark.slow
def test_repn_reports_note(capsys):
    code, out = run(capsys, "check", "repn", "--format", "json")
    assert code == EXIT_OK
    result = json.loads(out)[0]
    assert result["pass"] is True
    assert result["notes"][0]["name"] == "closed-form-alpha"
    assert result["notes"][0]["pass"] is False


def test_check_specialized(capsys):
    code, out = run(capsys, "check", "frt", "--h", "1/2", "--r", "1/2", "-d", "1")
    assert code == EXIT_OK
    assert "frt j1: PASS" in out


def test_matrices_specialized(capsys):
    code, out = run(capsys, "matrices", "rh", "--h", "2/4", "--format", "json")
    assert code == EXIT_OK
    entries = json.loads(out)[0]["entries"]
    assert all("h" not in e for e in entries)


def test_zero_denominator_flags(capsys):
    assert main(["matrices", "r3", "--h", "1/0"]) == EXIT_USAGE
    assert main(["check", "repn", "--zeta", "1/0"]) == EXIT_USAGE
