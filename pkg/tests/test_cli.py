import csv
import io
import json
import subprocess
import sys

import pytest

from level17.cli import main
from oracles import z_divisor_sum


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_expand_z_matches_divisor_sums(capsys):
    code, out = run(capsys, "expand", "z", "--order", "40")
    assert code == 0
    data = json.loads(out.out)
    assert [int(c) for c in data["coeffs"]] == z_divisor_sum(40)


def test_unknown_series_is_usage_error(capsys):
    code, out = run(capsys, "expand", "nope")
    assert code == 2 and "unknown series" in out.err


def test_bad_order_is_usage_error(capsys):
    code, _ = run(capsys, "verify", "w-quartic", "--order", "3")
    assert code == 2


def test_bad_digits_is_usage_error(capsys):
    code, _ = run(capsys, "pi", "verify", "--digits", "0")
    assert code == 2


def test_identity_pass(capsys):
    code, out = run(capsys, "verify", "w-quartic", "--order", "60")
    assert code == 0 and json.loads(out.out)["status"] == "PASS"


def test_sturm_check_reports_insufficient_order(capsys):
    code, out = run(capsys, "verify", "x-r-quadratic", "--order", "10")
    assert code == 1
    assert json.loads(out.out)["status"] == "INSUFFICIENT_ORDER"


def test_ode_needs_30_terms(capsys):
    code, out = run(capsys, "verify", "z-ode", "--order", "20")
    assert code == 1 and json.loads(out.out)["status"] == "INSUFFICIENT_ORDER"
    code, out = run(capsys, "verify", "z-ode", "--order", "40")
    assert code == 0


def test_coeffs_csv(capsys):
    code, out = run(capsys, "coeffs", "--count", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert rows[0]["A"].split() == ["2", "6", "66", "774", "10434"]


def test_pi_row_at_50_digits(capsys):
    code, out = run(capsys, "--row", "1", "pi", "verify", "--digits", "50")
    assert code == 0
    data = json.loads(out.out)
    row = data[0] if isinstance(data, list) else data
    assert row["status"] == "PASS" and float(row["agreement_digits"]) >= 50


def test_row_out_of_range(capsys):
    code, _ = run(capsys, "--row", "99", "pi", "verify")
    assert code == 2


def test_text_format(capsys):
    code, out = run(capsys, "modeq", "verify", "-n", "3", "--format", "text")
    assert code == 0 and out.out.startswith("PASS")


def test_singular_eval(capsys):
    code, out = run(capsys, "singular", "eval", "--form", "17,-17,7", "--digits", "25")
    assert code == 0
    assert abs(float(json.loads(out.out)["re"]) + 1 / 21) < 1e-15


def test_singular_bad_form(capsys):
    code, _ = run(capsys, "singular", "eval", "--form", "1,5,1")
    assert code == 2


def test_env_digits_override(capsys, monkeypatch):
    monkeypatch.setenv("LEVEL17_DIGITS", "40")
    code, out = run(capsys, "--row", "8", "pi", "verify")
    data = json.loads(out.out)
    row = data[0] if isinstance(data, list) else data
    assert code == 0 and int(row["digits"]) == 40
    code, out = run(capsys, "--row", "8", "pi", "verify", "--digits", "20")
    data = json.loads(out.out)
    row = data[0] if isinstance(data, list) else data
    assert int(row["digits"]) == 20


def test_env_digits_invalid(capsys, monkeypatch):
    monkeypatch.setenv("LEVEL17_DIGITS", "many")
    code, _ = run(capsys, "pi", "verify")
    assert code == 2


@pytest.mark.slow
def test_verify_all_subprocess():
    p = subprocess.run([sys.executable, "-m", "level17.cli", "verify-all", "--format", "csv", "--jobs", "2"],
                       capture_output=True, text=True, timeout=600)
    assert p.returncode == 0, p.stderr
    rows = list(csv.DictReader(io.StringIO(p.stdout)))
    assert len(rows) > 20 and all(r["status"] == "PASS" for r in rows)


def test_modeq_derive_by_poles(capsys):
    code, out = run(capsys, "modeq", "derive", "-n", "2", "--method", "poles")
    assert code == 0 and json.loads(out.out)["matches_stored"] is True


def test_bc_named_config_and_file(capsys, tmp_path):
    code, out = run(capsys, "pi", "bc", "--config", "d=-187")
    assert code == 0
    data = json.loads(out.out)
    path = tmp_path / "input.json"
    path.write_text(json.dumps(data["input"]))
    code, out = run(capsys, "pi", "bc", "--config", str(path))
    assert code == 0 and json.loads(out.out)["B"] == data["B"]


def test_pi_eval_spec_file(capsys, tmp_path):
    from level17.pi_series import SERIES_ROWS
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(SERIES_ROWS[2].spec().to_json()))
    code, out = run(capsys, "pi", "eval", "--spec", str(path), "--digits", "30")
    assert code == 0 and float(json.loads(out.out)["distance_to_inverse_pi"]) < 1e-30


def test_missing_spec_file(capsys):
    code, _ = run(capsys, "pi", "eval", "--spec", "/nonexistent.json")
    assert code == 2
