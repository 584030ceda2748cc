import json
import shutil
import subprocess

import pytest

from fgltheta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify", "--order", "8")
    assert code == 0
    assert "verdict: STABLE" in out
    assert "[FAIL]" not in out


def test_verify_json_lists_every_check(capsys):
    code, out, _ = run(capsys, "verify", "--order", "4", "--format", "json")
    report = json.loads(out)
    names = [c["name"] for c in report["checks"]]
    assert names == [
        "realization_axioms",
        "v1_v2_residues",
        "realization_negative_controls",
        "fgl_axioms",
        "lubin_tate_invariants",
        "orbit_basis",
        "height_diagnostics",
        "canonical_isogeny",
        "theta_stability",
    ]
    assert all(c["status"] == "pass" for c in report["checks"])
    assert report["certificate"] == {"padic": 64, "order": 4, "fgl_order": 12}


def test_small_fgl_order_is_config_error(capsys):
    code, _, err = run(capsys, "verify", "--fgl-order", "3")
    assert code == 2
    assert "fgl-order" in err


@pytest.mark.parametrize("argv", [["theta", "--digits", "7"], ["theta", "--order", "1"]])
def test_invalid_precision_is_config_error(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_negative_control_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--order", "4", "--inject-negative-control")
    assert code == 1
    assert "[FAIL] theta_stability" in out
    assert "verdict: UNSTABLE" in out


def test_negative_control_certificate_in_json(capsys):
    code, out, _ = run(capsys, "theta", "--order", "4", "--inject-negative-control", "--format", "json")
    assert code == 1
    report = json.loads(out)
    assert report["verdict"] == "UNSTABLE"
    assert report["residuals"]["negative_powers"] == [[-1, 2]]


def test_coefficients_csv(capsys):
    code, out, _ = run(capsys, "coefficients", "--format", "csv", "--order", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "degree,coefficient_signed"
    assert lines[2] == "1,-4"


def test_coefficients_csv_theta(capsys):
    _, out, _ = run(capsys, "coefficients", "--format", "csv", "--series", "theta", "--order", "5")
    assert out.splitlines()[1:] == ["0,0", "1,0", "2,0", "3,15", "4,384"]


def test_coefficients_json_schema(capsys):
    _, out, _ = run(capsys, "coefficients", "--format", "json", "--digits", "16", "--order", "4")
    report = json.loads(out)
    assert report["variable"] == "s"
    assert report["precision"] == {"padic": 16, "order": 4}
    assert report["verdict"] == "STABLE"
    assert report["series"]["theta"][0]["signed"] == 0
    assert report["series"]["c"][2]["residue"] == (1 << 16) - 48


def test_env_default_digits(capsys, monkeypatch):
    monkeypatch.setenv("FGLTHETA_DEFAULT_DIGITS", "20")
    _, out, _ = run(capsys, "theta", "--format", "json", "--order", "3")
    assert json.loads(out)["precision"]["padic"] == 20
    monkeypatch.setenv("FGLTHETA_DEFAULT_DIGITS", "5")
    assert run(capsys, "theta")[0] == 2


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--order", "4", "--format", "json", "--out", str(a)]) == 0
    assert main(["verify", "--order", "4", "--format", "json", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_unwritable_out(capsys, tmp_path):
    code, _, err = run(capsys, "theta", "--out", str(tmp_path / "missing" / "x.txt"))
    assert code == 2 and "cannot write" in err


def test_csv_rejected_for_check_commands(capsys):
    assert run(capsys, "velu", "--format", "csv")[0] == 2


def test_velu_and_lubin_tate_commands(capsys):
    assert run(capsys, "velu")[0] == 0
    code, out, _ = run(capsys, "lubin-tate")
    assert code == 0 and "[PASS] lubin_tate_invariants" in out


def test_console_script():
    exe = shutil.which("fgltheta")
    if exe is None:
        pytest.skip("console script not installed")
    out = subprocess.run([exe, "coefficients", "--format", "csv", "--order", "3"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.splitlines() == ["degree,coefficient_signed", "0,-1", "1,-4", "2,-48"]
