import json
import subprocess
import sys

import pytest

from windcoset.cli import main

from oracles import colored_partitions, count_partitions


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_charge_f4(capsys):
    code, out, _ = run(capsys, "charge", "--algebra", "F4", "--k", "1", "--j", "2")
    assert code == 0
    assert "c_hat = 52/55" in out and "m = 10" in out


def test_charge_trivial_winding(capsys):
    code, out, _ = run(capsys, "charge", "--algebra", "A1", "--k", "1", "--j", "1")
    assert code == 0 and "c_hat = 0" in out


def test_charge_e8_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "charge", "--algebra", "E8")
    data = json.loads(out)
    assert code == 0 and data["coset_c"] == "1/2" and data["m"] == 3 and data["prefactor"] == "1"


def test_string_a1_partitions(capsys):
    code, out, _ = run(capsys, "--format", "json", "string", "--algebra", "A1", "--weight", "L0",
                       "--lambda", "0", "--order", "10")
    assert code == 0
    assert json.loads(out)["coefficients"] == [count_partitions(n) for n in range(11)]


def test_string_e8(capsys):
    code, out, _ = run(capsys, "--format", "json", "string", "--algebra", "E8", "--weight", "L0",
                       "--lambda", "0,0,0,0,0,0,0,0", "--order", "6")
    assert json.loads(out)["coefficients"] == colored_partitions(6, 8)


def test_string_bad_weight(capsys):
    code, out, err = run(capsys, "string", "--algebra", "E8", "--weight", "L1", "--level", "1",
                         "--lambda", "0,0,0,0,0,0,0,0")
    assert code == 2 and out == ""
    assert "comark sum" in err and "level-1" in err


def test_string_empty(capsys):
    code, _, err = run(capsys, "string", "--algebra", "A1", "--weight", "L0", "--lambda", "1", "--order", "3")
    assert code == 2 and "does not occur" in err


def test_kac_table(capsys):
    code, out, _ = run(capsys, "kac-table", "--m", "3")
    assert code == 0
    assert out.splitlines()[2].split() == ["1", "0", "1/16", "1/2"]
    code, out, _ = run(capsys, "--format", "json", "kac-table", "--m", "4")
    assert json.loads(out)["rows"][1][1] == "3/80"


def test_character_modes(capsys):
    code, out, _ = run(capsys, "--format", "json", "character", "--algebra", "E8", "--weight", "L0",
                       "--order", "3", "--mode", "z=1")
    assert code == 0 and json.loads(out)["series"]["coeffs"] == [1, 248, 4124, 34752]
    code, out, _ = run(capsys, "character", "--algebra", "A1", "--weight", "0,1", "--order", "3")
    assert code == 0 and out.startswith("A1 L1 level 1")


def test_dump_rootsys(capsys):
    code, out, _ = run(capsys, "--format", "json", "dump-rootsys", "--algebra", "E8")
    data = json.loads(out)
    assert data["comarks"] == [1, 2, 3, 4, 5, 6, 4, 2, 3]
    assert len(data["positive_roots_simple_coords"]) == 120


def test_verify_case_with_order(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", "--case", "A1", "--order", "30")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert [r["verified_order"] for r in data["rows"]] == ["30", "30"]


def test_verify_identity(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "ising")
    assert code == 0 and "q^40: PASS" in out


def test_verify_needs_a_target(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2 and "nothing to verify" in err
    code, _, _ = run(capsys, "verify", "--case", "B2")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--identity", "nonsense")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "charge")[0] == 2
    assert run(capsys, "charge", "--algebra", "B7")[0] == 2
    assert run(capsys, "--format", "xml", "charge", "--algebra", "A1")[0] == 2
    assert run(capsys, "character", "--algebra", "A1", "--weight", "L0", "--order", "-1")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nalgebra = E8\nk = 1\nj = 2\nformat = json\n")
    code, out, _ = run(capsys, "--config", str(cfg), "charge")
    assert code == 0 and json.loads(out)["coset_c"] == "1/2"
    code, out, _ = run(capsys, "--config", str(cfg), "charge", "--algebra", "F4")
    assert json.loads(out)["coset_c"] == "52/55"
    code, out, _ = run(capsys, "--config", str(cfg), "--format", "table", "charge")
    assert out.startswith("c(1) = 8")
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "--config", str(bad), "charge", "--algebra", "A1")[0] == 2
    assert run(capsys, "--config", str(tmp_path / "missing.cfg"), "charge", "--algebra", "A1")[0] == 2


def test_config_for_verify(tmp_path, capsys):
    cfg = tmp_path / "v.cfg"
    cfg.write_text("case = A2\norder = 3\nmode = z=1\n")
    code, out, _ = run(capsys, "--config", str(cfg), "--format", "json", "verify")
    data = json.loads(out)
    assert code == 0 and {r["mode"] for r in data["rows"]} == {"z=1"}
    assert {r["verified_order"] for r in data["rows"]} == {"3"}


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "-v", "--format", "json", "verify", "--case", "A1", "--order", "2")
    assert code == 0
    json.loads(out)                     # stdout stays machine readable
    assert "verifying A1" in err


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "windcoset", "--format", "json", "verify", "--case", "G2", "--order", "3"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["passed"]


@pytest.mark.parametrize("args,code", [(["verify", "--case", "A1", "--order", "1"], 0),
                                       (["charge", "--algebra", "Q9"], 2)])
def test_exit_codes_through_module(args, code):
    res = subprocess.run([sys.executable, "-m", "windcoset", *args], capture_output=True)
    assert res.returncode == code
