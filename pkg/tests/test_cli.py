import json
import math

import pytest

from trieps.cli import main

PT_FLAGS = ["--omega1", "0", "--omega2", "0", "--omega3", "0",
            "--kappa1", "0", "--kappa2", "1", "--kappa3", "-1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_pt_params(capsys):
    code, out, _ = run(capsys, "check", *PT_FLAGS,
                       "--g12", "0.5", "--g13", "0.5", "--g23", "0.3")
    assert code == 0
    assert "r1=0" in out and "pseudo-hermitian" in out


def test_check_full_params_not_ph(capsys):
    code, out, _ = run(capsys, "check", *PT_FLAGS,
                       "--g12", "0.4", "--g13", "0.5", "--g23", "0.3")
    assert code == 2
    assert "not pseudo-hermitian" in out


def test_check_solver_feasible(capsys):
    code, out, _ = run(capsys, "check", "--kappa1", "1", "--kappa2", "1",
                       "--g12", "0", "--g13", "1.2", "--g23", "1.2")
    assert code == 0
    assert "kappa3=-2" in out
    d2 = math.sqrt(1.2 ** 2 - 1.0)
    assert f"delta2={d2:.17g}"[:18] in out


def test_check_solver_infeasible_radicand(capsys):
    code, out, _ = run(capsys, "check", "--kappa1", "1", "--kappa2", "1",
                       "--g12", str(1.5 / math.sqrt(8.0)), "--g13", "1.5",
                       "--g23", "0")
    assert code == 2
    assert "radicand=-0.15625" in out


def test_check_malformed(capsys):
    code, _, err = run(capsys, "check", "--kappa1", "1")
    assert code == 1
    assert "missing" in err


def test_eigs_three_real(capsys):
    code, out, _ = run(capsys, "eigs", *PT_FLAGS,
                       "--g12", "1", "--g13", "1", "--g23", "0")
    assert code == 0
    assert "classification=three-real-distinct" in out
    assert "lambda_zero: 0" in out


def test_eigs_ep3(capsys):
    g = 1.0 / math.sqrt(2.0)
    code, out, _ = run(capsys, "eigs", *PT_FLAGS,
                       "--g12", str(g), "--g13", str(g), "--g23", "0")
    assert code == 0
    assert "classification=ep3" in out


def test_eigs_uncoupled_diagonal(capsys):
    code, out, _ = run(capsys, "eigs", "--omega1", "5", "--omega2", "5",
                       "--omega3", "5", "--kappa1", "0", "--kappa2", "1",
                       "--kappa3", "-1", "--g12", "0", "--g13", "0",
                       "--g23", "0", "--raw-units")
    assert code == 0
    assert "lambda_zero: 5" in out


def test_eigs_invalid_params(capsys):
    code, _, err = run(capsys, "eigs", *PT_FLAGS,
                       "--g12", "-1", "--g13", "1", "--g23", "0")
    assert code == 1 and "g12" in err


def test_sweep_csv(tmp_path, capsys):
    out_file = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", *PT_FLAGS, "--g12", "0", "--g13", "0",
                     "--g23", "0", "--axis", "g13", "--lo", "0", "--hi", "2",
                     "--steps", "41", "--constraint", "pt",
                     "-o", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "# schema=1"
    header = lines[1].split(",")
    assert header[0] == "axis_value" and "classification" in header
    assert len(lines) == 2 + 41


def test_sweep_excluded_rows(tmp_path, capsys):
    out_file = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", *PT_FLAGS, "--kappa1", "1",
                     "--kappa3", "-2", "--g12", "0", "--g13", "2",
                     "--g23", "0", "--axis", "g13", "--lo", "1.0",
                     "--hi", "3.0", "--steps", "21",
                     "--constraint", "ph-asymmetric", "-o", str(out_file))
    assert code == 0
    rows = out_file.read_text().splitlines()[2:]
    crit = math.sqrt(8.0 / 3.0)
    for row in rows:
        cells = row.split(",")
        excluded = cells[-2] == "1"
        assert excluded == (float(cells[0]) < crit)


def test_sweep_steps_two(tmp_path, capsys):
    out_file = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", *PT_FLAGS, "--g12", "0.5",
                     "--g13", "0.5", "--g23", "0", "--axis", "g13",
                     "--lo", "0.5", "--hi", "0.5", "--steps", "2",
                     "--constraint", "pt", "-o", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert len(lines) == 4
    assert lines[2] == lines[3]


def test_sweep_determinism(tmp_path, capsys):
    files = []
    for name in ("a.csv", "b.csv"):
        out_file = tmp_path / name
        code, _, _ = run(capsys, "sweep", *PT_FLAGS, "--g12", "0",
                         "--g13", "0", "--g23", "0.7544", "--omega1",
                         "-0.5768", "--axis", "g13", "--lo", "0.1",
                         "--hi", "1.9", "--steps", "101",
                         "--constraint", "pt", "-o", str(out_file))
        assert code == 0
        files.append(out_file.read_bytes())
    assert files[0] == files[1]


def test_ep_find_empty_exit_code(tmp_path, capsys):
    out_file = tmp_path / "eps.csv"
    code, _, _ = run(capsys, "ep-find", *PT_FLAGS, "--kappa1", "1",
                     "--kappa3", "-2", "--g12", "0", "--g13", "2",
                     "--g23", "0", "--axis", "g13", "--lo", "1.64",
                     "--hi", "3.0", "--constraint", "ph-asymmetric",
                     "-o", str(out_file))
    assert code == 3
    lines = out_file.read_text().splitlines()
    assert len(lines) == 2  # schema + header only


def test_ep_find_pt(tmp_path, capsys):
    out_file = tmp_path / "eps.csv"
    code, out, _ = run(capsys, "ep-find", *PT_FLAGS, "--g12", "0",
                       "--g13", "0.5", "--g23", "0", "--axis", "g13",
                       "--lo", "0.1", "--hi", "2.0", "--constraint", "pt",
                       "-o", str(out_file))
    assert code == 0
    assert "EP3 at g13=0.7071067" in out


def test_el3_csv(tmp_path, capsys):
    out_file = tmp_path / "el3.csv"
    code, _, _ = run(capsys, "el3", "--samples", "100", "-o", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert len(lines) == 2 + 100
    first = lines[2].split(",")
    last = lines[-1].split(",")
    assert (float(first[1]), float(first[2])) == (0.0, 1.0)
    assert float(last[1]) == pytest.approx(0.70711, abs=1e-5)
    assert float(last[2]) == 0.0


def test_es3_json(tmp_path, capsys):
    out_file = tmp_path / "es3.json"
    code, _, _ = run(capsys, "es3", "--kappa-lo", "0", "--kappa-hi", "1",
                     "--slices", "2", "--samples", "10", "--format", "json",
                     "-o", str(out_file))
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert set(payload) == {"config", "rows", "diagnostics"}
    assert len(payload["rows"]) == 20
    ratios = {row["kappa1_ratio"] for row in payload["rows"]}
    assert ratios == {0.0, 1.0}


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "omega1 = 0\nomega2 = 0\nomega3 = 0\n"
        "kappa1 = 0\nkappa2 = 1\nkappa3 = -1\n"
        "g12 = 0.5\ng13 = 0.5\ng23 = 0\n"
        "# a comment\n"
        "steps = 11\naxis = g13\nlo = 0\nhi = 1\nconstraint = pt\n")
    out_file = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "--config", str(cfg), "--steps", "5",
                     "--lo", "0", "--hi", "1", "-o", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert len(lines) == 2 + 5  # flag value wins over the file's 11


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("coupling = 1\n")
    code, _, err = run(capsys, "check", "--config", str(cfg))
    assert code == 1
    assert "unknown config key" in err
