"""Command-line contract: exit codes, artifacts, determinism."""

import csv
import filecmp
import subprocess
import sys

import numpy as np
import pytest

from geoflow import cli
from geoflow.bundle import ResultBundle


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader]
    return header, rows


# ------------------------------------------------------------------- chain


def test_chain_small_run(tmp_path, capsys):
    out = tmp_path / "run"
    code, stdout, _ = run(["chain", "--n-beads", "3", "--t-plus", "2",
                           "--out", str(out)], capsys)
    assert code == 0
    assert stdout.strip() == "warming-faster"
    header, rows = read_csv(out / "trajectory.csv")
    assert header[:4] == ["t", "F_plus", "F_minus", "delta_F"]
    assert header[4:] == ["a1_plus", "a1_minus", "a2_plus", "a2_minus"]
    delta = np.array([float(r[3]) for r in rows])
    assert delta.min() >= -1e-9
    assert float(rows[0][1]) == pytest.approx(float(rows[0][2]), rel=1e-9)
    bundle = ResultBundle.read(out)
    assert bundle.verdicts[0] == "warming-faster"
    assert all("Curve1Faster" in v for v in bundle.verdicts[1:])


def test_chain_deterministic(tmp_path, capsys):
    for name in ("one", "two"):
        code, _, _ = run(["chain", "--n-beads", "4", "--t-plus", "1.5",
                          "--out", str(tmp_path / name)], capsys)
        assert code == 0
    for table in ("trajectory", "coincidences", "modes"):
        assert filecmp.cmp(tmp_path / "one" / f"{table}.csv",
                           tmp_path / "two" / f"{table}.csv", shallow=False)


def test_chain_degenerate_pair_inconclusive(tmp_path, capsys):
    code, stdout, _ = run(["chain", "--n-beads", "2", "--t-plus", "1",
                           "--out", str(tmp_path / "deg")], capsys)
    assert code == 3
    assert stdout.strip() == "inconclusive"
    _, rows = read_csv(tmp_path / "deg" / "trajectory.csv")
    assert all(float(r[3]) == 0.0 for r in rows)


def test_chain_rejects_bad_parameters(tmp_path, capsys):
    for argv in (["chain", "--n-beads", "1"],
                 ["chain", "--t-plus", "0.5"],
                 ["chain", "--tol", "-1"],
                 ["chain", "--n-beads", "x"]):
        code, _, err = run(argv + ["--out", str(tmp_path / "nope")], capsys)
        assert code == 1
        assert "config error" in err


def test_chain_config_file_and_flag_precedence(tmp_path, capsys):
    ini = tmp_path / "chain.ini"
    ini.write_text("# experiment\n"
                   "[run]\n"
                   "seed = 9\n"
                   f"out = {tmp_path / 'from_cfg'}\n"
                   "[chain]\n"
                   "n_beads = 4   ; inline comment\n"
                   "t_plus = 1.5\n")
    code, stdout, _ = run(["chain", "--config", str(ini)], capsys)
    assert code == 0 and stdout.strip() == "warming-faster"
    meta = ResultBundle.read(tmp_path / "from_cfg")
    assert meta.config["n_beads"] == 4
    assert meta.seed == 9

    code, _, _ = run(["chain", "--config", str(ini), "--n-beads", "3",
                      "--out", str(tmp_path / "flagged")], capsys)
    assert code == 0
    assert ResultBundle.read(tmp_path / "flagged").config["n_beads"] == 3


def test_malformed_config_is_line_anchored(tmp_path, capsys):
    ini = tmp_path / "broken.ini"
    ini.write_text("[chain\nn_beads = 4\n")
    code, _, err = run(["chain", "--config", str(ini)], capsys)
    assert code == 1
    assert "line" in err


def test_missing_config_file(tmp_path, capsys):
    code, _, err = run(["chain", "--config", str(tmp_path / "none.ini")],
                       capsys)
    assert code == 1
    assert "config error" in err


# ----------------------------------------------------------------- compare


def test_compare_default_model_warming_wins(tmp_path, capsys):
    out = tmp_path / "cmp"
    code, stdout, _ = run(["compare", "--out", str(out)], capsys)
    assert code == 0
    assert stdout.strip() == "Curve1Faster"
    header, rows = read_csv(out / "report.csv")
    assert header == ["t", "f1", "f2", "delta_f"]
    assert len(rows) > 100


def test_compare_symmetric_bowl_inconclusive(tmp_path, capsys):
    code, stdout, _ = run(["compare", "--model", "euclidean-quadratic",
                           "--out", str(tmp_path / "sym")], capsys)
    assert code == 3
    assert stdout.strip() == "Inconclusive"
    bundle = ResultBundle.read(tmp_path / "sym")
    assert any("zero-gap" in v for v in bundle.verdicts)


def test_compare_unreachable_level_is_numerical_failure(tmp_path, capsys):
    code, _, err = run(["compare", "--model", "hessian-exp",
                        "--level", "1e9",
                        "--out", str(tmp_path / "far")], capsys)
    assert code == 2
    assert "numerical failure" in err


def test_compare_bad_invocations(tmp_path, capsys):
    cases = (["compare", "--model", "nope"],
             ["compare", "--direction1", "1,0"],
             ["compare", "--direction1", "0"],
             ["compare", "--level", "-1"])
    for argv in cases:
        code, _, err = run(argv + ["--out", str(tmp_path / "bad")], capsys)
        assert code == 1
        assert "config error" in err


# ------------------------------------------------------------------ verify


def test_verify_single_suite_passes(tmp_path, capsys):
    out = tmp_path / "ver"
    code, stdout, _ = run(["verify", "--suite", "fujiwara-amari",
                           "--out", str(out)], capsys)
    assert code == 0
    assert stdout.strip() == "all-checks-passed"
    header, rows = read_csv(out / "checks.csv")
    assert header == ["suite", "check", "passed", "measured", "tolerance",
                      "detail"]
    assert rows and all(r[0] == "fujiwara-amari" for r in rows)
    assert all(r[2] == "true" for r in rows)


def test_verify_negative_control_fails(tmp_path, capsys):
    code, stdout, _ = run(["verify", "--suite", "straightening",
                           "--negative-control",
                           "--out", str(tmp_path / "neg")], capsys)
    assert code == 2
    assert stdout.strip() == "checks-failed"
    _, rows = read_csv(tmp_path / "neg" / "checks.csv")
    failed = [r[1] for r in rows if r[2] == "false"]
    assert failed == ["closed-form-nonmetricity"]


def test_verify_rejects_unknown_suite(tmp_path, capsys):
    code, _, err = run(["verify", "--suite", "bogus",
                        "--out", str(tmp_path / "x")], capsys)
    assert code == 1
    assert "config error" in err


# --------------------------------------------------------------- curvature


def test_curvature_scan_flags_singularity(tmp_path, capsys):
    out = tmp_path / "curv"
    code, _, _ = run(["curvature", "--out", str(out)], capsys)
    assert code == 0
    header, rows = read_csv(out / "curvature.csv")
    assert header == ["a_ratio", "s_closed_form", "s_numeric", "rel_error",
                      "status"]
    assert len(rows) == 25
    by_ratio = {float(r[0]): r for r in rows}
    singular = by_ratio[1.0]
    assert singular[4] == "singular" and singular[1] == "nan"
    at_two = by_ratio[2.0]
    assert float(at_two[1]) == pytest.approx(-6.0, rel=1e-10)
    assert float(at_two[2]) == pytest.approx(-6.0, rel=1e-4)
    at_five = by_ratio[5.0]
    assert abs(float(at_five[1])) < 1e-12
    oks = [r for r in rows if r[4] == "ok"]
    assert len(oks) == 24
    assert max(float(r[3]) for r in oks) < 1e-4


def test_curvature_custom_grid(tmp_path, capsys):
    code, _, _ = run(["curvature", "--grid-start", "2", "--grid-stop", "2",
                      "--grid-points", "1",
                      "--out", str(tmp_path / "c1")], capsys)
    assert code == 0
    _, rows = read_csv(tmp_path / "c1" / "curvature.csv")
    assert len(rows) == 1 and rows[0][4] == "ok"
    code, _, _ = run(["curvature", "--grid-start", "0",
                      "--out", str(tmp_path / "c2")], capsys)
    assert code == 1
    code, _, _ = run(["curvature", "--model", "euclidean-quadratic",
                      "--out", str(tmp_path / "c3")], capsys)
    assert code == 1


# ------------------------------------------------------------------- misc


def test_unknown_command_and_flag(tmp_path, capsys):
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["chain", "--no-such-flag"], capsys)[0] == 1


def test_entry_point_subprocess(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "geoflow.cli", "chain", "--n-beads", "3",
         "--t-plus", "1.5", "--out", str(tmp_path / "sp")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "warming-faster"
