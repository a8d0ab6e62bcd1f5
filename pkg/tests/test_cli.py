import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from codespectra.cli import ExperimentConfig, cmd_code_info, cmd_moments, \
    cmd_mp, cmd_paths_audit, cmd_spectrum, main


def run_main(argv):
    return main(argv)


def test_spectrum_artifacts_and_summary(tmp_path):
    out = tmp_path / "run"
    cfg = ExperimentConfig(command="spectrum", code="even", n=5, p=8,
                           seed=77, repeats=3, bins=10, lmax=4, out=str(out))
    summary = cmd_spectrum(cfg)

    assert len(summary["ks_values"]) == 3
    assert all(np.isfinite(summary["ks_values"]))
    assert summary["median_ks"] == sorted(summary["ks_values"])[1]
    assert summary["config"]["seed"] == 77

    for r in range(3):
        eig_csv = out / f"eigs_r{r:02d}.csv"
        hist_csv = out / f"hist_r{r:02d}.csv"
        svg = out / f"esd_r{r:02d}.svg"
        assert eig_csv.exists() and hist_csv.exists() and svg.exists()
        lines = eig_csv.read_text().strip().split("\n")
        assert lines[0] == "lambda"
        assert len(lines) == 1 + 8
        values = [float(v) for v in lines[1:]]
        assert values == sorted(values)
        hist_lines = hist_csv.read_text().strip().split("\n")
        assert hist_lines[0] == "bin_left,bin_right,density"
        # density columns integrate to one
        rows = [tuple(map(float, ln.split(","))) for ln in hist_lines[1:]]
        total = sum((right - left) * dens for left, right, dens in rows)
        assert total == pytest.approx(1.0, abs=1e-9)
        ET.parse(svg)  # valid XML
        assert "polyline" in svg.read_text()

    checks = summary["artifacts"]
    assert len(checks) == 9
    assert all(len(h) == 64 for h in checks.values())
    on_disk = json.loads((out / "summary.json").read_text())
    assert on_disk == summary


def test_spectrum_is_reproducible(tmp_path):
    svgs = []
    for name in ("a", "b"):
        out = tmp_path / name
        cfg = ExperimentConfig(command="spectrum", code="even", n=5, p=8,
                               seed=5, repeats=2, out=str(out))
        cmd_spectrum(cfg)
        svgs.append((out / "summary.json").read_text())
    assert svgs[0].replace(str(tmp_path / "a"), "X") == \
        svgs[1].replace(str(tmp_path / "b"), "X")


def test_spectrum_rejects_with_replacement(tmp_path):
    cfg = ExperimentConfig(command="spectrum", code="even", n=5, p=8,
                           mode="with_replacement", out=str(tmp_path / "x"))
    assert run_main(["spectrum", "--code", "even", "--n", "5", "--p", "8",
                     "--mode", "with_replacement",
                     "--out", str(tmp_path / "x")]) == 2


def test_spectrum_rejects_p_above_N(tmp_path):
    rc = run_main(["spectrum", "--code", "even", "--n", "5", "--p", "17",
                   "--out", str(tmp_path / "x")])
    assert rc == 2


def test_mp_summary_and_warning(tmp_path):
    out = tmp_path / "mp"
    cfg = ExperimentConfig(command="mp", code="even", n=5, y=0.5,
                           seed=3, repeats=2, out=str(out))
    summary = cmd_mp(cfg)
    assert summary["p"] == round(0.5 * 5)
    assert summary["law"] == {"kind": "mp", "y": 0.5}
    assert "warning" not in summary

    cfg2 = ExperimentConfig(command="mp", code="even", n=5, y=0.5, seed=3,
                            repeats=2, mode="distinct", out=str(tmp_path / "mp2"))
    with_warning = cmd_mp(cfg2)
    assert "warning" in with_warning


def test_mp_rejects_bad_y(tmp_path):
    rc = run_main(["mp", "--code", "even", "--n", "5", "--y", "1.5",
                   "--out", str(tmp_path / "x")])
    assert rc == 2


def test_moments_json(tmp_path):
    out = tmp_path / "mom"
    cfg = ExperimentConfig(command="moments", code="gold", m=5, p=8,
                           seed=42, repeats=4, lmax=4, out=str(out))
    summary = cmd_moments(cfg)
    assert summary["multiplier"] == 3.0
    per_l = {rec["l"]: rec for rec in summary["per_l"]}
    assert set(per_l) == {1, 2, 3, 4}
    assert per_l[2]["sc_moment"] == 1.0
    assert per_l[4]["sc_moment"] == 2.0
    c = summary["code_report"]["coherence_constant"]
    n, p, big_n = 31, 8, 1024
    assert per_l[2]["error_scale"] == pytest.approx(c**2 / p + n / big_n + p / n)
    assert per_l[3]["error_scale"] == pytest.approx(
        c**3 / np.sqrt(p) + np.sqrt(p / n))
    assert (out / "moments.json").exists()


def test_moments_validation(tmp_path):
    assert run_main(["moments", "--code", "gold", "--m", "5", "--p", "8",
                     "--repeats", "1", "--out", str(tmp_path / "x")]) == 2
    assert run_main(["moments", "--code", "gold", "--m", "5", "--p", "8",
                     "--lmax", "13", "--out", str(tmp_path / "x")]) == 2


def test_code_info_gold5(tmp_path, capsys):
    rc = run_main(["code-info", "--code", "gold", "--m", "5",
                   "--out", str(tmp_path / "info")])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    rep = payload["report"]
    assert rep["n"] == 31 and rep["k"] == 10 and rep["N"] == 1024
    assert rep["dual_distance_status"] == "=5"
    assert rep["coherence"] == 9.0
    assert rep["weight_set"] == [12, 16, 20]


def test_code_info_rm1(tmp_path):
    cfg = ExperimentConfig(command="code-info", code="rm1", m=3,
                           out=str(tmp_path / "i"))
    summary = cmd_code_info(cfg)
    assert summary["report"]["dual_distance_status"] == "=4"


def test_code_info_from_file(tmp_path):
    src = tmp_path / "code.txt"
    src.write_text("2 4 3\n1 0 0 1\n0 1 0 1\n0 0 1 1\n")
    cfg = ExperimentConfig(command="code-info", code="file", file=str(src),
                           out=str(tmp_path / "i"))
    summary = cmd_code_info(cfg)
    assert summary["report"]["n"] == 4 and summary["report"]["k"] == 3


def test_paths_audit_command(tmp_path):
    cfg = ExperimentConfig(command="paths-audit", code="even", n=5,
                           lmax=2, out=str(tmp_path / "audit"))
    summary = cmd_paths_audit(cfg)
    audit = summary["audit"]
    assert audit["checks"]["lemma1_exact_ok"]
    assert audit["checks"]["lemma3_zero_ok"]
    assert (tmp_path / "audit" / "paths_audit.json").exists()
    json.loads((tmp_path / "audit" / "paths_audit.json").read_text())


def test_paths_audit_resource_exit_code(tmp_path):
    # n^l = 7^10 blows the brute-force budget: exit code 3
    rc = run_main(["paths-audit", "--code", "even", "--n", "7",
                   "--lmax", "10", "--out", str(tmp_path / "x")])
    assert rc == 3


def test_unknown_code_selector_exit_code(tmp_path):
    rc = run_main(["code-info", "--code", "gold", "--out", str(tmp_path / "x")])
    assert rc == 2  # gold without --m
