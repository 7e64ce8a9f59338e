"""End-to-end CLI checks: layouts, exit codes, determinism, reports."""

import filecmp
import json

import pytest

from dstsim.cli import main


def run(argv):
    return main(argv)


def test_bam_xi_writes_two_column_csv(tmp_path):
    out = tmp_path / "xi.csv"
    assert run(["bam-xi", "--K", "2", "--n", "200", "--seed", "5",
                "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "replicate,value"
    assert len(lines) == 201
    # a two-level tree always freezes with the second particle
    assert all(line.split(",")[1] == "2" for line in lines[1:])
    assert [line.split(",")[0] for line in lines[1:3]] == ["0", "1"]


def test_bam_xi_assert_against_oracle(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["bam-xi", "--K", "3", "--n", "2000", "--seed", "1",
                "--assert"]) == 0


def test_bam_xi_assert_out_of_budget_is_config_error(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["bam-xi", "--K", "9", "--n", "10", "--seed", "1",
                "--assert"]) == 2


def test_jobs_do_not_change_sample_files(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run(["bam-xi", "--K", "4", "--n", "700", "--seed", "9",
                "--out", str(a)]) == 0
    assert run(["bam-xi", "--K", "4", "--n", "700", "--seed", "9",
                "--jobs", "3", "--out", str(b)]) == 0
    assert filecmp.cmp(a, b, shallow=False)


def test_couple_check_all_equal(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["couple-check", "--K", "4", "--n", "500", "--seed", "2",
                "--assert"]) == 0
    assert (tmp_path / "couple-check-K4-b2-time.csv").exists()
    assert (tmp_path / "couple-check-K4-b2-ybar.csv").exists()


def test_oracle_tc_assert_passes(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run(["oracle-tc", "--K", "2", "--b", "3", "--assert"]) == 0
    out = capsys.readouterr().out
    assert "overall: EQUAL" in out


def test_oracle_xi_csv_masses(tmp_path):
    out = tmp_path / "pmf.csv"
    assert run(["oracle-xi", "--K", "3", "--b", "2", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "value,probability"
    masses = {int(r.split(",")[0]): float(r.split(",")[1]) for r in rows[1:]}
    assert masses == {3: 0.5, 4: 0.5}


def test_config_error_exits_2(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["bam-xi", "--K", "0", "--n", "10"]) == 2


def test_capacity_error_exits_4(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["oracle-xi", "--K", "9", "--b", "2"]) == 4


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as err:
        run(["no-such-command"])
    assert err.value.code == 2


def test_failed_assertion_exits_3(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    # at small heights the mean sits far above the asymptotic prediction,
    # so the default window must reject
    assert run(["asym-te", "--K-list", "5", "--n", "300", "--seed", "3",
                "--assert"]) == 3
    assert run(["asym-te", "--K-list", "5", "--n", "300", "--seed", "3",
                "--ratio-high", "4.0", "--assert"]) == 0


def test_json_report_isolates_volatile_line(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    argv = ["ct-compare", "--t", "2", "--n", "600", "--seed", "4",
            "--format", "json"]
    assert run(argv + ["--out", str(out1)]) == 0
    assert run(argv + ["--out", str(out2)]) == 0
    lines1 = out1.read_text().splitlines()
    lines2 = out2.read_text().splitlines()
    assert lines1[1].lstrip().startswith('"volatile"')
    del lines1[1], lines2[1]
    assert lines1 == lines2
    doc = json.loads(out1.read_text())
    assert doc["config"]["seed"] == 4
    assert len(doc["tests"]) == 3


def test_default_output_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["dst-grow", "--size", "50", "--n", "100", "--seed", "6"]) == 0
    assert (tmp_path / "dst-grow-b2.csv").exists()


def test_asym_txi_report_and_bracket(tmp_path):
    out = tmp_path / "txi.json"
    assert run(["asym-txi", "--K-list", "4,5", "--n", "500", "--seed", "8",
                "--corridor", "50", "--format", "json", "--out", str(out),
                "--assert"]) == 0
    doc = json.loads(out.read_text())
    assert set(doc["per_K"]) == {"4", "5"}
    for row in doc["per_K"].values():
        assert row["median_in_prior_bracket"]
        assert row["deviation"] >= 0


def test_asym_txi_writes_per_k_samples(tmp_path):
    out = tmp_path / "t.csv"
    assert run(["asym-txi", "--K-list", "4,5", "--n", "300", "--seed", "8",
                "--out", str(out)]) == 0
    assert (tmp_path / "t-K4.csv").exists()
    assert (tmp_path / "t-K5.csv").exists()


def test_recursion_check_both_targets(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["recursion-check", "--target", "ybar", "--K", "3",
                "--n", "1500", "--seed", "12", "--assert"]) == 0
    assert run(["recursion-check", "--target", "xi-ct", "--K", "3",
                "--n", "1500", "--seed", "12", "--assert"]) == 0


def test_bary_reports_without_asserting(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run(["bary", "--K-list", "4", "--b", "3", "--c-b", "0.5",
                "--simulate", "200", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "reported only" in out


def test_fpp_y_and_height_hit_run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["fpp-y", "--K", "4", "--n", "300", "--seed", "3"]) == 0
    assert run(["dst-height-hit", "--K", "4", "--n", "300", "--seed", "3"]) == 0
    assert (tmp_path / "fpp-y-K4-b2.csv").exists()
    assert (tmp_path / "dst-height-hit-K4-b2.csv").exists()


def test_bam_xi_ct_gap_check(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["bam-xi-ct", "--K", "4", "--n", "4000", "--seed", "14",
                "--assert"]) == 0
    assert (tmp_path / "bam-xi-ct-K4-b2-value.csv").exists()
    assert (tmp_path / "bam-xi-ct-K4-b2-count.csv").exists()
