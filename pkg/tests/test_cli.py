"""Command-line interface: subcommands, flag precedence, exit codes."""

import os

import pytest
import yaml

from sddwca.cli import main, parse_seeds
from sddwca.reporting import read_summary_csv


def test_parse_seeds_forms():
    assert parse_seeds("1..5") == [1, 2, 3, 4, 5]
    assert parse_seeds("3,7,9") == [3, 7, 9]
    assert parse_seeds("4") == [4]


def test_run_writes_outputs(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(
        ["run", "--n", "10", "--vmax", "0", "--t", "10", "--seed", "3", "--out", str(out)]
    )
    assert code == 0
    for name in ("trace.csv", "series.csv", "summary.csv"):
        assert (out / name).exists()
    stdout = capsys.readouterr().out
    assert "avg_clusters" in stdout
    rows = read_summary_csv(str(out / "summary.csv"))
    assert len(rows) == 1 and rows[0]["n"] == "10"


def test_flags_override_config_file(tmp_path):
    cfg_path = tmp_path / "scenario.cfg"
    cfg_path.write_text(yaml.safe_dump({"n": 5, "vmax": 0.0, "sim_time": 10, "seed": 1}))
    out = tmp_path / "out"
    code = main(["run", "--config", str(cfg_path), "--n", "8", "--out", str(out)])
    assert code == 0
    rows = read_summary_csv(str(out / "summary.csv"))
    assert rows[0]["n"] == "8"
    assert rows[0]["sim_time"] == "10"  # untouched file value survives


def test_sweep_produces_cartesian_summary(tmp_path):
    out = tmp_path / "sweep"
    code = main(
        [
            "sweep",
            "--axis",
            "range",
            "--values",
            "100,150",
            "--seeds",
            "1..2",
            "--n",
            "8",
            "--vmax",
            "0",
            "--t",
            "10",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    rows = read_summary_csv(str(out / "summary.csv"))
    assert len(rows) == 4
    assert [(r["range_m"], r["seed"]) for r in rows] == [
        ("100.0", "1"),
        ("100.0", "2"),
        ("150.0", "1"),
        ("150.0", "2"),
    ]


def test_sweep_rerun_appends(tmp_path):
    out = tmp_path / "sweep"
    args = [
        "sweep",
        "--axis",
        "vmax",
        "--values",
        "0",
        "--n",
        "6",
        "--t",
        "10",
        "--out",
        str(out),
    ]
    assert main(args + ["--seeds", "1"]) == 0
    assert main(args + ["--seeds", "2"]) == 0
    rows = read_summary_csv(str(out / "summary.csv"))
    assert [r["seed"] for r in rows] == ["1", "2"]


def test_audit_subcommand_passes(capsys):
    code = main(["audit", "--n", "5", "--t", "10"])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "PASS static_n5" in stdout
    assert "FAIL" not in stdout


def test_bad_flag_exits_with_usage():
    with pytest.raises(SystemExit) as err:
        main(["run", "--definitely-not-a-flag"])
    assert err.value.code == 2


def test_invalid_config_reports_field(tmp_path, capsys):
    cfg_path = tmp_path / "broken.cfg"
    cfg_path.write_text(yaml.safe_dump({"n": 0}))
    code = main(["run", "--config", str(cfg_path), "--out", str(tmp_path / "o")])
    assert code == 2
    assert "n:" in capsys.readouterr().err


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SDDWCA_OUT", str(tmp_path / "env_out"))
    monkeypatch.chdir(tmp_path)
    code = main(["run", "--n", "5", "--vmax", "0", "--t", "10"])
    assert code == 0
    assert (tmp_path / "env_out" / "summary.csv").exists()
