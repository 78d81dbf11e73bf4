import json

from click.testing import CliRunner

from bftest import boolfn
from bftest.cli import main


def test_test_command_outputs_report(tmp_path):
    spec = boolfn.LinearF2(10, frozenset({2, 7}))
    spec_file = tmp_path / "spec.json"
    spec_file.write_text(json.dumps(spec.to_dict()))
    out_file = tmp_path / "report.json"
    runner = CliRunner()
    res = runner.invoke(main, ["test", "--class", "linear", "--spec",
                               str(spec_file), "--epsilon", "0.2", "--seed",
                               "3", "--trials", "5", "--out", str(out_file)])
    assert res.exit_code == 0
    report = json.loads(res.output)
    assert report["accept_rate"] >= 0.6
    assert json.loads(out_file.read_text()) == report


def test_test_command_config_error_exit_code():
    runner = CliRunner()
    res = runner.invoke(main, ["test", "--class", "linear", "--spec",
                               "/nonexistent.json", "--epsilon", "0.2"])
    assert res.exit_code == 2


def test_learn_command(tmp_path):
    spec = boolfn.MonotoneDnf(8, ((1, 4), (6,)))
    spec_file = tmp_path / "spec.json"
    spec_file.write_text(json.dumps(spec.to_dict()))
    runner = CliRunner()
    res = runner.invoke(main, ["learn", "--learner", "monotone", "--spec",
                               str(spec_file), "--epsilon", "0.05", "--delta",
                               "0.1", "--s", "2", "--r", "2", "--seed", "1"])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["distance"] <= 0.05
    assert out["queries"]["mq"] > 0


def test_bench_command(tmp_path):
    grid_file = tmp_path / "grid.json"
    grid_file.write_text(json.dumps({"k": [2, 4], "epsilon": [0.2], "seeds": 2}))
    out_file = tmp_path / "bench.csv"
    runner = CliRunner()
    res = runner.invoke(main, ["bench", "--grid", str(grid_file), "--out",
                               str(out_file)])
    assert res.exit_code == 0
    lines = out_file.read_text().strip().splitlines()
    assert len(lines) == 3  # header + 2 rows
    assert lines[0].startswith("k,epsilon,improved")


def test_selftest_small_run():
    runner = CliRunner()
    res = runner.invoke(main, ["selftest", "--trials", "20", "--exact-cases",
                               "200", "--learner-runs", "5"])
    assert res.exit_code == 0
    assert "PASS completeness[junta]" in res.output
    assert "FAIL" not in res.output
