import json
import re

import pytest
from click.testing import CliRunner

from mixed_gelfand import __version__
from mixed_gelfand.cli import EXIT_CONFIG_ERROR, EXIT_MODULE_ERROR, EXIT_VERIFY_MISMATCH, cli
from mixed_gelfand.output import HEADER_PATTERN


@pytest.fixture
def runner():
    return CliRunner()


WIDTH_CONFIG = {"subcommand": "width", "params": {"grid": [[8, 2, 1], [8, 2, 2]], "trials": 20}}


def test_version(runner):
    result = runner.invoke(cli, ["version"])
    assert result.exit_code == 0
    assert f"mixed-gelfand {__version__}" in result.output


def test_bounds_output_is_reproducible(runner, tmp_path, write_config):
    config = write_config({"subcommand": "bounds", "params": {"m_grid": [1, 16, 256]}})
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        result = runner.invoke(cli, ["bounds", "--config", str(config), "--seed", "7", "--out", str(out)])
        assert result.exit_code == 0, result.output
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text(encoding="utf-8").splitlines()
    match = HEADER_PATTERN.match(lines[0])
    assert match is not None and match.group(2) == "7"
    assert lines[1] == "b,d,m,p,q,variant,constant,regime,value"
    assert len(lines) == 5


def test_threads_do_not_change_output(runner, tmp_path, write_config):
    config = write_config(WIDTH_CONFIG)
    outs = []
    for threads in ("1", "3"):
        out = tmp_path / f"w{threads}.csv"
        result = runner.invoke(cli, ["width", "--config", str(config), "--threads", threads, "--out", str(out)])
        assert result.exit_code == 0, result.output
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_malformed_config_exits_before_writing(runner, tmp_path):
    config = tmp_path / "bad.json"
    config.write_text("{ broken", encoding="utf-8")
    out = tmp_path / "out.csv"
    result = runner.invoke(cli, ["norm", "--config", str(config), "--out", str(out)])
    assert result.exit_code == EXIT_CONFIG_ERROR
    assert not out.exists()


def test_invalid_parameters_exit_with_config_error(runner, tmp_path, write_config):
    config = write_config({"subcommand": "bounds", "params": {"m_grid": []}})
    result = runner.invoke(cli, ["bounds", "--config", str(config)])
    assert result.exit_code == EXIT_CONFIG_ERROR


def test_module_error_leaves_no_partial_output(runner, tmp_path, write_config):
    config = write_config({"subcommand": "besov-rate", "params": {"r": 0.7}})
    out = tmp_path / "rate.csv"
    result = runner.invoke(cli, ["besov-rate", "--config", str(config), "--out", str(out)])
    assert result.exit_code == EXIT_MODULE_ERROR
    assert not out.exists()
    assert list(tmp_path.iterdir()) == [config]


def test_norm_prints_table_without_out(runner, write_config):
    config = write_config({"subcommand": "norm", "params": {"b": 2, "d": 3, "values": [[1, 1, 1], [1, 1, 1]]}})
    result = runner.invoke(cli, ["norm", "--config", str(config)])
    assert result.exit_code == 0
    assert "quantity,value" in result.output
    assert re.search(r"^mixed_norm,3\.464101615137754\d*$", result.output, re.MULTILINE)


def test_json_format(runner, tmp_path, write_config):
    config = write_config({"subcommand": "packing", "params": {"b": 8, "d": 8, "s": 1, "t": 1}})
    out = tmp_path / "packing.json"
    result = runner.invoke(cli, ["packing", "--config", str(config), "--format", "json", "--out", str(out)])
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["meta"]["seed"] == 0
    assert document["rows"][0]["holds"] is True
    assert document["summary"]["parameters"]["b"] == 8
    assert document["summary"]["cardinality"] >= 1


def test_besov_rate_writes_summary(runner, tmp_path, write_config):
    config = write_config({"subcommand": "besov-rate", "params": {"J_range": [8, 9, 10, 11, 12]}})
    out = tmp_path / "rate.csv"
    plot = tmp_path / "rate-plot.csv"
    result = runner.invoke(cli, ["besov-rate", "--config", str(config), "--out", str(out), "--plot-data", str(plot)])
    assert result.exit_code == 0, result.output
    summary = json.loads((tmp_path / "rate.summary.json").read_text(encoding="utf-8"))
    assert summary["summary"]["variant"] == "sharp"
    assert summary["summary"]["slope"] < 0
    assert plot.read_text(encoding="utf-8").splitlines()[0] == "series,x,y"


def test_width_plot_data(runner, tmp_path, write_config):
    config = write_config(WIDTH_CONFIG)
    plot = tmp_path / "plot.csv"
    result = runner.invoke(cli, ["width", "--config", str(config), "--out", str(tmp_path / "w.csv"),
                                 "--plot-data", str(plot)])
    assert result.exit_code == 0, result.output
    lines = plot.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "series,x,y,error"
    assert len(lines) == 3


def test_verify_roundtrip(runner, tmp_path, write_config):
    config = write_config(WIDTH_CONFIG)
    out = tmp_path / "w.csv"
    result = runner.invoke(cli, ["width", "--config", str(config), "--seed", "12", "--out", str(out)])
    assert result.exit_code == 0, result.output

    result = runner.invoke(cli, ["verify", str(out), "--config", str(config)])
    assert result.exit_code == 0, result.output
    result = runner.invoke(cli, ["verify", str(out), "--config", str(config), "--rerun"])
    assert result.exit_code == 0, result.output

    other = write_config({"subcommand": "width", "params": {"grid": [[8, 2, 1]], "trials": 20}}, name="other.json")
    result = runner.invoke(cli, ["verify", str(out), "--config", str(other)])
    assert result.exit_code == EXIT_VERIFY_MISMATCH


def test_verify_detects_edited_rows(runner, tmp_path, write_config):
    config = write_config(WIDTH_CONFIG)
    out = tmp_path / "w.csv"
    assert runner.invoke(cli, ["width", "--config", str(config), "--out", str(out)]).exit_code == 0
    out.write_text(out.read_text(encoding="utf-8").replace(",20,", ",21,", 1), encoding="utf-8")
    result = runner.invoke(cli, ["verify", str(out), "--config", str(config), "--rerun"])
    assert result.exit_code == EXIT_VERIFY_MISMATCH


def test_verify_unknown_subcommand_is_config_error(runner, tmp_path, write_config):
    out = tmp_path / "w.csv"
    result = runner.invoke(cli, ["width", "--config", str(write_config(WIDTH_CONFIG)), "--out", str(out)])
    assert result.exit_code == 0, result.output
    bogus = write_config({"subcommand": "bogus", "params": {}}, name="bogus.json")
    result = runner.invoke(cli, ["verify", str(out), "--config", str(bogus)])
    assert result.exit_code == EXIT_CONFIG_ERROR
    assert "未知子命令" in result.output
    assert result.exception is None or isinstance(result.exception, SystemExit)


def test_recover_marks_typical_case(runner, tmp_path, write_config):
    config = write_config({"subcommand": "recover", "params": {"m": 12, "trials": 2}})
    out = tmp_path / "recover.csv"
    result = runner.invoke(cli, ["recover", "--config", str(config), "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[1].startswith("# typical-case evidence")
    assert len(lines) == 5
