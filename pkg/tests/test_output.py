import json
import math

import pytest

from mixed_gelfand.errors import InputError
from mixed_gelfand.output import (
    PLOT_AXES,
    RunHeader,
    emit_plot_data,
    format_value,
    read_header,
    render_csv,
    render_json,
    write_all_atomic,
    write_atomic,
)

HASH = "ab" * 32


def test_format_value():
    assert format_value(None) == ""
    assert format_value(True) == "true"
    assert format_value(0.1) == "0.1"
    assert format_value(1 / 3) == repr(1 / 3)
    assert format_value(math.inf) == "inf"
    assert format_value(7) == "7"


def test_render_csv_header_and_rows():
    header = RunHeader("0.1.0", 3, HASH, ("note one",))
    text = render_csv([{"a": 1, "b": 0.5}, {"a": 2, "b": None}], ["a", "b"], header)
    assert text.splitlines() == [
        f"# mixed-gelfand 0.1.0 seed=3 config={HASH}",
        "# note one",
        "a,b",
        "1,0.5",
        "2,",
    ]


def test_render_json_encodes_infinities():
    document = json.loads(render_json([{"x": math.inf}], RunHeader("0.1.0", 1, HASH), {"k": 1}))
    assert document["meta"]["seed"] == 1
    assert document["rows"] == [{"x": "inf"}]
    assert document["summary"] == {"k": 1}


def test_write_atomic_and_read_header(tmp_path):
    header = RunHeader("0.1.0", 42, HASH)
    path = write_atomic(tmp_path / "sub" / "out.csv", render_csv([], ["a"], header))
    assert read_header(path) == header
    json_path = write_atomic(tmp_path / "out.json", render_json([], header))
    assert read_header(json_path).seed == 42
    assert [p.name for p in (tmp_path / "sub").iterdir()] == ["out.csv"]


def test_write_all_atomic_keeps_old_files_when_staging_fails(tmp_path):
    main = tmp_path / "main.csv"
    main.write_text("old\n", encoding="utf-8")
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(OSError):
        write_all_atomic([(main, "new\n"), (blocker / "plot.dat", "1 2\n")])
    assert main.read_text(encoding="utf-8") == "old\n"
    assert sorted(p.name for p in tmp_path.iterdir()) == ["blocker", "main.csv"]


def test_write_all_atomic_writes_every_target(tmp_path):
    targets = [(tmp_path / "a.csv", "a\n"), (tmp_path / "plots" / "a.dat", "1 2\n")]
    assert write_all_atomic(targets) == [path for path, _ in targets]
    assert [path.read_text(encoding="utf-8") for path, _ in targets] == ["a\n", "1 2\n"]
    assert not list(tmp_path.glob("**/*.tmp"))


def test_read_header_rejects_plain_files(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(InputError):
        read_header(path)


def test_emit_plot_data():
    rows = [
        {"b": 16, "d": 4, "s": 1, "mean": 2.0, "std_error": 0.1},
        {"b": 16, "d": 4, "s": 2, "mean": 3.0, "std_error": None},
    ]
    lines = emit_plot_data(rows, PLOT_AXES["width"]).splitlines()
    assert lines == ["series,x,y,error", "b=16;d=4,1.0,2.0,0.1", "b=16;d=4,2.0,3.0,"]


def test_emit_plot_data_log_axes():
    rows = [{"variant": "sharp", "total_m": math.e, "aggregate": 1.0}]
    lines = emit_plot_data(rows, PLOT_AXES["besov-rate"]).splitlines()
    assert lines[1] == "variant=sharp,1.0,0.0"


def test_emit_plot_data_needs_rows():
    with pytest.raises(InputError):
        emit_plot_data([], PLOT_AXES["phase"])
