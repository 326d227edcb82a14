"""Output files: atomic writes, reproducibility header, CSV/JSON and plot data.

CSV files start with comment lines

    # mixed-gelfand <version> seed=<seed> config=<sha256>

followed by optional ``# note`` lines, then a header row. JSON files carry
the same information under ``"meta"``.
"""
import csv
import io
import json
import logging
import math
import os
import re
import tempfile
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import InputError

logger = logging.getLogger(__name__)

PROGRAM = "mixed-gelfand"
HEADER_PATTERN = re.compile(rf"^# {PROGRAM} (\S+) seed=(\d+) config=([0-9a-f]{{64}})$")


@dataclass(frozen=True)
class RunHeader:
    version: str
    seed: int
    config_hash: str
    notes: Tuple[str, ...] = ()

    def lines(self) -> List[str]:
        first = f"# {PROGRAM} {self.version} seed={self.seed} config={self.config_hash}"
        return [first] + [f"# {note}" for note in self.notes]

    def meta(self) -> Dict:
        return {
            "program": PROGRAM,
            "version": self.version,
            "seed": self.seed,
            "config_hash": self.config_hash,
            "notes": list(self.notes),
        }


def format_value(value: Any) -> str:
    """Shortest round-trip text for CSV cells"""
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def render_csv(rows: Sequence[Dict], columns: Sequence[str], header: RunHeader) -> str:
    buffer = io.StringIO()
    for line in header.lines():
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buffer.getvalue()


def render_json(rows: Sequence[Dict], header: RunHeader, summary: Optional[Dict] = None) -> str:
    document = {"meta": header.meta(), "rows": _json_value(list(rows))}
    if summary is not None:
        document["summary"] = _json_value(summary)
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _stage(path: Path, text: str) -> str:
    """Write ``text`` to a temp file next to ``path``; returns the temp name"""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except BaseException:
        os.unlink(tmp_name)
        raise
    return tmp_name


def write_atomic(path: Path, text: str) -> Path:
    """Write through a temp file in the target directory, then rename"""
    return write_all_atomic([(path, text)])[0]


def write_all_atomic(items: Sequence[Tuple[Path, str]]) -> List[Path]:
    """Stage every file first and rename only when all of them staged.

    A failure while staging removes the temp files and leaves every
    target untouched, so existing outputs survive a failed run.

    Args:
        items: (target path, text) pairs.

    Returns:
        The target paths, in order.
    """
    staged: List[Tuple[str, Path]] = []
    try:
        for path, text in items:
            path = Path(path)
            staged.append((_stage(path, text), path))
    except BaseException:
        for tmp_name, _ in staged:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
        raise
    written: List[Path] = []
    try:
        for tmp_name, path in staged:
            os.replace(tmp_name, path)
            written.append(path)
            logger.debug(f"[output] 已写入 {path}")
    finally:
        for tmp_name, _ in staged[len(written):]:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
    return written


def read_header(path: Path) -> RunHeader:
    """Parse the reproducibility header of a CSV or JSON output"""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        meta = json.loads(text).get("meta", {})
        try:
            return RunHeader(meta["version"], int(meta["seed"]), meta["config_hash"], tuple(meta.get("notes", ())))
        except KeyError as e:
            raise InputError(f"{path} has no reproducibility metadata") from e
    first = text.split("\n", 1)[0]
    match = HEADER_PATTERN.match(first)
    if match is None:
        raise InputError(f"{path} has no reproducibility header")
    return RunHeader(match.group(1), int(match.group(2)), match.group(3))


@dataclass(frozen=True)
class AxesSpec:
    """Which columns become (series, x, y[, error]) in long format"""
    series: Tuple[str, ...]
    x: str
    y: str
    error: Optional[str] = None
    log_x: bool = False
    log_y: bool = False


PLOT_AXES = {
    "phase": AxesSpec(series=("mode", "s_or_t"), x="m", y="success_rate"),
    "width": AxesSpec(series=("b", "d"), x="s", y="mean", error="std_error"),
    "bounds": AxesSpec(series=("variant",), x="m", y="value"),
    "besov-rate": AxesSpec(series=("variant",), x="total_m", y="aggregate", log_x=True, log_y=True),
}


def emit_plot_data(rows: Sequence[Dict], axes: AxesSpec) -> str:
    """Long-format CSV with one (series, x, y[, error]) line per row"""
    if not rows:
        raise InputError("plot data needs a nonempty table")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    columns = ["series", "x", "y"] + (["error"] if axes.error else [])
    writer.writerow(columns)
    for row in rows:
        series = ";".join(f"{key}={format_value(row[key])}" for key in axes.series)
        x = float(row[axes.x])
        y = float(row[axes.y])
        if axes.log_x:
            x = math.log(x)
        if axes.log_y:
            y = math.log(y) if y > 0 else -math.inf
        line = [series, format_value(x), format_value(y)]
        if axes.error:
            line.append(format_value(row.get(axes.error)))
        writer.writerow(line)
    return buffer.getvalue()
