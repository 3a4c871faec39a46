# Render report
# - Report
# - ReportEncoder
# - render_json / render_csv / render_table_csv
# - write_report

import csv
import dataclasses
import io
import json
import logging
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    include_timings: bool = False
    # tabular payload of the scan command
    columns: Optional[List[str]] = None
    column_docs: Optional[List[str]] = None
    rows: Optional[List[Sequence[float]]] = None

    def warn(self, message: str) -> None:
        logger.warning(message)
        self.diagnostics.append(message)

    def fail(self, message: str) -> None:
        logger.error(message)
        self.failures.append(message)

    @contextmanager
    def timed(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = time.perf_counter() - start
            logger.debug(f"{self.command}: {name} took {self.timings[name]:.3f}s")

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "diagnostics": self.diagnostics,
            "failures": self.failures,
        }
        if self.include_timings:
            data["timings"] = self.timings
        if self.columns is not None:
            data["columns"] = self.columns
            data["rows"] = self.rows
        return data


class ReportEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        return super().default(obj)


def _plain(obj):
    """Builtin scalars, lists and dicts only, so the rendered text never depends on numpy types."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) + 0.0
    return obj


def render_json(report: Report) -> str:
    """Sorted keys, two-space indent. Floats use the shortest repr that round-trips, not a fixed 17 digits."""
    return json.dumps(_plain(report.to_dict()), cls=ReportEncoder, sort_keys=True, indent=2) + "\n"


def format_number(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % (float(x) + 0.0)
    return str(x)


def _flatten(prefix: str, value, out: List[tuple]) -> None:
    value = _plain(value)
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else key, value[key], out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, item in enumerate(value):
            _flatten(f"{prefix}.{i}", item, out)
    elif isinstance(value, list):
        out.append((prefix, " ".join(format_number(v) for v in value)))
    else:
        out.append((prefix, format_number(value)))


def render_table_csv(columns: Sequence[str], rows: Sequence[Sequence], docs: Sequence[str] = None) -> str:
    buffer = io.StringIO()
    if docs:
        buffer.write("# " + "; ".join(f"{c}: {d}" for c, d in zip(columns, docs)) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buffer.getvalue()


def render_csv(report: Report) -> str:
    if report.columns is not None:
        return render_table_csv(report.columns, report.rows or [], report.column_docs)
    flat: List[tuple] = []
    _flatten("", {k: v for k, v in report.to_dict().items() if k != "command"}, flat)
    return render_table_csv(["key", "value"], flat, [f"{report.command} report field", "value"])


def render_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    raise ValueError(f"Unknown report format: {fmt}")


def write_report(report: Report, fmt: str, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{report.command}.{fmt}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(render_report(report, fmt))
    logger.info(f"Report written to {path}")
    return path
