"""Result rows and their CSV / JSONL persistence.

Column order is the dataclass field order and never changes between runs.
Floats are written with 17 significant digits, which reproduces every double
exactly on reading.  Lists are stored as JSON arrays (inside one CSV cell).
"""
from __future__ import annotations

import csv
import dataclasses
import json
import math
import typing
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable


@dataclass(frozen=True)
class ResultRecord:
    kind: str
    grid_index: int
    replication: int
    d: int
    n: int
    lam: float
    p: float
    t: float
    seed: int
    is_connected: bool | None = None
    Y: int | None = None
    num_components: int | None = None
    size_of_largest: int | None = None
    giant_plus_isolated: bool | None = None
    hyperplanes_L: list[int] | None = None  # connected L-hyperplanes per direction
    hyperplanes_R: list[int] | None = None
    alpha: float | None = None
    B: bool | None = None
    explored: int | None = None
    starved: int | None = None
    step2_failed_first: int | None = None
    w_le1_first: int | None = None
    error: str | None = None
    wall_time: float | None = None

    def sort_key(self):
        return self.grid_index, self.replication


@dataclass(frozen=True)
class SummaryRow:
    kind: str
    grid_index: int
    d: int
    n: int
    lam: float
    p: float
    t: float
    records: int
    errors: int
    p_connected: float | None
    ci_low: float | None
    ci_high: float | None
    predicted: float
    mean_Y: float | None
    y_pmf: list[float] | None
    mu: float
    tv_poisson: float | None
    factorial_moments: list[float] | None
    B_freq: float | None
    giant_plus_isolated_freq: float | None
    giant_plus_isolated_given_B: float | None
    reference: float | None = None


TIMING_FIELDS = ("wall_time",)


def columns(cls, include_timing: bool = False) -> list[str]:
    names = [f.name for f in dataclasses.fields(cls)]
    if not include_timing:
        names = [x for x in names if x not in TIMING_FIELDS]
    return names


def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _format_float(v)
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_json_value(x) for x in v) + "]"
    return json.dumps(v)


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, list, tuple)):
        return _json_value(v)
    if isinstance(v, float):
        return _format_float(v)
    return str(v)


def format_row(row, fmt: str, include_timing: bool = False) -> str:
    names = columns(type(row), include_timing)
    if fmt == "jsonl":
        return "{" + ",".join(f"{json.dumps(k)}:{_json_value(getattr(row, k))}" for k in names) + "}"
    raise ValueError(f"format_row handles jsonl only, got {fmt!r}")


def emit(rows: Iterable, fmt: str, path, *, cls=None, include_timing: bool = False) -> Path:
    """Write rows to ``path`` as ``csv`` or ``jsonl``.

    ``cls`` fixes the CSV header when ``rows`` may be empty (defaults to
    :class:`ResultRecord`).  I/O failures are re-raised with the path attached.
    """
    path = Path(path)
    rows = list(rows)
    cls = cls or (type(rows[0]) if rows else ResultRecord)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            write_rows(fh, rows, fmt, cls=cls, include_timing=include_timing, header=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def write_rows(fh, rows, fmt: str, *, cls, include_timing: bool = False, header: bool = False):
    if fmt == "csv":
        names = columns(cls, include_timing)
        writer = csv.writer(fh, lineterminator="\n")
        if header:
            writer.writerow(names)
        for row in rows:
            writer.writerow([_csv_value(getattr(row, k)) for k in names])
    elif fmt == "jsonl":
        for row in rows:
            fh.write(format_row(row, "jsonl", include_timing) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}; use csv or jsonl")
    fh.flush()


def _converter(tp):
    origin = typing.get_origin(tp)
    args = [a for a in typing.get_args(tp) if a is not type(None)]
    if origin is typing.Union or (origin is not None and type(None) in typing.get_args(tp)):
        return _converter(args[0])
    if origin is list or tp is list:
        return lambda s: json.loads(s) if isinstance(s, str) else s
    if tp is bool:
        return lambda s: s if isinstance(s, bool) else json.loads(s)
    if tp is int:
        return int
    if tp is float:
        return lambda s: float(s)
    return str


def read_rows(path, fmt: str | None = None, cls=ResultRecord) -> list:
    """Inverse of :func:`emit`."""
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".")
    hints = typing.get_type_hints(cls)
    convert = {name: _converter(tp) for name, tp in hints.items()}
    out = []
    with path.open(encoding="utf-8", newline="") as fh:
        if fmt == "csv":
            for raw in csv.DictReader(fh):
                out.append(cls(**{k: (None if v == "" else convert[k](v)) for k, v in raw.items()}))
        elif fmt == "jsonl":
            for line in fh:
                if line.strip():
                    raw = json.loads(line)
                    out.append(cls(**{k: (None if v is None else convert[k](v)) for k, v in raw.items()}))
        else:
            raise ValueError(f"unknown format {fmt!r}")
    return out
