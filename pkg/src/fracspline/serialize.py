"""Deterministic CSV/JSON writers and the matching readers.

CSV floats use 17 significant digits (``%.17g``), which round-trips every
double.  JSON floats use Python's shortest round-trip ``repr``; keys are
sorted.  Files are written to a temporary sibling and renamed into place.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .splines import GridFunction


def fmt(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0"
    return "%.17g" % x


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# CSV


def table_to_csv(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def grid_to_csv(grid: GridFunction, x_name: str = "x") -> str:
    if grid.is_complex:
        header = [x_name, "re", "im"]
        rows = ([x, complex(v).real, complex(v).imag] for x, v in zip(grid.xs, grid.values))
    else:
        header = [x_name, "value"]
        rows = ([x, v] for x, v in zip(grid.xs, grid.values))
    return table_to_csv(header, rows)


def write_grid_csv(path, grid: GridFunction, x_name: str = "x") -> None:
    atomic_write_text(path, grid_to_csv(grid, x_name))


def write_table_csv(path, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    atomic_write_text(path, table_to_csv(header, rows))


def read_table_csv(path) -> tuple[list[str], list[list[float]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return header, rows


def read_grid_csv(path) -> GridFunction:
    """Inverse of :func:`write_grid_csv` for ``x,value`` and ``x,re,im`` files."""
    header, rows = read_table_csv(path)
    if len(rows) == 0:
        raise ValueError(f"{path}: no samples")
    if header[1:] == ["re", "im"]:
        values = tuple(complex(r[1], r[2]) for r in rows)
    elif header[1:] == ["value"]:
        values = tuple(r[1] for r in rows)
    else:
        raise ValueError(f"{path}: unexpected header {header}")
    start = rows[0][0]
    step = rows[1][0] - rows[0][0] if len(rows) > 1 else 1.0
    return GridFunction(start, step, values)


# ---------------------------------------------------------------------------
# JSON


def to_jsonable(value: Any) -> Any:
    """Fractions become ``"p/q"`` strings, complex numbers ``[re, im]`` pairs."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path, obj: Any) -> None:
    atomic_write_text(path, dumps(obj))


def read_json(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)
