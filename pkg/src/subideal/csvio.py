"""CSV formats for sampled signals and spectra.

Files may start with ``#`` comment lines; a line of the form
``# meta: {json}`` carries run metadata. The first non-comment line is the
column header (``t,value`` for signals). Values are written with ``repr``
so output is byte-stable across runs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import IO, Any, Iterable, Mapping, Sequence

import numpy as np

from .spectral import SampledSignal

__all__ = [
    "CSVFormatError",
    "SIGNAL_HEADER",
    "SPECTRUM_HEADER",
    "format_float",
    "write_table",
    "read_table",
    "write_signal_csv",
    "read_signal_csv",
    "signal_to_csv",
    "dump_json",
    "to_jsonable",
]

SIGNAL_HEADER = ("t", "value")
SPECTRUM_HEADER = ("omega", "re", "im", "gain", "phase_rad")
UNIFORM_RTOL = 1e-9


class CSVFormatError(ValueError):
    """Malformed or non-uniform CSV input."""


def format_float(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0.0"
    return repr(x)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    return obj


def dump_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, allow_nan=False)


def write_table(
    out: IO[str],
    header: Sequence[str],
    columns: Sequence[Iterable[float]],
    meta: Mapping[str, Any] | None = None,
) -> None:
    if meta is not None:
        out.write("# meta: " + dump_json(meta) + "\n")
    out.write(",".join(header) + "\n")
    for row in zip(*columns):
        out.write(",".join(format_float(v) for v in row) + "\n")


def read_table(source: str | Path | IO[str]) -> tuple[list[str], np.ndarray, dict]:
    """Parse a CSV table into ``(header, data, meta)``.

    ``data`` has one column per header field.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    meta: dict = {}
    lines = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("meta:"):
                try:
                    meta = json.loads(body[len("meta:") :])
                except json.JSONDecodeError as exc:
                    raise CSVFormatError(f"unreadable metadata line: {exc}") from None
            continue
        lines.append(stripped)
    if not lines:
        raise CSVFormatError("no header row")
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    header = [h.strip() for h in rows[0]]
    try:
        data = np.array([[float(v) for v in row] for row in rows[1:]], dtype=np.float64)
    except ValueError as exc:
        raise CSVFormatError(f"non-numeric field: {exc}") from None
    if data.size == 0:
        data = data.reshape(0, len(header))
    if data.ndim != 2 or data.shape[1] != len(header):
        raise CSVFormatError(f"rows must have {len(header)} fields")
    if not np.all(np.isfinite(data)):
        raise CSVFormatError("non-finite value in table")
    return header, data, meta


def read_signal_csv(source: str | Path | IO[str]) -> SampledSignal:
    """Load a ``t,value`` file, checking uniform spacing to relative 1e-9."""
    header, data, meta = read_table(source)
    if tuple(header) != SIGNAL_HEADER:
        raise CSVFormatError(f"expected header 't,value', got {','.join(header)!r}")
    if data.shape[0] < 2:
        raise CSVFormatError("a signal needs at least two samples")
    t = data[:, 0]
    dt = (t[-1] - t[0]) / (t.size - 1)
    if dt <= 0:
        raise CSVFormatError("time column must be increasing")
    expected = t[0] + np.arange(t.size) * dt
    # float rounding of large time stamps is not a spacing error
    allowed = UNIFORM_RTOL * dt + 8 * np.finfo(np.float64).eps * np.max(np.abs(t))
    if np.max(np.abs(t - expected)) > allowed:
        raise CSVFormatError("time column is not uniformly spaced")
    return SampledSignal(float(t[0]), float(dt), data[:, 1], meta=meta)


def signal_to_csv(signal: SampledSignal, meta: Mapping[str, Any] | None = None) -> str:
    buf = io.StringIO()
    write_table(buf, SIGNAL_HEADER, [signal.times, signal.values], meta)
    return buf.getvalue()


def write_signal_csv(path: str | Path, signal: SampledSignal, meta: Mapping[str, Any] | None = None) -> None:
    Path(path).write_text(signal_to_csv(signal, meta))
