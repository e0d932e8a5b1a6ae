"""Text formats for fields, component matrices and slices.

A field file is UTF-8 text: ``# key = value`` header lines, then one row per
time level holding ``nx`` space-separated floats (a 1-D field is a single
row). Floats are written with 17 significant digits, which round-trips
64-bit values exactly.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from . import __version__
from .errors import FieldFormatError
from .transform import SampledField

CREATED_BY = f"fuzzywave {__version__}"
_GRID_KEYS = ("kind", "ndim", "nx", "nt", "a", "b", "t0", "T")


def _fmt(v: float) -> str:
    return "%.17g" % v


def format_field(f: SampledField, kind: str | None = None) -> str:
    meta = {str(k): str(v) for k, v in f.meta.items()}
    kind = kind or meta.pop("kind", "field")
    meta.pop("kind", None)
    for k in _GRID_KEYS:
        meta.pop(k, None)
    meta.setdefault("created-by", CREATED_BY)
    head = {"kind": kind, "ndim": str(f.ndim), "nx": str(f.nx), "nt": str(f.nt),
            "a": repr(f.x_range[0]), "b": repr(f.x_range[1])}
    if f.t_range is not None:
        head["t0"], head["T"] = repr(f.t_range[0]), repr(f.t_range[1])
    lines = [f"# {k} = {v}" for k, v in {**head, **meta}.items()]
    rows = f.values.reshape(f.nx, -1).T
    lines.extend(" ".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_field(f: SampledField, path, kind: str | None = None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_field(f, kind), encoding="utf-8")
    return path


def parse_field(text: str, source="<text>") -> SampledField:
    header, rows = {}, []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" not in body:
                raise FieldFormatError(f"{source}:{lineno}: malformed header line {line!r}")
            k, v = (s.strip() for s in body.split("=", 1))
            header[k] = v
        elif line.strip():
            try:
                rows.append([float(tok) for tok in line.split()])
            except ValueError:
                raise FieldFormatError(f"{source}:{lineno}: non-numeric value") from None
    try:
        ndim, nx, nt = int(header["ndim"]), int(header["nx"]), int(header["nt"])
        x_range = (float(header["a"]), float(header["b"]))
        t_range = (float(header["t0"]), float(header["T"])) if ndim == 2 else None
    except (KeyError, ValueError) as exc:
        raise FieldFormatError(f"{source}: malformed header ({exc})") from None
    if len(rows) != nt:
        raise FieldFormatError(f"{source}: expected {nt} rows, found {len(rows)}")
    for k, row in enumerate(rows):
        if len(row) != nx:
            raise FieldFormatError(f"{source}: row {k + 1} has {len(row)} values, expected {nx}")
    vals = np.array(rows, dtype=float).T
    if ndim == 1:
        vals = vals[:, 0]
    meta = {k: v for k, v in header.items() if k not in _GRID_KEYS[1:]}
    return SampledField(vals, x_range, t_range, meta=meta)


def read_field(path) -> SampledField:
    path = Path(path)
    return parse_field(path.read_text(encoding="utf-8"), str(path))


def write_slice(path, coords, values, header: dict | None = None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {k} = {v}" for k, v in (header or {}).items()]
    lines.extend(f"{_fmt(x)} {_fmt(v)}" for x, v in zip(coords, values))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_slice(path):
    data = np.loadtxt(path, comments="#", ndmin=2)
    return data[:, 0], data[:, 1]
