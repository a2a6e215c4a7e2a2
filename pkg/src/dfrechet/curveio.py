"""Reading and writing named curves as CSV or JSON.

CSV: header ``[name,]x,y[,z,...]``, one vertex per row, ``#`` comment lines.
Without a ``name`` column the file holds a single curve called ``curve``.
JSON: ``{"curves": [{"name": str, "dim": int, "vertices": [[...], ...]}]}``.
Floats are written with ``repr``, the shortest string that reads back exactly.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .geometry import MAX_DIM, as_curve

_AXES = ["x", "y", "z"] + [f"x{k}" for k in range(3, MAX_DIM)]


class CurveFileError(ValueError):
    pass


def _axis_names(d: int) -> list[str]:
    return _AXES[:d]


def _finish(curves: dict[str, list], source: str) -> dict[str, np.ndarray]:
    out = {}
    for name, rows in curves.items():
        try:
            out[name] = as_curve(rows)
        except ValueError as exc:
            raise CurveFileError(f"{source}: curve {name!r}: {exc}") from None
    dims = {c.shape[1] for c in out.values()}
    if len(dims) > 1:
        raise CurveFileError(f"{source}: curves of mixed dimension {sorted(dims)}")
    if not out:
        raise CurveFileError(f"{source}: no curves found")
    return out


def parse_csv(text: str, source: str = "<csv>") -> dict[str, np.ndarray]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise CurveFileError(f"{source}: empty file")
    reader = csv.reader(lines)
    header = [h.strip() for h in next(reader)]
    named = bool(header) and header[0] == "name"
    axes = header[1:] if named else header
    if not axes or axes != _axis_names(len(axes)):
        raise CurveFileError(f"{source}: header must be [name,]x,y[,z,...], got {header}")
    curves: dict[str, list] = {}
    for lineno, row in enumerate(reader, start=2):
        row = [f.strip() for f in row]
        if len(row) != len(header):
            raise CurveFileError(f"{source}: row {lineno} has {len(row)} fields, "
                                 f"expected {len(header)}")
        name = row[0] if named else "curve"
        try:
            vals = [float(f) for f in (row[1:] if named else row)]
        except ValueError:
            raise CurveFileError(f"{source}: row {lineno} is not numeric: {row}") from None
        curves.setdefault(name, []).append(vals)
    return _finish(curves, source)


def parse_json(text: str, source: str = "<json>") -> dict[str, np.ndarray]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFileError(f"{source}: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("curves"), list):
        raise CurveFileError(f'{source}: expected an object with a "curves" list')
    curves: dict[str, list] = {}
    for k, entry in enumerate(doc["curves"]):
        if not isinstance(entry, dict) or not {"name", "dim", "vertices"} <= entry.keys():
            raise CurveFileError(f"{source}: curve #{k} needs name, dim and vertices")
        name, dim, verts = entry["name"], entry["dim"], entry["vertices"]
        if not isinstance(verts, list) or any(
                not isinstance(v, list) or len(v) != dim for v in verts):
            raise CurveFileError(f"{source}: curve {name!r} has vertices not of dimension {dim}")
        if name in curves:
            raise CurveFileError(f"{source}: duplicate curve name {name!r}")
        curves[str(name)] = verts
    return _finish(curves, source)


def read_curves(path: str | Path) -> dict[str, np.ndarray]:
    """Curves of a ``.csv`` or ``.json`` file by name, in file order."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return parse_json(text, str(path))
    if path.suffix.lower() == ".csv":
        return parse_csv(text, str(path))
    raise CurveFileError(f"{path}: unknown extension (use .csv or .json)")


def format_csv(curves: dict[str, np.ndarray]) -> str:
    curves = {k: as_curve(v) for k, v in curves.items()}
    dims = {c.shape[1] for c in curves.values()}
    if len(dims) != 1:
        raise CurveFileError("need curves of one common dimension")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name"] + _axis_names(dims.pop()))
    for name, c in curves.items():
        for p in c.tolist():
            w.writerow([name] + [repr(x) for x in p])
    return buf.getvalue()


def format_json(curves: dict[str, np.ndarray]) -> str:
    items = []
    for name, c in curves.items():
        c = as_curve(c)
        items.append({"name": name, "dim": int(c.shape[1]), "vertices": c.tolist()})
    if len({it["dim"] for it in items}) > 1:
        raise CurveFileError("need curves of one common dimension")
    return json.dumps({"curves": items}, indent=1) + "\n"


def write_curves(path: str | Path, curves: dict[str, np.ndarray]) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(format_json(curves))
    elif path.suffix.lower() == ".csv":
        path.write_text(format_csv(curves))
    else:
        raise CurveFileError(f"{path}: unknown extension (use .csv or .json)")
