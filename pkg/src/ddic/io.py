"""JSON channel-spec files and CSV output."""
from __future__ import annotations

import json
from importlib import resources

import jsonschema
import numpy as np

from .prob import Ddic, DdicError, DimensionError


def _schema():
    return json.loads(resources.files("ddic").joinpath("channel_spec.schema.json").read_text())


def ddic_to_dict(d: Ddic) -> dict:
    return {
        "x1_size": d.x1_size,
        "x2_size": d.x2_size,
        "y1_size": d.y1_size,
        "y2_size": d.y2_size,
        "T": d.t_family.tolist(),
        "Tprime": d.t_prime.tolist(),
    }


def ddic_from_dict(obj: dict) -> Ddic:
    try:
        jsonschema.validate(obj, _schema())
    except jsonschema.ValidationError as exc:
        raise DdicError(f"invalid channel spec: {exc.message}") from None
    fam = np.asarray(obj["T"], dtype=float)
    tp = np.asarray(obj["Tprime"], dtype=float)
    want = (obj["x2_size"], obj["y1_size"], obj["x1_size"])
    if fam.shape != want:
        raise DimensionError(f"T has shape {fam.shape}, expected [x2][y1][x1] = {want}")
    if tp.shape != (obj["y2_size"], obj["y1_size"]):
        raise DimensionError(f"Tprime has shape {tp.shape}, expected {(obj['y2_size'], obj['y1_size'])}")
    return Ddic(fam, tp)


def dumps(d: Ddic) -> str:
    # repr-based float output round-trips every double exactly
    return json.dumps(ddic_to_dict(d), indent=2)


def loads(text: str) -> Ddic:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DdicError(f"not valid JSON: {exc}") from None
    return ddic_from_dict(obj)


def load(path) -> Ddic:
    with open(path) as fh:
        return loads(fh.read())


def load_family(path) -> np.ndarray:
    """The ``T`` array of a channel-spec or family file, ``[x2][y][x1]``."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DdicError(f"{path}: not valid JSON: {exc}") from None
    if "T" not in obj:
        raise DdicError(f"{path}: no 'T' family")
    return np.asarray(obj["T"], dtype=float)


def fmt(x: float, digits: int = 12) -> str:
    return f"{float(x):.{digits}g}"


def csv_table(header, rows, digits: int = 12, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt(v, digits) for v in row))
    return "\n".join(lines) + "\n"
