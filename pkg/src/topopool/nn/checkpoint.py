"""Exact round-trip persistence for named float64 arrays.

Arrays are stored as JSON with ``repr``-faithful floats, so loading a file
reproduces every bit of the saved values.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

FORMAT = "topopool-arrays"
VERSION = 1


def save_arrays(path, arrays) -> Path:
    payload = {"format": FORMAT, "version": VERSION, "arrays": {}}
    for name, value in arrays.items():
        arr = np.asarray(value, dtype=float)
        payload["arrays"][str(name)] = {
            "shape": list(arr.shape),
            "data": [float(x) for x in arr.reshape(-1)],
        }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload))
    return path


def load_arrays(path):
    payload = json.loads(Path(path).read_text())
    if payload.get("format") != FORMAT:
        raise ValueError(f"{path} is not a {FORMAT} file")
    out = {}
    for name, spec in payload["arrays"].items():
        out[name] = np.array(spec["data"], dtype=float).reshape(spec["shape"])
    return out
