"""JSON instance/solution/reference files and the seeded instance generator.

Instance file (schema_version 1)::

    {"schema_version": 1, "name": "demo", "n": 2,
     "depot_start": [0, 0], "depot_end": [0, 0],
     "items": [[1, 0], [2, 0]], "placeholders": [[1, 1], [2, 1]]}

``items``/``placeholders`` hold the n real points; the depot row (index 0 in
memory) is rebuilt from ``depot_end``/``depot_start`` on load.

Solution file::

    {"schema_version": 1, "instance": "demo",
     "sequence": [0, 1, 2], "assignment": [0, 2, 1], "cost": 6.2426...}

Reference costs are a separate JSON object keyed by instance name, each value
either a number or ``{"cost": ..., "time": ...}``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from jointroute.model import Instance, ParseError, Solution

SCHEMA_VERSION = 1


def generate(n: int, seed: int, extent: float = 1.0, name: str | None = None) -> Instance:
    """n items and n placeholders uniform on [0, extent]^2, depot at the centre."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not extent > 0:
        raise ValueError("extent must be > 0")
    rng = np.random.default_rng(seed)
    items = rng.uniform(0.0, extent, size=(n, 2))
    places = rng.uniform(0.0, extent, size=(n, 2))
    centre = (extent / 2, extent / 2)
    return Instance.from_depot(items, places, centre, centre, name or f"rand-n{n}-s{seed}")


def _load_json(path) -> dict:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data


def _field(data: dict, key: str, path):
    if key not in data:
        raise ParseError(f"{path}: missing field '{key}'")
    return data[key]


def _check_version(data: dict, path):
    version = _field(data, "schema_version", path)
    if version != SCHEMA_VERSION:
        raise ParseError(f"{path}: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")


def _point(value, key: str, path) -> list[float]:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise ParseError(f"{path}: field '{key}' must be an [x, y] pair of numbers")
    if not all(math.isfinite(v) for v in value):
        raise ParseError(f"{path}: field '{key}' has non-finite coordinates")
    return [float(v) for v in value]


def instance_to_dict(inst: Instance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "name": inst.name,
        "n": inst.n,
        "depot_start": inst.depot_start.tolist(),
        "depot_end": inst.depot_end.tolist(),
        "items": inst.items[1:].tolist(),
        "placeholders": inst.placeholders[1:].tolist(),
    }


def instance_from_dict(data: dict, path="<memory>") -> Instance:
    _check_version(data, path)
    name = str(_field(data, "name", path))
    n = _field(data, "n", path)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"{path}: field 'n' must be a non-negative integer")
    start = _point(_field(data, "depot_start", path), "depot_start", path)
    end = _point(_field(data, "depot_end", path), "depot_end", path)
    lists = {}
    for key in ("items", "placeholders"):
        raw = _field(data, key, path)
        if not isinstance(raw, list):
            raise ParseError(f"{path}: field '{key}' must be a list")
        if len(raw) != n:
            raise ParseError(f"{path}: field '{key}' has {len(raw)} entries but n = {n}")
        lists[key] = [_point(v, f"{key}[{k}]", path) for k, v in enumerate(raw)]
    return Instance.from_depot(np.reshape(lists["items"], (-1, 2)),
                               np.reshape(lists["placeholders"], (-1, 2)), start, end, name)


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(inst), indent=1) + "\n")


def read_instance(path) -> Instance:
    return instance_from_dict(_load_json(path), path)


def write_solution(sol: Solution, path, instance_name: str = "") -> None:
    data = {
        "schema_version": SCHEMA_VERSION,
        "instance": instance_name,
        "sequence": sol.sequence.tolist(),
        "assignment": sol.assignment.tolist(),
        "cost": sol.cost,
    }
    Path(path).write_text(json.dumps(data) + "\n")


def read_solution(path) -> Solution:
    data = _load_json(path)
    _check_version(data, path)
    arrays = {}
    for key in ("sequence", "assignment"):
        raw = _field(data, key, path)
        if not isinstance(raw, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in raw):
            raise ParseError(f"{path}: field '{key}' must be a list of integers")
        arrays[key] = raw
    if len(arrays["sequence"]) != len(arrays["assignment"]):
        raise ParseError(f"{path}: sequence and assignment lengths differ")
    cost = _field(data, "cost", path)
    if not isinstance(cost, (int, float)) or isinstance(cost, bool):
        raise ParseError(f"{path}: field 'cost' must be a number")
    return Solution(arrays["sequence"], arrays["assignment"], cost)


def read_reference(path) -> dict[str, dict]:
    """Map instance name -> {"cost": float, "time": float | None}."""
    data = _load_json(path)
    out = {}
    for name, value in data.items():
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            out[name] = {"cost": float(value), "time": None}
        elif isinstance(value, dict) and "cost" in value:
            t = value.get("time")
            out[name] = {"cost": float(value["cost"]), "time": None if t is None else float(t)}
        else:
            raise ParseError(f"{path}: entry '{name}' must be a number or an object with 'cost'")
    return out
