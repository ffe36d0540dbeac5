"""Reading and writing body description files (JSON).

    {"type": "polygon", "vertices": [[x, y], ...]}
    {"type": "disk", "center": [x, y], "radius": r}
    {"type": "ellipse", "center": [x, y], "a": a, "b": b, "rotation": t}

Unknown types and unknown or missing fields are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import InvalidBody
from .bodies import ConvexBody, Disk, Ellipse, Polygon

_FIELDS = {
    "polygon": {"type", "vertices"},
    "disk": {"type", "center", "radius"},
    "ellipse": {"type", "center", "a", "b", "rotation"},
}


def _point(value: Any, name: str) -> tuple[float, float]:
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise InvalidBody(f"{name} must be a pair [x, y]")
    return float(value[0]), float(value[1])


def parse_body(data: dict) -> ConvexBody:
    if not isinstance(data, dict):
        raise InvalidBody("body description must be a JSON object")
    kind = data.get("type")
    if kind not in _FIELDS:
        raise InvalidBody(f"unknown body type {kind!r}")
    keys = set(data)
    if keys - _FIELDS[kind]:
        raise InvalidBody(f"unknown fields for {kind}: {sorted(keys - _FIELDS[kind])}")
    if _FIELDS[kind] - keys:
        raise InvalidBody(f"missing fields for {kind}: {sorted(_FIELDS[kind] - keys)}")
    if kind == "polygon":
        return Polygon([_point(v, "vertex") for v in data["vertices"]])
    if kind == "disk":
        return Disk(_point(data["center"], "center"), float(data["radius"]))
    return Ellipse(_point(data["center"], "center"), float(data["a"]), float(data["b"]),
                   float(data["rotation"]))


def body_to_dict(body: ConvexBody) -> dict:
    if isinstance(body, Polygon):
        return {"type": "polygon", "vertices": [list(v) for v in body.vertices]}
    if isinstance(body, Disk):
        return {"type": "disk", "center": list(body.center), "radius": body.radius}
    if isinstance(body, Ellipse):
        return {"type": "ellipse", "center": list(body.center), "a": body.a, "b": body.b,
                "rotation": body.rotation}
    raise InvalidBody(f"{type(body).__name__} has no file representation")


def load_body(path: str | Path) -> ConvexBody:
    with open(path, encoding="utf-8") as fh:
        return parse_body(json.load(fh))


def dump_body(body: ConvexBody, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(body_to_dict(body), fh)
