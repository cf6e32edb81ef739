"""JSON encodings: rationals as ``"p/q"`` strings, points as ``{"x", "y"}``,
planar lines as ``{"a", "b", "c"}`` integers, affine lines as ``{"m", "c"}``."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .affine import AffLine
from .geometry import PlanarLine, Point, ProjPoint, as_rational, format_rational


def point_json(p: Point) -> dict:
    return {"x": format_rational(p.x), "y": format_rational(p.y)}


def proj_point_json(p: ProjPoint) -> dict:
    return {"x": p.x, "y": p.y, "z": p.z}


def planar_line_json(line: PlanarLine) -> dict:
    return {"a": line.a, "b": line.b, "c": line.c}


def aff_line_json(line: AffLine) -> dict:
    return {"m": format_rational(line.m), "c": format_rational(line.c)}


def parse_point(obj: Any) -> Point:
    if isinstance(obj, dict):
        return Point(as_rational(obj["x"]), as_rational(obj["y"]))
    x, y = obj
    return Point(as_rational(x), as_rational(y))


def parse_proj_point(obj: Any) -> ProjPoint:
    if isinstance(obj, dict) and "z" in obj:
        return ProjPoint.of(obj["x"], obj["y"], obj["z"])
    if isinstance(obj, (list, tuple)) and len(obj) == 3:
        return ProjPoint.of(*obj)
    return parse_point(obj).homogeneous()


def parse_planar_line(obj: Any) -> PlanarLine:
    if isinstance(obj, dict):
        return PlanarLine.of(obj["a"], obj["b"], obj["c"])
    return PlanarLine.of(*obj)


def parse_aff_line(obj: Any) -> AffLine:
    if isinstance(obj, dict):
        return AffLine(as_rational(obj["m"]), as_rational(obj["c"]))
    m, c = obj
    return AffLine(as_rational(m), as_rational(c))


def _payload(path) -> Any:
    return json.loads(Path(path).read_text())


def load_points(path) -> list[Point]:
    data = _payload(path)
    if isinstance(data, dict):
        data = data["points"]
    return [parse_point(p) for p in data]


def load_lines(path) -> list:
    """AffLine or PlanarLine objects; a family report's ``lines`` key works too."""
    data = _payload(path)
    if isinstance(data, dict):
        data = data["lines"]
    out = []
    for item in data:
        if isinstance(item, dict) and "m" in item:
            out.append(parse_aff_line(item))
        elif isinstance(item, dict) or len(item) == 3:
            out.append(parse_planar_line(item))
        else:
            out.append(parse_aff_line(item))
    return out


def load_aff_lines(path) -> frozenset[AffLine]:
    lines = load_lines(path)
    bad = [l for l in lines if not isinstance(l, AffLine)]
    if bad:
        raise ValueError(f"{path}: expected affine lines {{m, c}}, got {bad[0]}")
    return frozenset(lines)


def load_matrix(path) -> list[list]:
    data = _payload(path)
    if len(data) != 3 or any(len(row) != 3 for row in data):
        raise ValueError(f"{path}: expected a 3x3 array")
    return [[as_rational(v) for v in row] for row in data]


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def sorted_rationals(values: Iterable) -> list[str]:
    return [format_rational(v) for v in sorted(values)]
