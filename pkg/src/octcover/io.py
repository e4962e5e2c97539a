"""Versioned JSON formats. Rationals are integers or ``[numerator, denominator]``; floats are rejected."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .geometry import Interval, Octant, Point2, Point3, TriangleShape, as_coord, check_distinct

INSTANCE_FORMAT = "octcover-instance/1"
COLORING_FORMAT = "octcover-coloring/1"
KINDS = ("points2-ordered", "points3", "octants+points3", "intervals", "triangle+points2")


class SchemaError(ValueError):
    pass


def encode(v) -> Any:
    if isinstance(v, bool):
        raise SchemaError("booleans are not coordinates")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else [v.numerator, v.denominator]
    raise SchemaError(f"cannot encode {v!r} exactly")


def decode(v) -> Any:
    if isinstance(v, bool):
        raise SchemaError("booleans are not coordinates")
    if isinstance(v, int):
        return v
    if isinstance(v, list) and len(v) == 2 and all(isinstance(c, int) and not isinstance(c, bool) for c in v):
        if v[1] <= 0:
            raise SchemaError(f"denominator must be positive in {v!r}")
        return as_coord(Fraction(v[0], v[1]))
    raise SchemaError(f"expected an integer or [num, den], got {v!r}")


def _rows(data, width: int, name: str) -> list:
    if not isinstance(data, list):
        raise SchemaError(f"{name} must be a list")
    out = []
    for row in data:
        if not isinstance(row, list) or len(row) != width:
            raise SchemaError(f"{name} entries must have {width} coordinates, got {row!r}")
        out.append(tuple(decode(c) for c in row))
    return out


def instance(kind: str, payload: dict, meta: dict | None = None) -> dict:
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    return {"format": INSTANCE_FORMAT, "kind": kind, "payload": payload, "meta": meta or {}}


def points2_payload(points) -> dict:
    return {"points": [[encode(p.x), encode(p.y)] for p in points]}


def points3_payload(points) -> dict:
    return {"points": [[encode(p.x), encode(p.y), encode(p.z)] for p in points]}


def octants_payload(octants, points) -> dict:
    return {"octants": [[encode(o.apex.x), encode(o.apex.y), encode(o.apex.z)] for o in octants],
            **points3_payload(points)}


def intervals_payload(intervals, family: str = "IBI", queries=None) -> dict:
    out = {"family": family, "intervals": [[encode(i.lo), encode(i.hi)] for i in intervals]}
    if queries is not None:
        out["queries"] = [[encode(i.lo), encode(i.hi)] for i in queries]
    return out


def triangle_payload(T: TriangleShape, points) -> dict:
    return {"triangle": [[encode(v[0]), encode(v[1])] for v in T.vertices], **points2_payload(points)}


def load_instance(doc: dict) -> tuple[str, dict]:
    """Validate ``doc`` and return ``(kind, objects)`` with geometry types built."""
    if not isinstance(doc, dict) or doc.get("format") != INSTANCE_FORMAT:
        raise SchemaError(f"not an {INSTANCE_FORMAT} document")
    kind, payload = doc.get("kind"), doc.get("payload")
    if kind not in KINDS or not isinstance(payload, dict):
        raise SchemaError(f"bad kind {kind!r} or payload")
    try:
        if kind == "points2-ordered":
            pts = [Point2(x, y, i) for i, (x, y) in enumerate(_rows(payload.get("points"), 2, "points"))]
            check_distinct(pts)
            return kind, {"points": pts}
        if kind == "points3":
            pts = [Point3(*c, i) for i, c in enumerate(_rows(payload.get("points"), 3, "points"))]
            check_distinct(pts, "xyz")
            return kind, {"points": pts}
        if kind == "octants+points3":
            pts = [Point3(*c, i) for i, c in enumerate(_rows(payload.get("points"), 3, "points"))]
            octs = [Octant(Point3(*c, i)) for i, c in enumerate(_rows(payload.get("octants"), 3, "octants"))]
            return kind, {"points": pts, "octants": octs}
        if kind == "intervals":
            family = payload.get("family", "IBI")
            if family not in ("IBI", "ISI", "ICI"):
                raise SchemaError(f"unknown interval family {family!r}")
            ivs = [Interval(lo, hi) for lo, hi in _rows(payload.get("intervals"), 2, "intervals")]
            queries = payload.get("queries")
            qs = None if queries is None else [Interval(lo, hi) for lo, hi in _rows(queries, 2, "queries")]
            return kind, {"family": family, "intervals": ivs, "queries": qs}
        tri = _rows(payload.get("triangle"), 2, "triangle")
        if len(tri) != 3:
            raise SchemaError("triangle needs 3 vertices")
        pts = [Point2(x, y, i) for i, (x, y) in enumerate(_rows(payload.get("points"), 2, "points"))]
        return kind, {"triangle": TriangleShape(*tri), "points": pts}
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def coloring_doc(colors, trace=None, edges=None, meta: dict | None = None) -> dict:
    doc = {"format": COLORING_FORMAT, "colors": list(colors), "meta": meta or {}}
    if edges is not None:
        doc["edges"] = [[e.u, e.v, e.time, e.op] for e in edges]
    if trace is not None:
        doc["trace"] = trace
    return doc


def load_coloring(doc: dict) -> list[int]:
    if not isinstance(doc, dict) or doc.get("format") != COLORING_FORMAT:
        raise SchemaError(f"not an {COLORING_FORMAT} document")
    colors = doc.get("colors")
    if not isinstance(colors, list) or any(c not in (0, 1) or isinstance(c, bool) for c in colors):
        raise SchemaError("colors must be a list of 0/1")
    return colors


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> dict:
    def no_float(s):
        raise SchemaError(f"floating point value {s} is not allowed")

    try:
        return json.loads(text, parse_float=no_float)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
