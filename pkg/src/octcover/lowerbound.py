"""A 63-point set where every two-coloring leaves a monochromatic 4-point translate.

The combinatorial core has three center points ``p1, p2, p3`` and, for each
center ``p_i``, a family serving the other two centers ``{p_a, p_b}``:

* a cluster ``q_{i,1..4}`` cut out whole by one translate,
* for each ``j`` a cluster ``r_{i,j,1..4}`` cut out whole by one translate,
* for each ``j, k`` a translate holding exactly ``p_a, p_b, q_{i,j}, r_{i,j,k}``.

Two centers share a color, the cluster of their family has a point of that
color, and so does the matching ``r`` cluster; the last translate is then
monochromatic.

Geometrically everything lives in the frame where the triangle is the unit
right triangle with corners A=(0,0), B=(1,0), C=(0,1). Family ``i`` uses small
shifts ``d_i`` of the base triangle that drop ``p_i``. Its ``q`` cluster sits
at corner X of the shifted triangle, each ``r`` cluster at corner Y of the
translate isolating the matching ``q``; cluster points are spread along the
third corner's direction so the corner cones separate them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from .geometry import (
    InvariantViolation,
    Point2,
    TriangleShape,
    as_coord,
    enumerate_octant_classes,
    enumerate_translate_classes,
    triangle_frame,
)
from .oracle import search_proper_two_coloring
from .reductions import Hypergraph

CENTERS = 3
FAMILY_SIZE = 4 + 16
N_VERTICES = CENTERS + 3 * FAMILY_SIZE


def q_id(i: int, j: int) -> int:
    """Vertex id of q_{i,j}; families i and cluster indices j are 1-based."""
    return CENTERS + (i - 1) * FAMILY_SIZE + (j - 1)


def r_id(i: int, j: int, k: int) -> int:
    return CENTERS + (i - 1) * FAMILY_SIZE + 4 + (j - 1) * 4 + (k - 1)


def center_pair(i: int) -> tuple[int, int]:
    """The two centers (0-based ids) served by family ``i``."""
    return tuple(c for c in range(CENTERS) if c != i - 1)  # type: ignore[return-value]


def vertex_name(v: int) -> str:
    if v < CENTERS:
        return f"p{v + 1}"
    i, rest = divmod(v - CENTERS, FAMILY_SIZE)
    if rest < 4:
        return f"q{i + 1},{rest + 1}"
    j, k = divmod(rest - 4, 4)
    return f"r{i + 1},{j + 1},{k + 1}"


def intended_edges() -> dict[str, list[int]]:
    """Edge label -> the four vertex ids it must contain."""
    edges: dict[str, list[int]] = {}
    for i in (1, 2, 3):
        a, b = center_pair(i)
        edges[f"T{i},0"] = [q_id(i, j) for j in range(1, 5)]
        for j in range(1, 5):
            edges[f"T{i},{j},0"] = [r_id(i, j, k) for k in range(1, 5)]
            for k in range(1, 5):
                edges[f"T{i},{j},{k}"] = [a, b, q_id(i, j), r_id(i, j, k)]
    return edges


def build_abstract_hypergraph() -> Hypergraph:
    return Hypergraph(N_VERTICES, list(intended_edges().values()))


# --- geometric realization ------------------------------------------------------

CORNERS = {"A": (0, 0), "B": (1, 0), "C": (0, 1)}
# a direction strictly inside each corner's cone
INWARD = {"A": (1, 1), "B": (-2, 1), "C": (1, -2)}


def _add(*vs):
    return tuple(sum(c) for c in zip(*vs))


def _mul(s, v):
    return tuple(s * c for c in v)


@dataclass
class ConstructionSpec:
    """Parameters of a realization, all exact rationals in the unit frame.

    ``shifts[i]`` moves the base triangle for family ``i+1`` (in units of
    ``sigma``); ``corners[i]`` names the (q corner, r corner) of that family.
    The translate cutting out a whole cluster uses the first corner, in A, B, C
    order, whose cone from the cluster holds no other point.
    """

    triangle: tuple = ((0, 0), (1, 0), (0, 1))
    sigma: Fraction = Fraction(1, 16)
    center_offset: Fraction = Fraction(3, 2)
    center_positions: tuple = (Fraction(2, 5), Fraction(7, 20), Fraction(3, 10))
    shifts: tuple = ((-4, 3), (2, -2), (-4, -2))
    corners: tuple = (("A", "C"), ("C", "B"), ("B", "A"))
    delta1: Fraction = Fraction(1, 100_000)
    delta2: Fraction = Fraction(1, 100_000_000)
    hull_reach: int = 50

    def __post_init__(self):
        if not (0 < self.delta2 * 1000 <= self.delta1 and self.delta1 * self.hull_reach * 10 <= self.sigma):
            raise InvariantViolation("cluster scales must satisfy delta2 << delta1 << sigma")
        for pair in self.corners:
            if len(pair) != 2 or pair[0] == pair[1] or not set(pair) <= set(CORNERS):
                raise InvariantViolation(f"bad corner pair {pair!r}")

    def to_json(self) -> dict:
        return {k: _encode(getattr(self, k)) for k in (
            "triangle", "sigma", "center_offset", "center_positions", "shifts",
            "corners", "delta1", "delta2", "hull_reach")}

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionSpec":
        def tup(v):
            return tuple(tup(x) for x in v) if isinstance(v, list) else v

        return cls(
            triangle=tup(data["triangle"]),
            sigma=_decode(data["sigma"]),
            center_offset=_decode(data["center_offset"]),
            center_positions=tuple(_decode(v) for v in data["center_positions"]),
            shifts=tup(data["shifts"]),
            corners=tup(data["corners"]),
            delta1=_decode(data["delta1"]),
            delta2=_decode(data["delta2"]),
            hull_reach=data["hull_reach"],
        )


def _encode(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else [v.numerator, v.denominator]
    if isinstance(v, (list, tuple)):
        return [_encode(x) for x in v]
    return v


def _decode(v) -> Fraction:
    if isinstance(v, list):
        return Fraction(v[0], v[1])
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvariantViolation(f"expected an integer or [num, den], got {v!r}")
    return Fraction(v)


@dataclass
class Realization:
    points: list  # (x, y) in the triangle's own coordinates, index = vertex id
    witnesses: dict  # edge label -> translate vector
    edges: dict  # edge label -> vertex ids
    spec: Optional[ConstructionSpec] = None
    frame_points: list = field(default_factory=list)


def _frame_contains(u, w) -> bool:
    return u[0] > w[0] and u[1] > w[1] and u[0] + u[1] < w[0] + w[1] + 1


def _content(pts, w) -> set:
    return {v for v, u in enumerate(pts) if _frame_contains(u, w)}


def realize_in_frame(spec: ConstructionSpec):
    """Points and witness shifts in the unit frame (vertex id order)."""
    s, c = Fraction(spec.sigma), Fraction(spec.center_offset) * spec.sigma
    bx, ly, hx = spec.center_positions
    centers = [
        (Fraction(bx), c),  # near the bottom side y = 0
        (c, Fraction(ly)),  # near the left side x = 0
        (Fraction(hx), 1 - c - Fraction(hx)),  # near the hypotenuse x + y = 1
    ]
    pts: list = [None] * N_VERTICES
    pts[0:3] = centers
    wit: dict = {}
    hulls: dict = {}
    d1, d2 = Fraction(spec.delta1), Fraction(spec.delta2)
    eps1, eps2 = d1 / 10, d2 / 10
    for i in (1, 2, 3):
        X, Y = spec.corners[i - 1]
        Z = ({"A", "B", "C"} - {X, Y}).pop()
        d = _mul(s, spec.shifts[i - 1])
        uX, uY, w = INWARD[X], INWARD[Y], INWARD[Z]
        base_q = _add(CORNERS[X], d)
        for j in range(1, 5):
            q = _add(base_q, _mul(d1, _add(uX, _mul(j, w))))
            pts[q_id(i, j)] = q
            g = _add(q, _mul(-eps1, uX))  # corner X of the translate isolating q
            v_ij = _add(g, _mul(-1, CORNERS[X]))
            base_r = _add(CORNERS[Y], v_ij)
            for k in range(1, 5):
                r = _add(base_r, _mul(d2, _add(uY, _mul(k, w))))
                pts[r_id(i, j, k)] = r
                h = _add(r, _mul(-eps2, uY))
                wit[f"T{i},{j},{k}"] = _add(h, _mul(-1, CORNERS[Y]))
            hulls[f"T{i},{j},0"] = (base_r, d2)
        hulls[f"T{i},0"] = (base_q, d1)
    edges = intended_edges()
    for label, (base, d) in hulls.items():
        candidates = []
        for corner in "ABC":
            apex = _add(base, _mul(-spec.hull_reach * d, INWARD[corner]))
            candidates.append(_add(apex, _mul(-1, CORNERS[corner])))
        wit[label] = next((w for w in candidates if _content(pts, w) == set(edges[label])), candidates[0])
    return pts, wit


def frame_violations(spec: ConstructionSpec) -> list[str]:
    """Intended edges whose witness translate does not hold exactly its 4 points."""
    pts, wit = realize_in_frame(spec)
    edges = intended_edges()
    bad = []
    for label, ids in edges.items():
        if _content(pts, wit[label]) != set(ids):
            bad.append(label)
    return bad


def realize_geometrically(spec: Optional[ConstructionSpec] = None, triangle: Optional[TriangleShape] = None) -> Realization:
    """Map the frame construction onto ``triangle`` (default: the unit frame)."""
    spec = spec or DEFAULT_SPEC
    T = triangle or TriangleShape(*spec.triangle)
    pts, wit = realize_in_frame(spec)
    _, from_frame = triangle_frame(T)
    origin = from_frame((0, 0))
    out_pts = [tuple(as_coord(c) for c in from_frame(u)) for u in pts]
    out_wit = {}
    for label, w in wit.items():
        o = from_frame(w)
        out_wit[label] = (as_coord(o[0] - origin[0]), as_coord(o[1] - origin[1]))
    return Realization(out_pts, out_wit, intended_edges(), spec, pts)


DEFAULT_SPEC = ConstructionSpec()


# --- certification ------------------------------------------------------------------

def _as_points2(points) -> list[Point2]:
    out = []
    for i, p in enumerate(points):
        if isinstance(p, Point2):
            out.append(Point2(p.x, p.y, i))
        else:
            out.append(Point2(as_coord(p[0]), as_coord(p[1]), i))
    return out


def certify_realization(points, edges: dict, T: TriangleShape) -> tuple[bool, dict]:
    """Check that ``points`` realize ``edges`` as translate classes of ``T`` and that
    no two-coloring avoids a monochromatic translate class of exactly 4 points.

    Never raises on bad geometry; the report names the first failing edge.
    """
    report: dict = {"ok": False, "n_points": len(points), "n_edges": len(edges)}
    try:
        pts = _as_points2(points)
        classes = {cls for cls, _ in enumerate_translate_classes(T, pts)}
    except (InvariantViolation, ValueError) as exc:
        report["error"] = str(exc)
        report["first_failing_edge"] = next(iter(edges), None)
        return False, report
    missing = [label for label, ids in edges.items()
               if len(set(ids)) != 4 or frozenset(ids) not in classes]
    size4 = sorted(sorted(c) for c in classes if len(c) == 4)
    result = search_proper_two_coloring(len(pts), size4, 4)
    report.update({
        "n_translate_classes": len(classes),
        "n_size4_classes": len(size4),
        "missing_edges": missing,
        "first_failing_edge": missing[0] if missing else None,
        "unsat": not result.sat,
        "search": result.certificate(),
    })
    report["ok"] = not missing and not result.sat
    return report["ok"], report


def octant_lower_bound_witness(realization: Optional[Realization] = None) -> dict:
    """Lift the realization to octants and certify that size-4 octant classes are not
    properly two-colorable, so the octant threshold is at least 5."""
    from .reductions import planar_points_to_octant_instance

    R = realization or load_realization()
    T = TriangleShape(*R.spec.triangle) if R.spec else TriangleShape(*DEFAULT_SPEC.triangle)
    pts3 = planar_points_to_octant_instance(_as_points2(R.points), T)
    classes = enumerate_octant_classes(pts3)
    size4 = sorted(sorted(c) for c in classes if len(c) == 4)
    result = search_proper_two_coloring(len(pts3), size4, 4)
    return {
        "ok": not result.sat,
        "lower_bound": 5 if not result.sat else None,
        "points3": [[_encode(Fraction(p.x)), _encode(Fraction(p.y)), _encode(Fraction(p.z))] for p in pts3],
        "n_octant_classes": len(classes),
        "n_size4_classes": len(size4),
        "search": result.certificate(),
    }


# --- shipped asset ---------------------------------------------------------------

ASSET_NAME = "realization_unit_triangle.json"


def realization_to_json(R: Realization) -> dict:
    return {
        "kind": "triangle+points2",
        "triangle": _encode(R.spec.triangle if R.spec else DEFAULT_SPEC.triangle),
        "points": [[_encode(Fraction(c)) for c in p] for p in R.points],
        "edges": R.edges,
        "witnesses": {k: [_encode(Fraction(c)) for c in w] for k, w in R.witnesses.items()},
        "spec": R.spec.to_json() if R.spec else None,
    }


def realization_from_json(data: dict) -> Realization:
    spec = ConstructionSpec.from_json(data["spec"]) if data.get("spec") else None
    points = [tuple(as_coord(_decode(c)) for c in p) for p in data["points"]]
    witnesses = {k: tuple(as_coord(_decode(c)) for c in w) for k, w in data["witnesses"].items()}
    edges = {k: list(v) for k, v in data["edges"].items()}
    return Realization(points, witnesses, edges, spec)


def load_realization() -> Realization:
    """The realization shipped with the package (unit right triangle)."""
    text = resources.files("octcover").joinpath("data", ASSET_NAME).read_text()
    return realization_from_json(json.loads(text))
