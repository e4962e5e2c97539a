"""Maps between octant, quadrant, triangle and interval hypergraph families.

Each map comes with a brute-force edge-family builder for both sides so a
reduction can be certified on concrete instances by set equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (
    Interval,
    InvariantViolation,
    Octant,
    Point2,
    Point3,
    TriangleShape,
    as_coord,
    rank_normalize,
    enumerate_wedge_classes,
)
from . import staircase


@dataclass
class Hypergraph:
    n: int
    edges: list

    def __post_init__(self):
        fam = []
        seen = set()
        for e in self.edges:
            key = tuple(sorted(set(e)))
            if not key:
                continue
            if any(v < 0 or v >= self.n for v in key):
                raise InvariantViolation(f"edge {key} has ids outside [0, {self.n})")
            if key not in seen:
                seen.add(key)
                fam.append(list(key))
        self.edges = fam

    def family(self) -> set[frozenset[int]]:
        return {frozenset(e) for e in self.edges}


@dataclass
class DynamicHypergraph:
    base: Hypergraph
    order: list


def dynamic_closure(H: Hypergraph, order: Optional[Sequence[int]] = None) -> DynamicHypergraph:
    """Close ``H`` under intersection with every prefix of ``order``."""
    order = list(range(H.n)) if order is None else list(order)
    if sorted(order) != list(range(H.n)):
        raise InvariantViolation("order is not a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    closed = []
    for e in H.edges:
        members = sorted(e, key=pos.__getitem__)
        for k in range(1, len(members) + 1):
            closed.append(members[:k])
    return DynamicHypergraph(Hypergraph(H.n, closed), order)


# --- octants <-> dynamic quadrants ----------------------------------------------

@dataclass
class DynamicQuadrantInstance:
    """Planar points in arrival order plus one prefix-limited wedge per 3D point."""

    points: list  # Point2, id = arrival index
    octant_of: list  # arrival index -> octant index
    wedges: list  # per 3D point: (apex_x, apex_y, prefix_length)


def octants_to_dynamic_quadrants(octants: Sequence[Octant], pts: Sequence[Point3]) -> DynamicQuadrantInstance:
    """Octant apex (x, y, z) -> planar point (-x, -y), arriving by decreasing z.

    The 3D point (a, b, c) becomes the wedge with apex (-a, -b) restricted to the
    prefix of octants with z > c. Negating x, y turns the mirrored quadrant into
    an ordinary SW wedge, and decreasing z turns the suffix into a prefix.
    """
    apexes = [o.apex for o in octants]
    for axis in "xyz":
        vals = [getattr(a, axis) for a in apexes] + [getattr(p, axis) for p in pts]
        if len(set(vals)) != len(vals):
            raise InvariantViolation(f"coordinate collision on axis {axis}")
    order = sorted(range(len(apexes)), key=lambda i: apexes[i].z, reverse=True)
    planar = [Point2(-apexes[i].x, -apexes[i].y, k) for k, i in enumerate(order)]
    zs = [apexes[i].z for i in order]
    wedges = []
    for p in pts:
        prefix = sum(1 for z in zs if z > p.z)
        wedges.append((-p.x, -p.y, prefix))
    return DynamicQuadrantInstance(planar, order, wedges)


def octant_hyperedges(octants: Sequence[Octant], pts: Sequence[Point3]) -> list[frozenset[int]]:
    """For each 3D point, the set of octant indices containing it."""
    return [frozenset(i for i, o in enumerate(octants) if o.contains(p)) for p in pts]


def mapped_wedge_hyperedges(inst: DynamicQuadrantInstance) -> list[frozenset[int]]:
    out = []
    for ax, ay, prefix in inst.wedges:
        out.append(frozenset(
            inst.octant_of[q.id] for q in inst.points[:prefix] if q.x < ax and q.y < ay
        ))
    return out


@dataclass
class CoveringDecomposition:
    parts: list  # per octant: 0 or 1
    first: list = field(default_factory=list)
    second: list = field(default_factory=list)


def decompose_covering(octants: Sequence[Octant], pts: Sequence[Point3], m: int = 9) -> CoveringDecomposition:
    """Split an ``m``-fold octant covering of ``pts`` into two coverings."""
    cover = octant_hyperedges(octants, pts)
    for p, e in zip(pts, cover):
        if len(e) < m:
            raise InvariantViolation(f"point {p.id} ({p.x}, {p.y}, {p.z}) is covered only {len(e)} times")
    inst = octants_to_dynamic_quadrants(octants, pts)
    colors, _ = staircase.color_points([(q.x, q.y) for q in inst.points])
    parts = [0] * len(octants)
    for k, c in enumerate(colors):
        parts[inst.octant_of[k]] = c
    return CoveringDecomposition(
        parts,
        [i for i, c in enumerate(parts) if c == 0],
        [i for i, c in enumerate(parts) if c == 1],
    )


def points3_to_dynamic_points(pts: Sequence[Point3]) -> tuple[list[Point2], list[int]]:
    """Dual form: sort by z; octant (a,b,c) meets the prefix z < c in a SW wedge."""
    order = sorted(range(len(pts)), key=lambda i: pts[i].z)
    return [Point2(pts[i].x, pts[i].y, k) for k, i in enumerate(order)], order


def color_points3(pts: Sequence[Point3]) -> list[int]:
    """Coordinate ties are broken by index first; that only adds octant classes."""
    ranks = rank_normalize([(p.x, p.y, p.z) for p in pts])
    planar, order = points3_to_dynamic_points([Point3(*r, p.id) for r, p in zip(ranks, pts)])
    colors, _ = staircase.color_points([(q.x, q.y) for q in planar])
    out = [0] * len(pts)
    for k, i in enumerate(order):
        out[i] = colors[k]
    return out


# --- triangles <-> octants --------------------------------------------------------

CANONICAL_TRIANGLE = ((-2, 1, 1), (1, -2, 1), (1, 1, -2))


def _affine_to_canonical(T: TriangleShape):
    src = [tuple(Fraction(c) for c in v) for v in T.vertices]
    dst = [(Fraction(v[0]), Fraction(v[1])) for v in CANONICAL_TRIANGLE]
    # solve [x y 1] @ M = [X Y] from the three vertex pairs
    a = [[s[0], s[1], Fraction(1)] for s in src]
    det = (a[0][0] * (a[1][1] - a[2][1]) - a[0][1] * (a[1][0] - a[2][0])
           + (a[1][0] * a[2][1] - a[2][0] * a[1][1]))
    if det == 0:
        raise InvariantViolation("degenerate triangle")

    def solve(rhs):
        # Cramer's rule on the 3x3 system
        def d3(m):
            return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        D = d3(a)
        cols = []
        for k in range(3):
            mk = [row[:] for row in a]
            for r in range(3):
                mk[r][k] = rhs[r]
            cols.append(d3(mk) / D)
        return cols

    cx = solve([d[0] for d in dst])
    cy = solve([d[1] for d in dst])

    def apply(p):
        x, y = Fraction(p[0]), Fraction(p[1])
        return cx[0] * x + cx[1] * y + cx[2], cy[0] * x + cy[1] * y + cy[2]

    return apply


def planar_points_to_octant_instance(pts: Sequence[Point2], T: TriangleShape) -> list[Point3]:
    """Embed planar points in the plane x+y+z=0 so homothets of T become octants.

    The affine map sends T to the triangle (-2,1,1),(1,-2,1),(1,1,-2); an octant
    with apex (a,b,c) meets the plane in {x<a, y<b, x+y>-c}, a positive homothet
    of that triangle whenever a+b+c>0 and empty otherwise.
    """
    apply = _affine_to_canonical(T)
    out = []
    for p in pts:
        X, Y = apply((p.x, p.y))
        out.append(Point3(as_coord(X), as_coord(Y), as_coord(-X - Y), p.id))
    return out


# --- intervals ------------------------------------------------------------------

def _endpoints_distinct(intervals: Sequence[Interval]) -> None:
    ends = [e for iv in intervals for e in (iv.lo, iv.hi)]
    if len(set(ends)) != len(ends):
        raise InvariantViolation("interval endpoints must be pairwise distinct")


def _gaps(vals):
    """Open gaps between sorted distinct values, with finite outer sentinels."""
    vals = sorted(set(vals))
    if not vals:
        return [(-1, 1)]
    return [(vals[0] - 1, vals[0])] + list(zip(vals, vals[1:])) + [(vals[-1], vals[-1] + 1)]


def _query_intervals(intervals: Sequence[Interval]):
    """Representatives of every combinatorial type of query interval."""
    gaps = _gaps([e for iv in intervals for e in (iv.lo, iv.hi)])
    out = []
    for i, (lo1, hi1) in enumerate(gaps):
        out.append((lo1 + Fraction(hi1 - lo1, 3), lo1 + Fraction(2 * (hi1 - lo1), 3)))
        mid1 = Fraction(lo1 + hi1, 2)
        for lo2, hi2 in gaps[i + 1:]:
            out.append((mid1, Fraction(lo2 + hi2, 2)))
    return out


def ibi_hyperedges(intervals: Sequence[Interval]) -> set[frozenset[int]]:
    """Interval-Bigger-Interval: vertex intervals contained in a query interval."""
    out = set()
    for a, b in _query_intervals(intervals):
        e = frozenset(i for i, iv in enumerate(intervals) if a < iv.lo and iv.hi < b)
        if e:
            out.add(e)
    return out


def isi_hyperedges(intervals: Sequence[Interval]) -> set[frozenset[int]]:
    """Interval-Smaller-Interval: vertex intervals containing a query interval."""
    out = set()
    for a, b in _query_intervals(intervals):
        e = frozenset(i for i, iv in enumerate(intervals) if iv.lo < a and b < iv.hi)
        if e:
            out.add(e)
    return out


def ici_hyperedges(intervals: Sequence[Interval], queries: Optional[Sequence[Interval]] = None) -> set[frozenset[int]]:
    """Interval-Crossing-Interval: vertex intervals meeting a query interval."""
    qs = [(q.lo, q.hi) for q in queries] if queries is not None else _query_intervals(intervals)
    out = set()
    for a, b in qs:
        e = frozenset(i for i, iv in enumerate(intervals) if iv.lo < b and a < iv.hi)
        if e:
            out.add(e)
    return out


def ibi_to_point_quadrant(intervals: Sequence[Interval]) -> list[Point2]:
    """[l, r] -> (r, -l): J contains I iff J's image apex dominates I's image."""
    _endpoints_distinct(intervals)
    return [Point2(iv.hi, -iv.lo, i) for i, iv in enumerate(intervals)]


def isi_to_point_quadrant(intervals: Sequence[Interval]) -> list[Point2]:
    """[l, r] -> (l, -r): I contains J=[a, b] iff (l, -r) lies in the wedge at (a, -b)."""
    _endpoints_distinct(intervals)
    return [Point2(iv.lo, -iv.hi, i) for i, iv in enumerate(intervals)]


def ici_to_point_quadrant(vertex_intervals: Sequence[Interval], query_intervals: Sequence[Interval]):
    """Vertex [l, r] -> point (l, -r) below x+y=0; query [l', r'] -> apex (r', -l') above it.

    Both sign conditions already hold for any proper interval (l < r), so no
    global shift is applied.
    """
    _endpoints_distinct(list(vertex_intervals) + list(query_intervals))
    pts = [Point2(iv.lo, -iv.hi, i) for i, iv in enumerate(vertex_intervals)]
    apexes = [(q.hi, -q.lo) for q in query_intervals]
    return pts, apexes


def wedge_hyperedges(points: Sequence[Point2], apex_sign: int = 0) -> set[frozenset[int]]:
    """Point-Quadrant edge family.

    ``apex_sign`` of -1 (+1) keeps only wedges whose apex can be chosen with
    x + y < 0 (> 0); 0 keeps all wedges. An apex in the gap cell
    ``(xlo, xhi) x (ylo, yhi)`` holds exactly the points with x <= xlo, y <= ylo.
    """
    if apex_sign == 0:
        return set(enumerate_wedge_classes(points))
    inf = None
    xg = [(inf, None)] + _gaps([p.x for p in points])[1:]
    yg = [(inf, None)] + _gaps([p.y for p in points])[1:]
    xg[-1], yg[-1] = (xg[-1][0], inf), (yg[-1][0], inf)
    if len(points) == 0:
        return set()
    xg[0] = (inf, min(p.x for p in points))
    yg[0] = (inf, min(p.y for p in points))
    out = set()
    for xlo, xhi in xg:
        for ylo, yhi in yg:
            if xlo is None or ylo is None:
                continue  # the wedge holds no point
            if apex_sign < 0 and xlo + ylo >= 0:
                continue
            if apex_sign > 0 and xhi is not None and yhi is not None and xhi + yhi <= 0:
                continue
            e = frozenset(p.id for p in points if p.x <= xlo and p.y <= ylo)
            if e:
                out.add(e)
    return out


def normalize_common_point(intervals: Sequence[Interval]) -> list[Interval]:
    """Rank-space copy where every left endpoint precedes every right endpoint.

    Repeatedly swapping a right endpoint with an immediately following left
    endpoint keeps the Interval-Bigger-Interval hypergraph; the fixpoint keeps
    lefts and rights in their own relative orders.
    """
    _endpoints_distinct(intervals)
    n = len(intervals)
    lefts = sorted(range(n), key=lambda i: intervals[i].lo)
    rights = sorted(range(n), key=lambda i: intervals[i].hi)
    lo = {i: r for r, i in enumerate(lefts)}
    hi = {i: n + r for r, i in enumerate(rights)}
    return [Interval(lo[i], hi[i]) for i in range(n)]


def complement_arc_duality(intervals: Sequence[Interval]) -> list[Interval]:
    """Complement each arc on the circle model; IBI of the input = ISI of the output.

    On the circle with a top sentinel inside all arcs and a bottom sentinel
    outside all of them, ranks 0..n-1 are left endpoints and n..2n-1 right
    endpoints. Cutting at the top, the complement of [l, r] runs from r through
    the bottom back to l, i.e. [r - n, l + n] in rank space.
    """
    norm = normalize_common_point(intervals)
    n = len(norm)
    return [Interval(iv.hi - n, iv.lo + n) for iv in norm]


def certify_interval_reduction(family: str, intervals: Sequence[Interval],
                               queries: Optional[Sequence[Interval]] = None) -> tuple[bool, dict]:
    """Brute-force both edge families of an interval-to-quadrant map and compare them.

    IBI and ICI (all queries) must match exactly; ISI matches the wedges whose
    apex lies below x + y = 0. With explicit ICI queries, each query's content
    must equal its apex wedge and the family must sit inside the positive-apex
    wedge family.
    """
    if family == "IBI":
        lhs, rhs = ibi_hyperedges(intervals), wedge_hyperedges(ibi_to_point_quadrant(intervals))
    elif family == "ISI":
        lhs, rhs = isi_hyperedges(intervals), wedge_hyperedges(isi_to_point_quadrant(intervals), -1)
    elif family == "ICI":
        if queries is None:
            lhs, rhs = ici_hyperedges(intervals), wedge_hyperedges(isi_to_point_quadrant(intervals), +1)
        else:
            pts, apexes = ici_to_point_quadrant(intervals, queries)
            per_query_ok = all(
                frozenset(i for i, iv in enumerate(intervals) if iv.crosses(q))
                == frozenset(p.id for p in pts if p.x < ax and p.y < ay)
                for q, (ax, ay) in zip(queries, apexes))
            lhs = ici_hyperedges(intervals, queries)
            rhs = wedge_hyperedges(pts, +1)
            ok = per_query_ok and lhs <= rhs
            return ok, {"family": family, "relation": "subfamily", "ok": ok,
                        "n_edges": len(lhs), "n_wedge_edges": len(rhs)}
    else:
        raise KeyError(f"unknown interval family {family!r}")
    ok = lhs == rhs
    return ok, {"family": family, "relation": "equal", "ok": ok, "n_edges": len(lhs),
                "n_wedge_edges": len(rhs), "only_intervals": len(lhs - rhs), "only_wedges": len(rhs - lhs)}


# --- midriff data ------------------------------------------------------------------

@dataclass
class MidriffBound:
    family: str
    lower: int
    upper: Optional[int]
    note: str = ""
    witness: Optional[dict] = None

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")

    def to_json(self) -> dict:
        return {"family": self.family, "lower": self.lower, "upper": self.upper,
                "note": self.note, "witness": self.witness}


_BOUNDS = {
    "Point-Octant": (5, 9, "upper bound from the staircase forest; lower bound from the 63-point construction"),
    "D-Point-Quadrant": (5, 9, "equals the Point-Octant family"),
    "D-IBI": (5, 9, "equals D-Point-Quadrant"),
    "D-ISI": (5, 9, "equals D-Point-Quadrant"),
    "D-ICI": (4, 9, "contains D-Point-Interval; embeds into D-Point-Quadrant"),
    "D-Point-Interval": (4, 4, "cited value"),
    "D-Interval-Point": (3, 3, "cited value"),
}

FAMILY_TAGS = tuple(_BOUNDS)


def midriff_bounds_report(family: str, with_witness: bool = False) -> MidriffBound:
    if family not in _BOUNDS:
        raise KeyError(f"unknown family tag {family!r}; expected one of {', '.join(_BOUNDS)}")
    lower, upper, note = _BOUNDS[family]
    witness = None
    if with_witness and family in ("Point-Octant", "D-Point-Quadrant", "D-IBI", "D-ISI"):
        from .lowerbound import octant_lower_bound_witness

        witness = octant_lower_bound_witness()
    return MidriffBound(family, lower, upper, note, witness)
