"""Exact coordinates, dominance predicates and canonical range enumeration.

All predicates work on ``int`` or :class:`fractions.Fraction` values and never
round. Range enumeration returns the *combinatorially distinct* subsets a
family of ranges can cut out of a finite point set.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Coord = Union[int, Fraction]


class InvariantViolation(ValueError):
    """Input breaks a general-position or well-formedness requirement."""


def as_coord(value) -> Coord:
    """Convert ``value`` to an exact coordinate (int when integral)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point coordinates are not accepted")
    frac = Fraction(value)
    return frac.numerator if frac.denominator == 1 else frac


@dataclass(frozen=True)
class Point2:
    x: Coord
    y: Coord
    id: int = 0


@dataclass(frozen=True)
class Point3:
    x: Coord
    y: Coord
    z: Coord
    id: int = 0


@dataclass(frozen=True)
class Octant:
    apex: Point3

    def contains(self, p: Point3) -> bool:
        a = self.apex
        return p.x < a.x and p.y < a.y and p.z < a.z


@dataclass(frozen=True)
class Interval:
    lo: Coord
    hi: Coord

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvariantViolation(f"degenerate interval [{self.lo}, {self.hi}]")

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def crosses(self, other: "Interval") -> bool:
        return self.lo < other.hi and other.lo < self.hi


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class TriangleShape:
    """A non-degenerate triangle, vertices stored counterclockwise."""

    v0: tuple
    v1: tuple
    v2: tuple

    def __post_init__(self):
        verts = [tuple(as_coord(c) for c in v) for v in (self.v0, self.v1, self.v2)]
        area2 = _cross(*verts)
        if area2 == 0:
            raise InvariantViolation("degenerate triangle (zero area)")
        if area2 < 0:
            verts = [verts[0], verts[2], verts[1]]
        object.__setattr__(self, "v0", verts[0])
        object.__setattr__(self, "v1", verts[1])
        object.__setattr__(self, "v2", verts[2])

    @property
    def vertices(self):
        return (self.v0, self.v1, self.v2)

    def contains(self, p, shift=(0, 0), scale=1) -> bool:
        """Open containment of ``p`` in ``scale * T + shift``."""
        verts = [(scale * v[0] + shift[0], scale * v[1] + shift[1]) for v in self.vertices]
        return all(_cross(verts[k], verts[(k + 1) % 3], p) > 0 for k in range(3))


class Relation(str, Enum):
    NW = "NW"
    SE = "SE"
    SW = "SW"
    NE = "NE"


def classify_pair(p: Point2, q: Point2) -> Relation:
    """Position of ``p`` relative to ``q``."""
    if p.x == q.x or p.y == q.y:
        raise InvariantViolation(f"points {p.id} and {q.id} share a coordinate")
    if p.x < q.x:
        return Relation.SW if p.y < q.y else Relation.NW
    return Relation.NE if p.y > q.y else Relation.SE


def wedge_contains(apex, p) -> bool:
    """Open wedge ``(-inf, apex.x) x (-inf, apex.y)``."""
    ax, ay = (apex.x, apex.y) if hasattr(apex, "x") else apex
    return p.x < ax and p.y < ay


def check_distinct(points: Sequence, axes: str = "xy") -> None:
    for axis in axes:
        seen = {}
        for p in points:
            v = getattr(p, axis)
            if v in seen:
                raise InvariantViolation(
                    f"points {seen[v]} and {p.id} share {axis}-coordinate {v}"
                )
            seen[v] = p.id


def rank_normalize(coords: Sequence[Sequence[Coord]]) -> list[tuple[int, ...]]:
    """Replace each coordinate by its rank, ties broken by input position.

    The result has pairwise distinct integer coordinates on every axis and
    preserves every strict order of the input.
    """
    n = len(coords)
    if n == 0:
        return []
    dims = len(coords[0])
    ranks = [[0] * dims for _ in range(n)]
    for d in range(dims):
        order = sorted(range(n), key=lambda i: (coords[i][d], i))
        for r, i in enumerate(order):
            ranks[i][d] = r
    return [tuple(r) for r in ranks]


def _classes_from_masks(masks: np.ndarray) -> list[frozenset[int]]:
    """Deduplicate boolean membership rows into sorted frozensets."""
    if masks.size == 0:
        return []
    masks = masks[masks.any(axis=1)]
    if len(masks) == 0:
        return []
    packed = np.packbits(masks, axis=1)
    _, first = np.unique(packed, axis=0, return_index=True)
    out = [frozenset(np.flatnonzero(masks[i]).tolist()) for i in sorted(first)]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def _le_matrix(values: Sequence[Coord]) -> np.ndarray:
    """``M[i, k]`` is true when ``values[k] <= values[i]`` (exact)."""
    distinct = sorted(set(values))
    index = {v: r for r, v in enumerate(distinct)}
    rank = np.array([index[v] for v in values], dtype=np.int64)
    return rank[None, :] <= rank[:, None]


def enumerate_wedge_classes(points: Sequence[Point2], strict: bool = True) -> list[frozenset[int]]:
    """All distinct nonempty subsets cut out by wedges, as sets of point ids.

    A wedge with apex just above ``(x_i, y_j)`` contains exactly the points with
    ``x <= x_i`` and ``y <= y_j``; every realizable subset arises this way.
    """
    if strict:
        check_distinct(points)
    n = len(points)
    if n == 0:
        return []
    xle = _le_matrix([p.x for p in points])
    yle = _le_matrix([p.y for p in points])
    masks = (xle[:, None, :] & yle[None, :, :]).reshape(n * n, n)
    ids = [p.id for p in points]
    return [frozenset(ids[k] for k in c) for c in _classes_from_masks(masks)]


def enumerate_octant_classes(points: Sequence[Point3], strict: bool = True) -> list[frozenset[int]]:
    """All distinct nonempty subsets cut out by octants, as sets of point ids.

    Closed comparisons stay exact under tied coordinates; ``strict=False``
    skips the general-position check.
    """
    if strict:
        check_distinct(points, "xyz")
    n = len(points)
    if n == 0:
        return []
    xle = _le_matrix([p.x for p in points])
    yle = _le_matrix([p.y for p in points])
    zle = _le_matrix([p.z for p in points])
    xy = (xle[:, None, :] & yle[None, :, :]).reshape(n * n, n)
    xy = xy[np.unique(np.packbits(xy, axis=1), axis=0, return_index=True)[1]]
    chunks = []
    for row in xy:
        if row.any():
            chunks.append(row[None, :] & zle)
    if not chunks:
        return []
    ids = [p.id for p in points]
    return [frozenset(ids[k] for k in c) for c in _classes_from_masks(np.vstack(chunks))]


# --- translates and homothets of a triangle -------------------------------

def triangle_frame(T: TriangleShape):
    """Affine map sending ``T`` onto the unit right triangle (0,0),(1,0),(0,1).

    Returns ``(to_frame, from_frame)`` callables on coordinate pairs. In the
    frame, ``T + v`` becomes ``{u: u1 > w1, u2 > w2, u1 + u2 < w1 + w2 + 1}``.
    """
    (ax, ay), (bx, by), (cx, cy) = T.vertices
    e1 = (Fraction(bx - ax), Fraction(by - ay))
    e2 = (Fraction(cx - ax), Fraction(cy - ay))
    det = e1[0] * e2[1] - e1[1] * e2[0]

    def to_frame(p):
        dx, dy = p[0] - ax, p[1] - ay
        u1 = (dx * e2[1] - dy * e2[0]) / det
        u2 = (e1[0] * dy - e1[1] * dx) / det
        return as_coord(u1), as_coord(u2)

    def from_frame(u):
        return (
            as_coord(ax + u[0] * e1[0] + u[1] * e2[0]),
            as_coord(ay + u[0] * e1[1] + u[1] * e2[1]),
        )

    return to_frame, from_frame


def _gap_points(sorted_vals: list) -> list:
    """Representatives below, between and above ``sorted_vals`` (distinct)."""
    if not sorted_vals:
        return [0]
    reps = [sorted_vals[0] - 1]
    reps += [Fraction(a + b, 2) for a, b in zip(sorted_vals, sorted_vals[1:])]
    reps.append(sorted_vals[-1] + 1)
    return reps


def enumerate_translate_classes(T: TriangleShape, points: Sequence[Point2]):
    """All distinct nonempty ``P & (T + v)``, each with a witness shift ``v``.

    Works in the frame where ``T`` is the unit right triangle, so
    ``p`` lies in ``T + v`` iff ``v`` lies in the reflected region ``p - T``,
    bounded by the lines ``w1 = u1(p)``, ``w2 = u2(p)`` and
    ``w1 + w2 = u1(p) + u2(p) - 1``. The arrangement of these three line
    families is swept cell by cell: a column gap, a row gap, then every gap
    of the diagonal family crossing that grid cell.
    """
    pts = list(points)
    if not pts:
        return []
    to_frame, from_frame = triangle_frame(T)
    T_frame_origin = from_frame((0, 0))
    us = [to_frame((p.x, p.y)) for p in pts]
    xs = sorted(set(u[0] for u in us))
    ys = sorted(set(u[1] for u in us))
    diag = sorted(set(u[0] + u[1] - 1 for u in us))
    xgaps = [(xs[0] - 1, xs[0])] + list(zip(xs, xs[1:])) + [(xs[-1], xs[-1] + 1)]
    ygaps = [(ys[0] - 1, ys[0])] + list(zip(ys, ys[1:])) + [(ys[-1], ys[-1] + 1)]
    found = {}
    for xlo, xhi in xgaps:
        for ylo, yhi in ygaps:
            lo, hi = xlo + ylo, xhi + yhi
            cuts = [d for d in diag if lo < d < hi]
            bounds = [lo] + cuts + [hi]
            for slo, shi in zip(bounds, bounds[1:]):
                s = Fraction(slo + shi, 2)
                lam = (s - lo) / (hi - lo)
                w = (xlo + lam * (xhi - xlo), ylo + lam * (yhi - ylo))
                members = frozenset(
                    p.id for p, u in zip(pts, us)
                    if u[0] > w[0] and u[1] > w[1] and u[0] + u[1] < w[0] + w[1] + 1
                )
                if members and members not in found:
                    origin = from_frame(w)
                    found[members] = (
                        as_coord(origin[0] - T_frame_origin[0]),
                        as_coord(origin[1] - T_frame_origin[1]),
                    )
    out = sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    return out


def enumerate_homothet_classes(T: TriangleShape, points: Sequence[Point2]):
    """All distinct nonempty ``P & (lam * T + v)`` with ``lam > 0``.

    Returns ``(subset, (lam, v))`` pairs. In the unit frame a homothet is
    ``{u1 > w1, u2 > w2, u1 + u2 < c}`` with ``c > w1 + w2``; for a fixed
    column/row gap every prefix of the in-range points by ``u1 + u2`` is
    realizable.
    """
    pts = list(points)
    if not pts:
        return []
    to_frame, from_frame = triangle_frame(T)
    origin0 = from_frame((0, 0))
    us = [to_frame((p.x, p.y)) for p in pts]
    xreps = _gap_points(sorted(set(u[0] for u in us)))
    yreps = _gap_points(sorted(set(u[1] for u in us)))
    found = {}
    for w1 in xreps:
        for w2 in yreps:
            inside = sorted(
                ((u[0] + u[1], p.id) for p, u in zip(pts, us) if u[0] > w1 and u[1] > w2),
                key=lambda t: t[0],
            )
            members = []
            for k, (s, pid) in enumerate(inside):
                members.append(pid)
                if k + 1 < len(inside) and inside[k + 1][0] == s:
                    continue
                c = s + 1 if k + 1 == len(inside) else Fraction(s + inside[k + 1][0], 2)
                key = frozenset(members)
                if key not in found:
                    lam = c - w1 - w2
                    o = from_frame((w1, w2))
                    # the frame map is affine, so lam*T + v maps to lam*T0 + w
                    found[key] = (as_coord(lam), (
                        as_coord(o[0] - lam * origin0[0]),
                        as_coord(o[1] - lam * origin0[1]),
                    ))
    return sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def points2(coords: Iterable) -> list[Point2]:
    return [Point2(as_coord(c[0]), as_coord(c[1]), i) for i, c in enumerate(coords)]


def points3(coords: Iterable) -> list[Point3]:
    return [Point3(as_coord(c[0]), as_coord(c[1]), as_coord(c[2]), i) for i, c in enumerate(coords)]
