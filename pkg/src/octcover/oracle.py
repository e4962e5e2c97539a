"""Brute-force certification of colorings and hypergraph 2-colorability."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    Point2,
    Point3,
    check_distinct,
    enumerate_octant_classes,
    enumerate_wedge_classes,
    rank_normalize,
)


class OracleError(ValueError):
    pass


@dataclass
class VerificationReport:
    ok: bool
    m_checked: int
    violations: list = field(default_factory=list)
    max_mono: int = 0

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "m_checked": self.m_checked,
            "max_mono": self.max_mono,
            "violations": self.violations,
        }


def _check_total(colors, n):
    missing = [i for i in range(n) if i >= len(colors) or colors[i] not in (0, 1)]
    if missing:
        raise OracleError(f"coloring is partial; uncolored ids: {missing[:20]}")


# --- prefix wedge sweep ----------------------------------------------------------

def _prefix_min_grid(n: int, xr, yr, values) -> np.ndarray:
    """``G[i, j]`` = min of ``values`` over items with x-rank <= i, y-rank <= j."""
    grid = np.full((n, n), n, dtype=np.int64)
    np.minimum.at(grid, (np.asarray(xr, dtype=np.int64), np.asarray(yr, dtype=np.int64)),
                  np.asarray(values, dtype=np.int64))
    np.minimum.accumulate(grid, axis=0, out=grid)
    np.minimum.accumulate(grid, axis=1, out=grid)
    return grid


def _counts_before(n: int, xr, yr, when: np.ndarray) -> np.ndarray:
    """``C[i, j]`` = number of points with ranks <= (i, j) arriving before ``when[i, j]``.

    Points are inserted in arrival order; each apex is read off just before
    the arrival index it asks about.
    """
    flat = when.ravel()
    order = np.argsort(flat, kind="stable")
    bounds = np.searchsorted(flat[order], np.arange(n + 1), side="left")
    out = np.zeros(n * n, dtype=np.int64)
    cnt = np.zeros((n, n), dtype=np.int32)
    for t in range(n + 1):
        lo = bounds[t]
        hi = bounds[t + 1] if t < n else len(order)
        if hi > lo:
            idx = order[lo:hi]
            out[idx] = cnt.ravel()[idx]
        if t < n:
            cnt[xr[t]:, yr[t]:] += 1
    return out.reshape(n, n)


def _wedge_ranks(points: Sequence[Point2]):
    check_distinct(points)
    ranks = rank_normalize([(p.x, p.y) for p in points])
    xr = np.array([r[0] for r in ranks], dtype=np.int64)
    yr = np.array([r[1] for r in ranks], dtype=np.int64)
    return xr, yr


def verify_prefix_wedges(points: Sequence[Point2], colors: Sequence[int], m: int = 9,
                         max_witnesses: int = 20) -> VerificationReport:
    """Every wedge class of every prefix with >= ``m`` points is bichromatic.

    For a fixed apex the wedge's content only grows, so it is monochromatic
    exactly until the first point of the second color arrives; the largest
    monochromatic class of that apex is its content just before that moment.
    """
    n = len(points)
    _check_total(colors, n)
    if n == 0:
        return VerificationReport(True, m, [], 0)
    xr, yr = _wedge_ranks(points)
    col = np.asarray(colors[:n], dtype=np.int64)
    times = np.arange(n)
    first = [_prefix_min_grid(n, xr[col == c], yr[col == c], times[col == c]) for c in (0, 1)]
    second = np.maximum(first[0], first[1])
    sizes = _counts_before(n, xr, yr, second)
    max_mono = int(sizes.max())
    violations = []
    if max_mono >= m:
        bad = np.argwhere(sizes >= m)
        seen = set()
        for i, j in bad:
            t = int(second[i, j])
            members = tuple(int(k) for k in np.flatnonzero((xr <= i) & (yr <= j) & (times < t)))
            if members in seen:
                continue
            seen.add(members)
            violations.append({
                "time": t,
                "apex_ranks": [int(i), int(j)],
                "ids": list(members),
                "color": int(col[members[0]]),
            })
            if len(violations) >= max_witnesses:
                break
    return VerificationReport(max_mono < m, m, violations, max_mono)


def verify_prefix_wedges_bruteforce(points: Sequence[Point2], colors: Sequence[int], m: int = 9) -> VerificationReport:
    """Reference version: enumerate wedge classes of every prefix explicitly."""
    n = len(points)
    _check_total(colors, n)
    violations, max_mono = [], 0
    for t in range(1, n + 1):
        for cls in enumerate_wedge_classes(points[:t]):
            cols = {colors[i] for i in cls}
            if len(cols) == 1:
                max_mono = max(max_mono, len(cls))
                if len(cls) >= m:
                    violations.append({"time": t, "ids": sorted(cls), "color": cols.pop()})
    return VerificationReport(not violations, m, violations, max_mono)


def max_edge_free_wedge(points: Sequence[Point2], edges) -> int:
    """Largest prefix wedge class holding no forest edge present at that time.

    ``edges`` are ``(u, v, time)`` triples; an edge exists from arrival index
    ``time`` on. The guarantee of the staircase forest is that this is <= 8.
    """
    n = len(points)
    if n == 0:
        return 0
    xr, yr = _wedge_ranks(points)
    if edges:
        ex = [max(xr[u], xr[v]) for u, v, _ in edges]
        ey = [max(yr[u], yr[v]) for u, v, _ in edges]
        first_edge = _prefix_min_grid(n, ex, ey, [t for _, _, t in edges])
    else:
        first_edge = np.full((n, n), n, dtype=np.int64)
    return int(_counts_before(n, xr, yr, first_edge).max())


def max_edge_free_wedge_bruteforce(points: Sequence[Point2], edges) -> int:
    best = 0
    for t in range(1, len(points) + 1):
        live = [(u, v) for u, v, te in edges if te < t]
        for cls in enumerate_wedge_classes(points[:t]):
            if not any(u in cls and v in cls for u, v in live):
                best = max(best, len(cls))
    return best


# --- octants ------------------------------------------------------------------------

def verify_octants(points: Sequence[Point3], colors: Sequence[int], m: int = 9,
                   classes: Optional[list] = None) -> VerificationReport:
    """Every octant class with >= ``m`` points is bichromatic."""
    _check_total(colors, len(points))
    if classes is None:
        classes = enumerate_octant_classes(points, strict=False)
    violations, max_mono = [], 0
    for cls in classes:
        cols = {colors[i] for i in cls}
        if len(cols) == 1:
            max_mono = max(max_mono, len(cls))
            if len(cls) >= m:
                violations.append({"ids": sorted(cls), "color": cols.pop()})
    return VerificationReport(not violations, m, violations, max_mono)


def verify_octants_by_sweep(points: Sequence[Point3], colors: Sequence[int], m: int = 9) -> VerificationReport:
    """Large-instance route: sort by z and run the prefix wedge sweep."""
    _check_total(colors, len(points))
    check_distinct(points, "xyz")
    order = sorted(range(len(points)), key=lambda i: points[i].z)
    planar = [Point2(points[i].x, points[i].y, k) for k, i in enumerate(order)]
    rep = verify_prefix_wedges(planar, [colors[i] for i in order], m)
    for v in rep.violations:
        v["ids"] = sorted(order[k] for k in v["ids"])
    return rep


# --- property B search ----------------------------------------------------------------

@dataclass
class SearchResult:
    sat: bool
    coloring: Optional[list]
    nodes: int
    order: list
    edges_checked: int

    def certificate(self) -> dict:
        return {
            "sat": self.sat,
            "nodes": self.nodes,
            "variable_order": self.order,
            "edges_checked": self.edges_checked,
            "coloring": self.coloring,
        }


def search_proper_two_coloring(n: int, edges: Sequence[Sequence[int]], m: int) -> SearchResult:
    """Backtracking search for a 2-coloring with no monochromatic edge of size >= m.

    Variables are branched in descending degree order with the first one fixed
    to 0 (color swap symmetry). An edge whose colored vertices all agree and
    which has one uncolored vertex left forces that vertex.
    """
    active = [tuple(sorted(set(e))) for e in edges if len(set(e)) >= m]
    active = list(dict.fromkeys(active))
    if any(len(e) == 1 for e in active):
        return SearchResult(False, None, 0, [], len(active))
    incident: list[list[int]] = [[] for _ in range(n)]
    for k, e in enumerate(active):
        for v in e:
            incident[v].append(k)
    order = sorted(range(n), key=lambda v: (-len(incident[v]), v))
    color = [-1] * n
    # per edge: count of vertices colored 0 and 1
    c0 = [0] * len(active)
    c1 = [0] * len(active)
    nodes = 0
    trail: list[int] = []

    def assign(v: int, c: int) -> bool:
        """Assign and propagate; returns False on conflict. Trail records assignments."""
        queue = [(v, c)]
        while queue:
            u, cu = queue.pop()
            if color[u] != -1:
                if color[u] != cu:
                    return False
                continue
            color[u] = cu
            trail.append(u)
            for k in incident[u]:
                if cu == 0:
                    c0[k] += 1
                else:
                    c1[k] += 1
            for k in incident[u]:
                e = active[k]
                size = len(e)
                if c0[k] == size or c1[k] == size:
                    return False
                if c0[k] + c1[k] == size - 1 and (c0[k] == 0 or c1[k] == 0):
                    forced = 1 if c1[k] == 0 else 0
                    for w in e:
                        if color[w] == -1:
                            queue.append((w, forced))
                            break
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            u = trail.pop()
            for k in incident[u]:
                if color[u] == 0:
                    c0[k] -= 1
                else:
                    c1[k] -= 1
            color[u] = -1

    def solve(pos: int) -> bool:
        nonlocal nodes
        while pos < n and color[order[pos]] != -1:
            pos += 1
        if pos == n:
            return True
        v = order[pos]
        values = (0,) if pos == 0 and not trail else (0, 1)
        for c in values:
            nodes += 1
            mark = len(trail)
            if assign(v, c) and solve(pos + 1):
                return True
            undo(mark)
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        sat = solve(0)
    finally:
        sys.setrecursionlimit(limit)
    coloring = [c if c != -1 else 0 for c in color] if sat else None
    return SearchResult(sat, coloring, nodes, order, len(active))


def brute_force_two_colorable(n: int, edges: Sequence[Sequence[int]], m: int) -> Optional[list]:
    """Enumerate all 2^n colorings (vectorized); return one proper coloring or None."""
    if n > 24:
        raise OracleError("exhaustive enumeration limited to n <= 24")
    masks = [sum(1 << v for v in set(e)) for e in edges if len(set(e)) >= m]
    cols = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for mask in masks:
        sel = cols & mask
        ok &= (sel != 0) & (sel != mask)
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        return None
    c = int(hits[0])
    return [(c >> v) & 1 for v in range(n)]


def is_proper(n: int, edges, m: int, coloring) -> bool:
    return all(len({coloring[v] for v in e}) == 2 for e in edges if len(set(e)) >= m)


def measure_midriff(n: int, edges: Sequence[Sequence[int]], guard: int = 30) -> int:
    """Smallest ``m`` such that the hypergraph is m-proper two-colorable."""
    if n > guard:
        raise OracleError(f"vertex count {n} exceeds guard {guard}; pass a larger guard to override")
    sizes = [len(set(e)) for e in edges]
    if not sizes:
        return 1
    for m in range(1, max(sizes) + 2):
        if search_proper_two_coloring(n, edges, m).sat:
            return m
    raise AssertionError("unreachable: no edge has size above the maximum")
