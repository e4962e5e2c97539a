"""Deterministic random instances: ordered planar points, 3D points, octant coverings, intervals."""
from __future__ import annotations

import random
from typing import Optional

from .geometry import Interval, Octant, Point2, Point3, rank_normalize

DISTRIBUTIONS = ("uniform-integer-grid", "antichain", "adversarial-script")

# Blocks are tiled along the anti-diagonal, so distinct blocks are incomparable.
SCRIPTS = {
    "chain": None,
    "antichain": None,
    "box": [(0, 4), (4, 0), (3, 1), (1, 3), (2, 2)],
    "above": [(0, 6), (2, 4), (4, 2), (6, 0), (3, 5)],
    "mixed": [(4, 2), (0, 7), (6, 3), (7, 0), (5, 1), (1, 5), (2, 4), (3, 6)],
}


def _tile(block: list, n: int) -> list[tuple[int, int]]:
    size = max(max(x, y) for x, y in block) + 1
    out = []
    b = 0
    while len(out) < n:
        out.extend((x + b * size, y - b * size) for x, y in block)
        b += 1
    return out[:n]


def script_points(name: str, n: int) -> list[tuple[int, int]]:
    if name not in SCRIPTS:
        raise KeyError(f"unknown script {name!r}; expected one of {', '.join(SCRIPTS)}")
    if name == "chain":
        raw = [(i, i) for i in range(n)]
    elif name == "antichain":
        raw = [(i, n - 1 - i) for i in range(n)]
    else:
        raw = _tile(SCRIPTS[name], n)
    return [tuple(r) for r in rank_normalize(raw)] if raw else []


def gen_points2(n: int, seed: int, distribution: str = "uniform-integer-grid",
                script: Optional[str] = None) -> list[Point2]:
    """``n`` points in arrival order with pairwise distinct ranks in 0..n-1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)
    if distribution == "uniform-integer-grid":
        grid = max(4 * n, 1)
        xs = rng.sample(range(grid), n)
        ys = rng.sample(range(grid), n)
        coords = [tuple(r) for r in rank_normalize(list(zip(xs, ys)))] if n else []
    elif distribution == "antichain":
        xs = list(range(n))
        rng.shuffle(xs)
        coords = [(x, n - 1 - x) for x in xs]
    elif distribution == "adversarial-script":
        name = script or sorted(SCRIPTS)[seed % len(SCRIPTS)]
        coords = script_points(name, n)
    else:
        raise KeyError(f"unknown distribution {distribution!r}; expected one of {', '.join(DISTRIBUTIONS)}")
    return [Point2(x, y, i) for i, (x, y) in enumerate(coords)]


def gen_points3(n: int, seed: int) -> list[Point3]:
    rng = random.Random(seed)
    axes = [rng.sample(range(n), n) for _ in range(3)]
    return [Point3(axes[0][i], axes[1][i], axes[2][i], i) for i in range(n)]


def gen_covering(n_points: int, seed: int, m: int = 9, max_octants: int = 300,
                 spread: int = 40) -> tuple[list[Octant], list[Point3]]:
    """An ``m``-fold octant covering of ``n_points`` points.

    All point and apex coordinates are distinct integers on each axis.
    Octants are grown around the least covered point until every point is
    covered ``m`` times.
    """
    rng = random.Random(seed)
    scale = 10 * spread
    used = [set() for _ in range(3)]

    def fresh(axis: int, lo: int, hi: int) -> int:
        while True:
            v = rng.randint(lo, hi)
            if v not in used[axis]:
                used[axis].add(v)
                return v

    pts = [Point3(*(fresh(a, 0, scale * n_points) for a in range(3)), i) for i in range(n_points)]
    octants: list[Octant] = []
    cover = [0] * n_points
    while min(cover, default=m) < m:
        if len(octants) >= max_octants:
            raise RuntimeError(f"could not reach an {m}-fold covering within {max_octants} octants")
        target = min(range(n_points), key=lambda i: (cover[i], i))
        p = pts[target]
        reach = scale * rng.randint(1, spread)
        apex = Point3(*(fresh(a, c + 1, c + reach) for a, c in enumerate((p.x, p.y, p.z))))
        o = Octant(apex)
        octants.append(o)
        for i, q in enumerate(pts):
            if o.contains(q):
                cover[i] += 1
    return octants, pts


def gen_intervals(n: int, seed: int) -> list[Interval]:
    """``n`` intervals with 2n distinct integer endpoints."""
    rng = random.Random(seed)
    ends = rng.sample(range(4 * n + 2), 2 * n)
    return [Interval(min(a, b), max(a, b)) for a, b in zip(ends[::2], ends[1::2])]
