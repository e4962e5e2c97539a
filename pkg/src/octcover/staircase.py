"""Staircase forest construction for dynamic quadrant two-coloring.

Points arrive one at a time. After each arrival the four operations
(2Comparable, 4Incomparable, 1Box, 1Above) are applied until none fires.
Any proper two-coloring of the resulting forest leaves no monochromatic
wedge with 9 or more points at any prefix time.
"""
from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .geometry import InvariantViolation, as_coord

BELOW, STAIR, ABOVE = "below", "stair", "above"


class InternalError(RuntimeError):
    """A proved property of the construction failed; indicates a bug."""


@dataclass
class StairFlags:
    good: bool = False
    left_good: bool = False
    right_good: bool = False


@dataclass
class Edge:
    u: int
    v: int
    time: int  # arrival index during whose saturation the edge was added
    op: str


@dataclass
class _DSU:
    parent: list = field(default_factory=list)

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


@dataclass
class StaircaseState:
    points: list = field(default_factory=list)  # (x, y) by arrival index
    status: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    stair: list = field(default_factory=list)  # ids sorted by x
    below: list = field(default_factory=list)  # ids sorted by x
    flags: dict = field(default_factory=dict)
    good: set = field(default_factory=set)  # above-points known to be good
    trace: list = field(default_factory=list)
    dsu: _DSU = field(default_factory=_DSU)
    checker: Optional[object] = None  # called after every operation

    @property
    def t(self) -> int:
        return len(self.points)

    def x(self, i):
        return self.points[i][0]

    def y(self, i):
        return self.points[i][1]

    def component(self, i: int) -> int:
        return self.dsu.find(i)

    def component_below(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.below:
            c = self.component(b)
            if c in out:
                raise InternalError(f"below-points {out[c]} and {b} share a component")
            out[c] = b
        return out

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.points]
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        return adj


def new_state(checker=None) -> StaircaseState:
    return StaircaseState(checker=checker)


# --- sorted-list helpers ---------------------------------------------------

def _xkeys(state: StaircaseState, ids: list[int]) -> list:
    return [state.points[i][0] for i in ids]


def _insert_by_x(state: StaircaseState, ids: list[int], i: int) -> None:
    pos = bisect.bisect_left(_xkeys(state, ids), state.x(i))
    ids.insert(pos, i)


def _stair_left_of(state: StaircaseState, x) -> Optional[int]:
    """Stair-point with the largest x-coordinate below ``x``."""
    pos = bisect.bisect_left(_xkeys(state, state.stair), x)
    return state.stair[pos - 1] if pos else None


def _is_above(state: StaircaseState, i: int) -> bool:
    # stairs left of i form a prefix with decreasing y; its last has min y
    s = _stair_left_of(state, state.x(i))
    return s is not None and state.y(s) < state.y(i)


def _add_edge(state: StaircaseState, u: int, v: int, op: str) -> None:
    if not state.dsu.union(u, v):
        raise InternalError(f"{op}: edge {{{u},{v}}} would close a cycle")
    state.edges.append(Edge(min(u, v), max(u, v), state.t - 1, op))


def _put_on_staircase(state: StaircaseState, i: int, flags: StairFlags) -> None:
    """Move below-point ``i`` onto the staircase; points NE of it go above."""
    state.below.remove(i)
    xi, yi = state.points[i]
    for s in [s for s in state.stair if state.x(s) > xi and state.y(s) > yi]:
        state.stair.remove(s)
        del state.flags[s]
        state.status[s] = ABOVE
        state.good.add(s)
    for b in [b for b in state.below if state.x(b) > xi and state.y(b) > yi]:
        state.below.remove(b)
        state.status[b] = ABOVE
        state.good.add(b)
    _insert_by_x(state, state.stair, i)
    state.status[i] = STAIR
    state.flags[i] = flags


# --- operations --------------------------------------------------------------

def op_2comparable(state: StaircaseState, p: int, q: int) -> StaircaseState:
    if state.status[p] != BELOW or state.status[q] != BELOW:
        raise InvariantViolation("2Comparable needs two below-points")
    if not (state.x(p) < state.x(q) and state.y(p) < state.y(q)):
        raise InvariantViolation("2Comparable needs q NE from p")
    _add_edge(state, p, q, "2Comparable")
    _put_on_staircase(state, q, StairFlags(True, True, True))
    state.trace.append({"t": state.t, "op": "2Comparable", "ids": [p, q]})
    return state


def _four_applicable(state: StaircaseState, quad: Sequence[int], keys: Optional[list] = None) -> bool:
    # The minimal wedge holding q1..q4 has apex just above (q4.x, q1.y); it
    # avoids every region NE of a stair-point s unless s.x < q4.x and s.y < q1.y.
    keys = _xkeys(state, state.stair) if keys is None else keys
    pos = bisect.bisect_left(keys, state.x(quad[3]))
    return pos == 0 or state.y(state.stair[pos - 1]) > state.y(quad[0])


def op_4incomparable(state: StaircaseState, q1: int, q2: int, q3: int, q4: int) -> StaircaseState:
    quad = [q1, q2, q3, q4]
    if any(state.status[q] != BELOW for q in quad):
        raise InvariantViolation("4Incomparable needs four below-points")
    if any(not (state.x(a) < state.x(b) and state.y(a) > state.y(b)) for a, b in zip(quad, quad[1:])):
        raise InvariantViolation("4Incomparable needs incomparable points in x order")
    if not _four_applicable(state, quad):
        raise InvariantViolation("4Incomparable wedge is not below the staircase")
    _add_edge(state, q1, q2, "4Incomparable")
    _add_edge(state, q3, q4, "4Incomparable")
    _put_on_staircase(state, q2, StairFlags(left_good=True))
    _put_on_staircase(state, q3, StairFlags(right_good=True))
    state.trace.append({"t": state.t, "op": "4Incomparable", "ids": quad})
    return state


def _box_pair_ok(state: StaircaseState, s1: int, s2: int) -> bool:
    f1, f2 = state.flags[s1], state.flags[s2]
    return f1.left_good and not f1.right_good and f2.right_good and not f2.left_good


def op_1box(state: StaircaseState, s1: int, s2: int, p: int) -> StaircaseState:
    pos = state.stair.index(s1) if s1 in state.flags else -1
    if pos < 0 or pos + 1 >= len(state.stair) or state.stair[pos + 1] != s2:
        raise InvariantViolation("1Box needs neighboring stair-points s1, s2")
    if not _box_pair_ok(state, s1, s2):
        raise InvariantViolation("1Box flag condition fails")
    if not (state.x(s1) < state.x(p) < state.x(s2) and state.y(s2) < state.y(p) < state.y(s1)):
        raise InvariantViolation("1Box point outside the open rectangle")
    if state.status[p] != BELOW:
        raise InternalError(f"1Box point {p} is not a below-point")
    if state.component(p) == state.component(s2):
        raise InternalError(f"1Box: {p} and {s2} already share a component")
    _add_edge(state, p, s2, "1Box")
    _put_on_staircase(state, p, StairFlags(right_good=True))
    state.trace.append({"t": state.t, "op": "1Box", "ids": [s1, s2, p]})
    return state


def op_1above(state: StaircaseState, p: int) -> StaircaseState:
    if state.status[p] != ABOVE or p in state.good:
        raise InvariantViolation("1Above needs an above-point that is not good")
    s = _stair_left_of(state, state.x(p))
    if s is None or state.y(s) > state.y(p):
        raise InternalError(f"above-point {p} has no stair-point SW of it")
    # s is the largest-x stair-point left of p; it has the least y of those
    _add_edge(state, p, s, "1Above")
    state.good.add(p)
    state.trace.append({"t": state.t, "op": "1Above", "ids": [p, s]})
    return state


# --- saturation --------------------------------------------------------------

def _find_2comparable(state: StaircaseState):
    # Only the newest point can be comparable to another below-point.
    r = state.t - 1
    if state.status[r] != BELOW:
        return None
    xr, yr = state.points[r]
    sw = [b for b in state.below if b != r and state.x(b) < xr and state.y(b) < yr]
    if sw:
        return min(sw), r
    ne = [b for b in state.below if b != r and state.x(b) > xr and state.y(b) > yr]
    if ne:
        return r, min(ne)
    return None


def _find_4incomparable(state: StaircaseState):
    best = None
    b = state.below
    keys = _xkeys(state, state.stair)
    for k in range(len(b) - 3):
        quad = b[k:k + 4]
        if (best is None or quad[0] < best[0]) and _four_applicable(state, quad, keys):
            best = quad
    return best


def _find_1box(state: StaircaseState):
    best = None
    bx = _xkeys(state, state.below)
    for s1, s2 in zip(state.stair, state.stair[1:]):
        if not _box_pair_ok(state, s1, s2):
            continue
        lo = bisect.bisect_right(bx, state.x(s1))
        hi = bisect.bisect_left(bx, state.x(s2))
        inside = [p for p in state.below[lo:hi] if state.y(s2) < state.y(p) < state.y(s1)]
        if inside:
            cand = (s1, s2, min(inside))
            if best is None or cand < best:
                best = cand
    return best


def _find_1above(state: StaircaseState):
    r = state.t - 1
    if r < 0 or state.status[r] != ABOVE or r in state.good:
        return None
    if _edge_in_closed_quadrant(state, *state.points[r]):
        state.good.add(r)
        return None
    return r
    return None


def saturate(state: StaircaseState) -> StaircaseState:
    """Apply operations in priority order 2Comparable > 4Incomparable > 1Box > 1Above."""
    budget = max(state.t, 1)  # every operation adds a forest edge
    fired = 0
    while True:
        if (c := _find_2comparable(state)) is not None:
            op_2comparable(state, *c)
        elif (c := _find_4incomparable(state)) is not None:
            op_4incomparable(state, *c)
        elif (c := _find_1box(state)) is not None:
            op_1box(state, *c)
        elif (c := _find_1above(state)) is not None:
            op_1above(state, c)
        else:
            return state
        fired += 1
        if fired > budget:
            raise InternalError("saturation did not terminate")
        if state.checker is not None:
            state.checker(state)


def arrive(state: StaircaseState, p) -> StaircaseState:
    """Add the next point and saturate."""
    x, y = (p.x, p.y) if hasattr(p, "x") else p
    x, y = as_coord(x), as_coord(y)
    for i, (ox, oy) in enumerate(state.points):
        if ox == x or oy == y:
            raise InvariantViolation(f"arriving point ({x}, {y}) shares a coordinate with point {i}")
    i = state.dsu.add()
    state.points.append((x, y))
    if _is_above(state, i):
        state.status.append(ABOVE)
    else:
        state.status.append(BELOW)
        _insert_by_x(state, state.below, i)
    return saturate(state)


def run(points: Iterable, checker=None) -> StaircaseState:
    state = new_state(checker)
    for p in points:
        arrive(state, p)
    return state


def finalize(state: StaircaseState) -> list[int]:
    """Proper two-coloring of the forest; each tree's smallest id gets 0."""
    adj = state.adjacency()
    color: list[Optional[int]] = [None] * state.t
    for root in range(state.t):
        if color[root] is not None:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if color[v] is None:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    raise InternalError("forest invariant violated: odd cycle")
    return color  # type: ignore[return-value]


def color_points(points: Sequence) -> tuple[list[int], StaircaseState]:
    state = run(points)
    return finalize(state), state


# --- debug oracles -------------------------------------------------------------

def _edge_in_closed_quadrant(state: StaircaseState, ax, ay) -> bool:
    for e in state.edges:
        (ux, uy), (vx, vy) = state.points[e.u], state.points[e.v]
        if max(ux, vx) <= ax and max(uy, vy) <= ay:
            return True
    return False


def debug_check_good(state: StaircaseState, p: int) -> bool:
    """Every wedge containing ``p`` holds both ends of a forest edge.

    The smallest such wedge contains exactly the points weakly SW of ``p``,
    and every other wedge containing ``p`` contains those points too.
    """
    return _edge_in_closed_quadrant(state, *state.points[p])


def debug_check_side_good(state: StaircaseState, s: int, side: str) -> bool:
    """Semantic left-/right-goodness of stair-point ``s``.

    Vacuously true when the neighbor on that side does not exist.
    """
    pos = state.stair.index(s)
    j = pos - 1 if side == "left" else pos + 1
    if j < 0 or j >= len(state.stair):
        return True
    q = state.stair[j]
    return _edge_in_closed_quadrant(
        state, max(state.x(s), state.x(q)), max(state.y(s), state.y(q))
    )
