"""From-scratch recomputation of the staircase invariants.

:class:`InvariantChecker` is meant to be passed as the ``checker`` of a
:class:`~octcover.staircase.StaircaseState`; it runs after every single
operation and raises :class:`~octcover.staircase.InternalError` on the first
broken property. It shares no bookkeeping with the incremental code beyond
the raw point list, the edge list, the staircase membership and the flags.
"""
from __future__ import annotations

import numpy as np

from .staircase import ABOVE, BELOW, STAIR, InternalError, StaircaseState


def _ranks(values) -> np.ndarray:
    order = sorted(range(len(values)), key=lambda i: values[i])
    r = np.empty(len(values), dtype=np.int64)
    r[order] = np.arange(len(values))
    return r


def _components(n: int, edges) -> list[int]:
    comp = list(range(n))
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        stack = [root]
        seen[root] = True
        while stack:
            u = stack.pop()
            comp[u] = root
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return comp


class InvariantChecker:
    """Checks the four structural invariants, flag soundness and monotonicity,
    the no-regain rule for trees that lost their below-point, and the
    below-point height rule for right-good-only stair-points."""

    def __init__(self):
        self.calls = 0
        self.prev_flags: dict[int, tuple[bool, bool, bool]] = {}
        self.prev_above: set[int] = set()
        self.lost: set[int] = set()  # stair-points whose tree lost its below-point

    def __call__(self, state: StaircaseState) -> None:
        self.calls += 1
        n = state.t
        xs = [p[0] for p in state.points]
        ys = [p[1] for p in state.points]
        xr, yr = _ranks(xs), _ranks(ys)
        stair = state.stair
        stair_set = set(stair)

        if [xs[s] for s in stair] != sorted(xs[s] for s in stair):
            raise InternalError("staircase not sorted by x")
        for a, b in zip(stair, stair[1:]):
            if not ys[a] > ys[b]:
                raise InternalError(f"stair-points {a}, {b} are comparable")

        # above/below classification from the staircase alone
        sx, sy = xr[stair], yr[stair]
        for i in range(n):
            if i in stair_set:
                expected = STAIR
            elif len(stair) and np.any((sx < xr[i]) & (sy < yr[i])):
                expected = ABOVE
            else:
                expected = BELOW
            if state.status[i] != expected:
                raise InternalError(f"point {i} is {state.status[i]}, expected {expected}")
        above = {i for i in range(n) if state.status[i] == ABOVE}
        below = [i for i in range(n) if state.status[i] == BELOW]
        if sorted(below) != sorted(state.below):
            raise InternalError("below list out of sync")
        if not self.prev_above <= above:
            raise InternalError("an above-point left the above set")
        self.prev_above = above

        # edges form a forest
        comp = _components(n, state.edges)
        if len(state.edges) != n - len(set(comp)):
            raise InternalError("forest has a cycle")

        # below-points lie in different trees
        below_comp = {}
        for b in below:
            if comp[b] in below_comp:
                raise InternalError(f"below-points {below_comp[comp[b]]}, {b} share a tree")
            below_comp[comp[b]] = b

        ex = np.array([max(xr[e.u], xr[e.v]) for e in state.edges], dtype=np.int64)
        ey = np.array([max(yr[e.u], yr[e.v]) for e in state.edges], dtype=np.int64)

        def has_edge(qx: np.ndarray, qy: np.ndarray) -> np.ndarray:
            if len(ex) == 0:
                return np.zeros(len(qx), dtype=bool)
            return ((ex[None, :] <= qx[:, None]) & (ey[None, :] <= qy[:, None])).any(axis=1)

        # above-points are good
        if above:
            ab = np.array(sorted(above))
            ok = has_edge(xr[ab], yr[ab])
            if not ok.all():
                raise InternalError(f"above-point {ab[~ok][0]} is not good")

        # every stair-point carries a flag, and every flag is sound
        for k, s in enumerate(stair):
            f = state.flags[s]
            if not (f.good or f.left_good or f.right_good):
                raise InternalError(f"stair-point {s} carries no flag")
            if f.good and not (f.left_good and f.right_good):
                raise InternalError(f"stair-point {s} good but not left/right-good")
            if f.good and not has_edge(xr[[s]], yr[[s]])[0]:
                raise InternalError(f"stair-point {s} flagged good but is not")
            for flag, j in ((f.left_good, k - 1), (f.right_good, k + 1)):
                if flag and 0 <= j < len(stair):
                    q = stair[j]
                    qx = np.array([max(xr[s], xr[q])])
                    qy = np.array([max(yr[s], yr[q])])
                    if not has_edge(qx, qy)[0]:
                        raise InternalError(f"stair-point {s}: side flag towards {q} is unsound")
            now = (f.good, f.left_good, f.right_good)
            before = self.prev_flags.get(s)
            if before is not None and any(b and not c for b, c in zip(before, now)):
                raise InternalError(f"flags of stair-point {s} were cleared")
        self.prev_flags = {s: (state.flags[s].good, state.flags[s].left_good, state.flags[s].right_good) for s in stair}

        # a tree that lost its below-point never regains one
        for s in self.lost:
            if comp[s] in below_comp:
                raise InternalError(f"tree of {s} regained below-point {below_comp[comp[s]]}")
        for s in stair:
            if comp[s] not in below_comp:
                self.lost.add(s)

        # right-good-only stair-points sit above their tree's below-point
        for s in stair:
            f = state.flags[s]
            if f.right_good and not f.left_good and comp[s] in below_comp:
                b = below_comp[comp[s]]
                if not ys[b] < ys[s]:
                    raise InternalError(f"below-point {b} is not lower than stair-point {s}")

        # the DSU must agree with the recomputed components
        for i in range(n):
            if (state.component(i) == state.component(comp[i])) is False:
                raise InternalError("union-find out of sync with edge list")
