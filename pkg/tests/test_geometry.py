import itertools
import random
from fractions import Fraction

import pytest

from octcover.geometry import (
    Interval,
    InvariantViolation,
    Octant,
    Point2,
    Point3,
    Relation,
    TriangleShape,
    as_coord,
    check_distinct,
    classify_pair,
    enumerate_homothet_classes,
    enumerate_octant_classes,
    enumerate_translate_classes,
    enumerate_wedge_classes,
    points2,
    points3,
    rank_normalize,
    wedge_contains,
)


def half_grid(lo, hi):
    return [Fraction(2 * k + 1, 2) for k in range(lo - 1, hi + 1)]


def grid_wedge_classes(pts):
    """Open wedges with apexes at half-integers; exact for integer points."""
    xs = half_grid(min(p.x for p in pts), max(p.x for p in pts))
    ys = half_grid(min(p.y for p in pts), max(p.y for p in pts))
    out = set()
    for ax in xs:
        for ay in ys:
            c = frozenset(p.id for p in pts if p.x < ax and p.y < ay)
            if c:
                out.add(c)
    return out


def grid_octant_classes(pts):
    axes = [half_grid(min(getattr(p, a) for p in pts), max(getattr(p, a) for p in pts)) for a in "xyz"]
    out = set()
    for a in itertools.product(*axes):
        o = Octant(Point3(*a))
        c = frozenset(p.id for p in pts if o.contains(p))
        if c:
            out.add(c)
    return out


def grid_translate_classes(k, pts):
    """Translates of the right triangle with legs ``k`` over integer points, sampled
    on a quarter grid that meets every cell of the arrangement."""
    span = range(4 * (min(min(p.x, p.y) for p in pts) - k - 1), 4 * (max(max(p.x, p.y) for p in pts) + 1))
    out = set()
    for i in span:
        for j in span:
            vx, vy = Fraction(2 * i + 1, 8), Fraction(2 * j + 1, 8)
            c = frozenset(p.id for p in pts if p.x > vx and p.y > vy and p.x + p.y < vx + vy + k)
            if c:
                out.add(c)
    return out


def test_as_coord_rejects_floats_and_bools():
    assert as_coord(Fraction(4, 2)) == 2 and isinstance(as_coord(Fraction(4, 2)), int)
    for bad in (0.5, True):
        with pytest.raises((InvariantViolation, TypeError)):
            as_coord(bad)


@pytest.mark.parametrize("p,q,rel", [
    ((0, 1), (1, 0), Relation.NW),
    ((0, 0), (1, 1), Relation.SW),
    ((2, 3), (1, 5), Relation.SE),
    ((2, 3), (1, 1), Relation.NE),
])
def test_classify_pair(p, q, rel):
    assert classify_pair(Point2(*p), Point2(*q)) == rel


def test_classify_pair_rejects_shared_coordinate():
    with pytest.raises(InvariantViolation):
        classify_pair(Point2(0, 0), Point2(0, 1))


def test_classify_pair_is_antisymmetric():
    flip = {Relation.NW: Relation.SE, Relation.SE: Relation.NW, Relation.SW: Relation.NE, Relation.NE: Relation.SW}
    rng = random.Random(0)
    for _ in range(200):
        xs, ys = rng.sample(range(100), 2), rng.sample(range(100), 2)
        p, q = Point2(xs[0], ys[0]), Point2(xs[1], ys[1])
        assert classify_pair(q, p) == flip[classify_pair(p, q)]


def test_wedge_contains_is_open():
    assert wedge_contains((2, 2), Point2(1, 1))
    assert not wedge_contains((2, 2), Point2(2, 1))
    assert not wedge_contains((0, 5), Point2(1, 1))


def test_interval_and_triangle_validation():
    with pytest.raises(InvariantViolation):
        Interval(3, 3)
    with pytest.raises(InvariantViolation):
        TriangleShape((0, 0), (1, 1), (2, 2))
    assert Interval(0, 10).contains_interval(Interval(1, 2))
    assert Interval(0, 3).crosses(Interval(2, 5)) and not Interval(0, 1).crosses(Interval(2, 3))


def test_check_distinct_and_rank_normalize():
    with pytest.raises(InvariantViolation):
        check_distinct(points2([(0, 1), (0, 2)]))
    assert rank_normalize([(5, 5), (5, 1), (2, 9)]) == [(1, 1), (2, 0), (0, 2)]
    assert rank_normalize([]) == []


def test_wedge_class_examples():
    assert enumerate_wedge_classes(points2([(0, 0)])) == [frozenset({0})]
    assert set(enumerate_wedge_classes(points2([(0, 1), (1, 0)]))) == {
        frozenset({0}), frozenset({1}), frozenset({0, 1})}
    assert set(enumerate_wedge_classes(points2([(0, 0), (1, 1)]))) == {frozenset({0}), frozenset({0, 1})}


def test_wedge_classes_match_grid_and_are_split_closed():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(1, 9)
        pts = points2(zip(rng.sample(range(12), n), rng.sample(range(12), n)))
        classes = set(enumerate_wedge_classes(pts))
        assert classes == grid_wedge_classes(pts)
        for c in classes:
            for pid in c:
                p = pts[pid]
                for part in ({q for q in c if pts[q].x <= p.x}, {q for q in c if pts[q].y <= p.y}):
                    assert frozenset(part) in classes


def test_octant_class_examples():
    assert enumerate_octant_classes(points3([(0, 0, 0)])) == [frozenset({0})]
    assert len(enumerate_octant_classes(points3([(0, 0, 0), (1, 1, 1)]))) == 2


def test_octant_classes_match_grid():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(1, 6)
        pts = points3(zip(*(rng.sample(range(8), n) for _ in range(3))))
        assert set(enumerate_octant_classes(pts)) == grid_octant_classes(pts)


def test_translate_class_examples():
    T = TriangleShape((0, 0), (1, 0), (0, 1))
    assert [c for c, _ in enumerate_translate_classes(T, points2([(5, 5)]))] == [frozenset({0})]
    far = {c for c, _ in enumerate_translate_classes(T, points2([(0, 0), (10, 10)]))}
    assert far == {frozenset({0}), frozenset({1})}


@pytest.mark.parametrize("A", [((1, 0), (0, 1)), ((1, 1), (0, 1)), ((2, 1), (1, 1)), ((0, -1), (1, 0))])
def test_translate_classes_match_grid(A):
    rng = random.Random(3)
    for _ in range(12):
        n = rng.randint(1, 8)
        k = rng.randint(2, 4)
        raw = list(zip(rng.sample(range(9), n), rng.sample(range(9), n)))
        pts = points2(raw)
        expected = grid_translate_classes(k, pts)

        def mapped(v):
            return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])

        T = TriangleShape(mapped((0, 0)), mapped((k, 0)), mapped((0, k)))
        img = points2(mapped(p) for p in raw)
        got = enumerate_translate_classes(T, img)
        assert {c for c, _ in got} == expected
        for c, shift in got:
            assert {p.id for p in img if T.contains((p.x, p.y), shift)} == c


def test_homothet_classes_match_threshold_oracle():
    rng = random.Random(4)
    T = TriangleShape((0, 0), (1, 0), (0, 1))
    for _ in range(30):
        n = rng.randint(1, 7)
        pts = points2(zip(rng.sample(range(10), n), rng.sample(range(10), n)))
        xs = half_grid(0, 10)
        sums = [Fraction(2 * k + 1, 2) for k in range(-4, 44)]
        expected = set()
        for a in xs:
            for b in xs:
                for c in sums:
                    if c > a + b:
                        s = frozenset(p.id for p in pts if p.x > a and p.y > b and p.x + p.y < c)
                        if s:
                            expected.add(s)
        got = enumerate_homothet_classes(T, pts)
        assert {c for c, _ in got} == expected
        for c, (lam, shift) in got:
            assert lam > 0
            assert {p.id for p in pts if T.contains((p.x, p.y), shift, lam)} == c
