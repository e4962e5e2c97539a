"""Acceptance criteria 1-7, each checked exactly (no tolerances).

Run under pytest (the summary lines appear at the end of the session) or
directly with ``python tests/test_acceptance.py``.
"""
import random
import time

import pytest

from octcover.checks import InvariantChecker
from octcover.generate import DISTRIBUTIONS, SCRIPTS, gen_covering, gen_points2, gen_points3
from octcover.geometry import (
    Interval,
    InvariantViolation,
    Octant,
    Point3,
    TriangleShape,
    enumerate_homothet_classes,
    enumerate_octant_classes,
    enumerate_wedge_classes,
    points2,
)
from octcover.lowerbound import build_abstract_hypergraph, certify_realization, load_realization, octant_lower_bound_witness
from octcover.oracle import (
    brute_force_two_colorable,
    is_proper,
    max_edge_free_wedge,
    search_proper_two_coloring,
    verify_prefix_wedges,
)
from octcover.reductions import (
    certify_interval_reduction,
    complement_arc_duality,
    decompose_covering,
    ibi_hyperedges,
    isi_hyperedges,
    mapped_wedge_hyperedges,
    octant_hyperedges,
    octants_to_dynamic_quadrants,
    planar_points_to_octant_instance,
    points3_to_dynamic_points,
)
from octcover.staircase import arrive, color_points, new_state

RESULTS: dict[int, str] = {}

SIZES = (10, 50, 200, 1000)
PER_SIZE = 250


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[number] = line
    print(line)


def corpus():
    """1000 ordered instances: 250 per size, cycling through the distributions."""
    scripts = sorted(SCRIPTS)
    for n in SIZES:
        for k in range(PER_SIZE):
            dist = DISTRIBUTIONS[k % len(DISTRIBUTIONS)]
            script = scripts[(k // len(DISTRIBUTIONS)) % len(scripts)] if dist == "adversarial-script" else None
            yield n, k, dist, gen_points2(n, seed=1000 * n + k, distribution=dist, script=script)


@pytest.fixture(scope="module")
def corpus_runs():
    out = []
    for n, k, dist, pts in corpus():
        colors, state = color_points(pts)
        rep = verify_prefix_wedges(pts, colors, 9)
        edge_free = max_edge_free_wedge(pts, [(e.u, e.v, e.time) for e in state.edges])
        out.append((n, dist, rep, edge_free))
    return out


def test_criterion_1_no_large_monochromatic_wedge(corpus_runs):
    bad = [(n, d) for n, d, rep, _ in corpus_runs if not rep.ok or rep.violations]
    assert len(corpus_runs) >= 1000 and {n for n, *_ in corpus_runs} == set(SIZES)
    record(1, not bad, f"{len(corpus_runs)} instances, {len(bad)} with violations at m=9")
    assert not bad


def test_criterion_2_structural_bound(corpus_runs):
    worst_mono = max(rep.max_mono for *_, rep, _ in corpus_runs)
    worst_free = max(free for *_, free in corpus_runs)
    ok = worst_mono <= 8 and worst_free <= 8
    record(2, ok, f"max monochromatic wedge {worst_mono}, max edge-free wedge {worst_free} (bound 8)")
    assert ok


def test_criterion_3_invariants():
    rng = random.Random(3)
    instances, ops, checks = 500, 0, 0
    for k in range(instances):
        pts = gen_points2(rng.randint(1, 200), seed=k, distribution=DISTRIBUTIONS[k % len(DISTRIBUTIONS)])
        checker = InvariantChecker()
        state = new_state(checker)  # saturation runs the checker after every operation
        for p in pts:
            arrive(state, p)
            checker(state)  # arrivals that fire nothing are checked too
        ops += len(state.trace)
        checks += checker.calls
    record(3, True, f"{instances} instances, {ops} operations, {checks} invariant checks, no violation")


def test_criterion_4_lower_bound():
    H = build_abstract_hypergraph()
    t = time.perf_counter()
    res = search_proper_two_coloring(H.n, H.edges, 4)
    elapsed = time.perf_counter() - t
    R = load_realization()
    cert_ok, report = certify_realization(R.points, R.edges, TriangleShape(*R.spec.triangle))
    witness = octant_lower_bound_witness(R)
    ok = (H.n == 63 and len(H.edges) == 63 and not res.sat and elapsed < 10
          and cert_ok and witness["ok"] and witness["lower_bound"] == 5)
    record(4, ok, f"abstract UNSAT in {elapsed:.3f}s ({res.nodes} nodes); realization certified={cert_ok} "
                  f"({report['n_size4_classes']} size-4 translate classes); octant witness "
                  f"{witness['n_size4_classes']} size-4 classes UNSAT")
    assert ok


def _random_intervals(rng, n):
    ends = rng.sample(range(4 * n + 4), 2 * n)
    return [Interval(min(a, b), max(a, b)) for a, b in zip(ends[::2], ends[1::2])]


def _random_triangle(rng):
    while True:
        try:
            return TriangleShape((0, 0), (rng.randint(1, 6), rng.randint(-3, 3)), (rng.randint(-3, 3), rng.randint(1, 6)))
        except InvariantViolation:
            pass


def test_criterion_5_reductions():
    rng = random.Random(5)
    per = 200
    counts = dict.fromkeys(["IBI", "ISI", "ICI", "ICI-queries", "complement", "octant", "points3", "triangle"], 0)
    failures = []
    for _ in range(per):
        ivs = _random_intervals(rng, rng.randint(1, 20))
        for fam in ("IBI", "ISI", "ICI"):
            ok, _ = certify_interval_reduction(fam, ivs)
            counts[fam] += 1
            failures += [] if ok else [fam]
        nv, nq = rng.randint(1, 10), rng.randint(1, 10)
        both = _random_intervals(rng, nv + nq)
        ok, _ = certify_interval_reduction("ICI", both[:nv], both[nv:])
        counts["ICI-queries"] += 1
        failures += [] if ok else ["ICI-queries"]
        if ibi_hyperedges(ivs) != isi_hyperedges(complement_arc_duality(ivs)):
            failures.append("complement")
        counts["complement"] += 1

        n_oct, n_pts = rng.randint(1, 12), rng.randint(1, 8)
        cs = [rng.sample(range(100), n_oct + n_pts) for _ in range(3)]
        octs = [Octant(Point3(cs[0][i], cs[1][i], cs[2][i], i)) for i in range(n_oct)]
        pts3 = [Point3(cs[0][i], cs[1][i], cs[2][i], i - n_oct) for i in range(n_oct, n_oct + n_pts)]
        if octant_hyperedges(octs, pts3) != mapped_wedge_hyperedges(octants_to_dynamic_quadrants(octs, pts3)):
            failures.append("octant")
        counts["octant"] += 1

        p3 = gen_points3(rng.randint(1, 12), rng.randrange(10**6))
        planar, order = points3_to_dynamic_points(p3)
        rhs = set()
        for t in range(1, len(planar) + 1):
            rhs |= {frozenset(order[k] for k in c) for c in enumerate_wedge_classes(planar[:t])}
        if set(enumerate_octant_classes(p3)) != rhs:
            failures.append("points3")
        counts["points3"] += 1

        T = _random_triangle(rng)
        m = rng.randint(1, 8)
        pts = points2(zip(rng.sample(range(50), m), rng.sample(range(50), m)))
        hom = {c for c, _ in enumerate_homothet_classes(T, pts)}
        if hom != set(enumerate_octant_classes(planar_points_to_octant_instance(pts, T), strict=False)):
            failures.append("triangle")
        counts["triangle"] += 1
    ok = not failures and min(counts.values()) >= 200
    record(5, ok, ", ".join(f"{k} {v}" for k, v in counts.items()) + f"; failures {len(failures)}")
    assert ok


def test_criterion_6_covering_decomposition():
    rng = random.Random(6)
    done, bad = 0, 0
    sizes = []
    seed = 0
    while done < 100:
        seed += 1
        try:
            octs, pts = gen_covering(rng.randint(1, 60), seed, max_octants=300, spread=rng.choice((4, 8, 20, 40)))
        except RuntimeError:
            continue
        dec = decompose_covering(octs, pts)
        parts = (set(dec.first), set(dec.second))
        if parts[0] & parts[1] or parts[0] | parts[1] != set(range(len(octs))):
            bad += 1
        for p in pts:
            counts = [sum(1 for i in part if octs[i].contains(p)) for part in parts]
            if min(counts) == 0:
                bad += 1
        sizes.append(len(octs))
        done += 1
    ok = bad == 0 and max(sizes) <= 300
    record(6, ok, f"{done} coverings, {min(sizes)}-{max(sizes)} octants, {bad} uncovered points")
    assert ok


def test_criterion_7_oracle_self_consistency():
    rng = random.Random(7)
    mismatches = 0
    sat = 0
    for _ in range(500):
        n = rng.randint(1, 16)
        edges = [rng.sample(range(n), rng.randint(1, n)) for _ in range(rng.randint(0, 4 * n))]
        m = rng.randint(1, 5)
        res = search_proper_two_coloring(n, edges, m)
        exhaustive = brute_force_two_colorable(n, edges, m)
        if res.sat != (exhaustive is not None) or (res.sat and not is_proper(n, edges, m, res.coloring)):
            mismatches += 1
        sat += res.sat
    record(7, mismatches == 0, f"500 hypergraphs ({sat} SAT, {500 - sat} UNSAT), {mismatches} mismatches")
    assert mismatches == 0


if __name__ == "__main__":
    import sys

    runs = None
    for number, fn in [(1, test_criterion_1_no_large_monochromatic_wedge), (2, test_criterion_2_structural_bound),
                       (3, test_criterion_3_invariants), (4, test_criterion_4_lower_bound),
                       (5, test_criterion_5_reductions), (6, test_criterion_6_covering_decomposition),
                       (7, test_criterion_7_oracle_self_consistency)]:
        try:
            if number in (1, 2):
                runs = runs if runs is not None else corpus_runs.__wrapped__()
                fn(runs)
            else:
                fn()
        except AssertionError:
            if number not in RESULTS:
                record(number, False, "assertion failed")
    sys.exit(0 if all("PASS" in line for line in RESULTS.values()) else 1)
