"""Command-line entry point.

Exit codes: 0 success, 1 verification or certification failure, 2 usage or schema error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import generate, io, lowerbound, oracle, reductions, staircase
from .geometry import (
    InvariantViolation,
    TriangleShape,
    enumerate_homothet_classes,
    enumerate_octant_classes,
    enumerate_wedge_classes,
)

DEFAULT_GUARD = 20
NAMED_TRIANGLES = {
    "unit": ((0, 0), (1, 0), (0, 1)),
    "canonical-triangle": ((-2, 1), (1, -2), (1, 1)),
}


class UsageError(Exception):
    pass


class Failure(Exception):
    """Verification or certification failed; carries the JSON report."""

    def __init__(self, report: dict):
        super().__init__(report.get("error", "failure"))
        self.report = report


def _read(path: str) -> dict:
    if path == "-":
        return io.loads(sys.stdin.read())
    try:
        with open(path) as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(doc: dict, path: str | None) -> None:
    text = io.dumps(doc)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _planar_coloring(points, trace: bool):
    colors, state = staircase.color_points([(p.x, p.y) for p in points])
    return colors, state.edges, (state.trace if trace else None)


# --- gen -----------------------------------------------------------------------------

def cmd_gen(args) -> int:
    meta = {"seed": args.seed, "n": args.n, "distribution": args.distribution}
    if args.n < 0:
        raise UsageError("n must be non-negative")
    if args.kind == "points2-ordered":
        pts = generate.gen_points2(args.n, args.seed, args.distribution, args.script)
        doc = io.instance(args.kind, io.points2_payload(pts), meta)
    elif args.kind == "points3":
        doc = io.instance(args.kind, io.points3_payload(generate.gen_points3(args.n, args.seed)), meta)
    elif args.kind == "octants+points3":
        octs, pts = generate.gen_covering(args.n, args.seed, m=args.m)
        doc = io.instance(args.kind, io.octants_payload(octs, pts), {**meta, "fold": args.m})
    elif args.kind == "intervals":
        ivs = generate.gen_intervals(args.n, args.seed)
        doc = io.instance(args.kind, io.intervals_payload(ivs, args.family), meta)
    else:
        T = TriangleShape(*NAMED_TRIANGLES["unit"])
        pts = generate.gen_points2(args.n, args.seed, args.distribution, args.script)
        doc = io.instance(args.kind, io.triangle_payload(T, pts), meta)
    _write(doc, args.output)
    return 0


# --- color / verify --------------------------------------------------------------------

def _interval_points(obj):
    family, ivs = obj["family"], obj["intervals"]
    if family == "IBI":
        return reductions.ibi_to_point_quadrant(ivs)
    return reductions.isi_to_point_quadrant(ivs)


def cmd_color(args) -> int:
    kind, obj = io.load_instance(_read(args.instance))
    meta = {"kind": kind}
    if kind in ("points2-ordered", "intervals"):
        pts = obj["points"] if kind == "points2-ordered" else _interval_points(obj)
        colors, edges, trace = _planar_coloring(pts, args.trace)
        doc = io.coloring_doc(colors, trace, edges, meta)
    elif kind == "points3":
        doc = io.coloring_doc(reductions.color_points3(obj["points"]), meta=meta)
    elif kind == "triangle+points2":
        pts3 = reductions.planar_points_to_octant_instance(obj["points"], obj["triangle"])
        doc = io.coloring_doc(reductions.color_points3(pts3), meta=meta)
    else:
        dec = reductions.decompose_covering(obj["octants"], obj["points"], m=args.m)
        doc = io.coloring_doc(dec.parts, meta={**meta, "colored": "octants"})
    _write(doc, args.output)
    return 0


def _check_edges(edges, colors, m: int) -> dict:
    bad = [sorted(e) for e in edges if len(e) >= m and len({colors[i] for i in e}) == 1]
    mono = [len(e) for e in edges if len({colors[i] for i in e}) == 1]
    return {"ok": not bad, "m_checked": m, "max_mono": max(mono, default=0), "violations": bad[:20]}


def cmd_verify(args) -> int:
    kind, obj = io.load_instance(_read(args.instance))
    colors = io.load_coloring(_read(args.coloring))
    items = {"octants+points3": "octants", "intervals": "intervals"}.get(kind, "points")
    n_expected = len(obj[items])
    if len(colors) != n_expected:
        raise UsageError(f"coloring has {len(colors)} entries, instance has {n_expected} items")
    m = args.m
    if kind == "points2-ordered":
        report = oracle.verify_prefix_wedges(obj["points"], colors, m).to_json()
    elif kind == "points3":
        report = oracle.verify_octants_by_sweep(obj["points"], colors, m).to_json()
    elif kind == "triangle+points2":
        pts3 = reductions.planar_points_to_octant_instance(obj["points"], obj["triangle"])
        report = oracle.verify_octants(pts3, colors, m, enumerate_octant_classes(pts3, strict=False)).to_json()
    elif kind == "intervals":
        family, ivs = obj["family"], obj["intervals"]
        edges = {"IBI": reductions.ibi_hyperedges, "ISI": reductions.isi_hyperedges}.get(family)
        edges = edges(ivs) if edges else reductions.ici_hyperedges(ivs, obj["queries"])
        report = _check_edges(edges, colors, m)
    else:
        cover = reductions.octant_hyperedges(obj["octants"], obj["points"])
        report = _check_edges([e for e in cover if len(e) >= m], colors, 1)
        report["m_checked"] = m
    _write(report, args.output)
    if not report["ok"]:
        raise Failure(report)
    return 0


# --- reduce --------------------------------------------------------------------------

def _guard(args) -> int:
    return args.guard_override if args.guard_override is not None else DEFAULT_GUARD


def cmd_reduce(args) -> int:
    kind, obj = io.load_instance(_read(args.instance))
    pair = (kind, args.to)
    cert: dict | None = None
    n = len(obj["intervals"] if kind == "intervals" else obj["points"])
    small = n <= _guard(args)
    if pair == ("intervals", "points2-ordered"):
        family, ivs = obj["family"], obj["intervals"]
        if family == "ICI":
            queries = obj["queries"]
            if queries is None:
                pts, apexes = reductions.isi_to_point_quadrant(ivs), []
            else:
                pts, apexes = reductions.ici_to_point_quadrant(ivs, queries)
            payload = {**io.points2_payload(pts), "apexes": [[io.encode(a), io.encode(b)] for a, b in apexes]}
        else:
            payload = io.points2_payload(_interval_points(obj))
        out = io.instance("points2-ordered", payload, {"source": kind, "family": family})
        if small:
            ok, cert = reductions.certify_interval_reduction(family, ivs, obj["queries"])
    elif pair == ("octants+points3", "points2-ordered"):
        inst = reductions.octants_to_dynamic_quadrants(obj["octants"], obj["points"])
        payload = {**io.points2_payload(inst.points),
                   "wedges": [[io.encode(a), io.encode(b), t] for a, b, t in inst.wedges],
                   "octant_of": inst.octant_of}
        out = io.instance("points2-ordered", payload, {"source": kind})
        if small:
            lhs = reductions.octant_hyperedges(obj["octants"], obj["points"])
            ok = lhs == reductions.mapped_wedge_hyperedges(inst)
            cert = {"ok": ok, "relation": "equal", "n_edges": len(lhs)}
    elif pair == ("points3", "points2-ordered"):
        planar, order = reductions.points3_to_dynamic_points(obj["points"])
        out = io.instance("points2-ordered", {**io.points2_payload(planar), "source_ids": order}, {"source": kind})
        if small:
            lhs = set(enumerate_octant_classes(obj["points"]))
            rhs = set()
            for t in range(1, len(planar) + 1):
                rhs |= {frozenset(order[k] for k in c) for c in enumerate_wedge_classes(planar[:t])}
            ok = lhs == rhs
            cert = {"ok": ok, "relation": "equal", "n_edges": len(lhs)}
    elif pair == ("triangle+points2", "points3"):
        pts3 = reductions.planar_points_to_octant_instance(obj["points"], obj["triangle"])
        out = io.instance("points3", io.points3_payload(pts3), {"source": kind})
        if small:
            lhs = {c for c, _ in enumerate_homothet_classes(obj["triangle"], obj["points"])}
            ok = lhs == set(enumerate_octant_classes(pts3, strict=False))
            cert = {"ok": ok, "relation": "equal", "n_edges": len(lhs)}
    else:
        raise UsageError(f"unsupported reduction {kind} -> {args.to}")
    out["certification"] = cert if cert is not None else {"skipped": f"size {n} exceeds guard {_guard(args)}"}
    _write(out, args.output)
    if cert is not None and not cert["ok"]:
        raise Failure(cert)
    return 0


# --- lowerbound / midriff ------------------------------------------------------------------

def _parse_triangle(text: str) -> TriangleShape:
    if text in NAMED_TRIANGLES:
        return TriangleShape(*NAMED_TRIANGLES[text])
    try:
        vals = [Fraction(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad triangle {text!r}") from exc
    if len(vals) != 6:
        raise UsageError("a triangle needs six comma-separated coordinates")
    vals = [int(v) if v.denominator == 1 else v for v in vals]
    return TriangleShape((vals[0], vals[1]), (vals[2], vals[3]), (vals[4], vals[5]))


def hypergraph_doc(n: int, edges, **extra) -> dict:
    return {"format": "octcover-hypergraph/1", "n": n, "edges": [sorted(e) for e in edges], **extra}


def cmd_lowerbound(args) -> int:
    if args.abstract:
        H = lowerbound.build_abstract_hypergraph()
        res = oracle.search_proper_two_coloring(H.n, H.edges, 4)
        doc = hypergraph_doc(H.n, H.edges, labels=list(lowerbound.intended_edges()),
                             m=4, unsat=not res.sat, search=res.certificate())
        _write(doc, args.output)
        if res.sat:
            raise Failure({"error": "abstract hypergraph is 2-colorable at m=4"})
        return 0
    try:
        T = _parse_triangle(args.realize)
    except InvariantViolation as exc:
        raise UsageError(f"rejected triangle: {exc}") from exc
    R = lowerbound.realize_geometrically(triangle=T)
    ok, report = lowerbound.certify_realization(R.points, R.edges, T)
    doc = lowerbound.realization_to_json(R)
    doc["triangle"] = [[io.encode(c) for c in v] for v in T.vertices]
    doc["certification"] = report
    _write(doc, args.output)
    if not ok:
        raise Failure(report)
    return 0


def cmd_midriff(args) -> int:
    if args.family:
        try:
            bound = reductions.midriff_bounds_report(args.family, with_witness=args.witness)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        _write(bound.to_json(), args.output)
        return 0
    if not args.hypergraph:
        raise UsageError("give a hypergraph file or --family")
    doc = _read(args.hypergraph)
    if doc.get("format") != "octcover-hypergraph/1" or not isinstance(doc.get("n"), int):
        raise io.SchemaError("not an octcover-hypergraph/1 document")
    guard = args.guard_override if args.guard_override is not None else 30
    try:
        H = reductions.Hypergraph(doc["n"], doc["edges"])
        m = oracle.measure_midriff(H.n, H.edges, guard=guard)
    except oracle.OracleError as exc:
        raise UsageError(str(exc)) from exc
    _write({"n": H.n, "n_edges": len(H.edges), "midriff": m}, args.output)
    return 0


# --- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="octcover", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, m=True):
        p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
        if m:
            p.add_argument("--m", type=int, default=9, help="threshold size (default 9)")
        p.add_argument("--guard-override", type=int, default=None, help="raise the brute-force size guard")

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("kind", choices=io.KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--distribution", choices=generate.DISTRIBUTIONS, default="uniform-integer-grid")
    g.add_argument("--script", choices=sorted(generate.SCRIPTS), default=None)
    g.add_argument("--family", choices=("IBI", "ISI", "ICI"), default="IBI")
    common(g)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="two-color an instance")
    c.add_argument("instance")
    c.add_argument("--trace", action="store_true", help="include the fired-operation trace")
    c.add_argument("--seed", type=int, default=0, help="accepted for uniformity; coloring is deterministic")
    common(c)
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="verify a coloring against an instance")
    v.add_argument("instance")
    v.add_argument("coloring")
    common(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="map an instance to another kind and certify the map")
    r.add_argument("instance")
    r.add_argument("--to", required=True, choices=io.KINDS)
    common(r, m=False)
    r.set_defaults(func=cmd_reduce)

    lb = sub.add_parser("lowerbound", help="emit the 4-point lower-bound construction")
    grp = lb.add_mutually_exclusive_group(required=True)
    grp.add_argument("--abstract", action="store_true")
    grp.add_argument("--realize", metavar="T", help="unit, canonical-triangle, or x1,y1,x2,y2,x3,y3")
    common(lb, m=False)
    lb.set_defaults(func=cmd_lowerbound)

    md = sub.add_parser("midriff", help="smallest m admitting a proper two-coloring, or family bounds")
    md.add_argument("hypergraph", nargs="?")
    md.add_argument("--family", default=None)
    md.add_argument("--witness", action="store_true")
    common(md, m=False)
    md.set_defaults(func=cmd_midriff)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Failure as exc:
        print(f"octcover: failure: {exc}", file=sys.stderr)
        return 1
    except (UsageError, io.SchemaError, InvariantViolation, KeyError) as exc:
        print(f"octcover: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
