import json

import pytest

from octcover import io
from octcover.cli import main
from octcover.geometry import classify_pair


def run(argv):
    return main([str(a) for a in argv])


def load(path):
    return json.loads(path.read_text())


def test_gen_empty_instance(tmp_path):
    out = tmp_path / "e.json"
    assert run(["gen", "points2-ordered", "--n", 0, "-o", out]) == 0
    assert load(out)["payload"]["points"] == []


def test_gen_is_byte_identical_for_a_seed(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(["gen", "points2-ordered", "--n", 50, "--seed", 4, "-o", path])
    assert a.read_bytes() == b.read_bytes()


def test_gen_antichain_is_pairwise_incomparable(tmp_path):
    out = tmp_path / "a.json"
    run(["gen", "points2-ordered", "--n", 9, "--distribution", "antichain", "-o", out])
    _, obj = io.load_instance(load(out))
    pts = obj["points"]
    assert len(pts) == 9
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            assert classify_pair(p, q).value in ("NW", "SE")


def test_color_one_point(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text(io.dumps(io.instance("points2-ordered", {"points": [[3, [1, 2]]]})))
    col = tmp_path / "c.json"
    assert run(["color", inst, "-o", col]) == 0
    assert load(col)["colors"] == [0]


def test_scripted_comparable_trace(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text(io.dumps(io.instance("points2-ordered", {"points": [[0, 0], [1, 1]]})))
    col = tmp_path / "c.json"
    run(["color", inst, "--trace", "-o", col])
    assert [t["op"] for t in load(col)["trace"]] == ["2Comparable"]


@pytest.mark.parametrize("kind,n", [("points2-ordered", 500), ("points3", 120),
                                    ("octants+points3", 30), ("triangle+points2", 30)])
def test_color_then_verify_exits_zero(tmp_path, kind, n):
    inst, col = tmp_path / "i.json", tmp_path / "c.json"
    assert run(["gen", kind, "--n", n, "--seed", 2, "-o", inst]) == 0
    assert run(["color", inst, "-o", col]) == 0
    assert run(["verify", inst, col, "--m", 9, "-o", tmp_path / "r.json"]) == 0
    assert load(tmp_path / "r.json")["ok"]


def test_verify_failure_exits_one(tmp_path):
    inst, col = tmp_path / "i.json", tmp_path / "c.json"
    inst.write_text(io.dumps(io.instance("points2-ordered", {"points": [[i, i] for i in range(9)]})))
    col.write_text(io.dumps(io.coloring_doc([0] * 9)))
    assert run(["verify", inst, col, "-o", tmp_path / "r.json"]) == 1


def test_schema_errors_exit_two(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text('{"format": "octcover-instance/1", "kind": "points2-ordered", "payload": {"points": [[0.5, 1]]}}')
    assert run(["color", inst]) == 2
    inst.write_text(io.dumps(io.instance("points2-ordered", {"points": [[0, 1], [0, 2]]})))
    assert run(["color", inst]) == 2
    assert run(["color", tmp_path / "missing.json"]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["gen", "nonsense", "--n", 3])
    assert exc.value.code == 2


def test_reduce_intervals_with_certification(tmp_path):
    inst, out = tmp_path / "i.json", tmp_path / "o.json"
    run(["gen", "intervals", "--n", 15, "--seed", 1, "--family", "IBI", "-o", inst])
    assert run(["reduce", inst, "--to", "points2-ordered", "-o", out]) == 0
    doc = load(out)
    assert doc["certification"]["ok"] and len(doc["payload"]["points"]) == 15


def test_reduce_octants_to_ordered_points(tmp_path):
    inst, out = tmp_path / "i.json", tmp_path / "o.json"
    run(["gen", "octants+points3", "--n", 12, "--seed", 1, "-o", inst])
    assert run(["reduce", inst, "--to", "points2-ordered", "-o", out]) == 0
    doc = load(out)
    assert doc["certification"]["ok"] and len(doc["payload"]["wedges"]) == 12


def test_reduce_unsupported_pair_exits_two(tmp_path):
    inst = tmp_path / "i.json"
    run(["gen", "intervals", "--n", 5, "-o", inst])
    assert run(["reduce", inst, "--to", "points3"]) == 2


def test_lowerbound_abstract(tmp_path):
    out = tmp_path / "h.json"
    assert run(["lowerbound", "--abstract", "-o", out]) == 0
    doc = load(out)
    assert doc["n"] == 63 and len(doc["edges"]) == 63 and doc["unsat"]


def test_lowerbound_realize_canonical(tmp_path):
    out = tmp_path / "r.json"
    assert run(["lowerbound", "--realize", "canonical-triangle", "-o", out]) == 0
    doc = load(out)
    assert doc["certification"]["ok"] and len(doc["points"]) == 63


def test_lowerbound_degenerate_triangle_rejected():
    assert run(["lowerbound", "--realize", "0,0,1,1,2,2"]) == 2


def test_midriff_guard_and_override(tmp_path):
    h = tmp_path / "h.json"
    run(["lowerbound", "--abstract", "-o", h])
    assert run(["midriff", h]) == 2
    out = tmp_path / "m.json"
    assert run(["midriff", h, "--guard-override", 64, "-o", out]) == 0
    assert load(out)["midriff"] == 5


def test_midriff_family_report(tmp_path):
    out = tmp_path / "m.json"
    assert run(["midriff", "--family", "D-Point-Interval", "-o", out]) == 0
    assert load(out)["lower"] == 4
    assert run(["midriff", "--family", "nope"]) == 2


def test_rational_encoding_round_trip():
    from fractions import Fraction

    assert io.decode(io.encode(Fraction(-3, 7))) == Fraction(-3, 7)
    assert io.encode(5) == 5
    with pytest.raises(io.SchemaError):
        io.decode([1, 0])
    with pytest.raises(io.SchemaError):
        io.decode(True)
