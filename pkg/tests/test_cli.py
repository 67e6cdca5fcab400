import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cutlab.cli import run
from cutlab.geometry import canonical_levels, realize_cut_system
from cutlab.io import ConfigError, cut_system_to_json, dumps_cut_system, parse_cut_system
from cutlab.oracles import compatible_multisets

LADDER = {
    "schema": 1,
    "n": 3,
    "sections": [
        {"type": [0], "level": "3/4"},
        {"type": [0, 2, 3], "level": "1/4"},
        {"type": [0, 1, 3], "level": "1/4"},
        {"type": [0, 1, 2], "level": "1/4"},
    ],
}

# two corner cuts at v0 with a white strip, plus corners at v1 and v2
STRIP = {
    "schema": 1,
    "n": 2,
    "sections": [
        {"type": [0], "level": "7/10"},
        {"type": [0], "level": "4/5"},
        {"type": [0, 2], "level": "1/5"},
        {"type": [0, 1], "level": "1/5"},
    ],
}


def call(capsys, argv, doc=None, tmp_path=None):
    if doc is not None:
        path = tmp_path / "in.json"
        path.write_text(json.dumps(doc))
        argv = [*argv, str(path)]
    code = run(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out and "--pretty" not in argv else out), err


def test_const(capsys):
    code, rep, _ = call(capsys, ["const"])
    assert code == 0 and rep["2V3_truncated"] == "2.02" and rep["2V3_4dp"] == "2.0299"


def test_obstruct(capsys):
    code, rep, _ = call(capsys, ["obstruct", "--volume", "0.9427"])
    assert code == 0 and rep["verdict"] == "Obstructed"
    assert rep["margin"] == pytest.approx(1.087, abs=1e-3)
    code, rep, _ = call(capsys, ["obstruct", "--volume", "2.03"])
    assert rep["verdict"] == "NotObstructed"
    code, _, err = call(capsys, ["obstruct"])
    assert code == 2 and "volume" in err


def test_bounds(capsys):
    code, rep, _ = call(capsys, ["bounds", "--chi-guts", "-1", "--faces", "4"])
    assert code == 0 and rep["guts"]["norm_polyhedron"] == 1
    code, _, _ = call(capsys, ["bounds", "--dimension", "5", "--norm", "1"])
    assert code == 2


def test_analyze_ladder(capsys, tmp_path):
    code, rep, _ = call(capsys, ["analyze", "--subdivide"], LADDER, tmp_path)
    assert code == 0
    (col,) = rep["colourings"]
    assert col["D"] == [1, 1, 1, 1] and col["ladder_check"] == "ladder"
    assert col["subdivision"]["old_edges"] == 6 and col["subdivision"]["admissible"]


def test_analyze_counterexample_exits_1(capsys, tmp_path):
    code, rep, _ = call(capsys, ["dichotomy"], STRIP, tmp_path)
    assert code == 1
    bad = [c for c in rep["colourings"] if c["verdict"] == "violated"]
    assert bad and bad[0]["total"] == 2


def test_float_rejected_with_path(capsys, tmp_path):
    doc = json.loads(json.dumps(LADDER))
    doc["sections"][2]["level"] = 0.25
    code, _, err = call(capsys, ["analyze"], doc, tmp_path)
    assert code == 2
    assert json.loads(err)["path"] == "$.sections[2].level"


@pytest.mark.parametrize("mutate, path", [
    (lambda d: d.update(schema=2), "$.schema"),
    (lambda d: d.pop("n"), "$.n"),
    (lambda d: d["sections"][0].update(type=[1]), "$.sections[0].type"),
    (lambda d: d["sections"][1].update(level="0.5"), "$.sections[1].level"),
    (lambda d: d["sections"].append({"type": [0, 1], "level": "3/4"}), "$.sections"),
])
def test_invalid_inputs(capsys, tmp_path, mutate, path):
    doc = json.loads(json.dumps(LADDER))
    mutate(doc)
    code, _, err = call(capsys, ["analyze"], doc, tmp_path)
    assert code == 2 and json.loads(err)["path"] == path


def test_missing_file_and_bad_command(capsys):
    assert run(["analyze", "/nonexistent.json"]) == 2
    assert run(["frobnicate"]) == 2
    capsys.readouterr()


def test_witness(capsys, tmp_path):
    doc = {"schema": 1, "n": 3, "sections": [{"type": [0, 1], "level": "1/3"}, {"type": [0, 1], "level": "2/3"}]}
    code, rep, _ = call(capsys, ["witness"], doc, tmp_path)
    assert code == 0 and rep["witness_face"] == [0, 1, 2]
    doc["sections"][0]["type"] = [0]
    code, _, _ = call(capsys, ["witness"], doc, tmp_path)
    assert code == 2


def test_tree(capsys, tmp_path):
    doc = {"schema": 1, "edges": [["u", "v", 1], ["u", "a", 1], ["u", "b", 1], ["v", "c", 1], ["v", "d", "1/2"]],
           "query": "median", "points": ["a", "b", "c"]}
    code, rep, _ = call(capsys, ["tree"], doc, tmp_path)
    assert code == 0 and rep["median"] == "u"
    doc.update(query="steiner", points=["a", "b", "c", "d"])
    code, rep, _ = call(capsys, ["tree"], doc, tmp_path)
    assert rep["branch_points"] == 2 and rep["length"] == "9/2"
    doc.update(query="geodesic", points=["a", {"edge": ["v", "d"], "offset": "1/4"}])
    code, rep, _ = call(capsys, ["tree"], doc, tmp_path)
    assert rep["length"] == "9/4"
    doc.update(query="straighten", points=["a", "u", "c"])
    code, rep, _ = call(capsys, ["tree"], doc, tmp_path)
    assert rep["collinear"] and rep["corner_lengths"] == [1, 0, 2]


def test_pretty(capsys):
    code, out, _ = call(capsys, ["const", "--pretty"])
    assert code == 0 and "2V3_truncated" in out and "2.02" in out


def test_exhaustive_small(capsys):
    code, rep, _ = call(capsys, ["dichotomy", "--exhaustive", "--n", "2", "--max-sections", "3", "--jobs", "1"])
    assert code == 0 and rep["summary"] == "0 violations"
    code, rep, _ = call(capsys, ["dichotomy", "--exhaustive", "--n", "2", "--max-sections", "4", "--jobs", "1"])
    assert code == 1 and rep["violation_count"] == 3
    assert all(v["main_result"]["total"] == 2 for v in rep["violations"])


def test_round_trip_examples():
    for combo in compatible_multisets(3, 4):
        cut = realize_cut_system(3, list(zip(combo, canonical_levels(3, combo))))
        again = parse_cut_system(json.loads(dumps_cut_system(cut)))
        assert again == cut
        assert dumps_cut_system(again) == dumps_cut_system(cut)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 7)), min_size=4, max_size=4),
       st.tuples(st.integers(-5, 5), st.integers(1, 7)))
def test_round_trip_arbitrary_plane(coeffs, level):
    doc = {"schema": 1, "n": 3, "sections": [{"coeffs": [f"{p}/{q}" for p, q in coeffs], "level": f"{level[0]}/{level[1]}"}]}
    try:
        cut = parse_cut_system(doc)
    except ConfigError:
        return
    assert parse_cut_system(cut_system_to_json(cut)) == cut
