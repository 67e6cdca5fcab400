from fractions import Fraction as F
import itertools

import pytest
from hypothesis import given, strategies as st

from cutlab.combinatorics import (
    Arc,
    ArcKind,
    Colouring,
    FaceMismatch,
    NotCanonical,
    PreconditionViolated,
    all_faces,
    arc_on_2face,
    arcs_parallel,
    compute_D,
    ladder_check,
    unpartnered_middle_pairs,
    enumerate_canonical_colourings,
    is_canonical,
    parallel_arc_witness,
    middle_survivors,
    reduce_cut_system,
    removable_pairs,
    white_parallel_pairs,
)
from cutlab.geometry import Hyperplane, classify_section, realize_cut_system
from cutlab.oracles import brute_force_colourings, partition_parallel_oracle, arcs_disjoint


def section(n, members, level):
    return classify_section(Hyperplane.from_type(n, members, level))


def test_arc_examples():
    a = arc_on_2face(section(3, {0, 1}, F(1, 2)), (0, 1, 2))
    assert a.kind is ArcKind.NONDEGENERATE and a.part == {0, 1}
    assert arc_on_2face(section(3, {0}, F(1, 2)), (1, 2, 3)) is None
    tv = classify_section(Hyperplane((0, 1, 1, 1), 0))
    d = arc_on_2face(tv, (0, 1, 2))
    assert d.kind is ArcKind.VERTEX and d.part == {0}
    assert arc_on_2face(tv, (1, 2, 3)) is None


def test_parallel_examples():
    f = (0, 1, 2)
    a = arc_on_2face(section(3, {0}, F(1, 2)), f)
    b = arc_on_2face(section(3, {0}, F(3, 4)), f)
    c = arc_on_2face(section(3, {0, 1}, F(1, 2)), f)
    d = arc_on_2face(classify_section(Hyperplane((0, 1, 1, 1), 0)), f)
    assert arcs_parallel(a, b)
    assert not arcs_parallel(a, c)
    assert arcs_parallel(a, d) and arcs_parallel(d, a)
    with pytest.raises(FaceMismatch):
        arcs_parallel(a, arc_on_2face(section(3, {0}, F(1, 2)), (0, 1, 3)))


def _all_arcs(face):
    fs = frozenset(face)
    out = []
    for r in (1, 2):
        out += [Arc(face, ArcKind.NONDEGENERATE, frozenset(c)) for c in itertools.combinations(face, r)]
    out += [Arc(face, ArcKind.VERTEX, frozenset({v})) for v in face]
    out += [Arc(face, ArcKind.FACE_EDGE, frozenset(e)) for e in itertools.combinations(face, 2)]
    return out


def test_parallel_matches_partition_oracle_on_all_shapes():
    face = (0, 2, 3)
    arcs = _all_arcs(face)
    checked = 0
    for a, b in itertools.product(arcs, arcs):
        assert arcs_parallel(a, b) == arcs_parallel(b, a)
        if arcs_disjoint(a, b):
            assert arcs_parallel(a, b) == partition_parallel_oracle(a, b), (a, b)
            checked += 1
        if a.kind is ArcKind.NONDEGENERATE and b.kind is ArcKind.NONDEGENERATE:
            # a nondegenerate arc's complement side describes the same partition
            assert arcs_parallel(a, b) == (a.part in (b.part, frozenset(face) - b.part))
    assert checked > 50


def test_canonical_colouring_examples(ladder, parallel_pair):
    single = realize_cut_system(3, [({0}, F(1, 2))])
    assert enumerate_canonical_colourings(single) == []
    cols = enumerate_canonical_colourings(ladder)
    assert len(cols) == 1
    (centre,) = cols[0].white
    assert not ladder.tree.vertices_in(centre)
    cols = enumerate_canonical_colourings(parallel_pair)
    assert len(cols) == 1 and len(cols[0].white) == 1


def test_white_parallel_examples(ladder, parallel_pair):
    (col,) = enumerate_canonical_colourings(parallel_pair)
    pairs = white_parallel_pairs(parallel_pair, col)
    assert any(x[2] == (0, 1, 2) for x, _ in pairs)
    (col,) = enumerate_canonical_colourings(ladder)
    assert white_parallel_pairs(ladder, col) == set()
    with pytest.raises(NotCanonical):
        white_parallel_pairs(parallel_pair, Colouring(frozenset()))


def test_compute_D_examples(ladder, parallel_pair, empty3):
    (col,) = enumerate_canonical_colourings(ladder)
    rep = compute_D(ladder, col)
    assert rep.per_section_D == (1, 1, 1, 1) and rep.total == 4 and rep.holds
    (col,) = enumerate_canonical_colourings(parallel_pair)
    rep = compute_D(parallel_pair, col)
    assert rep.per_section_D == (0, 0) and rep.holds
    rep = compute_D(empty3, Colouring(frozenset()))
    assert rep.total == 0 and rep.holds


def test_total_strictly_between_is_possible():
    # two parallel corner cuts at v0 with a white strip between them, plus
    # the two other corners: only the two outer corners lack partners
    cut = realize_cut_system(2, [({0}, F(7, 10)), ({0}, F(8, 10)), ({0, 2}, F(1, 5)), ({0, 1}, F(1, 5))])
    strip = cut.locate((F(3, 4), F(1, 8), F(1, 8)))
    centre = cut.locate((F(1, 3), F(1, 3), F(1, 3)))
    col = Colouring(frozenset({strip, centre}))
    assert is_canonical(cut, col)
    rep = compute_D(cut, col)
    assert rep.per_section_D == (0, 0, 1, 1)
    assert rep.total == 2 and not rep.holds


def test_reduction_examples(ladder, parallel_pair):
    (col,) = enumerate_canonical_colourings(parallel_pair)
    cut, c = reduce_cut_system(parallel_pair, col)
    assert cut.sections == () and c.white == frozenset()
    (col,) = enumerate_canonical_colourings(ladder)
    cut, c = reduce_cut_system(ladder, col)
    assert cut == ladder and c == col
    four = realize_cut_system(3, [({0, 1}, F(k, 5)) for k in (1, 2, 3, 4)])
    cols = [c for c in enumerate_canonical_colourings(four) if len(c.white) == 2]
    assert cols
    for col in cols:
        cut, c = reduce_cut_system(four, col)
        assert cut.sections == ()


def test_reduction_keeps_pairs_with_white_outer_region():
    # three parallel cuts, both gaps white: removing any pair would change the total
    cut = realize_cut_system(3, [({0, 1}, F(k, 4)) for k in (1, 2, 3)])
    for col in enumerate_canonical_colourings(cut):
        before = compute_D(cut, col).total
        red, c = reduce_cut_system(cut, col)
        assert compute_D(red, c).total == before
        assert removable_pairs(red, c) == []


def test_parallel_arc_witness_examples():
    s1, s2 = section(3, {0, 1}, F(1, 3)), section(3, {0, 1}, F(2, 3))
    res = parallel_arc_witness(s1, s2)
    assert not res.intersecting and res.face == (0, 1, 2) and res.case == 1
    s1, s2 = section(4, {0, 1}, F(2, 3)), section(4, {0, 1, 2}, F(1, 4))
    res = parallel_arc_witness(s1, s2)
    assert not res.intersecting and res.case == 2
    assert res.face <= (0, 1, 3) and res.recipe_face == (0, 1, 3)
    res = parallel_arc_witness(section(3, {0, 1}, F(1, 2)), section(3, {0, 2}, F(1, 2)))
    assert res.intersecting
    with pytest.raises(PreconditionViolated):
        parallel_arc_witness(section(3, {0}, F(1, 2)), section(3, {0}, F(1, 3)))


def test_ladder_check_examples(ladder, parallel_pair, empty3):
    (col,) = enumerate_canonical_colourings(ladder)
    v = ladder_check(ladder, col)
    assert v.status == "ladder" and v.size == 4
    assert set(v.types) == {(0,), (0, 2, 3), (0, 1, 3), (0, 1, 2)}
    assert ladder_check(empty3, Colouring(frozenset())).size == 0
    (col,) = enumerate_canonical_colourings(parallel_pair)
    assert ladder_check(parallel_pair, col).status == "not-applicable"


def test_middle_type_invariants(parallel_pair):
    (col,) = enumerate_canonical_colourings(parallel_pair)
    assert middle_survivors(parallel_pair, col) == []
    assert unpartnered_middle_pairs(parallel_pair, col) == []


@given(st.lists(st.sampled_from([(0,), (0, 1), (0, 1, 2), (0, 2, 3), (0, 1, 3)]), max_size=4))
def test_colourings_match_brute_force(types):
    from cutlab.geometry import canonical_levels, types_compatible, Compatibility
    types = [frozenset(t) for t in types]
    if any(types_compatible(a, b, 3) is Compatibility.INCOMPATIBLE for a, b in itertools.combinations(types, 2)):
        return
    cut = realize_cut_system(3, list(zip(types, canonical_levels(3, types))))
    assert set(enumerate_canonical_colourings(cut)) == set(brute_force_colourings(cut))
