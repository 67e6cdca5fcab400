"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed in the
terminal summary (see conftest.py) and also when this file is run directly.
"""

from fractions import Fraction as F
from functools import lru_cache
import itertools
import math
import random

import numpy as np
import pytest

from cutlab.chains import survivor_filter
from cutlab.combinatorics import all_faces, arc_on_2face, arcs_parallel, compute_D, enumerate_canonical_colourings, parallel_arc_witness
from cutlab.geometry import AmbiguousType, Hyperplane, classify_section, realize_cut_system, sections_disjoint
from cutlab.hyperbolic import constants, lobachevsky, truncate
from cutlab.inequalities import REASON_NONEMPTY_GUTS, ManifoldData, tight_obstruction
from cutlab.oracles import (
    FaceInPlane,
    all_types,
    default_jobs,
    exhaustive_dichotomy_sweep,
    geometric_arc_oracle,
    lp_disjoint_oracle,
    quadrature_lobachevsky,
)
from cutlab.trees import MetricTree, TreePoint, steiner_branch_points, tree_distance, tree_median
from planes import random_plane

RESULTS: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def sweep(n: int, m: int):
    return exhaustive_dichotomy_sweep(n, m, jobs=default_jobs())


def test_criterion_1_dichotomy_exhaustive():
    parts, ok = [], True
    for n, m in ((2, 4), (3, 5)):
        s = sweep(n, m)
        ok &= not s.violations
        hist = ",".join(f"{k}:{v}" for k, v in sorted(s.totals_histogram.items()))
        parts.append(
            f"n={n} <= {m} sections: {s.instances} instances, {len(s.violations)} with total outside "
            f"{{0,{n + 1}}} (totals {hist}; total <= {n + 1} failures {s.weak_bound_failures}; {s.seconds:.1f}s)"
        )
    record(1, ok, "; ".join(parts))


def test_criterion_2_corner_ladder():
    cut = realize_cut_system(3, [({0}, F(3, 4)), ({0, 2, 3}, F(1, 4)), ({0, 1, 3}, F(1, 4)), ({0, 1, 2}, F(1, 4))])
    cols = enumerate_canonical_colourings(cut)
    rep = compute_D(cut, cols[0])
    surv = survivor_filter(cut, cols[0])
    ok = len(cols) == 1 and rep.per_section_D == (1, 1, 1, 1) and rep.total == 4 and len(surv) == 4
    record(2, ok, f"D={rep.per_section_D}, total={rep.total}, survivors={len(surv)}")


def test_criterion_3_parallel_arc_witness():
    grid = [F(k, 6) for k in range(1, 6)]
    checked = failures = 0
    for n in (2, 3, 4, 5):
        types = all_types(n)
        for t1 in (t for t in types if 2 <= len(t) <= n - 1):
            for t2, l1, l2 in itertools.product(types, grid, grid):
                s1 = classify_section(Hyperplane.from_type(n, t1, l1))
                s2 = classify_section(Hyperplane.from_type(n, t2, l2))
                res = parallel_arc_witness(s1, s2)
                if res.intersecting:
                    continue
                checked += 1
                if res.face is None:
                    failures += 1
                    continue
                a, b = arc_on_2face(s1, res.face), arc_on_2face(s2, res.face)
                if a is None or b is None or not arcs_parallel(a, b):
                    failures += 1
    record(3, failures == 0 and checked > 0, f"{checked} disjoint pairs for n<=5, {failures} without a witness face")


def test_criterion_4_oracle_equivalence():
    rng = random.Random(20261015)
    arcs = arc_bad = 0
    while arcs < 10_000:
        n = rng.randint(2, 4)
        p = random_plane(rng, n)
        if p is None:
            continue
        try:
            s = classify_section(p)
        except AmbiguousType:
            continue
        if s is None:
            continue
        arcs += 1
        for face in all_faces(n):
            try:
                main = arc_on_2face(s, face)
            except ValueError:
                try:
                    geometric_arc_oracle(p, face)
                    arc_bad += 1
                except FaceInPlane:
                    pass
                continue
            arc_bad += main != geometric_arc_oracle(p, face)
    pairs = pair_bad = 0
    while pairs < 10_000:
        n = rng.randint(2, 4)
        p1, p2 = random_plane(rng, n), random_plane(rng, n)
        if p1 is None or p2 is None:
            continue
        try:
            s1, s2 = classify_section(p1), classify_section(p2)
        except AmbiguousType:
            continue
        if s1 is None or s2 is None:
            continue
        pairs += 1
        pair_bad += sections_disjoint(s1, s2) != lp_disjoint_oracle(p1, p2)
    record(4, arc_bad == 0 and pair_bad == 0,
           f"arcs: {arcs} planes, {arc_bad} disagreements; disjointness: {pairs} pairs, {pair_bad} disagreements")


def test_criterion_5_constants():
    c = constants()
    grid = np.linspace(-math.pi, math.pi, 1000)
    dup = max(abs(lobachevsky(2 * t) - 2 * lobachevsky(t) - 2 * lobachevsky(t + math.pi / 2)) for t in grid)
    quad = max(abs(lobachevsky(t) - quadrature_lobachevsky(t)) for t in grid)
    shown = truncate(c.two_V3, 2)
    ok = shown == "2.02" and dup <= 1e-10 and quad <= 1e-9
    record(5, ok, f"2V3={c.two_V3:.6f} shown as {shown}; duplication max err {dup:.1e}; series vs quadrature {quad:.1e}")


def test_criterion_6_weeks():
    weeks = tight_obstruction(ManifoldData(3, 0.9427))
    other = tight_obstruction(ManifoldData(3, 2.03))
    margin = weeks.numbers["margin"]
    ok = weeks.obstructed and weeks.reasons == (REASON_NONEMPTY_GUTS,) and abs(margin - 1.087) < 1e-3 and not other.obstructed
    record(6, ok, f"0.9427 -> {weeks.verdict} {list(weeks.reasons)} margin {margin:.4f}; 2.03 -> {other.verdict}")


def _random_tree(rng, size):
    parent_edges = [(v, rng.randrange(v), F(rng.randint(1, 12), rng.randint(1, 4))) for v in range(1, size)]
    nodes = list(range(size))
    rng.shuffle(nodes)
    return MetricTree.build([(nodes[a], nodes[b], w) for a, b, w in parent_edges], nodes=nodes)


def _random_point(rng, tree):
    if rng.random() < 0.6 or not tree.lengths:
        return TreePoint.at(rng.choice(tree.nodes))
    (u, v), w = rng.choice(list(tree.lengths.items()))
    return TreePoint.on(tree, u, v, w * F(rng.randint(1, 9), 10))


def test_criterion_7_trees():
    rng = random.Random(7)
    median_bad = branch_bad = four_bad = 0
    tight = False
    for _ in range(1000):
        tree = _random_tree(rng, rng.randint(1, 50))
        d = lambda a, b: tree_distance(tree, a, b)
        x, y, z = (_random_point(rng, tree) for _ in range(3))
        m = tree_median(tree, x, y, z)
        for a, b in ((x, y), (y, z), (x, z)):
            median_bad += d(a, m) + d(m, b) != d(a, b)
        k = rng.randint(2, 8)
        pts = [_random_point(rng, tree) for _ in range(k)]
        _, count = steiner_branch_points(tree, pts)
        branch_bad += count > k - 2
        tight |= count == k - 2 and k > 2
        p, q, r, s = (_random_point(rng, tree) for _ in range(4))
        sums = sorted([d(p, q) + d(r, s), d(p, r) + d(q, s), d(p, s) + d(q, r)])
        four_bad += sums[1] != sums[2]
    # star of stars: k leaves attached in pairs meet the bound exactly
    star = MetricTree.build([("c", f"h{i}", 1) for i in range(3)] + [(f"h{i}", f"l{i}{j}", 1) for i in range(3) for j in range(2)])
    _, count = steiner_branch_points(star, [TreePoint.at(f"l{i}{j}") for i in range(3) for j in range(2)])
    ok = median_bad == branch_bad == four_bad == 0 and count == 4
    record(7, ok, f"1000 trees: median off-geodesic {median_bad}, branch bound violations {branch_bad}, "
                  f"four-point failures {four_bad}; star of stars 6 leaves -> {count} branch points")


def test_criterion_8_admissibility():
    s = sweep(3, 5)
    record(8, s.admissibility_failures == 0 and s.instances > 0,
           f"{s.instances} subdivided n=3 instances, {s.admissibility_failures} inadmissible")


def test_criterion_9_reduction():
    fails = sum(sweep(n, m).reduction_failures for n, m in ((2, 4), (3, 5)))
    total = sum(sweep(n, m).instances for n, m in ((2, 4), (3, 5)))
    record(9, fails == 0, f"{total} instances, {fails} where reduction changed the total or did not shrink")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
