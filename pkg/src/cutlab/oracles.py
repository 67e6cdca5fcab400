"""Brute-force cross-checks, written independently of the main code paths,
and the exhaustive sweep over small cut systems."""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from scipy.integrate import quad

from .geometry import CutSystem, Hyperplane, Kind, Section, canonical_levels, realize_cut_system, types_compatible, Compatibility
from .combinatorics import (
    Arc,
    ArcKind,
    Colouring,
    compute_D,
    unpartnered_middle_pairs,
    middle_survivors,
    reduce_cut_system,
    enumerate_canonical_colourings,
)
from .triangulate import TriangulatedSection, quadrangle_triangulations, staircase_triangulation


# -- arcs ----------------------------------------------------------------------

class FaceInPlane(ValueError):
    pass


def geometric_arc_oracle(plane: Hyperplane, face: Iterable[int]) -> Arc | None:
    """Intersect the plane with the closed 2-face and classify what is left.

    Works directly with the crossing points on the three sides of the face;
    the separated set is read off as the face vertices on the side of ``v_0``.
    """
    face = tuple(sorted(face))
    n = plane.n
    corners = {i: tuple(Fraction(int(k == i)) for k in range(n + 1)) for i in face}
    val = {i: plane.value(corners[i]) for i in face}
    if all(val[i] == 0 for i in face):
        raise FaceInPlane(f"face {face} lies in the plane")
    hits = set()
    for i, j in itertools.combinations(face, 2):
        a, b = val[i], val[j]
        if a == 0:
            hits.add(corners[i])
        if b == 0:
            hits.add(corners[j])
        if (a > 0 and b < 0) or (a < 0 and b > 0):
            t = b / (b - a)
            hits.add(tuple(t * x + (1 - t) * y for x, y in zip(corners[i], corners[j])))
    if not hits:
        return None
    on = [i for i in face if val[i] == 0]
    if len(hits) == 1 and len(on) == 1:
        return Arc(face, ArcKind.VERTEX, frozenset(on))
    if len(on) == 2:
        return Arc(face, ArcKind.FACE_EDGE, frozenset(on))
    v0 = tuple(Fraction(int(k == 0)) for k in range(n + 1))
    ref = plane.value(v0)
    if ref == 0:
        raise ValueError("v_0 lies on the plane but the arc is not degenerate")
    side = frozenset(i for i in face if (val[i] > 0) == (ref > 0) and val[i] != 0)
    return Arc(face, ArcKind.NONDEGENERATE, side)


def partition_parallel_oracle(a1: Arc, a2: Arc) -> bool:
    """Parallel iff the two (disjoint) arcs split the face vertices into the
    same two blocks; a degenerate arc at ``v`` splits off ``{v}``, an arc along
    a side splits off the opposite corner."""

    def blocks(arc: Arc) -> frozenset:
        face = frozenset(arc.face)
        if arc.kind is ArcKind.NONDEGENERATE:
            part = arc.part
        elif arc.kind is ArcKind.VERTEX:
            part = arc.part
        else:
            part = face - arc.part
        return frozenset({part, face - part})

    return blocks(a1) == blocks(a2)


def arcs_disjoint(a1: Arc, a2: Arc) -> bool:
    """Whether two arcs of different sections can be disjoint on the face."""
    touch = lambda a: a.part if a.kind is not ArcKind.NONDEGENERATE else frozenset()
    return not (touch(a1) & touch(a2))


# -- disjointness ----------------------------------------------------------------

def _solve_exact(cols: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Unique solution of ``sum_j y_j cols[j] = rhs`` when the columns are
    independent and the system is consistent, else ``None``."""
    rows = len(rhs)
    m = [[cols[j][r] for j in range(len(cols))] + [rhs[r]] for r in range(rows)]
    piv_cols, r = [], 0
    for c in range(len(cols)):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            return None
        m[r], m[p] = m[p], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    if any(m[i][-1] != 0 for i in range(r, rows)):
        return None
    return [m[i][-1] for i in range(r)]


def lp_disjoint_oracle(p1: Hyperplane, p2: Hyperplane) -> bool:
    """Decide whether ``{x >= 0, sum x = 1, p1(x) = 0, p2(x) = 0}`` is empty.

    A feasible system of three equations has a basic solution with at most
    three nonzero coordinates, so trying all small supports is exhaustive.
    """
    n = p1.n
    d1, d2 = p1.offsets, p2.offsets
    columns = [(Fraction(1), d1[i], d2[i]) for i in range(n + 1)]
    rhs = (Fraction(1), Fraction(0), Fraction(0))
    for size in (1, 2, 3):
        for support in itertools.combinations(range(n + 1), size):
            y = _solve_exact([columns[i] for i in support], rhs)
            if y is not None and all(v >= 0 for v in y):
                return False
    return True


# -- colourings ------------------------------------------------------------------

def brute_force_colourings(cut: CutSystem) -> list[Colouring]:
    """All 2^regions colourings filtered by the two defining conditions.

    A vertex on a section through it is assigned to the side holding no other
    vertex; otherwise the vertex's own sign vector names its region.
    """
    tree = cut.tree
    regions = tree.regions
    black = set()
    for i, v in enumerate(cut.ambient.vertices):
        sv = list(cut.signs(v))
        for k, s in enumerate(sv):
            if s == 0:
                others = {cut.sections[k].plane.side(w) for w in cut.ambient.vertices} - {0}
                sv[k] = -others.pop()
        black.add(regions.index(tuple(sv)))
    black |= tree.phantom
    out = []
    for bits in itertools.product((0, 1), repeat=len(regions)):
        white = {r for r, b in enumerate(bits) if b}
        if white & black:
            continue
        ok = True
        for k in range(len(cut.sections)):
            sides = {r for r, vec in enumerate(regions) if _adjacent(regions, r, k)}
            if not sides & white:
                ok = False
                break
        if ok:
            out.append(Colouring(frozenset(white)))
    return out


def _adjacent(regions, r: int, k: int) -> bool:
    """Region ``r`` borders section ``k`` iff flipping coordinate ``k`` of its
    sign vector yields another region."""
    vec = list(regions[r])
    vec[k] = -vec[k]
    return tuple(vec) in regions


# -- Lobachevsky ------------------------------------------------------------------

def quadrature_lobachevsky(theta: float) -> float:
    """``-int_0^theta log|2 sin t| dt`` by adaptive quadrature, ``|theta| <= pi``.

    The logarithmic singularity at 0 is split off analytically:
    ``-int_0^a log(2t) dt = a - a log(2a)``, leaving the smooth
    ``-log(sin t / t)``.  Beyond ``pi/2`` the substitution ``t -> pi - t``
    moves the other singularity to 0 as well.
    """
    theta = float(theta)
    if abs(theta) > math.pi + 1e-15:
        raise ValueError("quadrature oracle needs |theta| <= pi")
    if theta < 0:
        return -quadrature_lobachevsky(-theta)

    def near_zero(a: float) -> float:
        if a == 0:
            return 0.0
        smooth, _ = quad(lambda t: -math.log(math.sin(t) / t) if t > 0 else 0.0, 0, a, epsabs=1e-14, epsrel=1e-14, limit=200)
        return a - a * math.log(2 * a) + smooth

    if theta <= math.pi / 2:
        return near_zero(theta)
    # -int_{pi/2}^theta log(2 sin t) dt = -int_{pi-theta}^{pi/2} log(2 sin u) du
    half = near_zero(math.pi / 2)
    return 2 * half - near_zero(math.pi - theta)


# -- sweep ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleReport:
    instance: dict
    main_result: object
    oracle_result: object
    agree: bool


def all_types(n: int) -> list[frozenset[int]]:
    rest = range(1, n + 1)
    return [frozenset({0, *c}) for r in range(0, n) for c in itertools.combinations(rest, r)]


def _key(types: Sequence[frozenset[int]]) -> tuple:
    return tuple(sorted(tuple(sorted(t)) for t in types))


def compatible_multisets(n: int, max_sections: int, symmetry: bool = False) -> list[tuple[frozenset[int], ...]]:
    types = all_types(n)
    out = []
    perms = list(itertools.permutations(range(1, n + 1))) if symmetry else []
    for m in range(max_sections + 1):
        for combo in itertools.combinations_with_replacement(types, m):
            if any(types_compatible(a, b, n) is Compatibility.INCOMPATIBLE for a, b in itertools.combinations(combo, 2)):
                continue
            if symmetry:
                images = []
                for p in perms:
                    relabel = {0: 0, **{i + 1: p[i] for i in range(n)}}
                    images.append(_key([frozenset(relabel[x] for x in t) for t in combo]))
                if _key(combo) != min(images):
                    continue
            out.append(combo)
    return out


def _triangulation_choices(cut: CutSystem) -> list[dict[int, TriangulatedSection]]:
    options = []
    for s in cut.sections:
        if s.kind is Kind.GENERIC and len(s.type) == 2 and cut.n == 3:
            options.append(quadrangle_triangulations(s.type, cut.n))
        else:
            options.append([staircase_triangulation(s.type, cut.n)])
    return [dict(enumerate(choice)) for choice in itertools.product(*options)]


def sweep_instance(n: int, types: tuple[frozenset[int], ...], checks: bool = True) -> list[dict]:
    """Every canonical colouring of one realized type multiset, with all checks."""
    from .chains import subdivide_cut_simplex, survivor_filter

    specs = list(zip(types, canonical_levels(n, types)))
    cut = realize_cut_system(n, specs)
    records = []
    for col in enumerate_canonical_colourings(cut):
        rep = compute_D(cut, col)
        rec = {
            "types": [sorted(t) for t in types],
            "levels": [str(level) for _, level in specs],
            "white": sorted(col.white),
            "D": list(rep.per_section_D),
            "total": rep.total,
            "holds": rep.holds,
        }
        if checks:
            rec["survivors"] = len(survivor_filter(cut, col))
            rec["middle_survivors"] = len(middle_survivors(cut, col))
            rec["middle_pairs"] = len(unpartnered_middle_pairs(cut, col))
            reduced, rcol = reduce_cut_system(cut, col, check=False)
            rec["reduced_sections"] = len(reduced.sections)
            rec["reduced_total"] = compute_D(reduced, rcol).total
            if n == 3:
                rec["admissible"] = subdivide_cut_simplex(cut, col).admissible()
                verdicts = {compute_D(cut, col, t).total for t in _triangulation_choices(cut)}
                rec["triangulation_totals"] = sorted(verdicts)
        records.append(rec)
    return records


def _run(args):
    return sweep_instance(*args)


def default_jobs() -> int:
    env = os.environ.get("CUTLAB_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class SweepSummary:
    n: int
    max_sections: int
    symmetry: bool
    multisets: int = 0
    instances: int = 0
    violations: list = field(default_factory=list)  # dichotomy failures
    totals_histogram: dict = field(default_factory=dict)
    max_total: int = 0
    weak_bound_failures: int = 0
    survivor_mismatches: int = 0
    middle_survivor_failures: int = 0
    middle_pair_failures: int = 0
    reduction_failures: int = 0
    admissibility_failures: int = 0
    triangulation_dependence: int = 0
    corner_ladder_total: int | None = None
    seconds: float = 0.0

    def to_json(self, limit: int = 20) -> dict:
        d = asdict(self)
        d["violation_count"] = len(self.violations)
        d["violations"] = [asdict(v) for v in self.violations[:limit]]
        d["totals_histogram"] = {str(k): v for k, v in sorted(self.totals_histogram.items())}
        return d

    def dumps(self, limit: int = 20) -> str:
        return json.dumps(self.to_json(limit), indent=2, sort_keys=True)


def exhaustive_dichotomy_sweep(
    n: int,
    max_sections: int,
    jobs: int | None = None,
    symmetry: bool = False,
    checks: bool = True,
) -> SweepSummary:
    if n not in (2, 3):
        raise ValueError("the sweep covers n = 2 and n = 3")
    if not 0 <= max_sections <= 6:
        raise ValueError("max_sections must be between 0 and 6")
    start = time.perf_counter()
    combos = compatible_multisets(n, max_sections, symmetry)
    jobs = default_jobs() if jobs is None else jobs
    tasks = [(n, c, checks) for c in combos]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run, tasks, chunksize=8))
    else:
        results = [_run(t) for t in tasks]

    summary = SweepSummary(n, max_sections, symmetry, multisets=len(combos))
    ladder = {tuple(sorted(t)) for t in [frozenset({0})] + [frozenset(range(n + 1)) - {j} for j in range(1, n + 1)]}
    for combo, records in zip(combos, results):
        for rec in records:
            summary.instances += 1
            total = rec["total"]
            summary.totals_histogram[total] = summary.totals_histogram.get(total, 0) + 1
            summary.max_total = max(summary.max_total, total)
            if not rec["holds"]:
                summary.violations.append(OracleReport(
                    {k: rec[k] for k in ("types", "levels", "white")},
                    {"D": rec["D"], "total": total},
                    {"expected_total_in": [0, n + 1]},
                    False,
                ))
            if total > n + 1:
                summary.weak_bound_failures += 1
            if {tuple(t) for t in rec["types"]} == ladder and len(rec["types"]) == n + 1:
                summary.corner_ladder_total = total
            if not checks:
                continue
            summary.survivor_mismatches += rec["survivors"] != total
            summary.middle_survivor_failures += rec["middle_survivors"] > 0
            summary.middle_pair_failures += rec["middle_pairs"] > 0
            summary.reduction_failures += rec["reduced_total"] != total or rec["reduced_sections"] > len(rec["types"])
            if n == 3:
                summary.admissibility_failures += not rec["admissible"]
                summary.triangulation_dependence += len(rec["triangulation_totals"]) != 1
    summary.seconds = time.perf_counter() - start
    return summary
