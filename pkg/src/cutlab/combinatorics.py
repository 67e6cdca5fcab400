"""Arcs on 2-faces, parallel and white-parallel arcs, canonical colourings and
the per-section counts of simplices lacking a white-parallel partner."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .geometry import (
    CutSystem,
    Kind,
    Section,
    check_type,
    sections_disjoint,
    vertex,
)
from .triangulate import TriangulatedSection, staircase_triangulation

Face = tuple[int, int, int]


class FaceMismatch(ValueError):
    pass


class NotCanonical(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class ArcKind(enum.Enum):
    NONDEGENERATE = "nondegenerate"
    VERTEX = "vertex"
    FACE_EDGE = "face-edge"


@dataclass(frozen=True)
class Arc:
    """Trace of a section on a 2-face ``{r, s, t}``.

    ``part`` is the set of face vertices on the ``v_0`` side for a
    nondegenerate arc, the single touched vertex for a degenerate one, and
    the two endpoints for an arc lying along an edge of the face.
    """

    face: Face
    kind: ArcKind
    part: frozenset[int]
    section: int | None = field(default=None, compare=False)

    @property
    def lone(self) -> int:
        """The face vertex cut off on its own (nondegenerate arcs)."""
        other = frozenset(self.face) - self.part
        (v,) = self.part if len(self.part) == 1 else other
        return v


def all_faces(n: int) -> list[Face]:
    return list(itertools.combinations(range(n + 1), 3))


def arc_on_2face(section: Section, face: Iterable[int], index: int | None = None) -> Arc | None:
    face = tuple(sorted(face))
    if len(set(face)) != 3:
        raise ValueError("a 2-face needs three distinct vertices")
    fs = frozenset(face)
    if section.kind is Kind.THROUGH_VERTEX:
        if section.vertex in fs:
            return Arc(face, ArcKind.VERTEX, frozenset({section.vertex}), index)
        return None
    if section.kind is Kind.FACE:
        if section.vertex not in fs:
            raise ValueError(f"face {face} lies inside the plane")
        return Arc(face, ArcKind.FACE_EDGE, fs - {section.vertex}, index)
    sep = section.type & fs
    if not sep or sep == fs:
        return None
    return Arc(face, ArcKind.NONDEGENERATE, sep, index)


def arcs_parallel(a1: Arc, a2: Arc) -> bool:
    if a1.face != a2.face:
        raise FaceMismatch(f"{a1.face} vs {a2.face}")
    k1, k2 = a1.kind, a2.kind
    if k1 is ArcKind.NONDEGENERATE and k2 is ArcKind.NONDEGENERATE:
        return a1.lone == a2.lone
    if k1 is ArcKind.NONDEGENERATE or k2 is ArcKind.NONDEGENERATE:
        nd, other = (a1, a2) if k1 is ArcKind.NONDEGENERATE else (a2, a1)
        if other.kind is ArcKind.FACE_EDGE:
            (r,) = frozenset(nd.face) - other.part
            return nd.lone == r
        (r,) = other.part
        return nd.lone == r
    if k1 is k2:
        return a1.part == a2.part
    return True  # one degenerate, one along a face edge


def arc_labels(section: Section, face: Face) -> frozenset[tuple[int, int]]:
    """Polytope vertex labels lying on the 2-face (the arc's endpoints)."""
    fs = set(face)
    return frozenset((i, j) for i in section.type & fs for j in section.complement & fs)


def arc_points(section: Section, face: Face) -> list:
    labels = arc_labels(section, face)
    return [p for lab, p in section.polytope_vertices if lab in labels]


def cell_has_arc(section: Section, cell: frozenset, face: Face) -> bool:
    if section.kind is Kind.THROUGH_VERTEX:
        return True
    return arc_labels(section, face) <= cell


# -- colourings ------------------------------------------------------------

@dataclass(frozen=True)
class Colouring:
    white: frozenset[int]

    def is_white(self, region: int) -> bool:
        return region in self.white


def is_canonical(cut: CutSystem, col: Colouring) -> bool:
    tree = cut.tree
    if col.white & tree.forced_black:
        return False
    if not col.white <= set(range(len(tree.regions))):
        return False
    return all(a in col.white or b in col.white for a, b in tree.section_edges)


def enumerate_canonical_colourings(cut: CutSystem) -> list[Colouring]:
    tree = cut.tree
    free = [r for r in range(len(tree.regions)) if r not in tree.forced_black]
    out = []
    for bits in itertools.product((False, True), repeat=len(free)):
        col = Colouring(frozenset(r for r, w in zip(free, bits) if w))
        if all(a in col.white or b in col.white for a, b in tree.section_edges):
            out.append(col)
    return out


def _require_canonical(cut: CutSystem, col: Colouring) -> None:
    if not is_canonical(cut, col):
        raise NotCanonical(f"colouring {sorted(col.white)} is not canonical")


# -- white-parallel arcs ----------------------------------------------------

def _midpoint(points: Sequence) -> tuple:
    k = len(points)
    return tuple(sum(c) / k for c in zip(*points))


def strip_region(cut: CutSystem, a: int, b: int, face: Face) -> int | None:
    """Region of the strip between the arcs of sections ``a`` and ``b`` on a face.

    Sampled at the midpoint between the two arc midpoints; ``None`` if that
    point lies on a section.
    """
    pa = _midpoint(arc_points(cut.sections[a], face))
    pb = _midpoint(arc_points(cut.sections[b], face))
    return cut.locate(_midpoint([pa, pb]))


def white_parallel_arc(cut: CutSystem, col: Colouring, a: int, b: int, face: Face) -> bool:
    """Sections ``a`` and ``b`` meet ``face`` in white-parallel arcs."""
    arc_a = arc_on_2face(cut.sections[a], face, a)
    arc_b = arc_on_2face(cut.sections[b], face, b)
    if arc_a is None or arc_b is None or not arcs_parallel(arc_a, arc_b):
        return False
    region = strip_region(cut, a, b, face)
    if region is None or region not in col.white:
        return False
    bounding = cut.tree.neighbours(region)
    return a in bounding and b in bounding


def default_triangulations(cut: CutSystem) -> dict[int, TriangulatedSection]:
    return {k: staircase_triangulation(s.type, cut.n) for k, s in enumerate(cut.sections)}


CellRef = tuple[int, int, Face]  # (section, cell, face)


def white_parallel_pairs(
    cut: CutSystem,
    col: Colouring,
    tris: Mapping[int, TriangulatedSection] | None = None,
) -> set[tuple[CellRef, CellRef]]:
    """All pairs of cells of distinct sections sharing a white-parallel arc.

    Each pair is reported once with the smaller section first.
    """
    _require_canonical(cut, col)
    tris = default_triangulations(cut) if tris is None else tris
    out = set()
    m = len(cut.sections)
    for face in all_faces(cut.n):
        for a, b in itertools.combinations(range(m), 2):
            if not white_parallel_arc(cut, col, a, b, face):
                continue
            sa, sb = cut.sections[a], cut.sections[b]
            ca = [k for k, cell in enumerate(tris[a].cells) if cell_has_arc(sa, cell, face)]
            cb = [k for k, cell in enumerate(tris[b].cells) if cell_has_arc(sb, cell, face)]
            out.update(((a, x, face), (b, y, face)) for x in ca for y in cb)
    return out


@dataclass(frozen=True)
class DichotomyReport:
    per_section_D: tuple[int, ...]
    total: int
    holds: bool
    survivors: tuple[tuple[int, int], ...] = ()

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "violated"


def compute_D(
    cut: CutSystem,
    col: Colouring,
    tris: Mapping[int, TriangulatedSection] | None = None,
) -> DichotomyReport:
    """Count, per section, the cells without a white-parallel partner elsewhere."""
    tris = default_triangulations(cut) if tris is None else tris
    partnered = set()
    for (a, x, _), (b, y, _) in white_parallel_pairs(cut, col, tris):
        partnered.add((a, x))
        partnered.add((b, y))
    survivors = tuple(
        (k, c) for k in range(len(cut.sections)) for c in range(len(tris[k].cells))
        if (k, c) not in partnered
    )
    per = [0] * len(cut.sections)
    for k, _ in survivors:
        per[k] += 1
    total = sum(per)
    return DichotomyReport(tuple(per), total, total in (0, cut.n + 1), survivors)


# -- reduction ---------------------------------------------------------------

def removable_pairs(cut: CutSystem, col: Colouring) -> list[tuple[int, int, int]]:
    """Same-type pairs ``(a, b, W)`` bounding a common white region ``W``
    whose outer neighbours are both black."""
    tree = cut.tree
    out = []
    for w in sorted(col.white):
        bounding = tree.neighbours(w)
        for a, b in itertools.combinations(bounding, 2):
            if cut.sections[a].type != cut.sections[b].type:
                continue
            outer = (tree.other_side(a, w), tree.other_side(b, w))
            if not any(r in col.white for r in outer):
                out.append((a, b, w))
    return out


class ReductionError(RuntimeError):
    pass


def reduce_cut_system(cut: CutSystem, col: Colouring, check: bool = True) -> tuple[CutSystem, Colouring]:
    """Strip same-type pairs around white regions until none is removable.

    A pair ``P_a, P_b`` bounding white ``W`` is removed together with ``W``;
    the two outer regions merge with ``W`` into one black region.  Only pairs
    with both outer regions black are removed: merging a white outer region
    changes which sections bound it and can change the total count.
    """
    _require_canonical(cut, col)
    before = compute_D(cut, col).total if check else None
    while True:
        pairs = removable_pairs(cut, col)
        if not pairs:
            break
        a, b, w = pairs[0]
        keep = [k for k in range(len(cut.sections)) if k not in (a, b)]
        reduced = cut.without((a, b))
        white = set()
        for r in col.white:
            if r == w:
                continue
            vec = cut.tree.regions[r]
            white.add(reduced.tree.region_of_signs(tuple(vec[k] for k in keep)))
        cut, col = reduced, Colouring(frozenset(white))
        if not is_canonical(cut, col):
            raise ReductionError("reduction produced a non-canonical colouring")
    if check:
        after = compute_D(cut, col).total
        if after != before:
            raise ReductionError(f"total changed from {before} to {after}")
    return cut, col


# -- pair and ladder checks ----------------------------------------------------

@dataclass(frozen=True)
class ParallelArcWitness:
    intersecting: bool
    face: Face | None = None
    case: int | None = None
    recipe_face: Face | None = None


def _recipe_face(t1: frozenset[int], t2: frozenset[int], n: int) -> tuple[int, Face]:
    everyone = frozenset(range(n + 1))
    if t1 == t2:
        face = next(f for f in all_faces(n) if 0 < len(t1 & set(f)) < 3)
        return 1, face
    if t1 < t2:
        i = min(everyone - t2)
        a1 = min(t1 - {0})
        return 2, tuple(sorted((0, a1, i)))
    if t2 < t1:
        i, j = sorted(everyone - t1)[:2]
        return 3, (0, i, j)
    i, j = sorted(everyone - t1)[:2]
    h = min(t1 - t2)
    return 4, tuple(sorted((i, j, h)))


def parallel_arc_witness(s1: Section, s2: Section) -> ParallelArcWitness:
    """A 2-face on which two disjoint sections have parallel arcs.

    ``s1`` must have a middle type (between 2 and n-1 members).  The returned
    face is the lexicographically smallest one that works; the face given by
    the case analysis on how the two types relate is reported alongside.
    """
    n = s1.n
    if not 2 <= len(s1.type) <= n - 1:
        raise PreconditionViolated(f"type {sorted(s1.type)} is not a middle type for n={n}")
    if not sections_disjoint(s1, s2):
        return ParallelArcWitness(True)
    case, recipe = _recipe_face(s1.type, s2.type, n)
    found = None
    for face in all_faces(n):
        a1, a2 = arc_on_2face(s1, face), arc_on_2face(s2, face)
        if a1 is not None and a2 is not None and arcs_parallel(a1, a2):
            found = face
            break
    return ParallelArcWitness(False, found, case, recipe)


def ladder_types(n: int) -> list[frozenset[int]]:
    everyone = frozenset(range(n + 1))
    return [frozenset({0})] + [everyone - {j} for j in range(1, n + 1)]


@dataclass(frozen=True)
class LadderVerdict:
    status: str  # "ladder", "not-applicable", "violation"
    size: int = 0
    types: tuple[tuple[int, ...], ...] = ()


def ladder_check(cut: CutSystem, col: Colouring) -> LadderVerdict:
    """With no white-parallel pair at all, the system is empty or a corner ladder."""
    if white_parallel_pairs(cut, col):
        return LadderVerdict("not-applicable")
    m = len(cut.sections)
    if m == 0:
        return LadderVerdict("ladder", 0)
    ladder = ladder_types(cut.n)
    types = tuple(tuple(sorted(t)) for t in cut.types())
    if m == cut.n + 1 and sorted(map(sorted, cut.types())) == sorted(map(sorted, ladder)):
        return LadderVerdict("ladder", m, tuple(tuple(sorted(t)) for t in ladder))
    return LadderVerdict("violation", m, types)


def is_middle(members: frozenset[int], n: int) -> bool:
    return 2 <= len(members) <= n - 1


def middle_survivors(cut, col, tris=None) -> list[tuple[int, int]]:
    """Cells of middle-type sections that lack a white-parallel partner."""
    rep = compute_D(cut, col, tris)
    return [(k, c) for k, c in rep.survivors if is_middle(cut.sections[k].type, cut.n)]


def unpartnered_middle_pairs(cut: CutSystem, col: Colouring) -> list[tuple[int, int, int]]:
    """Middle-type sections sharing a white region with another section but no
    white-parallel arc with it, as ``(a, b, region)``."""
    _require_canonical(cut, col)
    out = []
    for w in sorted(col.white):
        bounding = cut.tree.neighbours(w)
        for a in bounding:
            if not is_middle(cut.sections[a].type, cut.n):
                continue
            for b in bounding:
                if b != a and not any(white_parallel_arc(cut, col, a, b, f) for f in all_faces(cut.n)):
                    out.append((a, b, w))
    return out
