"""Exact rational geometry of hyperplane sections of the standard simplex.

The standard n-simplex sits in ``E = {x in Q^(n+1) : sum(x) = 1}`` with vertex
``v_i`` equal to the (i+1)-th unit vector.  A hyperplane of ``E`` is written
``sum(c_i x_i) = level``; on ``E`` this is the same as ``sum(d_i x_i) = 0``
with ``d_i = c_i - level``, so the offsets ``d`` carry all the information
and their signs at the vertices drive every classification below.

Everything here uses :class:`fractions.Fraction`; no floating point.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple  # tuple of Fraction, length n + 1


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class MalformedPlane(GeometryError):
    pass


class AmbiguousType(GeometryError):
    """The plane meets the simplex in a way no section type covers."""


class FaceSectionRejected(GeometryError):
    pass


class EmptySection(GeometryError):
    pass


class NotDisjoint(GeometryError):
    def __init__(self, i: int, j: int, witness: Point):
        self.i, self.j, self.witness = i, j, witness
        coords = ", ".join(str(c) for c in witness)
        super().__init__(f"sections {i} and {j} meet at ({coords})")


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class AmbientSimplex:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise GeometryError("ambient dimension must be at least 2")

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(vertex(self.n, i) for i in range(self.n + 1))

    def contains(self, x: Sequence[Fraction]) -> bool:
        return len(x) == self.n + 1 and sum(x) == 1 and all(c >= 0 for c in x)


def vertex(n: int, i: int) -> Point:
    return tuple(Fraction(int(k == i)) for k in range(n + 1))


def edge_point(n: int, i: int, j: int, t: Fraction) -> Point:
    """The point ``t*v_i + (1-t)*v_j``."""
    pt = [Fraction(0)] * (n + 1)
    pt[i] += t
    pt[j] += 1 - t
    return tuple(pt)


@dataclass(frozen=True)
class Hyperplane:
    """``{x in E : sum(coeffs[i] * x[i]) = level}``, scaled to a canonical form.

    Two instances with the same :attr:`offsets` describe the same oriented
    plane of ``E``; equality and hashing use the offsets only.
    """

    coeffs: tuple[Fraction, ...]
    level: Fraction

    def __post_init__(self):
        coeffs = tuple(as_fraction(c) for c in self.coeffs)
        level = as_fraction(self.level)
        if len(coeffs) < 3:
            raise MalformedPlane("need at least 3 coefficients (n >= 2)")
        if len(set(coeffs)) == 1:
            raise MalformedPlane("all coefficients equal: plane is empty or all of E")
        offsets = [c - level for c in coeffs]
        lead = next(d for d in offsets if d != 0)
        scale = 1 / abs(lead)
        object.__setattr__(self, "coeffs", tuple(c * scale for c in coeffs))
        object.__setattr__(self, "level", level * scale)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def offsets(self) -> tuple[Fraction, ...]:
        return tuple(c - self.level for c in self.coeffs)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        """Signed value of the functional; zero exactly on the plane (for x in E)."""
        return sum((d * xi for d, xi in zip(self.offsets, x)), Fraction(0))

    def side(self, x: Sequence[Fraction]) -> int:
        return sign(self.value(x))

    def __eq__(self, other):
        if not isinstance(other, Hyperplane):
            return NotImplemented
        return self.offsets == other.offsets

    def __hash__(self):
        return hash(self.offsets)

    @classmethod
    def from_type(cls, n: int, members: Iterable[int], level) -> "Hyperplane":
        """The plane ``sum_{i in members} x_{i+1} = level``."""
        members = set(members)
        return cls(tuple(Fraction(int(i in members)) for i in range(n + 1)), as_fraction(level))


def check_type(members: Iterable[int], n: int) -> frozenset[int]:
    t = frozenset(members)
    if 0 not in t:
        raise GeometryError(f"type {sorted(t)} must contain 0")
    if not t <= set(range(n + 1)) or len(t) > n:
        raise GeometryError(f"type {sorted(t)} is not a proper subset of 0..{n}")
    return t


class Kind(enum.Enum):
    GENERIC = "generic"
    THROUGH_VERTEX = "through-vertex"
    FACE = "face"


@dataclass(frozen=True)
class Section:
    plane: Hyperplane
    kind: Kind
    type: frozenset[int]
    vertex: int | None = None  # the touched vertex (THROUGH_VERTEX) or opposite vertex (FACE)
    polytope_vertices: tuple[tuple[tuple[int, int], Point], ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.plane.n

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(self.n + 1)) - self.type

    def points(self) -> list[Point]:
        return [p for _, p in self.polytope_vertices]


def section_polytope(section: Section) -> tuple[tuple[tuple[int, int], Point], ...]:
    """Vertices of the section polytope, one per crossing edge ``(i, j)``.

    ``i`` runs over the type and ``j`` over its complement; the point solves
    ``d_i t + d_j (1 - t) = 0`` on the edge from ``v_j`` (t=0) to ``v_i`` (t=1).
    """
    d = section.plane.offsets
    n = section.n
    out = []
    for i in sorted(section.type):
        for j in sorted(section.complement):
            t = d[j] / (d[j] - d[i])
            out.append(((i, j), edge_point(n, i, j, t)))
    return tuple(out)


def classify_section(plane: Hyperplane, ambient: AmbientSimplex | None = None) -> Section | None:
    """Type and kind of ``plane ∩ Δ^n``; ``None`` when the intersection is empty."""
    n = plane.n
    if ambient is not None and ambient.n != n:
        raise GeometryError("plane and simplex dimensions differ")
    d = plane.offsets
    zeros = [i for i in range(n + 1) if d[i] == 0]
    signs = {sign(d[i]) for i in range(n + 1) if d[i] != 0}
    everyone = frozenset(range(n + 1))

    if not zeros:
        if len(signs) == 1:
            return None
        s0 = sign(d[0])
        kind, members, touched = Kind.GENERIC, frozenset(i for i in everyone if sign(d[i]) == s0), None
    elif len(zeros) == 1:
        (j,) = zeros
        if len(signs) != 1:
            raise AmbiguousType(f"plane passes through v_{j} and also cuts the interior")
        kind, touched = Kind.THROUGH_VERTEX, j
        members = frozenset({0}) if j == 0 else everyone - {j}
    elif len(zeros) == n:
        (j,) = set(everyone) - set(zeros)
        kind, touched = Kind.FACE, j
        members = frozenset({0}) if j == 0 else everyone - {j}
    else:
        raise AmbiguousType(f"plane passes through vertices {zeros} without containing a face")

    sec = Section(plane, kind, members, touched)
    object.__setattr__(sec, "polytope_vertices", section_polytope(sec))
    return sec


def sections_disjoint(s1: Section, s2: Section) -> bool:
    """True iff the two section polytopes do not meet.

    A polytope misses a plane exactly when all of its vertices lie strictly on
    one side; a vertex on the plane counts as contact.
    """
    sides = {s1.plane.side(p) for p in s2.points()}
    return sides in ({1}, {-1})


def intersection_witness(s1: Section, s2: Section) -> Point | None:
    """A common point of two sections, or ``None`` if they are disjoint."""
    pts = s2.points()
    vals = [s1.plane.value(p) for p in pts]
    for p, v in zip(pts, vals):
        if v == 0:
            return p
    for (p, vp), (q, vq) in itertools.combinations(zip(pts, vals), 2):
        if (vp > 0) != (vq > 0):
            t = vq / (vq - vp)
            return tuple(t * a + (1 - t) * b for a, b in zip(p, q))
    return None


class Compatibility(enum.Enum):
    EQUAL = "equal"
    NESTED = "nested"
    CO_COVERING = "co-covering"
    INCOMPATIBLE = "incompatible"


def types_compatible(t1: Iterable[int], t2: Iterable[int], n: int) -> Compatibility:
    t1, t2 = check_type(t1, n), check_type(t2, n)
    if t1 == t2:
        return Compatibility.EQUAL
    if t1 < t2 or t2 < t1:
        return Compatibility.NESTED
    if t1 | t2 == frozenset(range(n + 1)):
        return Compatibility.CO_COVERING
    return Compatibility.INCOMPATIBLE


@dataclass(frozen=True)
class RegionTree:
    """Dual tree of the complementary regions of a disjoint family of sections.

    Regions are identified by their sign vector with respect to the ordered
    section functionals.  ``section_edges[k]`` joins the two regions on either
    side of section ``k``.  A section through a single vertex does not really
    separate the simplex; the side it faces away from is kept as a *phantom*
    region that holds that vertex and has no interior points.
    """

    regions: tuple[tuple[int, ...], ...]
    section_edges: tuple[tuple[int, int], ...]
    vertex_home: tuple[int, ...]
    phantom: frozenset[int] = frozenset()

    def region_of_signs(self, signs: Sequence[int]) -> int:
        return self.regions.index(tuple(signs))

    def neighbours(self, region: int) -> list[int]:
        """Sections whose tree edge touches ``region``."""
        return [k for k, (a, b) in enumerate(self.section_edges) if region in (a, b)]

    def other_side(self, k: int, region: int) -> int:
        a, b = self.section_edges[k]
        return b if region == a else a

    def vertices_in(self, region: int) -> list[int]:
        return [v for v, r in enumerate(self.vertex_home) if r == region]

    @property
    def forced_black(self) -> frozenset[int]:
        return frozenset(self.vertex_home) | self.phantom

    def split(self, k: int) -> tuple[frozenset[int], frozenset[int]]:
        """Ambient vertices on either side of section ``k``'s edge (side ``a`` first)."""
        a, b = self.section_edges[k]
        adj: dict[int, list[int]] = {r: [] for r in range(len(self.regions))}
        for e, (x, y) in enumerate(self.section_edges):
            if e != k:
                adj[x].append(y)
                adj[y].append(x)

        def reach(start):
            seen, stack = {start}, [start]
            while stack:
                for nb in adj[stack.pop()]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            return frozenset(v for v, r in enumerate(self.vertex_home) if r in seen)

        return reach(a), reach(b)


@dataclass(frozen=True)
class CutSystem:
    n: int
    sections: tuple[Section, ...]
    tree: RegionTree

    @property
    def ambient(self) -> AmbientSimplex:
        return AmbientSimplex(self.n)

    def signs(self, x: Sequence[Fraction]) -> tuple[int, ...]:
        return tuple(s.plane.side(x) for s in self.sections)

    def locate(self, x: Sequence[Fraction]) -> int | None:
        """Region containing ``x``, or ``None`` if ``x`` lies on a section."""
        sv = self.signs(x)
        if 0 in sv:
            return None
        try:
            return self.tree.region_of_signs(sv)
        except ValueError:
            return None

    def types(self) -> list[frozenset[int]]:
        return [s.type for s in self.sections]

    def without(self, drop: Iterable[int]) -> "CutSystem":
        drop = set(drop)
        return build_cut_system(self.n, [s for k, s in enumerate(self.sections) if k not in drop])


def _region_tree(n: int, sections: Sequence[Section]) -> RegionTree:
    m = len(sections)
    if m == 0:
        return RegionTree(((),), (), tuple(0 for _ in range(n + 1)))
    # side of section l seen from section k; constant on Q_k by disjointness
    side_on = [[s_l.plane.side(s_k.points()[0]) for s_l in sections] for s_k in sections]
    halves = []
    phantoms = set()
    for k, s in enumerate(sections):
        pair = []
        for sd in (-1, 1):
            vec = list(side_on[k])
            vec[k] = sd
            pair.append(tuple(vec))
        halves.append(pair)
        if s.kind is Kind.THROUGH_VERTEX:
            others = {s.plane.side(vertex(n, i)) for i in range(n + 1)} - {0}
            (real,) = others
            phantoms.add(pair[0] if real == 1 else pair[1])
    regions = tuple(sorted({v for pair in halves for v in pair}))
    if len(regions) != m + 1:
        raise GeometryError(f"region structure is not a tree: {len(regions)} regions for {m} sections")
    index = {v: r for r, v in enumerate(regions)}
    edges = tuple((index[a], index[b]) for a, b in halves)

    homes = []
    for i in range(n + 1):
        sv = [s.plane.side(vertex(n, i)) for s in sections]
        if 0 in sv:
            k = sv.index(0)
            a, b = edges[k]
            homes.append(a if regions[a] in phantoms else b)
        else:
            homes.append(index[tuple(sv)])
    return RegionTree(regions, edges, tuple(homes), frozenset(index[v] for v in phantoms))


def build_cut_system(n: int, sections: Sequence[Section]) -> CutSystem:
    """Validate a family of sections and assemble its region tree."""
    sections = tuple(sections)
    for k, s in enumerate(sections):
        if s.n != n:
            raise GeometryError(f"section {k} lives in dimension {s.n}, expected {n}")
        if s.kind is Kind.FACE:
            raise FaceSectionRejected(f"section {k} is a face of the simplex")
    for i, j in itertools.combinations(range(len(sections)), 2):
        if not sections_disjoint(sections[i], sections[j]):
            raise NotDisjoint(i, j, intersection_witness(sections[i], sections[j]))
    return CutSystem(n, sections, _region_tree(n, sections))


def cut_system_from_planes(n: int, planes: Sequence[Hyperplane]) -> CutSystem:
    sections = []
    for k, p in enumerate(planes):
        s = classify_section(p, AmbientSimplex(n))
        if s is None:
            raise EmptySection(f"plane {k} misses the simplex")
        sections.append(s)
    return build_cut_system(n, sections)


def realize_cut_system(n: int, specs: Sequence[tuple[Iterable[int], object]]) -> CutSystem:
    """Build ``sum_{i in T} x_{i+1} = level`` for each ``(T, level)`` and validate.

    Levels must lie in ``[0, 1]``; the endpoints give planes through a vertex or
    a face, which are classified (and faces rejected) like any other plane.
    Nothing is perturbed: overlapping specs raise :class:`NotDisjoint`.
    """
    planes = []
    for members, level in specs:
        t = check_type(members, n)
        lam = as_fraction(level)
        if not 0 <= lam <= 1:
            raise GeometryError(f"level {lam} outside [0, 1]")
        planes.append(Hyperplane.from_type(n, t, lam))
    return cut_system_from_planes(n, planes)


def canonical_levels(n: int, types: Sequence[Iterable[int]]) -> list[Fraction]:
    """Levels realizing a pairwise compatible list of types disjointly.

    Writing each plane as ``sum_{i not in T} x_{i+1} = mu`` with ``mu = 1 - level``,
    nested types need the smaller complement to sit at larger ``mu`` and
    co-covering types need ``mu + mu' > 1``; spreading all ``mu`` over
    ``(1/2, 1)`` in order of decreasing complement size meets both.
    """
    types = [check_type(t, n) for t in types]
    m = len(types)
    order = sorted(range(m), key=lambda k: (-(n + 1 - len(types[k])), sorted(types[k]), k))
    levels = [Fraction(0)] * m
    for rank, k in enumerate(order):
        mu = Fraction(1, 2) + Fraction(rank + 1, 2 * (m + 1))
        levels[k] = 1 - mu
    return levels
