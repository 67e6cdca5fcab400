"""Chains of simplices with cancellations, their glued realizations, 0-1 edge
labelings, and the old/new subdivision of a normally cut simplex."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Hashable, Iterable, Mapping, Sequence

from .combinatorics import Colouring, _require_canonical, compute_D
from .geometry import CutSystem, Kind, sign
from .triangulate import det, pulling_triangulation, simplex_volume

Slot = tuple[int, int]  # (cell, k): the face of the cell opposite its k-th vertex


class SlotCollision(ValueError):
    pass


@dataclass(frozen=True)
class ChainWithCancellations:
    """A formal sum of abstract ``dim``-simplices plus face-pair identifications.

    ``names`` optionally labels the vertices of every cell (in order); it is
    only used to report what a glued vertex or edge corresponds to.
    """

    dim: int
    coefficients: tuple
    cancellations: tuple[tuple[Slot, Slot], ...] = ()
    boundary_selection: frozenset[Slot] = frozenset()
    names: tuple[tuple[Hashable, ...], ...] | None = None

    @property
    def size(self) -> int:
        return len(self.coefficients)

    def validate(self) -> None:
        used: dict[Slot, int] = {}
        for p, pair in enumerate(self.cancellations):
            if pair[0] == pair[1]:
                raise SlotCollision(f"slot {pair[0]} is paired with itself")
            for cell, k in pair:
                if not (0 <= cell < self.size and 0 <= k <= self.dim):
                    raise ValueError(f"slot {(cell, k)} does not exist")
                if (cell, k) in used:
                    raise SlotCollision(f"slot {(cell, k)} appears in cancellations {used[(cell, k)]} and {p}")
                used[(cell, k)] = p
        for cell, k in self.boundary_selection:
            if not (0 <= cell < self.size and 0 <= k <= self.dim):
                raise ValueError(f"boundary slot {(cell, k)} does not exist")
        if self.names is not None and (
            len(self.names) != self.size or any(len(v) != self.dim + 1 for v in self.names)
        ):
            raise ValueError("names must give dim+1 vertex names per cell")


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class GluedComplex:
    chain: ChainWithCancellations
    counts: tuple[int, ...]  # number of glued simplices per dimension 0..dim
    vertex_reps: tuple[tuple[int, int], ...]  # (cell, position) per glued vertex
    edges: tuple[tuple[int, int], ...]  # (tail, head) vertex ids per glued edge
    edge_reps: tuple[tuple[int, tuple[int, int]], ...]
    boundary_cells: tuple[tuple[int, ...], ...]  # vertex ids of each J-face
    free_slots: frozenset[Slot]
    _edge_index: Mapping = field(default_factory=dict, repr=False, compare=False)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.counts))

    @property
    def n_vertices(self) -> int:
        return self.counts[0]

    @property
    def n_edges(self) -> int:
        return self.counts[1] if len(self.counts) > 1 else 0

    def edge_of(self, cell: int, p: int, q: int) -> int:
        return self._edge_index[(cell, (p, q))]

    def vertex_name(self, v: int):
        cell, pos = self.vertex_reps[v]
        names = self.chain.names
        return None if names is None else names[cell][pos]

    def edge_names(self, e: int):
        cell, (p, q) = self.edge_reps[e]
        names = self.chain.names
        return None if names is None else (names[cell][p], names[cell][q])


def _face_positions(dim: int, k: int) -> tuple[int, ...]:
    return tuple(p for p in range(dim + 1) if p != k)


def build_glued_complex(chain: ChainWithCancellations) -> GluedComplex:
    """Realize a chain: glue the paired faces, order-preservingly, and nothing else."""
    chain.validate()
    dim = chain.dim
    uf = _UnionFind()
    for (a, k), (b, l) in chain.cancellations:
        fa, fb = _face_positions(dim, k), _face_positions(dim, l)
        for r in range(1, dim + 1):
            for idx in itertools.combinations(range(dim), r):
                uf.union((a, tuple(fa[i] for i in idx)), (b, tuple(fb[i] for i in idx)))

    classes: list[dict] = [{} for _ in range(dim + 1)]
    for cell in range(chain.size):
        for r in range(1, dim + 2):
            for sub in itertools.combinations(range(dim + 1), r):
                root = uf.find((cell, sub))
                classes[r - 1].setdefault(root, len(classes[r - 1]))

    def vid(cell, p):
        return classes[0][uf.find((cell, (p,)))]

    vertex_reps = [None] * len(classes[0])
    for (cell, (p,)), v in classes[0].items():
        vertex_reps[v] = (cell, p)

    edges = [None] * (len(classes[1]) if dim >= 1 else 0)
    edge_reps = [None] * len(edges)
    edge_index = {}
    if dim >= 1:
        for cell in range(chain.size):
            for p, q in itertools.combinations(range(dim + 1), 2):
                e = classes[1][uf.find((cell, (p, q)))]
                edge_index[(cell, (p, q))] = e
                if edges[e] is None:
                    edges[e] = (vid(cell, p), vid(cell, q))
                    edge_reps[e] = (cell, (p, q))

    boundary = tuple(
        tuple(vid(cell, p) for p in _face_positions(dim, k))
        for cell, k in sorted(chain.boundary_selection)
    )
    paired = {s for pair in chain.cancellations for s in pair}
    free = frozenset((c, k) for c in range(chain.size) for k in range(dim + 1)) - paired
    return GluedComplex(
        chain,
        tuple(len(c) for c in classes),
        tuple(vertex_reps),
        tuple(edges),
        tuple(edge_reps),
        boundary,
        free,
        edge_index,
    )


def is_sufficient(chain: ChainWithCancellations, boundary_carried: Iterable[Slot]) -> bool:
    """Whether every face left over after cancelling matched pairs is carried.

    A matched pair ``(a, k), (b, l)`` leaves ``c_a (-1)^k + c_b (-1)^l`` on the
    common face; unmatched faces keep ``c (-1)^k``.  Nonzero leftovers must
    lie in ``boundary_carried``.
    """
    chain.validate()
    carried = set(boundary_carried)
    coef = chain.coefficients
    paired = set()
    for (a, k), (b, l) in chain.cancellations:
        paired.update(((a, k), (b, l)))
        residual = coef[a] * (-1) ** k + coef[b] * (-1) ** l
        if residual != 0 and (a, k) not in carried and (b, l) not in carried:
            return False
    for cell in range(chain.size):
        for k in range(chain.dim + 1):
            if (cell, k) not in paired and coef[cell] != 0 and (cell, k) not in carried:
                return False
    return True


@dataclass(frozen=True)
class EdgeLabeling:
    label: Mapping[int, int]  # glued edge id -> 0 or 1
    boundary_flag: frozenset[int]  # glued vertex ids lying on the boundary part


def check_admissible(complex_: GluedComplex, labeling: EdgeLabeling) -> bool:
    """Endpoints of 1-edges are flagged, and the 1-edges, directed tail to
    head, contain no directed cycle (a 1-labelled loop counts as one)."""
    missing = set(range(len(complex_.edges))) - set(labeling.label)
    if missing:
        raise ValueError(f"edges {sorted(missing)} are unlabelled")
    graph: dict[int, set[int]] = {}
    for e, (tail, head) in enumerate(complex_.edges):
        if labeling.label[e] != 1:
            continue
        if tail not in labeling.boundary_flag or head not in labeling.boundary_flag:
            return False
        if tail == head:
            return False
        graph.setdefault(head, set()).add(tail)
        graph.setdefault(tail, set())
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError:
        return False
    return True


# -- subdivision of a normally cut simplex -------------------------------------

@dataclass(frozen=True)
class NormalSubdivision:
    cut: CutSystem
    colouring: Colouring
    pieces: Mapping[int, tuple[tuple, ...]]  # white region -> sorted label tuples
    points: Mapping[Hashable, tuple]
    edge_class: Mapping[frozenset, str]  # "old" | "new"
    complex: GluedComplex
    labeling: EdgeLabeling

    def volume(self, region: int) -> Fraction:
        return sum((simplex_volume([self.points[v] for v in s]) for s in self.pieces[region]), Fraction(0))

    def old_edges(self) -> list[frozenset]:
        return [e for e, c in self.edge_class.items() if c == "old"]

    def admissible(self) -> bool:
        return check_admissible(self.complex, self.labeling)


def _region_vertices(cut: CutSystem, region: int) -> dict:
    pts = {}
    for k in cut.tree.neighbours(region):
        sec = cut.sections[k]
        if sec.kind is Kind.THROUGH_VERTEX:
            pts[("v", sec.vertex)] = sec.points()[0]
        else:
            for (i, j), p in sec.polytope_vertices:
                pts[("s", k, i, j)] = p
    for v in cut.tree.vertices_in(region):
        pts.setdefault(("v", v), cut.ambient.vertices[v])
    return pts


def _region_facets(cut: CutSystem, region: int) -> list:
    n = cut.n
    facets = [(lambda x, k=k: x[k]) for k in range(n + 1)]
    signs = cut.tree.regions[region]
    for k in cut.tree.neighbours(region):
        plane = cut.sections[k].plane
        facets.append(lambda x, plane=plane, s=signs[k]: s * plane.value(x))
    return facets


def triangulate_region(cut: CutSystem, region: int) -> tuple[list[tuple], dict]:
    """Pulling triangulation of one region, using only its own vertices."""
    if region in cut.tree.phantom:
        return [], {}
    pts = _region_vertices(cut, region)
    cells = pulling_triangulation(list(pts), pts.__getitem__, _region_facets(cut, region))
    return cells, pts


def _support(p) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(p) if c != 0)


def _orientation(points: Sequence) -> int:
    n = len(points) - 1
    base = points[0]
    return sign(det([[a - b for a, b in zip(p[:n], base[:n])] for p in points[1:]]))


def subdivide_cut_simplex(cut: CutSystem, col: Colouring) -> NormalSubdivision:
    """Triangulate every white region and label edges old (inside an edge of
    the simplex, label 1) or new (label 0)."""
    _require_canonical(cut, col)
    pieces, points = {}, {}
    for r in sorted(col.white):
        cells, pts = triangulate_region(cut, r)
        pieces[r] = tuple(cells)
        points.update(pts)

    planes = [s.plane for s in cut.sections]

    def on_section(names) -> bool:
        return any(all(p.value(points[v]) == 0 for v in names) for p in planes)

    cells = [c for r in sorted(pieces) for c in pieces[r]]
    coefficients = tuple(_orientation([points[v] for v in c]) for c in cells)
    dim = cut.n
    by_face: dict[tuple, list[Slot]] = {}
    for idx, c in enumerate(cells):
        for k in range(dim + 1):
            by_face.setdefault(c[:k] + c[k + 1:], []).append((idx, k))
    cancellations, selection = [], set()
    for face, slots in by_face.items():
        if on_section(face):
            selection.update(slots)
        elif len(slots) == 2:
            cancellations.append(tuple(slots))
    chain = ChainWithCancellations(dim, coefficients, tuple(cancellations), frozenset(selection), tuple(cells))
    glued = build_glued_complex(chain)

    edge_class = {}
    for c in cells:
        for a, b in itertools.combinations(c, 2):
            old = len(_support(points[a]) | _support(points[b])) <= 2
            edge_class[frozenset((a, b))] = "old" if old else "new"
    labels = {e: int(edge_class[frozenset(glued.edge_names(e))] == "old") for e in range(len(glued.edges))}
    flagged = frozenset(
        v for v in range(glued.n_vertices)
        if any(p.value(points[glued.vertex_name(v)]) == 0 for p in planes)
    )
    return NormalSubdivision(cut, col, pieces, points, edge_class, glued, EdgeLabeling(labels, flagged))


def survivor_filter(cut: CutSystem, col: Colouring, tris=None) -> frozenset[tuple[int, int]]:
    """Section cells ``(section, cell)`` with no white-parallel partner."""
    return frozenset(compute_D(cut, col, tris).survivors)


@dataclass(frozen=True)
class FlaggedCell:
    cell: Hashable
    constant_edge: bool = False
    in_boundary: bool = False

    @property
    def weakly_degenerate(self) -> bool:
        return self.constant_edge or self.in_boundary


def filter_weakly_degenerate(cells: Iterable[FlaggedCell]) -> list[FlaggedCell]:
    return [c for c in cells if not c.weakly_degenerate]
