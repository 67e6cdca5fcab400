"""Minimal triangulations: staircase cells of section polytopes, pulling
triangulations of region polytopes, and exact simplex volumes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Sequence

Label = tuple[int, int]  # polytope vertex (i, j): the crossing point on edge v_i v_j


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    r, cols = 0, len(m[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    size = len(m)
    out = Fraction(1)
    for c in range(size):
        piv = next((i for i in range(c, size) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, size):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def simplex_volume(points: Sequence[Sequence[Fraction]]) -> Fraction:
    """Volume of an n-simplex in ``E``, measured in the first n coordinates.

    With that normalisation the whole standard simplex has volume ``1/n!``.
    """
    n = len(points) - 1
    base = points[0]
    rows = [[a - b for a, b in zip(p[:n], base[:n])] for p in points[1:]]
    return abs(det(rows)) / math.factorial(n)


@dataclass(frozen=True)
class TriangulatedSection:
    type: frozenset[int]
    n: int
    cells: tuple[frozenset[Label], ...]

    def exterior_edges(self, cell: int) -> list[frozenset[Label]]:
        """Edges of a cell that are edges of the polytope (shared coordinate)."""
        labels = sorted(self.cells[cell])
        return [frozenset((p, q)) for p, q in itertools.combinations(labels, 2)
                if (p[0] == q[0]) != (p[1] == q[1])]

    @property
    def labels(self) -> frozenset[Label]:
        return frozenset().union(*self.cells)


def staircase_triangulation(members, n: int) -> TriangulatedSection:
    """Staircase triangulation of the product polytope ``Δ^a × Δ^b``.

    A section of type ``T`` has one vertex per pair ``(i, j)`` with ``i in T``
    and ``j`` outside it, i.e. it is combinatorially ``Δ^(|T|-1) × Δ^(n-|T|)``.
    Maximal cells are the monotone lattice paths through the ``|T| × (n+1-|T|)``
    grid of labels; there are ``binomial(n-1, |T|-1)`` of them.  Corner types
    give a single cell, which also serves for sections through one vertex.
    """
    t = sorted(members)
    c = sorted(set(range(n + 1)) - set(t))
    a, b = len(t) - 1, len(c) - 1
    cells = []
    for ups in itertools.combinations(range(a + b), a):
        p = q = 0
        path = [(t[0], c[0])]
        for step in range(a + b):
            if step in ups:
                p += 1
            else:
                q += 1
            path.append((t[p], c[q]))
        cells.append(frozenset(path))
    return TriangulatedSection(frozenset(t), n, tuple(cells))


def quadrangle_triangulations(members, n: int) -> list[TriangulatedSection]:
    """Both diagonal splits of a quadrangle section (``Δ^1 × Δ^1``)."""
    t = sorted(members)
    c = sorted(set(range(n + 1)) - set(t))
    if len(t) != 2 or len(c) != 2:
        raise ValueError("not a quadrangle type")
    (i0, i1), (j0, j1) = t, c
    q = [(i0, j0), (i0, j1), (i1, j0), (i1, j1)]
    diag_a = (frozenset({q[0], q[2], q[3]}), frozenset({q[0], q[1], q[3]}))
    diag_b = (frozenset({q[0], q[1], q[2]}), frozenset({q[1], q[2], q[3]}))
    ft = frozenset(t)
    return [TriangulatedSection(ft, n, diag_a), TriangulatedSection(ft, n, diag_b)]


def pulling_triangulation(
    labels: Sequence[Hashable],
    point: Callable[[Hashable], Sequence[Fraction]],
    facets: Sequence[Callable[[Sequence[Fraction]], Fraction]],
) -> list[tuple]:
    """Pulling triangulation of a convex polytope from its vertex list.

    ``facets`` are functionals of the defining inequalities (each vanishes on a
    face and has constant sign on the polytope).  The smallest label is pulled
    first; faces not containing it are triangulated recursively with the same
    ordering, so shared faces get the same triangulation.
    """
    labels = sorted(set(labels))
    pts = {lab: tuple(point(lab)) for lab in labels}
    zero_sets = [frozenset(lab for lab in labels if f(pts[lab]) == 0) for f in facets]

    def pull(verts: tuple, dim: int) -> list[tuple]:
        if dim == 0:
            return [(verts[0],)]
        apex = verts[0]
        vset = frozenset(verts)
        seen = set()
        out = []
        for z in zero_sets:
            face = z & vset
            if apex in face or len(face) < dim or face in seen:
                continue
            face_t = tuple(sorted(face))
            if affine_dim([pts[v] for v in face_t]) != dim - 1:
                continue
            seen.add(face)
            out.extend((apex,) + s for s in pull(face_t, dim - 1))
        return out

    top = tuple(labels)
    return pull(top, affine_dim([pts[v] for v in top]))
