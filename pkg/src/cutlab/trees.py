"""Finite metric trees with rational edge lengths: geodesics, medians, Steiner
subtrees and the straightening of triangles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .geometry import as_fraction


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class MetricTree:
    nodes: tuple[Hashable, ...]
    lengths: Mapping[tuple[Hashable, Hashable], Fraction]
    adjacency: Mapping[Hashable, tuple[Hashable, ...]] = field(repr=False, compare=False, default=None)

    @classmethod
    def build(cls, edges: Iterable[tuple[Hashable, Hashable, object]], nodes: Iterable[Hashable] = ()) -> "MetricTree":
        lengths, adj = {}, {}
        for v in nodes:
            adj.setdefault(v, [])
        for u, v, w in edges:
            w = as_fraction(w)
            if w <= 0:
                raise TreeError(f"edge {u}-{v} has non-positive length {w}")
            if u == v or (u, v) in lengths or (v, u) in lengths:
                raise TreeError(f"edge {u}-{v} is a loop or repeated")
            lengths[(u, v)] = w
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        if not adj:
            raise TreeError("a tree needs at least one node")
        order = list(adj)
        if len(lengths) != len(order) - 1:
            raise TreeError("edge count does not match a tree")
        seen, stack = {order[0]}, [order[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(order):
            raise TreeError("graph is not connected")
        return cls(tuple(order), lengths, {k: tuple(v) for k, v in adj.items()})

    def length(self, u, v) -> Fraction:
        return self.lengths[(u, v)] if (u, v) in self.lengths else self.lengths[(v, u)]

    def has_edge(self, u, v) -> bool:
        return (u, v) in self.lengths or (v, u) in self.lengths


@dataclass(frozen=True)
class TreePoint:
    """A node, or a point at ``offset`` from ``edge[0]`` strictly inside an edge."""

    node: Hashable = None
    edge: tuple[Hashable, Hashable] | None = None
    offset: Fraction | None = None

    @classmethod
    def at(cls, node) -> "TreePoint":
        return cls(node=node)

    @classmethod
    def on(cls, tree: MetricTree, u, v, offset) -> "TreePoint":
        offset = as_fraction(offset)
        if not tree.has_edge(u, v):
            raise TreeError(f"no edge {u}-{v}")
        w = tree.length(u, v)
        if offset == 0:
            return cls(node=u)
        if offset == w:
            return cls(node=v)
        if not 0 < offset < w:
            raise TreeError(f"offset {offset} outside edge {u}-{v} of length {w}")
        if (u, v) not in tree.lengths:
            u, v, offset = v, u, w - offset
        return cls(edge=(u, v), offset=offset)


def _refine(tree: MetricTree, points: Sequence[TreePoint]):
    """Subdivide edges at the given points; returns (adjacency with weights, node per point)."""
    adj: dict = {v: {} for v in tree.nodes}
    for (u, v), w in tree.lengths.items():
        adj[u][v] = w
        adj[v][u] = w
    cuts: dict = {}
    names = []
    for p in points:
        if p.edge is None:
            if p.node not in adj:
                raise TreeError(f"unknown node {p.node!r}")
            names.append(p.node)
        else:
            name = ("@", p.edge, p.offset)
            cuts.setdefault(p.edge, set()).add(p.offset)
            names.append(name)
    for (u, v), offs in cuts.items():
        w = tree.length(u, v)
        del adj[u][v]
        del adj[v][u]
        chain = [(Fraction(0), u)] + [(o, ("@", (u, v), o)) for o in sorted(offs)] + [(w, v)]
        for (oa, a), (ob, b) in zip(chain, chain[1:]):
            adj.setdefault(a, {})[b] = ob - oa
            adj.setdefault(b, {})[a] = ob - oa
    return adj, names


def _to_point(name) -> TreePoint:
    if isinstance(name, tuple) and len(name) == 3 and name[0] == "@":
        return TreePoint(edge=name[1], offset=name[2])
    return TreePoint(node=name)


def _path(adj, a, b) -> list:
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


@dataclass(frozen=True)
class Geodesic:
    points: tuple[TreePoint, ...]  # breakpoints from start to end
    length: Fraction

    @property
    def start(self) -> TreePoint:
        return self.points[0]

    @property
    def end(self) -> TreePoint:
        return self.points[-1]


def _geodesic(adj, a, b) -> Geodesic:
    nodes = _path(adj, a, b)
    length = sum((adj[x][y] for x, y in zip(nodes, nodes[1:])), Fraction(0))
    return Geodesic(tuple(_to_point(x) for x in nodes), length)


def tree_geodesic(tree: MetricTree, x: TreePoint, y: TreePoint) -> Geodesic:
    adj, (a, b) = _refine(tree, [x, y])
    return _geodesic(adj, a, b)


def tree_distance(tree: MetricTree, x: TreePoint, y: TreePoint) -> Fraction:
    return tree_geodesic(tree, x, y).length


def tree_median(tree: MetricTree, x: TreePoint, y: TreePoint, z: TreePoint) -> TreePoint:
    adj, (a, b, c) = _refine(tree, [x, y, z])
    common = set(_path(adj, a, b)) & set(_path(adj, b, c)) & set(_path(adj, a, c))
    (m,) = common
    return _to_point(m)


@dataclass(frozen=True)
class SteinerSubtree:
    nodes: frozenset
    edges: frozenset  # frozensets of two refined node names
    length: Fraction
    degree: Mapping = field(compare=False, repr=False)

    def branch_points(self) -> list[TreePoint]:
        return [_to_point(v) for v, d in self.degree.items() if d >= 3]


def steiner_branch_points(tree: MetricTree, points: Sequence[TreePoint]) -> tuple[SteinerSubtree, int]:
    """Union of the geodesics between the points and its number of branch points."""
    if len(points) < 2:
        raise TreeError("need at least two points")
    adj, names = _refine(tree, points)
    edges = set()
    for b in names[1:]:
        p = _path(adj, names[0], b)
        edges.update(frozenset(e) for e in zip(p, p[1:]))
    nodes = frozenset(v for e in edges for v in e) | {names[0]}
    degree = {v: 0 for v in nodes}
    for e in edges:
        for v in e:
            degree[v] += 1
    length = sum((adj[u][v] for u, v in map(tuple, edges)), Fraction(0))
    sub = SteinerSubtree(nodes, frozenset(edges), length, degree)
    return sub, sum(1 for d in degree.values() if d >= 3)


@dataclass(frozen=True)
class TriangleStraightening:
    median: TreePoint
    corners: tuple[Geodesic, Geodesic, Geodesic]
    collinear: bool
    order: tuple[int, int, int] | None = None  # (lo, mid, hi) input indices when collinear
    span: Fraction | None = None  # d(lo, hi)
    turn: Fraction | None = None  # d(lo, mid)

    def fibre(self, t) -> frozenset[frozenset[int]]:
        """Sides (index pairs) and corners (singletons) of the triangle whose
        points sit at distance ``t`` from ``lo`` under the collapse onto the arc."""
        if not self.collinear:
            raise TreeError("fibres are only defined for a collinear triple")
        t = as_fraction(t)
        lo, mid, hi = self.order
        if not 0 < t < self.span:
            raise TreeError(f"level {t} outside the open arc (0, {self.span})")
        long_side = frozenset({lo, hi})
        if t < self.turn:
            return frozenset({frozenset({lo, mid}), long_side})
        if t > self.turn:
            return frozenset({frozenset({mid, hi}), long_side})
        return frozenset({frozenset({mid}), long_side})


def straighten_triangle(tree: MetricTree, x: TreePoint, y: TreePoint, z: TreePoint) -> TriangleStraightening:
    pts = (x, y, z)
    adj, names = _refine(tree, pts)
    common = set(_path(adj, names[0], names[1])) & set(_path(adj, names[1], names[2])) & set(_path(adj, names[0], names[2]))
    (m,) = common
    corners = tuple(_geodesic(adj, a, m) for a in names)
    if m not in names:
        return TriangleStraightening(_to_point(m), corners, False)
    mid = names.index(m)
    lo, hi = [i for i in range(3) if i != mid]
    d = lambda i, j: _geodesic(adj, names[i], names[j]).length
    if d(lo, mid) > d(hi, mid):
        lo, hi = hi, lo
    return TriangleStraightening(_to_point(m), corners, True, (lo, mid, hi), d(lo, hi), d(lo, mid))
