"""JSON documents (``schema: 1``) for cut systems, colourings and trees.

Rationals are integers or ``"p/q"`` strings.  Errors name the offending JSON
path, e.g. ``$.sections[2].level``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .combinatorics import Colouring
from .geometry import CutSystem, Hyperplane, check_type, cut_system_from_planes
from .trees import MetricTree, TreePoint

SCHEMA = 1
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigError(path, f"expected an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ConfigError(path, f"zero denominator in {value!r}") from None
    raise ConfigError(path, f"expected an integer or a 'p/q' string, got {value!r}")


def real(value: Any, path: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(path, "expected a number")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(path, f"not a number: {value!r}") from None
    raise ConfigError(path, f"expected a number, got {type(value).__name__}")


def integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    return value


def _field(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise ConfigError(path, "expected an object")
    if key not in doc:
        raise ConfigError(f"{path}.{key}", "missing")
    return doc[key]


def check_schema(doc: Any) -> dict:
    if not isinstance(doc, dict):
        raise ConfigError("$", "expected an object")
    if doc.get("schema") != SCHEMA:
        raise ConfigError("$.schema", f"expected {SCHEMA}, got {doc.get('schema')!r}")
    return doc


def loads(text: str) -> dict:
    try:
        return check_schema(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc}") from None


def parse_plane(n: int, doc: Any, path: str) -> Hyperplane:
    if not isinstance(doc, dict):
        raise ConfigError(path, "expected an object")
    level = rational(_field(doc, "level", path), f"{path}.level")
    if "coeffs" in doc:
        coeffs = doc["coeffs"]
        if not isinstance(coeffs, list) or len(coeffs) != n + 1:
            raise ConfigError(f"{path}.coeffs", f"expected a list of {n + 1} rationals")
        vals = [rational(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)]
        try:
            return Hyperplane(tuple(vals), level)
        except ValueError as exc:
            raise ConfigError(path, str(exc)) from None
    if "type" in doc:
        members = doc["type"]
        if not isinstance(members, list):
            raise ConfigError(f"{path}.type", "expected a list of vertex indices")
        idx = [integer(m, f"{path}.type[{i}]") for i, m in enumerate(members)]
        try:
            t = check_type(idx, n)
        except ValueError as exc:
            raise ConfigError(f"{path}.type", str(exc)) from None
        if not 0 <= level <= 1:
            raise ConfigError(f"{path}.level", "must lie in [0, 1]")
        return Hyperplane.from_type(n, t, level)
    raise ConfigError(path, "needs either 'coeffs' or 'type'")


def parse_cut_system(doc: dict, path: str = "$") -> CutSystem:
    n = integer(_field(doc, "n", path), f"{path}.n")
    if n < 2:
        raise ConfigError(f"{path}.n", "must be at least 2")
    secs = _field(doc, "sections", path)
    if not isinstance(secs, list):
        raise ConfigError(f"{path}.sections", "expected a list")
    planes = [parse_plane(n, s, f"{path}.sections[{i}]") for i, s in enumerate(secs)]
    try:
        return cut_system_from_planes(n, planes)
    except ValueError as exc:
        raise ConfigError(f"{path}.sections", str(exc)) from None


def parse_colouring(cut: CutSystem, doc: Any, path: str) -> Colouring:
    """``{"white": [region ids]}`` or ``{"white_signs": [[+1, -1, ...], ...]}``."""
    if not isinstance(doc, dict):
        raise ConfigError(path, "expected an object")
    regions = cut.tree.regions
    white = set()
    if "white" in doc:
        for i, r in enumerate(doc["white"]):
            r = integer(r, f"{path}.white[{i}]")
            if not 0 <= r < len(regions):
                raise ConfigError(f"{path}.white[{i}]", f"no region {r}")
            white.add(r)
    elif "white_signs" in doc:
        for i, sv in enumerate(doc["white_signs"]):
            try:
                white.add(regions.index(tuple(sv)))
            except (ValueError, TypeError):
                raise ConfigError(f"{path}.white_signs[{i}]", f"no region with signs {sv}") from None
    else:
        raise ConfigError(path, "needs 'white' or 'white_signs'")
    return Colouring(frozenset(white))


def frac_str(x: Fraction) -> str | int:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cut_system_to_json(cut: CutSystem) -> dict:
    return {
        "schema": SCHEMA,
        "n": cut.n,
        "sections": [
            {
                "coeffs": [frac_str(c) for c in s.plane.coeffs],
                "level": frac_str(s.plane.level),
                "type": sorted(s.type),
                "kind": s.kind.value,
            }
            for s in cut.sections
        ],
    }


def dumps_cut_system(cut: CutSystem) -> str:
    return json.dumps(cut_system_to_json(cut), sort_keys=True)


def parse_tree_point(tree: MetricTree, doc: Any, path: str) -> TreePoint:
    if isinstance(doc, dict):
        edge = _field(doc, "edge", path)
        if not isinstance(edge, list) or len(edge) != 2:
            raise ConfigError(f"{path}.edge", "expected [u, v]")
        offset = rational(_field(doc, "offset", path), f"{path}.offset")
        try:
            return TreePoint.on(tree, edge[0], edge[1], offset)
        except ValueError as exc:
            raise ConfigError(path, str(exc)) from None
    if doc not in tree.adjacency:
        raise ConfigError(path, f"unknown node {doc!r}")
    return TreePoint.at(doc)


def parse_tree(doc: dict, path: str = "$") -> MetricTree:
    edges = _field(doc, "edges", path)
    if not isinstance(edges, list):
        raise ConfigError(f"{path}.edges", "expected a list of [u, v, length]")
    parsed = []
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 3:
            raise ConfigError(f"{path}.edges[{i}]", "expected [u, v, length]")
        parsed.append((e[0], e[1], rational(e[2], f"{path}.edges[{i}][2]")))
    try:
        return MetricTree.build(parsed, doc.get("nodes", ()))
    except ValueError as exc:
        raise ConfigError(f"{path}.edges", str(exc)) from None


def tree_point_to_json(p: TreePoint):
    if p.edge is None:
        return p.node
    return {"edge": list(p.edge), "offset": frac_str(p.offset)}
