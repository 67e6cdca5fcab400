"""``cutlab`` command line: one JSON document in, one JSON report out.

Exit codes: 0 the property holds or the query succeeded, 1 a check found a
counterexample (the report carries it), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .chains import subdivide_cut_simplex, survivor_filter
from .combinatorics import (
    PreconditionViolated,
    compute_D,
    ladder_check,
    enumerate_canonical_colourings,
    is_canonical,
    parallel_arc_witness,
)
from .hyperbolic import constants, truncate
from .inequalities import (
    GutsData,
    ManifoldData,
    MissingVolume,
    UnsupportedDimension,
    guts_bounds,
    hypersurface_bounds,
    tight_obstruction,
)
from .io import (
    ConfigError,
    cut_system_to_json,
    frac_str,
    integer,
    loads,
    parse_colouring,
    parse_cut_system,
    parse_plane,
    parse_tree,
    parse_tree_point,
    tree_point_to_json,
)
from .oracles import default_jobs, exhaustive_dichotomy_sweep
from .geometry import classify_section
from .trees import steiner_branch_points, straighten_triangle, tree_geodesic, tree_median


class InputError(Exception):
    pass


def _read_config(path: str | None) -> dict:
    if path is None:
        raise InputError("a JSON config (file path or '-') is required")
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


# -- commands -------------------------------------------------------------------

def cmd_analyze(args) -> tuple[int, dict]:
    doc = _read_config(args.config)
    cut = parse_cut_system(doc)
    tree = cut.tree
    regions = [
        {
            "id": r,
            "signs": list(vec),
            "vertices": tree.vertices_in(r),
            "phantom": r in tree.phantom,
            "sections": tree.neighbours(r),
        }
        for r, vec in enumerate(tree.regions)
    ]
    if "colouring" in doc:
        cols = [parse_colouring(cut, doc["colouring"], "$.colouring")]
        if not is_canonical(cut, cols[0]):
            raise ConfigError("$.colouring", "colouring is not canonical")
    else:
        cols = enumerate_canonical_colourings(cut)
    results = []
    ok = True
    for col in cols:
        rep = compute_D(cut, col)
        ok &= rep.holds
        ladder = ladder_check(cut, col)
        entry = {
            "white": sorted(col.white),
            "D": list(rep.per_section_D),
            "total": rep.total,
            "verdict": rep.verdict,
            "survivors": sorted(list(s) for s in survivor_filter(cut, col)),
            "ladder_check": ladder.status,
        }
        if args.subdivide:
            sub = subdivide_cut_simplex(cut, col)
            entry["subdivision"] = {
                "cells": {str(r): len(c) for r, c in sub.pieces.items()},
                "volumes": {str(r): frac_str(sub.volume(r)) for r in sub.pieces},
                "old_edges": len(sub.old_edges()),
                "admissible": sub.admissible(),
            }
        results.append(entry)
    report = {
        "command": "analyze",
        "system": cut_system_to_json(cut),
        "regions": regions,
        "edges": [list(e) for e in tree.section_edges],
        "colourings": results,
        "holds": ok,
    }
    return (0 if ok else 1), report


def cmd_dichotomy(args) -> tuple[int, dict]:
    if args.exhaustive:
        jobs = args.jobs if args.jobs is not None else default_jobs()
        summary = exhaustive_dichotomy_sweep(args.n, args.max_sections, jobs, args.symmetry, not args.fast)
        report = {"command": "dichotomy", **summary.to_json(args.limit)}
        report.pop("seconds", None)
        report["weak_bound"] = f"total <= {args.n + 1}: {summary.weak_bound_failures} failures"
        report["summary"] = f"{len(summary.violations)} violations"
        if args.timing:
            report["seconds"] = round(summary.seconds, 3)
        return (1 if summary.violations else 0), report
    args.subdivide = False
    code, report = cmd_analyze(args)
    report["command"] = "dichotomy"
    return code, report


def cmd_witness(args) -> tuple[int, dict]:
    doc = _read_config(args.config)
    n = integer(doc.get("n"), "$.n")
    secs = doc.get("sections")
    if not isinstance(secs, list) or len(secs) != 2:
        raise ConfigError("$.sections", "expected exactly two sections")
    sections = []
    for i, s in enumerate(secs):
        sec = classify_section(parse_plane(n, s, f"$.sections[{i}]"))
        if sec is None:
            raise ConfigError(f"$.sections[{i}]", "plane misses the simplex")
        sections.append(sec)
    try:
        res = parallel_arc_witness(*sections)
    except PreconditionViolated as exc:
        raise ConfigError("$.sections[0].type", str(exc)) from None
    report = {
        "command": "witness",
        "types": [sorted(s.type) for s in sections],
        "intersecting": res.intersecting,
        "witness_face": list(res.face) if res.face else None,
        "case": res.case,
        "recipe_face": list(res.recipe_face) if res.recipe_face else None,
    }
    failed = not res.intersecting and res.face is None
    return (1 if failed else 0), report


def cmd_tree(args) -> tuple[int, dict]:
    doc = _read_config(args.config)
    tree = parse_tree(doc)
    raw = doc.get("points")
    if not isinstance(raw, list):
        raise ConfigError("$.points", "expected a list of points")
    pts = [parse_tree_point(tree, p, f"$.points[{i}]") for i, p in enumerate(raw)]
    query = doc.get("query", "median")
    report: dict = {"command": "tree", "query": query}

    def need(k):
        if len(pts) != k:
            raise ConfigError("$.points", f"query {query!r} needs {k} points")

    if query == "geodesic":
        need(2)
        g = tree_geodesic(tree, *pts)
        report.update(path=[tree_point_to_json(p) for p in g.points], length=frac_str(g.length))
    elif query == "median":
        need(3)
        report["median"] = tree_point_to_json(tree_median(tree, *pts))
    elif query == "steiner":
        if len(pts) < 2:
            raise ConfigError("$.points", "need at least two points")
        sub, count = steiner_branch_points(tree, pts)
        report.update(
            branch_points=count,
            bound=len(pts) - 2,
            length=frac_str(sub.length),
            branch_locations=[tree_point_to_json(p) for p in sub.branch_points()],
        )
    elif query == "straighten":
        need(3)
        st = straighten_triangle(tree, *pts)
        report.update(
            median=tree_point_to_json(st.median),
            corner_lengths=[frac_str(c.length) for c in st.corners],
            collinear=st.collinear,
        )
        if st.collinear:
            report.update(order=list(st.order), span=frac_str(st.span), turn=frac_str(st.turn))
    else:
        raise ConfigError("$.query", f"unknown query {query!r}")
    return 0, report


def cmd_const(args) -> tuple[int, dict]:
    c = constants()
    return 0, {
        "command": "const",
        **c.as_dict(),
        "2V3_truncated": truncate(c.two_V3, 2),
        "2V3_4dp": f"{c.two_V3:.4f}",
    }


def cmd_bounds(args) -> tuple[int, dict]:
    report: dict = {"command": "bounds"}
    if args.chi_guts is not None:
        try:
            g = GutsData(args.chi_guts, args.faces)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        report["guts"] = guts_bounds(g)
    if args.norm is not None or args.volume is not None:
        m = ManifoldData(args.dimension, args.volume, args.norm)
        report["hypersurface"] = hypersurface_bounds(m, args.surface_chi, args.V_n, args.V_n1, args.G_n1)
    if len(report) == 1:
        raise InputError("give --chi-guts and/or --norm/--volume")
    return 0, report


def cmd_obstruct(args) -> tuple[int, dict]:
    m = ManifoldData(3, args.volume, args.norm)
    rep = tight_obstruction(m, args.empty_guts_excluded, args.tol)
    return 0, {
        "command": "obstruct",
        "verdict": rep.verdict,
        "reasons": list(rep.reasons),
        "conclusion": rep.conclusion,
        **rep.numbers,
    }


# -- plumbing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cutlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"cutlab {__version__}")
    p.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    a = add("analyze", help="one cut system: regions, colourings, D counts, survivors")
    a.add_argument("config", nargs="?")
    a.add_argument("--subdivide", action="store_true", help="also triangulate white regions")

    d = add("dichotomy", help="check the total-count dichotomy")
    d.add_argument("config", nargs="?")
    d.add_argument("--exhaustive", action="store_true")
    d.add_argument("--n", type=int, default=3)
    d.add_argument("--max-sections", type=int, default=5)
    d.add_argument("--jobs", type=int, default=None)
    d.add_argument("--symmetry", action="store_true", help="quotient by permutations fixing vertex 0")
    d.add_argument("--fast", action="store_true", help="skip the secondary checks")
    d.add_argument("--limit", type=int, default=20, help="violations listed in the report")
    d.add_argument("--timing", action="store_true")

    add("witness", help="parallel-arc witness for two sections").add_argument("config", nargs="?")
    add("tree", help="geodesic / median / steiner / straighten queries").add_argument("config", nargs="?")
    add("const", help="volume constants")

    b = add("bounds", help="guts and hypersurface bounds")
    b.add_argument("--chi-guts", type=int)
    b.add_argument("--faces", type=int)
    b.add_argument("--dimension", type=int, default=3)
    b.add_argument("--norm", type=float)
    b.add_argument("--volume", type=float)
    b.add_argument("--surface-chi", type=int)
    b.add_argument("--V-n", dest="V_n", type=float)
    b.add_argument("--V-n1", dest="V_n1", type=float)
    b.add_argument("--G-n1", dest="G_n1", type=float)

    o = add("obstruct", help="volume obstruction to tight laminations")
    o.add_argument("--volume", type=float)
    o.add_argument("--norm", type=float)
    o.add_argument("--empty-guts-excluded", action="store_true")
    o.add_argument("--tol", type=float, default=1e-9)
    return p


COMMANDS = {
    "analyze": cmd_analyze,
    "dichotomy": cmd_dichotomy,
    "witness": cmd_witness,
    "tree": cmd_tree,
    "const": cmd_const,
    "bounds": cmd_bounds,
    "obstruct": cmd_obstruct,
}


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def render_table(report: dict) -> str:
    rows = list(_flatten(report))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {json.dumps(v) if not isinstance(v, str) else v}" for k, v in rows)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        code, report = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(json.dumps({"error": str(exc), "path": exc.path}), file=sys.stderr)
        return 2
    except (InputError, MissingVolume, UnsupportedDimension, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    if args.pretty:
        print(render_table(report))
    else:
        print(json.dumps(report, indent=2))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
