"""Command-line entry point.

Exit status: 0 success, 1 a verification failed, 2 usage or input error,
3 an internal consistency fault.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import io
from .coloring import color_planar_5
from .conflict_free import (cf_color, dominance_instance, dual_instance, k_strong_cf_color,
                            strong_bound, triangle_dual_instance, verify_cf)
from .dominance import LARGE_N, build_Gk, color_k, enumerate_hyperedges, verify_polychromatic
from .dual import build_dual_graph, color_dual, contained_set, verify_dual
from .errors import (GeometryError, GuardrailError, InstanceError, InternalConsistencyError,
                     SearchBudgetExceeded)
from .figures import dual_svg, primal_svg, to_dot
from .geometry import ConvexRange, rational
from .lowerbound import gen_lowerbound_dual, gen_lowerbound_primal
from .primal import build_delaunay, color_primal, verify_primal

WORKERS_ENV = "POLYCOLOR_WORKERS"
LARGE_DUAL = 200

RANGES = {
    "square": [(1, 1), (-1, 1), (-1, -1), (1, -1)],
    "triangle": [(1, 0), (0, 1), (-1, -1)],
    "hexagon": [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
}


class UsageError(Exception):
    pass


def parse_range(text: str) -> ConvexRange:
    """A named range or vertices written ``x,y x,y ...`` (rationals as ``p/q``)."""
    if text in RANGES:
        return ConvexRange.from_vertices(RANGES[text])
    try:
        verts = [tuple(rational(c) for c in v.split(",")) for v in text.split()]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse range {text!r}") from exc
    return ConvexRange.from_vertices(verts)


def _emit(obj, out=None):
    text = json.dumps(obj, separators=(",", ":")) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _guard_dual(inst, allow_large):
    if len(inst.homothets) > LARGE_DUAL and not allow_large:
        raise GuardrailError(f"{len(inst.homothets)} homothets exceeds {LARGE_DUAL}; pass --allow-large")


def _guard_realizer(inst, allow_large):
    if len(inst.realizer) > LARGE_N and not allow_large:
        raise GuardrailError(f"{len(inst.realizer)} points exceeds {LARGE_N}; pass --allow-large")


def _expect(inst, *kinds):
    if inst.kind not in kinds:
        raise InstanceError(f"expected a {' or '.join(kinds)} instance, got {inst.kind}")


def _color_one(job):
    command, path, k, verify, allow_large = job
    inst = io.load(path)
    out = {"instance": path}
    if command == "color-primal":
        _expect(inst, "primal")
        try:
            coloring = color_primal(inst.range, inst.points)
        except SearchBudgetExceeded:
            coloring = color_planar_5(build_delaunay(inst.range, inst.points).graph)
            out["fallback"] = "5-coloring"
        report = verify_primal(inst.range, inst.points, coloring) if verify else None
    elif command == "color-dual":
        _expect(inst, "dual")
        _guard_dual(inst, allow_large)
        coloring = color_dual(inst.homothets)
        report = verify_dual(inst.homothets, coloring) if verify else None
    else:
        _expect(inst, "realizer3d")
        _guard_realizer(inst, allow_large)
        coloring = color_k(inst.realizer, k)
        report = verify_polychromatic(enumerate_hyperedges(inst.realizer, allow_large), coloring, k) \
            if verify else None
        out["k"] = k
    out["num_colors"] = coloring.num_colors
    out["colors"] = io.coloring_obj(coloring)
    if report is not None:
        out["verify"] = str(report)
    return out


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"{WORKERS_ENV} must be an integer") from exc
    return 1


def cmd_color(args):
    jobs = [(args.command, p, getattr(args, "k", 2), args.verify, args.allow_large) for p in args.instances]
    workers = _workers(args)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_color_one, jobs))
    else:
        results = [_color_one(j) for j in jobs]
    for r in results:
        _emit(r)
    return 1 if any(r.get("verify", "PASS") != "PASS" for r in results) else 0


def cmd_build_delaunay(args):
    inst = io.load(args.instance)
    _expect(inst, "primal")
    dg = build_delaunay(inst.range, inst.points)
    if args.dot:
        sys.stdout.write(to_dot(dg.graph))
    else:
        _emit({
            "edges": [[u, v] for u, v in dg.edges],
            "witness": [[u, v, w.kind] for (u, v), w in dg.witness.items()],
        })
    return 0


def _cf_instance(inst, strong, allow_large):
    if inst.kind == "dual":
        _guard_dual(inst, allow_large)
        if strong is None or strong == 1:
            return dual_instance(inst.homothets)
        if len(inst.range.facets) != 3:
            raise UsageError("--strong on dual instances needs a triangle range")
        return triangle_dual_instance(inst.homothets, strong)
    if inst.kind == "realizer3d":
        _guard_realizer(inst, allow_large)
        return dominance_instance(inst.realizer, strong or 1)
    raise InstanceError("cf-color takes a dual or realizer3d instance")


def cmd_cf_color(args):
    inst = io.load(args.instance)
    k = args.strong or 1
    if k < 1:
        raise UsageError("--strong needs a positive k")
    cf = _cf_instance(inst, args.strong, args.allow_large)
    coloring = cf_color(cf) if k == 1 else k_strong_cf_color(cf, k)
    out = {
        "k": k,
        "num_colors": coloring.num_colors,
        "bound": strong_bound(len(cf.vertices), k),
        "colors": io.coloring_obj(coloring),
        "audit": [[a["round"], a["remaining"], a["class"], a["removed"]] for a in cf.audit],
    }
    if args.verify:
        out["verify"] = str(verify_cf(cf, coloring, k))
    _emit(out)
    return 1 if out.get("verify", "PASS") != "PASS" else 0


def cmd_gen_lowerbound(args):
    rng = parse_range(args.range)
    gen = gen_lowerbound_primal if args.primal else gen_lowerbound_dual
    lb = gen(rng, args.k)
    text = io.dumps(io.from_lowerbound(lb))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args):
    inst = io.load(args.instance)
    with open(args.coloring, encoding="utf-8") as fh:
        try:
            coloring = io.coloring_from(json.load(fh))
        except json.JSONDecodeError as exc:
            raise InstanceError(f"coloring file is not JSON: {exc}") from exc
    if args.cf:
        report = verify_cf(_cf_instance(inst, args.k, args.allow_large), coloring, args.k or 1)
    elif inst.kind == "primal":
        report = verify_primal(inst.range, inst.points, coloring)
    elif inst.kind == "dual":
        _guard_dual(inst, args.allow_large)
        report = verify_dual(inst.homothets, coloring)
    else:
        _guard_realizer(inst, args.allow_large)
        report = verify_polychromatic(enumerate_hyperedges(inst.realizer, args.allow_large),
                                      coloring, args.k or 2)
    print(report)
    if not report:
        w = report.witness
        if w is not None and hasattr(w, "center"):
            w = {"center": [str(c) for c in w.center], "scaling": str(w.scaling)}
        elif w is not None:
            w = [str(c) for c in w]
        print(json.dumps({"witness": w, "members": list(report.members)}))
        return 1
    return 0


def cmd_emit_figure(args):
    inst = io.load(args.instance)
    coloring = None
    if args.coloring:
        with open(args.coloring, encoding="utf-8") as fh:
            coloring = io.coloring_from(json.load(fh))
    if inst.kind == "primal":
        graph = build_delaunay(inst.range, inst.points).graph
        text = to_dot(graph, coloring) if args.format == "dot" else primal_svg(inst.points, graph, coloring)
    elif inst.kind == "dual":
        if args.format == "svg":
            text = dual_svg(inst.homothets, coloring)
        else:
            inside, _ = contained_set(inst.homothets)
            outer = {lab: h for lab, h in inst.homothets.items() if lab not in inside}
            text = to_dot(build_dual_graph(outer).graph, coloring)
    else:
        if args.format == "svg":
            raise UsageError("realizer3d instances only have DOT output")
        text = to_dot(build_Gk(inst.realizer, args.k).graph, coloring)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polycolor", description="Polychromatic colorings of homothet hypergraphs.")
    p.add_argument("--allow-large", action="store_true", help="lift size guardrails")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes for multi-instance runs (default ${WORKERS_ENV} or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-delaunay", help="Delaunay graph of a primal instance")
    s.add_argument("instance")
    s.add_argument("--dot", action="store_true", help="write DOT instead of JSON")
    s.set_defaults(func=cmd_build_delaunay)

    for name, what in (("color-primal", "primal"), ("color-dual", "dual"), ("color-3d", "realizer3d")):
        s = sub.add_parser(name, help=f"color {what} instances")
        s.add_argument("instances", nargs="+")
        s.add_argument("--verify", action="store_true")
        if name == "color-3d":
            s.add_argument("-k", type=int, default=2)
        s.set_defaults(func=cmd_color)

    s = sub.add_parser("cf-color", help="conflict-free coloring of a dual or realizer3d instance")
    s.add_argument("instance")
    s.add_argument("--strong", type=int, default=None, metavar="K")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_cf_color)

    s = sub.add_parser("gen-lowerbound", help="generate a lower-bound instance")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--primal", action="store_true")
    g.add_argument("--dual", action="store_true")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--range", default="hexagon", help="square, triangle, hexagon or 'x,y x,y ...'")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_lowerbound)

    s = sub.add_parser("verify", help="check a coloring; exit 1 on failure")
    s.add_argument("instance")
    s.add_argument("coloring")
    s.add_argument("-k", type=int, default=None)
    s.add_argument("--cf", action="store_true", help="check the (k-strong) conflict-free property")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("emit-figure", help="static SVG or DOT figure")
    s.add_argument("instance")
    s.add_argument("--format", choices=("svg", "dot"), default="svg")
    s.add_argument("--coloring")
    s.add_argument("-k", type=int, default=2)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_emit_figure)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"internal fault: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (InstanceError, GeometryError, GuardrailError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
