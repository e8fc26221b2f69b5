"""Command-line surface.

Subcommands:
  build        construct a graph from a points file and save it as JSON
  route        route between two vertices of a saved graph
  span         exact spanning ratio of a saved graph
  rratio       measured routing ratio over all ordered pairs
  ctheta       evaluate the closed-form bounds for a shape
  adversarial  emit the lower-bound instances (span or route)
  render       SVG of a saved graph with optional overlays

Exit status: 0 on success, 1 on validation/construction errors (message on
stderr), 2 on usage errors.  Angles are always radians.

Point sets are normalised to unit bounding-box diameter for the
tolerance-sensitive construction steps; files keep the original coordinates
(the construction is scale- and translation-invariant, so the edge set is
the same either way).
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import analysis, fileio, routing, svg
from .errors import TDGraphError
from .geometry import canonical_triangle
from .graph import PointSet, TDGraph, build_empty_homothet_oracle, build_sweep, perturb, validate_general_position


def _normalised(coords: np.ndarray) -> np.ndarray:
    lo = coords.min(axis=0)
    span = coords.max(axis=0) - lo
    diam = math.hypot(span[0], span[1])
    if diam <= 0.0:
        return coords.copy()
    return (coords - lo) / diam


def _build_graph(shape, coords, use_oracle: bool, perturb_args) -> TDGraph:
    if perturb_args is not None:
        seed, mag = perturb_args
        # nudge at the original scale (the magnitude is a diameter fraction,
        # so this is what ends up in the output file)
        coords = perturb(shape, PointSet(coords), int(seed), float(mag)).coords
    work = PointSet(_normalised(coords))
    report = validate_general_position(shape, work)
    if not report.valid:
        first = report.violations[0]
        raise TDGraphError(
            f"points are not in general position: pair ({first.u}, {first.v}) "
            f"is parallel to side {first.side_name} "
            f"({len(report.violations)} violation(s)); use --perturb"
        )
    g = build_sweep(shape, work)
    if use_oracle:
        g2 = build_empty_homothet_oracle(shape, work)
        if not np.array_equal(g.cone_edges, g2.cone_edges):
            raise TDGraphError("sweep and empty-homothet oracle disagree")
    # the edge set is scale- and translation-invariant, so it can be paired
    # with the unnormalised coordinates
    return TDGraph(shape, PointSet(coords, validated_for=shape), g.cone_edges)


def _cmd_build(args) -> int:
    coords, _ = fileio.load_points(args.points)
    if len(coords) == 0:
        raise TDGraphError(f"no points in {args.points}")
    shape = canonical_triangle(args.theta1, args.theta2)
    g = _build_graph(shape, coords, args.oracle, args.perturb)
    fileio.save_graph(args.out, g)
    print(f"built graph: {len(g)} vertices, {len(g.undirected_edges())} edges -> {args.out}")
    return 0


def _cmd_route(args) -> int:
    g = fileio.load_graph(args.graph)
    if args.baseline:
        trace = routing.affine_baseline_route(g, args.frm, args.to)
    else:
        trace = routing.route(g, args.frm, args.to, verify=not args.no_verify)
    sx, sy = g.points[args.frm]
    tx, ty = g.points[args.to]
    st = math.hypot(tx - sx, ty - sy)
    print(f"{'step':>4} {'vertex':>6} {'x':>12} {'y':>12} {'case':>4} "
          f"{'j':>2} {'potential':>12} {'edge':>10}")
    for k, v in enumerate(trace.vertices):
        x, y = g.points[v]
        if k < len(trace.steps):
            s = trace.steps[k]
            jtxt = "-" if s.j is None else f"{s.j:+d}"
            print(f"{k:>4} {v:>6} {x:>12.6f} {y:>12.6f} {s.case:>4} "
                  f"{jtxt:>2} {s.phi_before:>12.6f} {s.edge_length:>10.6f}")
        else:
            print(f"{k:>4} {v:>6} {x:>12.6f} {y:>12.6f}")
    ratio = trace.total_length / st if st > 0 else float("nan")
    print(f"total length {trace.total_length:.6f}  |st| {st:.6f}  ratio {ratio:.6f}")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg.render_svg(g, route_vertices=trace.vertices))
        print(f"wrote {args.svg}")
    return 0


def _cmd_span(args) -> int:
    g = fileio.load_graph(args.graph)
    rep = analysis.spanning_ratio(g)
    bound = analysis.spanning_bound(g.shape.theta[0])
    print(f"spanning ratio {rep.ratio:.10f}  witness {rep.witness}  "
          f"bound 1/sin(theta1/2) = {bound:.10f}")
    return 0


def _cmd_rratio(args) -> int:
    g = fileio.load_graph(args.graph)
    router = "baseline" if args.baseline else "optimal"
    rep = analysis.routing_ratio_measured(g, router=router)
    print(f"routing ratio ({router}) {rep.ratio:.10f}  witness {rep.witness}")
    if rep.positive_cone_ratio is not None:
        print(f"  positive-cone pairs max {rep.positive_cone_ratio:.10f}")
    if rep.negative_cone_ratio is not None:
        print(f"  negative-cone pairs max {rep.negative_cone_ratio:.10f}")
    return 0


def _cmd_ctheta(args) -> int:
    bound = analysis.c_theta(args.theta1, args.theta2)
    j, alpha = bound.argmax
    print(f"C(theta1, theta2) = {bound.value:.10f}")
    print(f"argmax j = {j}, alpha = {alpha:.10f}")
    print(f"spanning bound 1/sin(theta1/2) = {analysis.spanning_bound(args.theta1):.10f}")
    return 0


def _cmd_adversarial(args) -> int:
    shape = canonical_triangle(args.theta1, args.theta2)
    if args.kind == "span":
        pts = analysis.adversarial_spanning(shape, args.eps)
        meta = {
            "generator": "adversarial-span",
            "theta1": repr(args.theta1),
            "theta2": repr(args.theta2),
            "eps": repr(args.eps),
            "order": "a b corner1 corner2 corner3",
        }
        fileio.save_points(args.out, pts.coords, meta)
        print(f"wrote {args.out} (5 points; satellite pair (0, 1))")
        return 0
    inst = analysis.adversarial_routing(shape, args.k, args.eps, alpha=args.alpha)
    meta = {
        "generator": "adversarial-route",
        "theta1": repr(args.theta1),
        "theta2": repr(args.theta2),
        "eps": repr(args.eps),
        "k": str(args.k),
        "alpha": repr(inst.alpha),
        "j": str(inst.j),
        "source-index": str(inst.source),
        "target-index": str(inst.target),
    }
    fileio.save_points(args.out, inst.s1.coords, dict(meta, instance="G1"))
    out2 = _sibling(args.out)
    fileio.save_points(out2, inst.s2.coords, dict(meta, instance="G2"))
    print(f"wrote {args.out} (G1) and {out2} (G2); "
          f"route from {inst.source} to {inst.target}")
    return 0


def _sibling(path: str) -> str:
    if "." in path.rsplit("/", 1)[-1]:
        stem, _, ext = path.rpartition(".")
        return f"{stem}.g2.{ext}"
    return path + ".g2"


def _cmd_render(args) -> int:
    g = fileio.load_graph(args.graph)
    route_vertices = None
    if args.route:
        s, t = args.route
        route_vertices = routing.route(g, s, t).vertices
    doc = svg.render_svg(
        g,
        route_vertices=route_vertices,
        cone_vertex=args.cones,
        homothet_pair=tuple(args.homothet) if args.homothet else None,
        show_negative_cones=args.negative_cones,
    )
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(doc)
    print(f"wrote {args.svg}")
    return 0


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tdgraph",
        description="Triangle-distance Delaunay graphs: build, route, measure, render.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a graph from a points file")
    b.add_argument("--points", required=True)
    b.add_argument("--theta1", type=float, required=True)
    b.add_argument("--theta2", type=float, required=True)
    b.add_argument("--oracle", action="store_true",
                   help="also run the cubic empty-homothet oracle and assert equality")
    b.add_argument("--perturb", nargs=2, metavar=("SEED", "MAG"),
                   help="nudge the input into general position first")
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_build)

    r = sub.add_parser("route", help="route between two vertices")
    r.add_argument("--graph", required=True)
    r.add_argument("--from", dest="frm", type=int, required=True)
    r.add_argument("--to", type=int, required=True)
    r.add_argument("--baseline", action="store_true")
    r.add_argument("--no-verify", action="store_true")
    r.add_argument("--svg")
    r.set_defaults(func=_cmd_route)

    s = sub.add_parser("span", help="exact spanning ratio")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=_cmd_span)

    rr = sub.add_parser("rratio", help="measured routing ratio over all pairs")
    rr.add_argument("--graph", required=True)
    rr.add_argument("--baseline", action="store_true")
    rr.set_defaults(func=_cmd_rratio)

    ct = sub.add_parser("ctheta", help="closed-form bounds for a shape")
    ct.add_argument("--theta1", type=float, required=True)
    ct.add_argument("--theta2", type=float, required=True)
    ct.set_defaults(func=_cmd_ctheta)

    adv = sub.add_parser("adversarial", help="emit lower-bound instances")
    adv.add_argument("kind", choices=("span", "route"))
    adv.add_argument("--theta1", type=float, required=True)
    adv.add_argument("--theta2", type=float, required=True)
    adv.add_argument("--k", type=int, default=3)
    adv.add_argument("--eps", type=float, default=1e-5)
    adv.add_argument("--alpha", type=float, default=None,
                     help="override the construction angle (route only)")
    adv.add_argument("--out", required=True)
    adv.set_defaults(func=_cmd_adversarial)

    rd = sub.add_parser("render", help="render a graph to SVG")
    rd.add_argument("--graph", required=True)
    rd.add_argument("--svg", required=True)
    rd.add_argument("--route", nargs=2, type=int, metavar=("FROM", "TO"))
    rd.add_argument("--cones", type=int, metavar="V")
    rd.add_argument("--homothet", nargs=2, type=int, metavar=("I", "J"))
    rd.add_argument("--negative-cones", action="store_true")
    rd.set_defaults(func=_cmd_render)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except TDGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
