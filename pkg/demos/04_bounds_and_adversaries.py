"""Tight bounds and the instances that force them.

Three quantities meet here:

  * 1/sin(theta1/2), the spanning-ratio bound;
  * C(theta1, theta2), the optimal worst-case routing ratio;
  * the baseline expression, what the midpoint-threshold router pays when
    steered to the wrong side.

The two generators below construct point sets whose measured ratios approach
the first two bounds, and a paired-instance experiment shows the baseline
router genuinely losing to the optimal one on a lopsided shape.

Run:  python demos/04_bounds_and_adversaries.py
"""

import math
import pathlib

import tdgraph as td

out_dir = pathlib.Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

for name, (t1, t2) in [("equilateral", (math.pi / 3, math.pi / 3)),
                       ("30-36-114", (math.pi / 6, math.pi / 5)),
                       ("45-60-75", (math.pi / 4, math.pi / 3))]:
    b = td.c_theta(t1, t2)
    print(f"{name:>12}: spanning bound {td.spanning_bound(t1):.6f}   "
          f"C = {b.value:.6f} at j={b.argmax[0]}, "
          f"alpha={math.degrees(b.argmax[1]):.2f} deg")

# --- spanning: two satellites that can only connect through a corner -------
print("\nspanning lower bound instances (eps = 1e-4):")
for name, (t1, t2) in [("equilateral", (math.pi / 3, math.pi / 3)),
                       ("30-36-114", (math.pi / 6, math.pi / 5))]:
    shape = td.canonical_triangle(t1, t2)
    pts = td.adversarial_spanning(shape, 1e-4)
    g = td.build_sweep(shape, pts)
    measured = td.spanning_ratio(g)
    path = td.shortest_path_vertices(g, 0, 1)
    print(f"  {name:>12}: measured {measured.ratio:.5f} vs bound "
          f"{td.spanning_bound(t1):.5f}; satellite path {path} runs through "
          f"corner 1 (vertex 2)")

shape = td.canonical_triangle(math.pi / 3, math.pi / 3)
g = td.build_sweep(shape, td.adversarial_spanning(shape, 1e-4))
(out_dir / "adversarial_span.svg").write_text(
    td.render_svg(g, route_vertices=td.shortest_path_vertices(g, 0, 1)))
print("  rendered", out_dir / "adversarial_span.svg")

# --- routing: paired graphs with identical local views ---------------------
# the two graphs agree on everything a k-local router can see from the start,
# yet punish opposite first moves; here the baseline's midpoint rule walks
# into the trap while the optimal thresholds step around it
t1, t2 = math.pi / 6, math.pi / 5
shape = td.canonical_triangle(t1, t2)
inst = td.adversarial_routing(shape, k=3, eps=1e-5, alpha=math.pi / 3)
g1, s, t = inst.g1, inst.source, inst.target
print(f"\npaired routing instances, k=3 (alpha = 60 deg):")
print(f"  G1 target neighbours: {g1.neighbors[t]}   "
      f"G2 target neighbours: {inst.g2.neighbors[t]}")

opt = td.route(g1, s, t)
base = td.affine_baseline_route(g1, s, t)
sx, sy = g1.points[s]
tx, ty = g1.points[t]
st = math.hypot(tx - sx, ty - sy)
print(f"  optimal first step -> vertex {opt.vertices[1]} "
      f"(ratio {opt.total_length / st:.4f})")
print(f"  baseline first step -> vertex {base.vertices[1]} "
      f"(ratio {base.total_length / st:.4f}, "
      f"closed form says > {td.baseline_ratio_expression(t1, t2, inst.alpha):.4f} - eps)")

(out_dir / "adversarial_route_opt.svg").write_text(
    td.render_svg(g1, route_vertices=opt.vertices))
(out_dir / "adversarial_route_base.svg").write_text(
    td.render_svg(g1, route_vertices=base.vertices))
print("  rendered", out_dir / "adversarial_route_opt.svg",
      "and", out_dir / "adversarial_route_base.svg")
