"""Cones and smallest homothets: the geometric substrate.

Fix a triangle with angles theta1 <= theta2 <= theta3.  Every point of the
plane then sees six cones (three positive, three negative) whose boundary
rays are parallel to the triangle's sides, and every point pair (u, v)
determines a unique smallest scaled translate of the triangle with both
points on its boundary.  This script walks through both constructions.

Run:  python demos/01_cones_and_homothets.py
"""

import math

import numpy as np

import tdgraph as td

# an equilateral shape first: the classical triangle-distance case
eq = td.canonical_triangle(math.pi / 3, math.pi / 3)
print("equilateral shape")
print("  angles :", [round(math.degrees(t), 1) for t in eq.theta])
print("  corners:", [(round(x, 4), round(y, 4)) for x, y in eq.corners])

# directions sorted into cones: one sample per 30-degree slice
print("\ncone of a few directions from the origin:")
for deg in range(15, 360, 30):
    q = (math.cos(math.radians(deg)), math.sin(math.radians(deg)))
    cid = td.cone_of(eq, (0.0, 0.0), q)
    sign = "+" if cid.positive else "-"
    print(f"  {deg:3d} deg -> {sign}C_{cid.index}")

# the cone relation is antisymmetric: swap the endpoints and the polarity
# flips while the index stays
p, q = (0.2, 0.1), (0.7, 0.5)
print("\ncone_of(p,q) =", tuple(td.cone_of(eq, p, q)),
      " cone_of(q,p) =", tuple(td.cone_of(eq, q, p)))

# smallest homothet through two points: one of them is pinned at a corner,
# the other sits on the opposite edge
h = td.smallest_homothet(eq, (0.0, 0.0), (0.5, 0.3))
print("\nsmallest homothet through (0,0) and (0.5,0.3):")
print("  scale  :", round(h.scale, 6))
print("  corners:", [(round(x, 5), round(y, 5)) for x, y in h.corners])
print("  pinned : corner", h.pin.corner_index, "at", h.pin.corner_point)

# the same machinery on a deliberately lopsided shape
sharp = td.canonical_triangle(math.pi / 6, math.pi / 5)
print("\nlopsided shape (30, 36, 114 degrees)")
print("  corners:", [(round(x, 4), round(y, 4)) for x, y in sharp.corners])
h2 = td.smallest_homothet(sharp, (0.0, 0.0), (0.5, 0.3))
print("  homothet scale through the same pair:", round(h2.scale, 6))

# containment tests distinguish the open interior from the closed triangle
centroid = tuple(np.mean(h.corners, axis=0))
print("\ncontainment (equilateral homothet):")
print("  centroid, open  :", td.homothet_contains(h, centroid, "open"))
print("  corner,  open   :", td.homothet_contains(h, h.corners[0], "open"))
print("  corner,  closed :", td.homothet_contains(h, h.corners[0], "closed"))
