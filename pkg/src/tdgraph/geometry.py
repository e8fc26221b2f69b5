"""Canonical triangle placement, cone classification, smallest homothets.

The fixed triangle has angles theta1 <= theta2 <= theta3 summing to pi and is
placed with corner 1 at the origin, corner 2 at (1, 0) and corner 3 in the
upper half-plane.  Every point of the plane then carries six cones: three
positive cones C_{p,i} (p sits at corner i of the smallest scaled translate
through p and a point of the cone) and three negative cones, their point
reflections.  Around any apex the sectors appear in the fixed cyclic order

    C_1, ~C_3, C_2, ~C_1, C_3, ~C_2        (counterclockwise from corner-1's
                                             first edge direction)

and cone membership reduces to the signs of three cross products against the
side directions of the triangle.

All functions here are pure and operate on plain floats; they are the hot
path of graph construction and routing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import DegenerateInputError, GeneralPositionError, ShapeError

# Angular tolerance below which a query direction is considered parallel to a
# cone boundary.  The general-position assumption excludes such directions, so
# hitting one is an error, never a silent choice.
PARALLEL_TOL = 1e-12

# Tolerance on (normalised) barycentric coordinates for closed / open
# containment tests.  Point sets are normalised to unit diameter by the CLI,
# and barycentric coordinates are scale-free, so an absolute value is safe.
BARY_TOL = 1e-9


class ConeId(NamedTuple):
    """A cone of some apex point: polarity (+1 positive, -1 negative) and
    corner index in {1, 2, 3}.  Index arithmetic is modulo 3 (4 == 1)."""

    polarity: int
    index: int

    @property
    def positive(self) -> bool:
        return self.polarity > 0

    def opposite(self) -> "ConeId":
        return ConeId(-self.polarity, self.index)


def wrap_index(i: int) -> int:
    """Map any integer corner index onto {1, 2, 3} (modulo-3 arithmetic)."""
    return (i - 1) % 3 + 1


@dataclass(frozen=True)
class TriangleShape:
    """The fixed triangle: angles, canonical corner placement and per-corner
    cone boundary rays, plus precomputed tables used by the fast kernels.

    Do not construct directly; use :func:`canonical_triangle`.
    """

    theta: tuple[float, float, float]
    corners: tuple[tuple[float, float], ...]
    cone_rays: tuple[tuple[tuple[float, float], tuple[float, float]], ...]

    # Derived tables (0-based corner order, excluded from eq/repr).
    # edge_dirs: unit directions of sides 1->2, 1->3, 2->3.
    edge_dirs: tuple[tuple[float, float], ...] = field(repr=False, compare=False, default=())
    # minv[i]: row-major 2x2 inverse of the corner basis at corner i, mapping a
    # displacement d to coefficients (a, b) with d = a*(c[i+1]-c[i]) + b*(c[i-1]-c[i]).
    minv: tuple[tuple[float, float, float, float], ...] = field(repr=False, compare=False, default=())
    # boundary rays of the negative cone ~C_i shared with C_{i+1} / C_{i-1}.
    ray_to_next: tuple[tuple[float, float], ...] = field(repr=False, compare=False, default=())
    ray_to_prev: tuple[tuple[float, float], ...] = field(repr=False, compare=False, default=())
    # side_len[i]: length of the side opposite corner i (0-based).
    side_len: tuple[float, float, float] = field(repr=False, compare=False, default=(0.0, 0.0, 0.0))

    def corner(self, i: int) -> tuple[float, float]:
        """Corner by 1-based index with modulo-3 wrapping."""
        return self.corners[wrap_index(i) - 1]

    def side_length(self, i: int, j: int) -> float:
        """Length of the side between corners i and j (1-based)."""
        a, b = self.corner(i), self.corner(j)
        return math.hypot(b[0] - a[0], b[1] - a[1])


def _unit(dx: float, dy: float) -> tuple[float, float]:
    h = math.hypot(dx, dy)
    return (dx / h, dy / h)


def canonical_triangle(theta1: float, theta2: float) -> TriangleShape:
    """Build the canonical triangle with angles (theta1, theta2, pi-t1-t2).

    Corner 1 sits at the origin, corner 2 at (1, 0); corner 3 is the
    intersection of the ray from corner 1 at angle theta1 with the ray from
    corner 2 at angle pi - theta2, which by the law of sines lies at distance
    sin(theta2)/sin(theta3) from the origin.

    Raises ShapeError naming the violated inequality for bad angles.
    """
    if not (theta1 > 0.0):
        raise ShapeError(f"angle ordering violated: need 0 < theta1, got theta1={theta1}")
    if not (theta1 <= theta2):
        raise ShapeError(
            f"angle ordering violated: need theta1 <= theta2, got {theta1} > {theta2}"
        )
    theta3 = math.pi - theta1 - theta2
    if not (theta3 > 0.0):
        raise ShapeError(
            f"angle sum violated: need theta1 + theta2 < pi, got {theta1 + theta2}"
        )
    if not (theta2 <= theta3 + 1e-15):
        raise ShapeError(
            f"angle ordering violated: need theta2 <= theta3, got {theta2} > {theta3}"
        )

    r = math.sin(theta2) / math.sin(theta3)
    corners = (
        (0.0, 0.0),
        (1.0, 0.0),
        (r * math.cos(theta1), r * math.sin(theta1)),
    )

    def cdiff(i: int, j: int) -> tuple[float, float]:
        return (corners[j][0] - corners[i][0], corners[j][1] - corners[i][1])

    cone_rays = tuple(
        (_unit(*cdiff(i, (i + 1) % 3)), _unit(*cdiff(i, (i - 1) % 3)))
        for i in range(3)
    )
    edge_dirs = (_unit(*cdiff(0, 1)), _unit(*cdiff(0, 2)), _unit(*cdiff(1, 2)))

    minv = []
    for i in range(3):
        ux, uy = cdiff(i, (i + 1) % 3)
        vx, vy = cdiff(i, (i - 1) % 3)
        det = ux * vy - uy * vx
        minv.append((vy / det, -vx / det, -uy / det, ux / det))

    ray_to_next = tuple(_unit(*cdiff((i + 1) % 3, i)) for i in range(3))
    ray_to_prev = tuple(_unit(*cdiff((i - 1) % 3, i)) for i in range(3))
    side_len = tuple(
        math.hypot(*cdiff((i + 1) % 3, (i - 1) % 3)) for i in range(3)
    )

    return TriangleShape(
        theta=(theta1, theta2, theta3),
        corners=corners,
        cone_rays=cone_rays,
        edge_dirs=edge_dirs,
        minv=tuple(minv),
        ray_to_next=ray_to_next,
        ray_to_prev=ray_to_prev,
        side_len=side_len,  # type: ignore[arg-type]
    )


def _classify0(shape: TriangleShape, dx: float, dy: float) -> tuple[int, int]:
    """Cone of the direction (dx, dy): (polarity, 0-based corner index).

    Sign pattern of the three cross products against the side directions
    1->2, 1->3, 2->3 identifies the sector; a near-zero cross product means
    the direction is parallel to a cone boundary and is rejected.
    """
    h = math.hypot(dx, dy)
    if h == 0.0:
        raise DegenerateInputError("cone query for coincident points")
    e = shape.edge_dirs
    c12 = e[0][0] * dy - e[0][1] * dx
    c13 = e[1][0] * dy - e[1][1] * dx
    c23 = e[2][0] * dy - e[2][1] * dx
    tol = PARALLEL_TOL * h
    if abs(c12) < tol or abs(c13) < tol or abs(c23) < tol:
        raise GeneralPositionError(
            "direction parallel to a cone boundary (general position violated)"
        )
    if c12 > 0.0:
        if c13 < 0.0:
            return 1, 0
        if c23 < 0.0:
            return -1, 2
        return 1, 1
    if c13 > 0.0:
        return -1, 0
    if c23 > 0.0:
        return 1, 2
    return -1, 1


def cone_of(shape: TriangleShape, p: tuple[float, float], q: tuple[float, float]) -> ConeId:
    """The unique cone of p that contains q.

    cone_of(q, p) has the same index and opposite polarity.  Directions on a
    cone boundary (within PARALLEL_TOL radians) raise GeneralPositionError;
    p == q raises DegenerateInputError.
    """
    pol, i0 = _classify0(shape, q[0] - p[0], q[1] - p[1])
    return ConeId(pol, i0 + 1)


class Pin(NamedTuple):
    """Which defining point of a homothet sits at a corner, and which lies on
    the opposite edge."""

    corner_point: tuple[float, float]
    corner_index: int  # 1-based
    edge_point: tuple[float, float]


@dataclass(frozen=True)
class Homothet:
    """A scaled translate of the fixed triangle: scale, corner coordinates
    (images of the canonical corners, same order), and pin information for
    the two defining points."""

    scale: float
    corners: tuple[tuple[float, float], ...]
    pin: Pin

    def corner(self, i: int) -> tuple[float, float]:
        return self.corners[wrap_index(i) - 1]


def smallest_homothet(shape: TriangleShape, u: tuple[float, float],
                      v: tuple[float, float]) -> Homothet:
    """Smallest scaled translate of the triangle with u and v on its boundary.

    If v lies in positive cone i of u, u is pinned at corner i and v on the
    opposite edge; solving v - u = a*(c[i+1]-c[i]) + b*(c[i-1]-c[i]) gives the
    scale a + b.  For v in a negative cone the roles swap, which makes the
    result symmetric in (u, v).
    """
    pol, i0 = _classify0(shape, v[0] - u[0], v[1] - u[1])
    if pol < 0:
        u, v = v, u
    m = shape.minv[i0]
    dx, dy = v[0] - u[0], v[1] - u[1]
    a = m[0] * dx + m[1] * dy
    b = m[2] * dx + m[3] * dy
    # Classification guarantees a, b >= 0 up to roundoff.
    if a < 0.0:
        a = 0.0
    if b < 0.0:
        b = 0.0
    sigma = a + b
    ci = shape.corners[i0]
    corners = tuple(
        (u[0] + sigma * (shape.corners[j][0] - ci[0]),
         u[1] + sigma * (shape.corners[j][1] - ci[1]))
        for j in range(3)
    )
    return Homothet(scale=sigma, corners=corners,
                    pin=Pin(corner_point=u, corner_index=i0 + 1, edge_point=v))


def barycentric(h: Homothet, q: tuple[float, float]) -> tuple[float, float, float]:
    """Normalised barycentric coordinates of q with respect to h's corners."""
    (x1, y1), (x2, y2), (x3, y3) = h.corners
    det = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)
    dx, dy = q[0] - x1, q[1] - y1
    l2 = (dx * (y3 - y1) - dy * (x3 - x1)) / det
    l3 = (dy * (x2 - x1) - dx * (y2 - y1)) / det
    return (1.0 - l2 - l3, l2, l3)


def homothet_contains(h: Homothet, q: tuple[float, float], mode: str = "closed") -> bool:
    """Point-in-homothet test.

    mode "open": strict interior (all barycentric coordinates > BARY_TOL);
    mode "closed": interior plus boundary within BARY_TOL.
    """
    lmin = min(barycentric(h, q))
    if mode == "open":
        return lmin > BARY_TOL
    if mode == "closed":
        return lmin >= -BARY_TOL
    raise ValueError(f"mode must be 'open' or 'closed', got {mode!r}")
