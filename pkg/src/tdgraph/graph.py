"""Point sets, general-position validation, and TD graph construction.

Two independent builders produce the graph:

* build_sweep: for every vertex u and positive cone i, connect u to the
  vertex of the cone whose homothet through u is smallest (a pairwise scan).
* build_empty_homothet_oracle: emit the directed edge u->v exactly when the
  open interior of the smallest homothet through u and v contains no other
  point (a cubic scan).

They must produce identical directed edge sets on every validated input;
that equivalence is the central construction test of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateInputError,
    GeneralPositionError,
    GraphIntegrityError,
    NotValidatedError,
    PerturbationError,
)
from .geometry import BARY_TOL, PARALLEL_TOL, TriangleShape

# Relative tolerance on homothet scales below which two candidates in the
# same cone count as tied.  Ties are impossible in general position, so one
# aborts construction instead of breaking it silently.
SCALE_TIE_TOL = 1e-12

_SIDE_NAMES = ("corner1-corner2", "corner1-corner3", "corner2-corner3")


class PointSet:
    """An ordered planar point set; the index in the list is the vertex id.

    Coordinates are held in an immutable (n, 2) float64 array.  After a
    successful general-position validation against a shape, validated_for
    records that shape (validation is shape-dependent).
    """

    __slots__ = ("coords", "validated_for")

    def __init__(self, coords, validated_for: TriangleShape | None = None):
        arr = np.asarray(coords, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"expected an (n, 2) array of points, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DegenerateInputError("points must be finite")
        if len(arr) > 1:
            uniq = np.unique(arr, axis=0)
            if len(uniq) != len(arr):
                raise DegenerateInputError("coincident points in point set")
        arr = arr.copy()
        arr.setflags(write=False)
        self.coords = arr
        self.validated_for = validated_for

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> tuple[float, float]:
        x, y = self.coords[i]
        return (float(x), float(y))

    def as_tuples(self) -> list[tuple[float, float]]:
        return [(float(x), float(y)) for x, y in self.coords]

    def diameter(self) -> float:
        """Bounding-box diagonal (0 for a single point)."""
        if len(self.coords) < 2:
            return 0.0
        span = self.coords.max(axis=0) - self.coords.min(axis=0)
        return float(math.hypot(span[0], span[1]))

    def is_validated_for(self, shape: TriangleShape) -> bool:
        return self.validated_for is not None and self.validated_for.theta == shape.theta


@dataclass
class Violation:
    u: int
    v: int
    side: int  # 0-based index into the three side directions
    side_name: str


@dataclass
class ValidationReport:
    valid: bool
    violations: list[Violation] = field(default_factory=list)


def _pair_cross_hits(shape: TriangleShape, coords: np.ndarray) -> list[tuple[int, int, int]]:
    """All ordered pairs (u < v) whose direction is parallel (within
    PARALLEL_TOL radians) to one of the three side directions."""
    n = len(coords)
    hits = []
    dirs = np.asarray(shape.edge_dirs)  # (3, 2)
    for u in range(n - 1):
        d = coords[u + 1:] - coords[u]  # (m, 2)
        h = np.hypot(d[:, 0], d[:, 1])
        # cross(e, d) = e_x d_y - e_y d_x  for each side direction
        cr = np.abs(dirs[:, 0][None, :] * d[:, 1][:, None]
                    - dirs[:, 1][None, :] * d[:, 0][:, None])  # (m, 3)
        bad = cr < (PARALLEL_TOL * h)[:, None]
        for row, side in zip(*np.nonzero(bad)):
            hits.append((u, u + 1 + int(row), int(side)))
    return hits


def validate_general_position(shape: TriangleShape, pts: PointSet) -> ValidationReport:
    """Check that no two points lie on a line parallel to a side of the
    triangle (equivalently, to any cone boundary).

    Violations are data, not faults: they are returned in the report.  On
    success the point set is marked as validated for this shape.
    """
    hits = _pair_cross_hits(shape, pts.coords)
    if hits:
        return ValidationReport(
            valid=False,
            violations=[Violation(u, v, s, _SIDE_NAMES[s]) for u, v, s in hits],
        )
    pts.validated_for = shape
    return ValidationReport(valid=True)


def perturb(shape: TriangleShape, pts: PointSet, seed: int,
            magnitude: float, max_tries: int = 100) -> PointSet:
    """Displace every point by a deterministic pseudorandom offset of at most
    magnitude * bounding-box diameter, redrawing (same seed stream) until the
    result is in general position.

    Same inputs always give the same output.  Raises PerturbationError after
    max_tries failed draws.
    """
    if magnitude <= 0.0:
        raise ValueError(f"perturbation magnitude must be positive, got {magnitude}")
    rng = np.random.default_rng(seed)
    radius = magnitude * pts.diameter()
    n = len(pts)
    for _ in range(max_tries):
        ang = rng.uniform(0.0, 2.0 * math.pi, n)
        r = radius * rng.uniform(0.0, 1.0, n)
        cand = pts.coords + np.column_stack((r * np.cos(ang), r * np.sin(ang)))
        try:
            out = PointSet(cand)
        except DegenerateInputError:
            continue
        if validate_general_position(shape, out).valid:
            return out
    raise PerturbationError(
        f"no valid perturbation found in {max_tries} tries "
        f"(magnitude={magnitude}, diameter={pts.diameter()})"
    )


class TDGraph:
    """A triangle-distance Delaunay graph.

    cone_edges[u][i] is the vertex id of u's nearest neighbour in positive
    cone i+1 (or -1 when the cone is empty); neighbors[u] is the sorted
    undirected adjacency (out-edges plus in-edges).  Instances are immutable
    once built and safe to share across threads.
    """

    __slots__ = ("shape", "points", "cone_edges", "neighbors", "_rt")

    def __init__(self, shape: TriangleShape, points: PointSet, cone_edges: np.ndarray):
        cone_edges = np.asarray(cone_edges, dtype=np.int64)
        if cone_edges.shape != (len(points), 3):
            raise GraphIntegrityError(
                f"cone_edges must be ({len(points)}, 3), got {cone_edges.shape}"
            )
        cone_edges = cone_edges.copy()
        cone_edges.setflags(write=False)
        self.shape = shape
        self.points = points
        self.cone_edges = cone_edges
        nbr: list[set[int]] = [set() for _ in range(len(points))]
        for u, row in enumerate(cone_edges):
            for v in row:
                if v >= 0:
                    nbr[u].add(int(v))
                    nbr[int(v)].add(u)
        self.neighbors = tuple(tuple(sorted(s)) for s in nbr)
        self._rt = None  # lazy routing kernel tables

    def __len__(self) -> int:
        return len(self.points)

    def directed_edges(self) -> set[tuple[int, int, int]]:
        """All (u, cone_index, v) triples, cone_index 1-based."""
        out = set()
        for u, row in enumerate(self.cone_edges):
            for i, v in enumerate(row):
                if v >= 0:
                    out.add((u, i + 1, int(v)))
        return out

    def undirected_edges(self) -> set[frozenset]:
        return {frozenset((u, v)) for u, _, v in self.directed_edges()}

    def edge_lengths(self) -> dict[frozenset, float]:
        c = self.points.coords
        return {
            e: float(np.hypot(*(c[tuple(e)[0]] - c[tuple(e)[1]])))
            for e in self.undirected_edges()
        }

    def is_connected(self) -> bool:
        n = len(self)
        if n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == n


def _classify_all(shape: TriangleShape, d: np.ndarray):
    """Vectorised cone classification of displacement vectors d (m, 2).

    Returns (polarity, index0) int arrays.  Raises GeneralPositionError if any
    direction is parallel to a side (validated inputs never are).
    """
    e = np.asarray(shape.edge_dirs)
    c12 = e[0, 0] * d[:, 1] - e[0, 1] * d[:, 0]
    c13 = e[1, 0] * d[:, 1] - e[1, 1] * d[:, 0]
    c23 = e[2, 0] * d[:, 1] - e[2, 1] * d[:, 0]
    h = np.hypot(d[:, 0], d[:, 1])
    tol = PARALLEL_TOL * h
    if np.any((np.abs(c12) < tol) | (np.abs(c13) < tol) | (np.abs(c23) < tol)):
        raise GeneralPositionError("pair direction parallel to a cone boundary")
    pol = np.empty(len(d), dtype=np.int64)
    idx = np.empty(len(d), dtype=np.int64)
    pos12 = c12 > 0.0
    pos13 = c13 > 0.0
    pos23 = c23 > 0.0
    # sector sign table; see geometry._classify0
    m = pos12 & ~pos13
    pol[m], idx[m] = 1, 0
    m = pos12 & pos13 & ~pos23
    pol[m], idx[m] = -1, 2
    m = pos12 & pos13 & pos23
    pol[m], idx[m] = 1, 1
    m = ~pos12 & pos13
    pol[m], idx[m] = -1, 0
    m = ~pos12 & ~pos13 & pos23
    pol[m], idx[m] = 1, 2
    m = ~pos12 & ~pos13 & ~pos23
    pol[m], idx[m] = -1, 1
    return pol, idx


def _require_validated(shape: TriangleShape, pts: PointSet) -> None:
    if not pts.is_validated_for(shape):
        raise NotValidatedError(
            "point set must pass validate_general_position for this shape "
            "before graph construction"
        )


def _minv_arrays(shape: TriangleShape) -> np.ndarray:
    """(3, 2, 2) array of corner-basis inverses."""
    return np.asarray(shape.minv, dtype=np.float64).reshape(3, 2, 2)


def build_sweep(shape: TriangleShape, pts: PointSet) -> TDGraph:
    """Nearest-in-cone construction: for each vertex u and positive cone i,
    keep the vertex whose homothet through u has minimal scale.

    Quadratic pairwise scan.  A scale tie within SCALE_TIE_TOL (relative)
    aborts with GeneralPositionError rather than being broken silently.
    """
    _require_validated(shape, pts)
    coords = pts.coords
    n = len(coords)
    minv = _minv_arrays(shape)
    cone_edges = np.full((n, 3), -1, dtype=np.int64)
    ids = np.arange(n)
    for u in range(n):
        d = coords - coords[u]
        others = ids != u
        pol, idx = _classify_all(shape, d[others])
        cand_ids = ids[others]
        for i in range(3):
            sel = (pol > 0) & (idx == i)
            if not np.any(sel):
                continue
            dc = d[others][sel]
            ab = dc @ minv[i].T
            sigma = ab[:, 0] + ab[:, 1]
            order = np.argsort(sigma)
            best = order[0]
            if len(order) > 1:
                s0, s1 = sigma[best], sigma[order[1]]
                if s1 - s0 <= SCALE_TIE_TOL * s0:
                    raise GeneralPositionError(
                        f"homothet scale tie at vertex {u}, cone {i + 1}: "
                        f"{s0} vs {s1}"
                    )
            cone_edges[u, i] = cand_ids[sel][best]
    return TDGraph(shape, pts, cone_edges)


def build_empty_homothet_oracle(shape: TriangleShape, pts: PointSet) -> TDGraph:
    """Empty-region construction: directed edge u->v in cone i exactly when v
    lies in positive cone i of u and the open interior of the smallest
    homothet through u and v contains no other point of the set.

    Cubic scan; exists to cross-check build_sweep.
    """
    _require_validated(shape, pts)
    coords = pts.coords
    n = len(coords)
    minv = _minv_arrays(shape)
    cone_edges = np.full((n, 3), -1, dtype=np.int64)
    ids = np.arange(n)
    for u in range(n):
        d = coords - coords[u]
        others = ids != u
        pol, idx = _classify_all(shape, d[others])
        cand_ids = ids[others]
        for i in range(3):
            # corner-basis coefficients of every point; for w in cone i both
            # coefficients are positive and their sum is the homothet scale.
            ab = d @ minv[i].T
            a_all, b_all = ab[:, 0], ab[:, 1]
            sel = (pol > 0) & (idx == i)
            if not np.any(sel):
                continue
            sig = (a_all[others][sel] + b_all[others][sel])[:, None]
            # open-interior test at BARY_TOL on normalised barycentric coords
            inside = (
                (a_all[None, :] > BARY_TOL * sig)
                & (b_all[None, :] > BARY_TOL * sig)
                & ((a_all + b_all)[None, :] < (1.0 - BARY_TOL) * sig)
            )
            empty = ~inside.any(axis=1)
            for v in cand_ids[sel][empty]:
                if cone_edges[u, i] >= 0:
                    raise GraphIntegrityError(
                        f"oracle found two empty-homothet edges in cone {i + 1} "
                        f"of vertex {u}: {cone_edges[u, i]} and {v}"
                    )
                cone_edges[u, i] = v
    return TDGraph(shape, pts, cone_edges)
