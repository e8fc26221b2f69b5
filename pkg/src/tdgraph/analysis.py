"""Ratio measurement, closed-form bounds, and adversarial instance generators.

Measured quantities:
  * spanning ratio: max over vertex pairs of graph distance / Euclidean
    distance (exact single-source shortest paths from every vertex);
  * routing ratio: max over ordered pairs of routed length / Euclidean
    distance, for the optimal router or the affine baseline.

Closed-form bounds:
  * spanning_bound(theta1) = 1 / sin(theta1 / 2);
  * c_theta(theta1, theta2): the worst-case ratio of the optimal router,
    maximised over the corner index j and the angle alpha by dense grid plus
    golden-section refinement;
  * baseline_ratio_expression: the corresponding lower-bound expression for
    the midpoint-threshold baseline.

The two generators build the point sets that force these bounds: a five-point
set whose only short a-b connection runs through a corner (spanning), and the
paired graphs G1/G2 with identical k-neighbourhoods of the start vertex that
defeat any k-local router (routing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _dijkstra
from scipy.spatial.distance import cdist

from .errors import ConstructionError, GraphIntegrityError, ShapeError
from .geometry import TriangleShape, cone_of
from .graph import PointSet, TDGraph, build_sweep, validate_general_position
from .routing import route_field

_ADVERSARIAL_SEED = 0  # fixed stream for the spanning construction's nudge


@dataclass
class RatioReport:
    """Worst measured ratio, the pair attaining it, and optionally the full
    per-pair table.  Routing reports also carry the worst ratio split by the
    cone polarity of (source, target)."""

    ratio: float
    witness: tuple[int, int] | None
    per_pair: np.ndarray | None = None
    positive_cone_ratio: float | None = None
    negative_cone_ratio: float | None = None


@dataclass
class BoundValue:
    value: float
    argmax: tuple[int, float]  # (j, alpha)
    grid_size: int
    alpha_tol: float


def spanning_bound(theta1: float) -> float:
    """1 / sin(theta1 / 2), the tight spanning-ratio bound."""
    if not (0.0 < theta1 <= math.pi / 3 + 1e-15):
        raise ShapeError(f"theta1 must lie in (0, pi/3], got {theta1}")
    return 1.0 / math.sin(theta1 / 2.0)


def _thetas(theta1: float, theta2: float) -> tuple[float, float, float]:
    theta3 = math.pi - theta1 - theta2
    if not (0.0 < theta1 <= theta2 <= theta3):
        raise ShapeError(
            f"angles must satisfy 0 < theta1 <= theta2 <= theta3, got "
            f"({theta1}, {theta2}, {theta3})"
        )
    return theta1, theta2, theta3


def ratio_expression(theta: tuple[float, float, float], j: int, alpha):
    """The routing-ratio integrand at corner index j and angle alpha
    (vectorised over alpha).  Indices wrap modulo 3."""
    tj = theta[(j - 1) % 3]
    tjp = theta[j % 3]
    tjm = theta[(j - 2) % 3]
    a = np.asarray(alpha, dtype=np.float64)
    lead = np.sin(tj - a) / math.sin(tjp) + np.sin(a) / math.sin(tjm)
    m1 = np.sin(a) / math.sin(tjm) + np.sin(a + tjm) / math.sin(tjp)
    m2 = np.sin(tj - a) / math.sin(tjp) + np.sin(a + tjm) / math.sin(tjm)
    return lead + np.minimum(m1, m2)


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, float(f(x))


def c_theta(theta1: float, theta2: float, grid_size: int = 10001,
            alpha_tol: float = 1e-10) -> BoundValue:
    """Worst-case routing ratio of the optimal router.

    Maximises the ratio expression over j in {1, 2, 3} and alpha in
    [0, theta_j] by a dense grid followed by golden-section refinement around
    the best sample.  The refinement never returns less than the best grid
    value (the min() branch switch can make the bracket non-unimodal).
    """
    theta = _thetas(theta1, theta2)
    best_val, best_j, best_alpha, best_step = -math.inf, 0, 0.0, 0.0
    for j in (1, 2, 3):
        tj = theta[j - 1]
        grid = np.linspace(0.0, tj, grid_size)
        vals = ratio_expression(theta, j, grid)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val = float(vals[k])
            best_j, best_alpha = j, float(grid[k])
            best_step = tj / (grid_size - 1)
    lo = max(0.0, best_alpha - best_step)
    hi = min(theta[best_j - 1], best_alpha + best_step)
    x, fx = _golden_max(lambda a: float(ratio_expression(theta, best_j, a)), lo, hi, alpha_tol)
    if fx < best_val:
        x, fx = best_alpha, best_val
    return BoundValue(value=fx, argmax=(best_j, x),
                      grid_size=grid_size, alpha_tol=alpha_tol)


def baseline_ratio_expression(theta1: float, theta2: float, alpha: float) -> float:
    """Lower-bound ratio of the affine-baseline router at angle alpha when it
    is steered to the wrong side: sin(t3-a)/sin(t1) + 2 sin(a)/sin(t2)
    + sin(a+t2)/sin(t1)."""
    t1, t2, t3 = _thetas(theta1, theta2)
    if not (0.0 <= alpha <= t3 + 1e-15):
        raise ValueError(f"alpha must lie in [0, theta3={t3}], got {alpha}")
    return (
        math.sin(t3 - alpha) / math.sin(t1)
        + 2.0 * math.sin(alpha) / math.sin(t2)
        + math.sin(alpha + t2) / math.sin(t1)
    )


# ---------------------------------------------------------------------------
# measurement
# ---------------------------------------------------------------------------

def _graph_distances(graph: TDGraph) -> np.ndarray:
    coords = graph.points.coords
    n = len(coords)
    rows, cols, weights = [], [], []
    for e in graph.undirected_edges():
        u, v = tuple(e)
        w = float(np.hypot(*(coords[u] - coords[v])))
        rows += [u, v]
        cols += [v, u]
        weights += [w, w]
    m = csr_matrix((weights, (rows, cols)), shape=(n, n))
    dist = _dijkstra(m, directed=True)
    if np.any(np.isinf(dist)):
        raise GraphIntegrityError("graph is disconnected")
    return dist


def spanning_ratio(graph: TDGraph, per_pair: bool = False) -> RatioReport:
    """Exact spanning ratio: shortest paths (Euclidean weights) from every
    vertex, maximised over vertex pairs.  Raises GraphIntegrityError on a
    disconnected graph."""
    n = len(graph)
    if n < 2:
        return RatioReport(ratio=1.0, witness=None)
    dist = _graph_distances(graph)
    euclid = cdist(graph.points.coords, graph.points.coords)
    np.fill_diagonal(euclid, np.inf)  # mask the diagonal
    ratios = dist / euclid
    k = int(np.argmax(ratios))
    u, v = divmod(k, n)
    return RatioReport(
        ratio=float(ratios[u, v]),
        witness=(u, v),
        per_pair=ratios if per_pair else None,
    )


def routing_ratio_measured(graph: TDGraph, router: str = "optimal",
                           verify: bool | None = None,
                           per_pair: bool = False) -> RatioReport:
    """Measured routing ratio: max over all ordered pairs (s, t) of routed
    length / |st|.

    router is "optimal" or "baseline"; verification defaults to on for the
    optimal router (its potential guarantee is checked at every step) and is
    unavailable for the baseline.  The report carries the worst ratio split
    by whether t lies in a positive or negative cone of s.
    """
    if router not in ("optimal", "baseline"):
        raise ValueError(f"router must be 'optimal' or 'baseline', got {router!r}")
    baseline = router == "baseline"
    if verify is None:
        verify = not baseline
    if baseline and verify:
        raise ValueError("the potential verifier applies only to the optimal router")
    n = len(graph)
    if n < 2:
        return RatioReport(ratio=1.0, witness=None)
    coords = graph.points.coords
    table = np.full((n, n), np.nan) if per_pair else None
    best = (-math.inf, None)
    best_pos = -math.inf
    best_neg = -math.inf
    for t in range(n):
        _, case, _, length = route_field(graph, t, baseline=baseline, verify=verify)
        d = np.hypot(*(coords - coords[t]).T)
        for s in range(n):
            if s == t:
                continue
            r = length[s] / d[s]
            if table is not None:
                table[s, t] = r
            if r > best[0]:
                best = (r, (s, t))
            if case[s] == "i":
                best_pos = max(best_pos, r)
            else:
                best_neg = max(best_neg, r)
    return RatioReport(
        ratio=best[0],
        witness=best[1],
        per_pair=table,
        positive_cone_ratio=None if best_pos == -math.inf else best_pos,
        negative_cone_ratio=None if best_neg == -math.inf else best_neg,
    )


def shortest_path_vertices(graph: TDGraph, s: int, t: int) -> list[int]:
    """One exact shortest path from s to t (vertex ids)."""
    coords = graph.points.coords
    n = len(coords)
    rows, cols, weights = [], [], []
    for e in graph.undirected_edges():
        u, v = tuple(e)
        w = float(np.hypot(*(coords[u] - coords[v])))
        rows += [u, v]
        cols += [v, u]
        weights += [w, w]
    m = csr_matrix((weights, (rows, cols)), shape=(n, n))
    _, pred = _dijkstra(m, directed=True, indices=s, return_predecessors=True)
    path = [t]
    while path[-1] != s:
        p = int(pred[path[-1]])
        if p < 0:
            raise GraphIntegrityError(f"no path from {s} to {t}")
        path.append(p)
    return path[::-1]


# ---------------------------------------------------------------------------
# adversarial constructions
# ---------------------------------------------------------------------------

def _unit(dx: float, dy: float) -> tuple[float, float]:
    h = math.hypot(dx, dy)
    return (dx / h, dy / h)


def adversarial_spanning(shape: TriangleShape, eps: float) -> PointSet:
    """Five-point set forcing the spanning ratio toward 1/sin(theta1/2).

    Two satellites sit just outside the triangle, each at arclength
    min(side)/2 from corner 1 along the two incident sides, offset outward by
    eps * min(side); the whole set is then nudged into general position.  The
    shortest satellite-satellite connection is forced through corner 1.

    Point order: [a, b, corner1, corner2, corner3].  The required edge
    structure is certified after construction; failure raises
    ConstructionError.
    """
    if not (0.0 < eps < 0.1):
        raise ValueError(f"eps must lie in (0, 0.1), got {eps}")
    from .graph import perturb  # local import to avoid a cycle in docs builds

    c1, c2, c3 = shape.corners
    m = min(shape.side_length(1, 2), shape.side_length(1, 3))
    u12 = _unit(c2[0] - c1[0], c2[1] - c1[1])
    u13 = _unit(c3[0] - c1[0], c3[1] - c1[1])
    out12 = (0.0, -1.0)  # interior lies above the bottom side
    out13 = (-u13[1], u13[0])  # corner 2 sits clockwise of the 1->3 ray
    a = (c1[0] + 0.5 * m * u12[0] + eps * m * out12[0],
         c1[1] + 0.5 * m * u12[1] + eps * m * out12[1])
    b = (c1[0] + 0.5 * m * u13[0] + eps * m * out13[0],
         c1[1] + 0.5 * m * u13[1] + eps * m * out13[1])
    raw = np.asarray([a, b, c1, c2, c3], dtype=np.float64)
    # The three corner pairs look at each other along exact cone boundaries
    # and tie in homothet scale; a random nudge resolves those degeneracies
    # in the required pattern only by chance.  A tiny rigid rotation (which
    # preserves every distance, hence the ratio) lands each corner pair just
    # inside the cyclic pattern corner1->corner2, corner2->corner3,
    # corner3->corner1 before the random nudge is applied.
    delta = eps * 1e-2
    centre = raw.mean(axis=0)
    rot = np.asarray([[math.cos(delta), -math.sin(delta)],
                      [math.sin(delta), math.cos(delta)]])
    raw = centre + (raw - centre) @ rot.T
    pts = perturb(shape, PointSet(raw), _ADVERSARIAL_SEED, eps * 1e-3)
    g = build_sweep(shape, pts)
    edges = g.undirected_edges()
    required = [
        frozenset((2, 3)), frozenset((3, 4)), frozenset((2, 4)),
        frozenset((2, 0)), frozenset((3, 0)), frozenset((2, 1)), frozenset((4, 1)),
    ]
    missing = [tuple(sorted(e)) for e in required if e not in edges]
    if missing:
        raise ConstructionError(
            f"spanning construction lost required edges {missing}"
        )
    if frozenset((0, 1)) in edges:
        raise ConstructionError(
            "spanning construction produced the forbidden satellite edge"
        )
    return pts


@dataclass
class AdversarialRouting:
    """The paired lower-bound instances: point sets s1/s2 (s2 = s1 plus one
    extra vertex), the start and target vertex ids shared by both, their
    built graphs, and the (j, alpha) the construction was aimed at."""

    s1: PointSet
    s2: PointSet
    source: int
    target: int
    g1: TDGraph
    g2: TDGraph
    alpha: float
    j: int


def _k_neighbourhood(graph: TDGraph, s: int, k: int) -> frozenset:
    seen = {s}
    frontier = [s]
    for _ in range(k):
        nxt = []
        for u in frontier:
            for v in graph.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return frozenset(seen)


def adversarial_routing(shape: TriangleShape, k: int, eps: float,
                        alpha: float | None = None,
                        j: int | None = None) -> AdversarialRouting:
    """Build the paired instances that defeat every k-local router.

    Roles: with j the maximising corner index of c_theta (overridable), the
    start vertex s sits on the side opposite corner j so that the angle at
    corner j between the side toward corner j-1 and the segment to s equals
    alpha (default: the c_theta argmax).  A chain of satellites then spirals
    toward corner j by repeated scaling with ratio 1 - 2*eps:

      p1   just inside corner j-1 (offset eps * |side| along the bisector),
      q1   just inside corner j+1, placed so its corner-j homothet scale is
           (1 - eps) times p1's (which also fixes its height),
      p_{i+1}, q_{i+1}   the scaled copies of p_i, q_i toward corner j.

    S1 holds s, p_1..p_k, q_1..q_k and corner j; S2 additionally holds
    p_{k+1}.  Point order: [s, p_1..p_k, q_1..q_k, corner_j(, p_{k+1})], so
    source = 0 and target = 2k + 1 in both sets.

    Every stated cone membership, the edge lists of both graphs, the target's
    single neighbour (q_k in G1, p_{k+1} in G2) and the equality of the
    k-neighbourhoods of s are certified; any failure raises
    ConstructionError.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not (0.0 < eps <= 0.01):
        raise ValueError(f"eps must lie in (0, 0.01], got {eps}")
    if j is None or alpha is None:
        bound = c_theta(shape.theta[0], shape.theta[1])
        if j is None:
            j = bound.argmax[0]
        if alpha is None:
            alpha = bound.argmax[1]
    if not (1 <= j <= 3):
        raise ValueError(f"j must be 1, 2 or 3, got {j}")

    jt0 = j - 1
    ja0, jb0 = (jt0 + 1) % 3, (jt0 + 2) % 3
    A = shape.corners[ja0]  # plays corner j+1 (q side)
    B = shape.corners[jb0]  # plays corner j-1 (p side)
    T = shape.corners[jt0]  # the target corner

    # s on segment AB at angle alpha at T, measured from the side T->B.
    db = (B[0] - T[0], B[1] - T[1])
    da = (A[0] - T[0], A[1] - T[1])
    sgn = 1.0 if (db[0] * da[1] - db[1] * da[0]) > 0.0 else -1.0
    ca, sa = math.cos(sgn * alpha), math.sin(sgn * alpha)
    ray = (db[0] * ca - db[1] * sa, db[0] * sa + db[1] * ca)
    ab = (B[0] - A[0], B[1] - A[1])
    det = ray[0] * (-ab[1]) - ray[1] * (-ab[0])
    if abs(det) < 1e-15:
        raise ConstructionError("degenerate alpha: ray parallel to the base side")
    rhs = (A[0] - T[0], A[1] - T[1])
    u_ray = (rhs[0] * (-ab[1]) - rhs[1] * (-ab[0])) / det
    s_pt = (T[0] + u_ray * ray[0], T[1] + u_ray * ray[1])
    ell = math.hypot(*ab)
    along = ((s_pt[0] - A[0]) * ab[0] + (s_pt[1] - A[1]) * ab[1]) / (ell * ell)
    if not (10.0 * eps < along < 1.0 - 10.0 * eps):
        raise ConstructionError(
            f"alpha={alpha} puts the start vertex too close to a corner "
            f"(relative position {along:.3g} on the base side)"
        )

    abu = _unit(*ab)

    def height(x: tuple[float, float]) -> float:
        # signed height over the base line, positive toward the target corner
        return abu[0] * (x[1] - A[1]) - abu[1] * (x[0] - A[0])

    big_h = height(T)
    # p1 on the inward bisector at B
    wb = _unit(_unit(A[0] - B[0], A[1] - B[1])[0] + _unit(T[0] - B[0], T[1] - B[1])[0],
               _unit(A[0] - B[0], A[1] - B[1])[1] + _unit(T[0] - B[0], T[1] - B[1])[1])
    p1 = (B[0] + eps * ell * wb[0], B[1] + eps * ell * wb[1])
    hp = height(p1)
    # q1 on the inward bisector at A; the scale condition sigma_q =
    # (1 - eps) sigma_p is equivalent to the height condition below, because
    # the corner-j homothet scale of an interior point x is 1 - height(x)/H.
    wa = _unit(_unit(B[0] - A[0], B[1] - A[1])[0] + _unit(T[0] - A[0], T[1] - A[1])[0],
               _unit(B[0] - A[0], B[1] - A[1])[1] + _unit(T[0] - A[0], T[1] - A[1])[1])
    hq = hp + eps * (big_h - hp)
    step = height((A[0] + wa[0], A[1] + wa[1]))
    q1 = (A[0] + (hq / step) * wa[0], A[1] + (hq / step) * wa[1])

    rho = 1.0 - 2.0 * eps

    def toward_target(x: tuple[float, float], r: float) -> tuple[float, float]:
        return (T[0] + r * (x[0] - T[0]), T[1] + r * (x[1] - T[1]))

    ps = [p1] + [toward_target(p1, rho ** i) for i in range(1, k + 1)]  # p1..p_{k+1}
    qs = [q1] + [toward_target(q1, rho ** i) for i in range(1, k)]      # q1..q_k
    pts1 = [s_pt] + ps[:k] + qs + [T]
    pts2 = pts1 + [ps[k]]

    ja, jb = ja0 + 1, jb0 + 1  # 1-based cone indices for the checks
    memberships = [
        ("p1 in the start vertex's corner-(j+1) cone", s_pt, p1, 1, ja),
        ("p1 in corner (j-1)'s own cone", B, p1, 1, jb),
        ("q1 in the start vertex's corner-(j-1) cone", s_pt, q1, 1, jb),
        ("q1 in p1's corner-(j-1) cone", p1, q1, 1, jb),
        ("q1 in corner (j+1)'s own cone", A, q1, 1, ja),
        ("p2 in q1's corner-(j+1) cone", q1, ps[1], 1, ja),
    ]
    for label, frm, to, pol, idx in memberships:
        got = cone_of(shape, frm, to)
        if (got.polarity, got.index) != (pol, idx):
            raise ConstructionError(f"{label} failed: got cone {got}")

    s1 = PointSet(pts1)
    s2 = PointSet(pts2)
    if not validate_general_position(shape, s1).valid:
        raise ConstructionError("instance S1 violates general position")
    if not validate_general_position(shape, s2).valid:
        raise ConstructionError("instance S2 violates general position")
    g1 = build_sweep(shape, s1)
    g2 = build_sweep(shape, s2)

    target = 2 * k + 1
    extra = 2 * k + 2  # p_{k+1} in S2
    required = {frozenset((0, 1)), frozenset((0, k + 1)), frozenset((1, k + 1))}
    for i in range(2, k + 1):
        required |= {
            frozenset((i - 1, i)),            # p_{i-1} p_i
            frozenset((k + i - 1, k + i)),    # q_{i-1} q_i
            frozenset((k + i - 1, i)),        # q_{i-1} p_i
            frozenset((i, k + i)),            # p_i q_i
        }
    e1 = g1.undirected_edges()
    e2 = g2.undirected_edges()
    problems = []
    if not (required | {frozenset((2 * k, target))}) <= e1:
        problems.append("G1 misses required edges")
    if not (required | {frozenset((k, extra)), frozenset((2 * k, extra)),
                        frozenset((extra, target))}) <= e2:
        problems.append("G2 misses required edges")
    if g1.neighbors[target] != (2 * k,):
        problems.append(f"target neighbours in G1 are {g1.neighbors[target]}, want (q_k,)")
    if g2.neighbors[target] != (extra,):
        problems.append(f"target neighbours in G2 are {g2.neighbors[target]}, want (p_k+1,)")
    if frozenset((k, target)) in e1:
        problems.append("G1 contains the forbidden edge p_k-target")
    if frozenset((2 * k, target)) in e2:
        problems.append("G2 contains the forbidden edge q_k-target")
    hood = frozenset(range(2 * k + 1))
    if _k_neighbourhood(g1, 0, k) != hood or _k_neighbourhood(g2, 0, k) != hood:
        problems.append("k-neighbourhoods of the start vertex differ from the plan")
    if problems:
        raise ConstructionError("; ".join(problems))

    return AdversarialRouting(s1=s1, s2=s2, source=0, target=target,
                              g1=g1, g2=g2, alpha=alpha, j=j)
