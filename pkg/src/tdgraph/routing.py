"""Online local routing on TD graphs.

The router is 1-local and memoryless: each step is a pure function of the
current vertex p, the target t, p's incident edges, and the triangle shape.
Nothing else of the graph is consulted.  With the target in a negative cone
of p, the smallest homothet through p and t is clipped by p's cones into a
left, middle and right region; the step is chosen by one of four cases:

  i    target in a positive cone      -> follow that cone's unique edge
  ii   left and right regions empty   -> middle neighbour toward the cheaper
                                         corner detour
  iii  exactly one side region empty  -> middle neighbour toward the empty
                                         side, else the unique neighbour in
                                         the occupied side
  iv   both side regions occupied     -> a middle neighbour if any, else the
                                         side neighbour whose region touches
                                         the cheaper detour corner

Each case carries a potential: the length of a corner path from p to t over
the clipped homothet.  Every step's edge length is paid for by the drop in
potential, which certifies the routing ratio; route() can verify this at run
time and abort on any violation.

The affine baseline router differs only in the decision threshold of cases
ii and iv: it compares plain corner distances from p (the midpoint rule that
an affine transport of the equilateral algorithm produces) instead of the
full detour lengths.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    DegenerateInputError,
    GeneralPositionError,
    GraphIntegrityError,
    RouteVerificationError,
    RoutingCaseError,
)
from .geometry import (
    BARY_TOL,
    PARALLEL_TOL,
    ConeId,
    Homothet,
    Pin,
    TriangleShape,
)
from .graph import TDGraph

# Per-step verification tolerance, relative to the instance diameter.
VERIFY_TOL = 1e-9


class NearBoundaryWarning(UserWarning):
    """A region-membership decision fell within BARY_TOL of the homothet
    boundary; the outcome is tolerance-dependent rather than geometric."""


class _RT(NamedTuple):
    """Precomputed per-graph tables for the scalar routing kernel."""

    pts: list
    ce: list
    nbrs: tuple
    e12: tuple
    e13: tuple
    e23: tuple
    minv: tuple
    offs: tuple      # offs[i][j] = corner_j - corner_i of the unit shape
    slen: tuple      # slen[i][j] = |corner_j - corner_i|
    ray_next: tuple  # boundary ray of ~C_i shared with C_{i+1}
    ray_prev: tuple  # boundary ray of ~C_i shared with C_{i-1}
    diameter: float


def _tables(graph: TDGraph) -> _RT:
    if graph._rt is not None:
        return graph._rt
    sh = graph.shape
    c = sh.corners
    offs = tuple(
        tuple((c[j][0] - c[i][0], c[j][1] - c[i][1]) for j in range(3))
        for i in range(3)
    )
    slen = tuple(
        tuple(math.hypot(c[j][0] - c[i][0], c[j][1] - c[i][1]) for j in range(3))
        for i in range(3)
    )
    rt = _RT(
        pts=graph.points.as_tuples(),
        ce=[tuple(int(v) for v in row) for row in graph.cone_edges],
        nbrs=graph.neighbors,
        e12=sh.edge_dirs[0],
        e13=sh.edge_dirs[1],
        e23=sh.edge_dirs[2],
        minv=sh.minv,
        offs=offs,
        slen=slen,
        ray_next=sh.ray_to_next,
        ray_prev=sh.ray_to_prev,
        diameter=graph.points.diameter(),
    )
    graph._rt = rt
    return rt


def _classify(rt: _RT, dx: float, dy: float) -> tuple[int, int]:
    h = math.hypot(dx, dy)
    if h == 0.0:
        raise DegenerateInputError("routing query for coincident points")
    c12 = rt.e12[0] * dy - rt.e12[1] * dx
    c13 = rt.e13[0] * dy - rt.e13[1] * dx
    c23 = rt.e23[0] * dy - rt.e23[1] * dx
    tol = PARALLEL_TOL * h
    if abs(c12) < tol or abs(c13) < tol or abs(c23) < tol:
        raise GeneralPositionError("direction parallel to a cone boundary")
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


def _in_clip_closed(rt: _RT, i0: int, tx: float, ty: float, sigma: float,
                    wx: float, wy: float) -> bool:
    """Closed containment of w in the homothet of scale sigma whose corner i0
    sits at t.  Warns when the decision is within BARY_TOL of flipping."""
    m = rt.minv[i0]
    dx, dy = wx - tx, wy - ty
    a = (m[0] * dx + m[1] * dy) / sigma
    b = (m[2] * dx + m[3] * dy) / sigma
    lmin = min(1.0 - a - b, a, b)
    if -BARY_TOL <= lmin <= BARY_TOL:
        warnings.warn(
            "region membership within boundary tolerance of the clipping "
            "homothet; result is tolerance-dependent",
            NearBoundaryWarning,
            stacklevel=4,
        )
    return lmin >= -BARY_TOL


class _StepInfo(NamedTuple):
    vertex: int
    case: str
    j: int | None
    phi: float
    cone_index0: int


def _step_impl(rt: _RT, p: int, t: int, baseline: bool) -> _StepInfo:
    pts = rt.pts
    px, py = pts[p]
    tx, ty = pts[t]
    pol, i0 = _classify(rt, tx - px, ty - py)
    offs = rt.offs[i0]
    ip, im = (i0 + 1) % 3, (i0 + 2) % 3

    if pol > 0:
        # case i: p at corner i0 of the homothet, t on the opposite edge
        m = rt.minv[i0]
        dx, dy = tx - px, ty - py
        sigma = (m[0] + m[2]) * dx + (m[1] + m[3]) * dy
        cpx, cpy = px + sigma * offs[ip][0], py + sigma * offs[ip][1]
        cmx, cmy = px + sigma * offs[im][0], py + sigma * offs[im][1]
        phi = max(
            sigma * rt.slen[i0][ip] + math.hypot(tx - cpx, ty - cpy),
            sigma * rt.slen[i0][im] + math.hypot(tx - cmx, ty - cmy),
        )
        v = rt.ce[p][i0]
        if v < 0:
            raise GraphIntegrityError(
                f"vertex {p} has no edge in cone {i0 + 1} although the target lies in it"
            )
        return _StepInfo(v, "i", None, phi, i0)

    # negative cone: t sits at corner i0 of the clipping homothet
    m = rt.minv[i0]
    dx, dy = px - tx, py - ty
    sigma = (m[0] + m[2]) * dx + (m[1] + m[3]) * dy
    cpx, cpy = tx + sigma * offs[ip][0], ty + sigma * offs[ip][1]
    cmx, cmy = tx + sigma * offs[im][0], ty + sigma * offs[im][1]
    d_p_cp = math.hypot(cpx - px, cpy - py)
    d_p_cm = math.hypot(cmx - px, cmy - py)
    d_cp_t = sigma * rt.slen[i0][ip]
    d_cm_t = sigma * rt.slen[i0][im]

    ce_p = rt.ce[p]

    def occupied(cone0: int) -> bool:
        w = ce_p[cone0]
        if w < 0 or w == t:
            return False
        wx, wy = pts[w]
        return _in_clip_closed(rt, i0, tx, ty, sigma, wx, wy)

    occ_left = occupied(im)   # X_L = C_{p,i-1} clipped
    occ_right = occupied(ip)  # X_R = C_{p,i+1} clipped

    middle = []
    for w in rt.nbrs[p]:
        if w == t:
            middle.append(w)
            continue
        wx, wy = pts[w]
        wpol, wi0 = _classify(rt, wx - px, wy - py)
        if wpol < 0 and wi0 == i0 and _in_clip_closed(rt, i0, tx, ty, sigma, wx, wy):
            middle.append(w)

    def middle_toward(j: int) -> int:
        # neighbour in the middle region closest in cyclic order to C_{p,i+j}:
        # smallest unsigned angle to the shared boundary ray of that cone.
        ray = rt.ray_next[i0] if j > 0 else rt.ray_prev[i0]
        best_w, best_key = -1, None
        for w in middle:
            wx, wy = pts[w]
            ddx, ddy = wx - px, wy - py
            h = math.hypot(ddx, ddy)
            cosv = (ddx * ray[0] + ddy * ray[1]) / h
            key = (-cosv, w)  # larger cosine = smaller angle; ties by id
            if best_key is None or key < best_key:
                best_w, best_key = w, key
        return best_w

    if not occ_left and not occ_right:
        # case ii
        via_plus = d_p_cp + d_cp_t
        via_minus = d_p_cm + d_cm_t
        if baseline:
            j = 1 if d_p_cp <= d_p_cm else -1
        else:
            j = 1 if via_plus <= via_minus else -1
        phi = min(via_plus, via_minus)
        if not middle:
            raise GraphIntegrityError(
                f"no middle-region neighbour at vertex {p} in case ii"
            )
        return _StepInfo(middle_toward(j), "ii", j, phi, i0)

    if occ_left != occ_right:
        # case iii: j indexes the empty side cone C_{p,i+j}
        j = -1 if not occ_left else 1
        phi = (d_p_cp + d_cp_t) if j > 0 else (d_p_cm + d_cm_t)
        if middle:
            return _StepInfo(middle_toward(j), "iii", j, phi, i0)
        v = ce_p[ip if j < 0 else im]  # unique neighbour in the occupied region
        if v < 0:
            raise GraphIntegrityError(
                f"occupied region of vertex {p} lost its neighbour (case iii)"
            )
        return _StepInfo(v, "iii", j, phi, i0)

    # case iv: both sides occupied; detour via corner i+j, across the far
    # side, then to t.  The middle side length is common to both choices.
    mid = sigma * rt.slen[ip][im]
    detour_plus = d_p_cp + mid + d_cm_t
    detour_minus = d_p_cm + mid + d_cp_t
    phi = min(detour_plus, detour_minus)
    if baseline:
        j = 1 if d_p_cp <= d_p_cm else -1
    else:
        j = 1 if detour_plus <= detour_minus else -1
    if middle:
        return _StepInfo(middle_toward(j), "iv", j, phi, i0)
    # No middle neighbour: step into the side region that touches the detour
    # corner tau_{i+j}, which is the region of cone C_{p,i-j}.
    v = ce_p[im if j > 0 else ip]
    if v < 0:
        raise GraphIntegrityError(
            f"occupied region of vertex {p} lost its neighbour (case iv)"
        )
    return _StepInfo(v, "iv", j, phi, i0)


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """One clipped region at the current vertex: its cone, the clipping
    homothet, whether any point of the set occupies it, and (for the middle
    region) the neighbours of p inside it, the target excluded."""

    cone: ConeId
    clip: Homothet
    occupied: bool
    neighbors: tuple[int, ...] = ()


@dataclass(frozen=True)
class RegionSet:
    cone_index: int  # i with t in the negative cone ~C_{p,i}
    homothet: Homothet
    left: Region
    middle: Region
    right: Region


def _clip_homothet(rt: _RT, p: int, t: int) -> tuple[int, float, Homothet]:
    """(i0, sigma, T^{p,t}) for t in a negative cone of p."""
    pts = rt.pts
    px, py = pts[p]
    tx, ty = pts[t]
    pol, i0 = _classify(rt, tx - px, ty - py)
    if pol > 0:
        raise RoutingCaseError(
            "target lies in a positive cone of the current vertex; regions "
            "are defined only for the negative-cone cases"
        )
    m = rt.minv[i0]
    sigma = (m[0] + m[2]) * (px - tx) + (m[1] + m[3]) * (py - ty)
    offs = rt.offs[i0]
    corners = tuple((tx + sigma * offs[j][0], ty + sigma * offs[j][1]) for j in range(3))
    h = Homothet(scale=sigma, corners=corners,
                 pin=Pin(corner_point=(tx, ty), corner_index=i0 + 1, edge_point=(px, py)))
    return i0, sigma, h


def regions(graph: TDGraph, p: int, t: int) -> RegionSet:
    """The left, middle and right regions of vertex p toward target t.

    Occupancy of the side regions is decided 1-locally from p's cone edges;
    the middle region lists p's undirected neighbours inside it (t excluded).
    Raises RoutingCaseError when t lies in a positive cone of p.
    """
    rt = _tables(graph)
    i0, sigma, clip = _clip_homothet(rt, p, t)
    pts = rt.pts
    tx, ty = pts[t]
    px, py = pts[p]
    ip, im = (i0 + 1) % 3, (i0 + 2) % 3

    def side(cone0: int) -> Region:
        w = rt.ce[p][cone0]
        occ = (
            w >= 0 and w != t
            and _in_clip_closed(rt, i0, tx, ty, sigma, *pts[w])
        )
        return Region(cone=ConeId(1, cone0 + 1), clip=clip, occupied=occ)

    mids = []
    for w in rt.nbrs[p]:
        if w == t:
            continue
        wx, wy = pts[w]
        wpol, wi0 = _classify(rt, wx - px, wy - py)
        if wpol < 0 and wi0 == i0 and _in_clip_closed(rt, i0, tx, ty, sigma, wx, wy):
            mids.append(w)
    middle = Region(cone=ConeId(-1, i0 + 1), clip=clip,
                    occupied=bool(mids), neighbors=tuple(mids))
    return RegionSet(cone_index=i0 + 1, homothet=clip,
                     left=side(im), middle=middle, right=side(ip))


def route_step(graph: TDGraph, p: int, t: int) -> tuple[int, str, int | None]:
    """One step of the optimal router: (next vertex, case label, chosen j).

    The decision is a pure function of p, t, p's incident edges and the
    shape (1-local, 0-memory).
    """
    if p == t:
        raise DegenerateInputError("route_step with p == t")
    info = _step_impl(_tables(graph), p, t, baseline=False)
    return info.vertex, info.case, info.j


def potential(shape: TriangleShape, graph: TDGraph, p: int, t: int) -> float:
    """Case-dependent potential of p toward t: the corner-path length over
    the clipping homothet that upper-bounds the rest of the route.

    potential(t, t) is 0 by definition.
    """
    if shape.theta != graph.shape.theta:
        raise ValueError("shape does not match the graph's shape")
    if p == t:
        return 0.0
    return _step_impl(_tables(graph), p, t, baseline=False).phi


@dataclass(frozen=True)
class RouteStep:
    case: str
    j: int | None
    phi_before: float
    edge_length: float


@dataclass(frozen=True)
class RouteTrace:
    """A routed path: vertex sequence, per-step case/j/potential/length, and
    the total Euclidean length."""

    vertices: tuple[int, ...]
    steps: tuple[RouteStep, ...]
    total_length: float

    def case_sequence(self) -> tuple[str, ...]:
        return tuple(s.case for s in self.steps)


_NO_IV_AFTER = ("i", "ii", "iii")


def _route(graph: TDGraph, s: int, t: int, baseline: bool, verify: bool) -> RouteTrace:
    n = len(graph)
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError(f"vertex ids must be in [0, {n}), got {s}, {t}")
    if s == t:
        return RouteTrace(vertices=(s,), steps=(), total_length=0.0)
    rt = _tables(graph)
    tol = VERIFY_TOL * rt.diameter
    pts = rt.pts
    limit = n * n + 8
    vertices = [s]
    steps: list[RouteStep] = []
    total = 0.0
    pending: tuple[int, int, str, float, float] | None = None  # p, v, case, phi, el
    p = s
    while p != t:
        info = _step_impl(rt, p, t, baseline)
        v = info.vertex
        el = math.hypot(pts[v][0] - pts[p][0], pts[v][1] - pts[p][1])
        if verify:
            if pending is not None:
                pp, pv, pcase, pphi, pel = pending
                if pel + info.phi > pphi + tol:
                    raise RouteVerificationError(
                        f"potential did not pay for step {pp}->{pv} "
                        f"(case {pcase}): {pel} + {info.phi} > {pphi}"
                    )
                if pcase in _NO_IV_AFTER and info.case == "iv":
                    raise RouteVerificationError(
                        f"impossible case transition {pcase} -> iv at vertex {p}"
                    )
            pending = (p, v, info.case, info.phi, el)
        steps.append(RouteStep(info.case, info.j, info.phi, el))
        vertices.append(v)
        total += el
        p = v
        if len(vertices) > limit:
            raise RouteVerificationError(
                f"route exceeded the {limit}-step safety bound (s={s}, t={t})"
            )
    if verify and pending is not None:
        pp, pv, pcase, pphi, pel = pending
        if pel > pphi + tol:  # Phi(t, t) = 0
            raise RouteVerificationError(
                f"potential did not pay for the final step {pp}->{pv}: {pel} > {pphi}"
            )
    return RouteTrace(vertices=tuple(vertices), steps=tuple(steps), total_length=total)


def route(graph: TDGraph, s: int, t: int, verify: bool = True) -> RouteTrace:
    """Route from s to t with the optimal 1-local router.

    With verify on, every step must be paid for by the potential drop (up to
    VERIFY_TOL relative to the instance diameter) and no step may fall back
    to case iv after a case i/ii/iii step; violations raise
    RouteVerificationError.
    """
    return _route(graph, s, t, baseline=False, verify=verify)


def affine_baseline_route(graph: TDGraph, s: int, t: int) -> RouteTrace:
    """Route with the midpoint-threshold baseline (the equilateral algorithm
    transported through the affine map).  Identical to route() except for the
    j decision in cases ii and iv; the potential-decrease guarantee does not
    apply, so no verification is performed."""
    return _route(graph, s, t, baseline=True, verify=False)


def route_field(graph: TDGraph, t: int, baseline: bool = False,
                verify: bool = True):
    """Next-hop table toward a fixed target: for every vertex p != t compute
    the single step the router would take, then resolve path lengths along
    the successor chains.

    Because the router is memoryless, the per-pair route from any s is the
    chain s, next[s], next[next[s]], ...; this computes each step once and is
    what the all-pairs ratio measurement uses.  Returns (next_hop, case,
    phi, length) lists indexed by vertex, with next_hop[t] = -1, length[p]
    the full routed length from p to t.
    """
    rt = _tables(graph)
    n = len(rt.pts)
    tol = VERIFY_TOL * rt.diameter
    next_hop = [-1] * n
    case: list[str | None] = [None] * n
    phi = [0.0] * n
    elen = [0.0] * n
    pts = rt.pts
    tx, ty = pts[t]
    for p in range(n):
        if p == t:
            continue
        info = _step_impl(rt, p, t, baseline)
        next_hop[p] = info.vertex
        case[p] = info.case
        phi[p] = info.phi
        px, py = pts[p]
        vx, vy = pts[info.vertex]
        elen[p] = math.hypot(vx - px, vy - py)
    if verify:
        for p in range(n):
            if p == t:
                continue
            v = next_hop[p]
            phi_v = phi[v] if v != t else 0.0
            if elen[p] + phi_v > phi[p] + tol:
                raise RouteVerificationError(
                    f"potential did not pay for step {p}->{v} toward {t}: "
                    f"{elen[p]} + {phi_v} > {phi[p]}"
                )
            if v != t and case[p] in _NO_IV_AFTER and case[v] == "iv":
                raise RouteVerificationError(
                    f"impossible case transition {case[p]} -> iv at {p} toward {t}"
                )
    length = [math.nan] * n
    length[t] = 0.0
    for p in range(n):
        chain = []
        q = p
        while math.isnan(length[q]):
            chain.append(q)
            q = next_hop[q]
            if len(chain) > n:
                raise RouteVerificationError(
                    f"next-hop chain toward {t} does not terminate (cycle at {p})"
                )
        acc = length[q]
        for w in reversed(chain):
            acc += elen[w]
            length[w] = acc
    return next_hop, case, phi, length
