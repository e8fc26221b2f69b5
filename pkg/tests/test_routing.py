import math
import warnings

import numpy as np
import pytest

import tdgraph as td

from conftest import make_graph, make_points

EQ = (math.pi / 3, math.pi / 3)
SHARP = (math.pi / 6, math.pi / 5)


def _dist(a, b):
    return math.hypot(b[0] - a[0], b[1] - a[1])


def _two_vertex_graph():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0.0, 0.001), (0.3, 1.0)])  # target in ~C_{p,3}
    td.validate_general_position(sh, pts)
    return td.build_sweep(sh, pts)


def test_regions_two_vertex_graph():
    g = _two_vertex_graph()
    assert tuple(td.cone_of(g.shape, g.points[0], g.points[1])) == (-1, 3)
    rs = td.regions(g, 0, 1)
    assert rs.cone_index == 3
    assert not rs.left.occupied and not rs.right.occupied
    assert rs.middle.neighbors == ()  # the target itself is excluded
    assert not rs.middle.occupied
    assert rs.homothet.pin.corner_index == 3


def test_regions_wrong_case_error():
    g = _two_vertex_graph()
    # from the other endpoint the partner lies in a positive cone
    with pytest.raises(td.RoutingCaseError):
        td.regions(g, 1, 0)


def test_regions_occupancy_matches_brute_force(shapes):
    for name, shape in shapes.items():
        g = make_graph(shape, 30, 17)
        tup = g.points.as_tuples()
        n = len(g)
        checked = 0
        for p in range(n):
            for t in range(n):
                if p == t:
                    continue
                cid = td.cone_of(shape, tup[p], tup[t])
                if cid.positive:
                    continue
                rs = td.regions(g, p, t)
                i = rs.cone_index
                h = rs.homothet
                brute = {1: False, -1: False}
                brute_mid = []
                for w in range(n):
                    if w in (p, t):
                        continue
                    wc = td.cone_of(shape, tup[p], tup[w])
                    if not td.homothet_contains(h, tup[w], "closed"):
                        continue
                    if wc == td.ConeId(1, td.wrap_index(i + 1)):
                        brute[1] = True
                    elif wc == td.ConeId(1, td.wrap_index(i - 1)):
                        brute[-1] = True
                    elif wc == td.ConeId(-1, i) and w in g.neighbors[p]:
                        brute_mid.append(w)
                assert rs.right.occupied == brute[1], (name, p, t)
                assert rs.left.occupied == brute[-1], (name, p, t)
                assert rs.middle.neighbors == tuple(brute_mid), (name, p, t)
                checked += 1
        assert checked > 100


def test_route_step_forced_case_i():
    g = _two_vertex_graph()
    v, case, j = td.route_step(g, 1, 0)  # 0 lies in a positive cone of 1
    assert (v, case, j) == (0, "i", None)


def test_route_step_rejects_identical_endpoints():
    g = _two_vertex_graph()
    with pytest.raises(td.DegenerateInputError):
        td.route_step(g, 0, 0)


def test_route_trivial_and_two_vertex():
    g = _two_vertex_graph()
    tr = td.route(g, 0, 0)
    assert tr.vertices == (0,) and tr.total_length == 0.0 and tr.steps == ()
    tr = td.route(g, 0, 1)
    assert tr.vertices == (0, 1)
    assert math.isclose(tr.total_length / _dist(g.points[0], g.points[1]), 1.0)


def test_route_all_pairs_verified_and_bounded(shapes):
    for name, shape in shapes.items():
        cbound = td.c_theta(shape.theta[0], shape.theta[1]).value
        sbound = td.spanning_bound(shape.theta[0])
        for seed in (0, 1):
            g = make_graph(shape, 25, 50 + seed)
            tup = g.points.as_tuples()
            for s in range(len(g)):
                for t in range(len(g)):
                    if s == t:
                        continue
                    tr = td.route(g, s, t, verify=True)
                    ratio = tr.total_length / _dist(tup[s], tup[t])
                    if td.cone_of(shape, tup[s], tup[t]).positive:
                        assert ratio <= sbound + 1e-6
                    else:
                        assert ratio <= cbound + 1e-6


def test_route_trace_potential_strictly_decreases():
    shape = td.canonical_triangle(*SHARP)
    g = make_graph(shape, 40, 9)
    tol = 1e-9 * g.points.diameter()
    tup = g.points.as_tuples()
    for s, t in [(0, 39), (5, 17), (23, 2), (31, 11)]:
        tr = td.route(g, s, t)
        phis = [st.phi_before for st in tr.steps] + [0.0]
        for k, st in enumerate(tr.steps):
            assert phis[k] - phis[k + 1] >= st.edge_length - tol
        assert all(a > b for a, b in zip(phis, phis[1:])) or len(phis) <= 1


def test_case_machine_transitions(shapes):
    allowed = {
        "i": {"i", "ii", "iii"},
        "ii": {"ii", "iii"},
        "iii": {"ii", "iii"},
        "iv": {"ii", "iii", "iv"},
    }
    seen = set()
    for shape in shapes.values():
        g = make_graph(shape, 35, 123)
        for s in range(len(g)):
            for t in range(len(g)):
                if s == t:
                    continue
                cases = td.route(g, s, t).case_sequence()
                for a, b in zip(cases, cases[1:]):
                    assert b in allowed[a], f"{a} -> {b}"
                    seen.add((a, b))
    assert ("i", "i") in seen and ("ii", "ii") in seen  # the suite exercised real chains


def test_case_ii_iii_step_leaves_target_side_region_empty(shapes):
    # after a case ii/iii step to v with corner index i+j, the region
    # C_{v,i+j} clipped by the homothet toward t contains no point of S
    for shape in shapes.values():
        g = make_graph(shape, 30, 321)
        tup = g.points.as_tuples()
        n = len(g)
        checked = 0
        for s in range(n):
            for t in range(n):
                if s == t:
                    continue
                tr = td.route(g, s, t)
                for k, st in enumerate(tr.steps):
                    if st.case not in ("ii", "iii"):
                        continue
                    p, v = tr.vertices[k], tr.vertices[k + 1]
                    if v == t:
                        continue
                    i = td.cone_of(shape, tup[p], tup[t]).index
                    side = td.ConeId(1, td.wrap_index(i + st.j))
                    hv = td.smallest_homothet(shape, tup[v], tup[t])
                    for w in range(n):
                        if w in (v, t):
                            continue
                        if not td.homothet_contains(hv, tup[w], "closed"):
                            continue
                        assert td.cone_of(shape, tup[v], tup[w]) != side
                    checked += 1
        assert checked > 50


def test_potential_zero_at_target_and_shape_check():
    g = _two_vertex_graph()
    assert td.potential(g.shape, g, 1, 1) == 0.0
    assert td.potential(g.shape, g, 0, 1) > 0.0
    other = td.canonical_triangle(*SHARP)
    with pytest.raises(ValueError):
        td.potential(other, g, 0, 1)


def test_positive_cone_potential_is_angle_monotone_bounded(shapes):
    # the case-i corner path has width pi - theta, so its length is at most
    # |pt| / sin(theta1 / 2)
    for shape in shapes.values():
        bound = td.spanning_bound(shape.theta[0])
        g = make_graph(shape, 30, 8)
        tup = g.points.as_tuples()
        hits = 0
        for p in range(len(g)):
            for t in range(len(g)):
                if p == t:
                    continue
                if not td.cone_of(shape, tup[p], tup[t]).positive:
                    continue
                phi = td.potential(g.shape, g, p, t)
                assert phi <= bound * _dist(tup[p], tup[t]) + 1e-9
                hits += 1
        assert hits > 100


def test_zero_memory_suffix_property():
    shape = td.canonical_triangle(*SHARP)
    g = make_graph(shape, 35, 31)
    for s, t in [(0, 20), (7, 33), (14, 3)]:
        tr = td.route(g, s, t)
        for k, v in enumerate(tr.vertices):
            suffix = td.route(g, v, t)
            assert suffix.vertices == tr.vertices[k:]


def test_route_field_matches_direct_routes():
    shape = td.canonical_triangle(math.pi / 4, math.pi / 3)
    g = make_graph(shape, 30, 12)
    tup = g.points.as_tuples()
    for t in (0, 11, 29):
        next_hop, case, phi, length = td.route_field(g, t)
        for s in range(len(g)):
            if s == t:
                continue
            tr = td.route(g, s, t)
            assert tr.vertices[1] == next_hop[s]
            assert math.isclose(tr.total_length, length[s], rel_tol=1e-12, abs_tol=1e-12)
            assert tr.steps[0].case == case[s]
            assert math.isclose(tr.steps[0].phi_before, phi[s], rel_tol=1e-12)


def test_baseline_equals_optimal_on_equilateral():
    shape = td.canonical_triangle(*EQ)
    for seed in range(5):
        g = make_graph(shape, 22, 200 + seed)
        for s in range(len(g)):
            for t in range(len(g)):
                if s == t:
                    continue
                a = td.route(g, s, t)
                b = td.affine_baseline_route(g, s, t)
                assert a.vertices == b.vertices


def test_adversarial_instance_separates_the_routers():
    shape = td.canonical_triangle(*SHARP)
    inst = td.adversarial_routing(shape, k=3, eps=1e-5, alpha=math.pi / 3)
    g, s, t = inst.g1, inst.source, inst.target
    # |s corner2| < |s corner1| makes the midpoint rule go right, to p1
    sp = g.points[s]
    c1, c2 = shape.corners[0], shape.corners[1]
    assert _dist(sp, c2) < _dist(sp, c1)
    base = td.affine_baseline_route(g, s, t)
    opt = td.route(g, s, t)
    assert base.vertices[1] == 1       # p1
    assert opt.vertices[1] == 4        # q1 (= k + 1)
    st = _dist(g.points[s], g.points[t])
    assert base.total_length / st > 6.55 - 1e-3
    assert opt.total_length / st < base.total_length / st
    assert opt.total_length / st <= td.c_theta(*SHARP).value + 1e-6


def test_one_locality_identical_neighbourhood_prefix():
    # G1 and G2 agree on the 3-neighbourhood of the start vertex, so the
    # first three steps of any 1-local router must coincide
    shape = td.canonical_triangle(*SHARP)
    inst = td.adversarial_routing(shape, k=3, eps=1e-5)
    t = inst.target
    tr1 = td.route(inst.g1, inst.source, t)
    tr2 = td.route(inst.g2, inst.source, t)
    assert tr1.vertices[:4] == tr2.vertices[:4]
    b1 = td.affine_baseline_route(inst.g1, inst.source, t)
    b2 = td.affine_baseline_route(inst.g2, inst.source, t)
    assert b1.vertices[:4] == b2.vertices[:4]


def test_regions_on_adversarial_start_vertex():
    # at the start vertex of the lower-bound instance both side regions are
    # occupied (q1 and p1 sit near the base corners) and the middle region
    # holds no neighbour
    shape = td.canonical_triangle(*SHARP)
    inst = td.adversarial_routing(shape, k=3, eps=1e-5)
    rs = td.regions(inst.g1, inst.source, inst.target)
    assert rs.left.occupied and rs.right.occupied
    assert rs.middle.neighbors == ()


def test_case_iv_potential_approaches_c_theta():
    # at the start vertex of the lower-bound instance the potential equals
    # the bound integrand up to the construction's eps slack
    for t1, t2 in (EQ, SHARP):
        shape = td.canonical_triangle(t1, t2)
        inst = td.adversarial_routing(shape, k=3, eps=1e-5)
        g = inst.g1
        s, t = inst.source, inst.target
        phi = td.potential(shape, g, s, t)
        st = _dist(g.points[s], g.points[t])
        c = td.c_theta(t1, t2).value
        assert abs(phi / st - c) <= 0.01
        _, case, _ = td.route_step(g, s, t)
        assert case == "iv"


def test_concurrent_routing_matches_serial():
    from concurrent.futures import ThreadPoolExecutor

    shape = td.canonical_triangle(*SHARP)
    g = make_graph(shape, 30, 55)
    pairs = [(s, t) for s in range(len(g)) for t in range(len(g)) if s != t]
    serial = [td.route(g, s, t).vertices for s, t in pairs]
    with ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(lambda p: td.route(g, *p).vertices, pairs))
    assert serial == parallel


def test_near_boundary_containment_warns():
    sh = td.canonical_triangle(*EQ)
    p = (0.0, 0.0)
    t = (0.05, 1.0)
    h = td.smallest_homothet(sh, p, t)
    # a point a hair inside the right edge of the clipping homothet, in the
    # middle cone of p
    c2, c3 = h.corner(2), h.corner(3)
    w = (0.45 * c2[0] + 0.55 * c3[0], 0.45 * c2[1] + 0.55 * c3[1])
    inward = (-1e-10, 0.0)
    w = (w[0] + inward[0], w[1] + inward[1])
    pts = td.PointSet([p, t, w])
    td.validate_general_position(sh, pts)
    g = td.build_sweep(sh, pts)
    with pytest.warns(td.NearBoundaryWarning):
        td.regions(g, 0, 1)


def test_verified_routing_on_arbitrary_shapes():
    # the potential guarantee is shape-independent; exercise shapes far from
    # the three standard ones, including a needle-thin triangle
    rng = np.random.default_rng(606)
    shapes = [(0.7142, 0.8213), (0.1009, 0.3575), (0.0248, 0.7381), (0.3056, 1.2789)]
    for t1, t2 in shapes:
        sh = td.canonical_triangle(t1, t2)
        cb = td.c_theta(t1, t2).value
        sb = td.spanning_bound(t1)
        pts = td.PointSet(rng.uniform(0, 1, (25, 2)))
        if not td.validate_general_position(sh, pts).valid:
            pts = td.perturb(sh, pts, 606, 1e-7)
        g = td.build_sweep(sh, pts)
        assert np.array_equal(
            g.cone_edges, td.build_empty_homothet_oracle(sh, pts).cone_edges
        )
        rep = td.routing_ratio_measured(g, router="optimal", verify=True)
        assert rep.negative_cone_ratio <= cb + 1e-6
        assert rep.positive_cone_ratio <= sb + 1e-6
        td.routing_ratio_measured(g, router="baseline")  # must terminate


def test_route_verification_catches_tampered_graph():
    # corrupt a cone edge so the router is steered badly; the verifier or the
    # integrity checks must object rather than looping forever
    shape = td.canonical_triangle(*SHARP)
    g = make_graph(shape, 20, 44)
    ce = np.array(g.cone_edges)
    swapped = False
    for u in range(len(g)):
        row = [v for v in ce[u] if v >= 0]
        if len(row) >= 2:
            cols = [i for i in range(3) if ce[u, i] >= 0]
            ce[u, cols[0]], ce[u, cols[1]] = ce[u, cols[1]], ce[u, cols[0]]
            swapped = True
            break
    assert swapped
    bad = td.TDGraph(shape, g.points, ce)
    failures = 0
    for s in range(len(bad)):
        for t in range(len(bad)):
            if s == t:
                continue
            try:
                td.route(bad, s, t, verify=True)
            except (td.RouteVerificationError, td.GraphIntegrityError, td.TDGraphError):
                failures += 1
    assert failures > 0
