import math

import numpy as np
import pytest

import tdgraph as td

from conftest import make_graph, make_points

EQ = (math.pi / 3, math.pi / 3)


def test_pointset_rejects_duplicates_and_nonfinite():
    with pytest.raises(td.DegenerateInputError):
        td.PointSet([(0, 0), (1, 1), (0, 0)])
    with pytest.raises(td.DegenerateInputError):
        td.PointSet([(0, 0), (math.inf, 1)])


def test_validator_flags_horizontal_pair():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0, 0), (1, 0)])
    rep = td.validate_general_position(sh, pts)
    assert not rep.valid
    assert (rep.violations[0].u, rep.violations[0].v) == (0, 1)
    assert rep.violations[0].side_name == "corner1-corner2"
    assert not pts.is_validated_for(sh)


def test_validator_accepts_slightly_tilted_pair_and_singleton():
    sh = td.canonical_triangle(*EQ)
    assert td.validate_general_position(sh, td.PointSet([(0, 0), (1, 0.01)])).valid
    assert td.validate_general_position(sh, td.PointSet([(0.3, 0.7)])).valid


def test_validator_catches_every_side_direction():
    sh = td.canonical_triangle(*EQ)
    c3 = sh.corners[2]
    for q, side in [((1.0, 0.0), 0), (c3, 1), ((c3[0] - 1.0, c3[1]), 2)]:
        rep = td.validate_general_position(sh, td.PointSet([(0.0, 0.0), q]))
        assert not rep.valid
        assert rep.violations[0].side == side


def test_perturb_deterministic_and_bounded():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0, 0), (1, 0), (0.5, 0.9)])
    out1 = td.perturb(sh, pts, seed=1, magnitude=1e-6)
    out2 = td.perturb(sh, pts, seed=1, magnitude=1e-6)
    assert np.array_equal(out1.coords, out2.coords)
    assert td.validate_general_position(sh, out1).valid
    disp = np.hypot(*(out1.coords - pts.coords).T)
    assert np.all(disp <= 1e-6 * pts.diameter() + 1e-18)
    out3 = td.perturb(sh, pts, seed=2, magnitude=1e-6)
    assert not np.array_equal(out1.coords, out3.coords)


def test_perturb_keeps_valid_sets_close():
    sh = td.canonical_triangle(*EQ)
    pts = make_points(sh, 20, 5)
    out = td.perturb(sh, pts, seed=9, magnitude=1e-9)
    assert np.all(np.hypot(*(out.coords - pts.coords).T) <= 1e-9 * pts.diameter())
    assert out.is_validated_for(sh)


def test_perturb_rejects_nonpositive_magnitude():
    sh = td.canonical_triangle(*EQ)
    with pytest.raises(ValueError):
        td.perturb(sh, td.PointSet([(0, 0), (1, 0)]), 0, 0.0)


def test_perturb_fails_loudly_when_magnitude_cannot_help():
    # offsets of ~1e-18 cannot lift an exactly-parallel pair past the
    # 1e-12 radian tolerance, so every draw fails
    sh = td.canonical_triangle(*EQ)
    with pytest.raises(td.PerturbationError):
        td.perturb(sh, td.PointSet([(0, 0), (1, 0)]), 0, 1e-18)


def test_builders_require_validation():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0.1, 0.2), (0.7, 0.33)])
    with pytest.raises(td.NotValidatedError):
        td.build_sweep(sh, pts)
    with pytest.raises(td.NotValidatedError):
        td.build_empty_homothet_oracle(sh, pts)
    # validation for one shape does not carry to another
    td.validate_general_position(sh, pts)
    other = td.canonical_triangle(math.pi / 6, math.pi / 5)
    with pytest.raises(td.NotValidatedError):
        td.build_sweep(other, pts)


def test_two_points_single_edge():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0.1, 0.2), (0.7, 0.33)])
    td.validate_general_position(sh, pts)
    for build in (td.build_sweep, td.build_empty_homothet_oracle):
        g = build(sh, pts)
        assert g.undirected_edges() == {frozenset((0, 1))}
        assert len(g.directed_edges()) == 1


def test_three_points_complete():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0.0, 0.01), (1.0, 0.13), (0.4, 0.9)])
    td.validate_general_position(sh, pts)
    for build in (td.build_sweep, td.build_empty_homothet_oracle):
        g = build(sh, pts)
        assert g.undirected_edges() == {
            frozenset((0, 1)), frozenset((1, 2)), frozenset((0, 2))
        }


def test_four_point_instance_matches_oracle():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0, 0), (0.5, 0.3), (0.52, 0.56), (0.1, 0.9)])
    td.validate_general_position(sh, pts)
    g1 = td.build_sweep(sh, pts)
    g2 = td.build_empty_homothet_oracle(sh, pts)
    assert np.array_equal(g1.cone_edges, g2.cone_edges)


@pytest.mark.parametrize("name", ["equilateral", "sharp", "mid"])
def test_oracle_equivalence_random(shapes, name):
    shape = shapes[name]
    for seed in range(6):
        pts = make_points(shape, 40, 100 + seed)
        g1 = td.build_sweep(shape, pts)
        g2 = td.build_empty_homothet_oracle(shape, pts)
        assert np.array_equal(g1.cone_edges, g2.cone_edges)


def test_sweep_edges_are_cone_minimal():
    # independent scalar check of the vectorised builder
    sh = td.canonical_triangle(math.pi / 6, math.pi / 5)
    pts = make_points(sh, 25, 77)
    g = td.build_sweep(sh, pts)
    tup = pts.as_tuples()
    n = len(tup)
    for u in range(n):
        best = [None, None, None]
        for v in range(n):
            if u == v:
                continue
            cid = td.cone_of(sh, tup[u], tup[v])
            if not cid.positive:
                continue
            s = td.smallest_homothet(sh, tup[u], tup[v]).scale
            i = cid.index - 1
            if best[i] is None or s < best[i][0]:
                best[i] = (s, v)
        for i in range(3):
            want = -1 if best[i] is None else best[i][1]
            assert g.cone_edges[u, i] == want


def test_out_degree_at_most_three(small_graphs):
    for graphs in small_graphs.values():
        for g in graphs:
            assert np.all((g.cone_edges >= -1) & (g.cone_edges < len(g)))
            for u in range(len(g)):
                assert sum(1 for v in g.cone_edges[u] if v >= 0) <= 3


def test_connectivity(small_graphs):
    for graphs in small_graphs.values():
        for g in graphs:
            assert g.is_connected()


def _segments_properly_cross(p1, p2, p3, p4):
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
    d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def test_planarity(small_graphs):
    for graphs in small_graphs.values():
        for g in graphs:
            coords = g.points.coords
            edges = [tuple(e) for e in g.undirected_edges()]
            for a in range(len(edges)):
                for b in range(a + 1, len(edges)):
                    u1, v1 = edges[a]
                    u2, v2 = edges[b]
                    if len({u1, v1, u2, v2}) < 4:
                        continue
                    assert not _segments_properly_cross(
                        coords[u1], coords[v1], coords[u2], coords[v2]
                    ), f"edges {edges[a]} and {edges[b]} cross"


def test_sweep_aborts_on_scale_tie():
    # two candidates on (almost) the same leading edge: the pair direction
    # clears the validator's 1e-12 radian tolerance, but their homothet
    # scales tie within 1e-12 relative - silent tie-breaking is refused
    sh = td.canonical_triangle(*EQ)
    e = np.array([-0.5, math.sqrt(3) / 2])          # leading edge direction
    inward = np.array([-math.sqrt(3) / 2, -0.5])
    v1 = np.array([1.0, 0.0]) + 0.2 * e
    v2 = np.array([1.0, 0.0]) + 0.55 * e + 4e-13 * inward
    pts = td.PointSet([(0.0, 0.0), tuple(v1), tuple(v2)])
    assert td.validate_general_position(sh, pts).valid
    with pytest.raises(td.GeneralPositionError, match="tie"):
        td.build_sweep(sh, pts)


def test_build_rejects_general_position_violation():
    sh = td.canonical_triangle(*EQ)
    pts = td.PointSet([(0, 0), (1, 0), (0.5, 0.5)])
    rep = td.validate_general_position(sh, pts)
    assert not rep.valid
    with pytest.raises(td.NotValidatedError):
        td.build_sweep(sh, pts)


def test_graph_immutability():
    g = make_graph(td.canonical_triangle(*EQ), 10, 3)
    with pytest.raises(ValueError):
        g.cone_edges[0, 0] = 5
    with pytest.raises(ValueError):
        g.points.coords[0, 0] = 99.0
