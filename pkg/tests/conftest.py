import math

import numpy as np
import pytest

import tdgraph as td

SHAPE_ANGLES = {
    "equilateral": (math.pi / 3, math.pi / 3),
    "sharp": (math.pi / 6, math.pi / 5),
    "mid": (math.pi / 4, math.pi / 3),
}


@pytest.fixture(scope="session")
def shapes():
    return {name: td.canonical_triangle(*a) for name, a in SHAPE_ANGLES.items()}


def make_points(shape, n, seed, box=1.0):
    """Random points in a box, validated (perturbed on the rare failure)."""
    rng = np.random.default_rng(seed)
    pts = td.PointSet(rng.uniform(0.0, box, (n, 2)))
    if not td.validate_general_position(shape, pts).valid:
        pts = td.perturb(shape, pts, seed, 1e-7)
    return pts


def make_graph(shape, n, seed):
    return td.build_sweep(shape, make_points(shape, n, seed))


@pytest.fixture(scope="session")
def small_graphs(shapes):
    """A few modest instances per shape, shared across tests."""
    out = {}
    for name, shape in shapes.items():
        out[name] = [make_graph(shape, 30, seed) for seed in range(3)]
    return out
