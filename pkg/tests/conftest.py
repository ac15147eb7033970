import random

import pytest

import dsx


RP2_TRIANGLES = [
    [0, 1, 4], [0, 1, 5], [0, 2, 3], [0, 2, 4], [0, 3, 5],
    [1, 2, 3], [1, 2, 5], [1, 3, 4], [2, 4, 5], [3, 4, 5],
]


def small_corpus():
    """Named unbased Delta-sets used across property tests."""
    items = {
        "point": dsx.standard("simplex", 0),
        "interval": dsx.standard("simplex", 1),
        "D2": dsx.standard("simplex", 2),
        "D3": dsx.standard("simplex", 3),
        "bdD2": dsx.standard("boundary", 2),
        "bdD3": dsx.standard("boundary", 3),
        "horn21": dsx.standard("horn", 2, 1),
        "horn20": dsx.standard("horn", 2, 0),
        "horn31": dsx.standard("horn", 3, 1),
        "C3": dsx.cycle_graph(3),
        "C4": dsx.cycle_graph(4),
        "C5": dsx.cycle_graph(5),
        "RP2": dsx.from_simplicial_complex(RP2_TRIANGLES),
        "wedgeish": dsx.from_simplicial_complex(
            [[0, 1, 2], [2, 3], [3, 4], [4, 2], [5]]),
    }
    cone_b2, _, _ = dsx.cone(dsx.standard("boundary", 2))
    items["cone_bdD2"] = cone_b2
    items["square"] = dsx.geometric_product(
        dsx.standard("simplex", 1), dsx.standard("simplex", 1))
    items["cyl_C3"] = dsx.geometric_product(
        dsx.cycle_graph(3), dsx.standard("simplex", 1))
    items["torus"] = dsx.geometric_product(
        dsx.cycle_graph(3), dsx.cycle_graph(3))
    items["segment_model_3"] = dsx.circle_segments(3)
    items["bdD4"] = dsx.standard("boundary", 4)
    items["horn42"] = dsx.standard("horn", 4, 2)
    items["two_points"] = dsx.standard("boundary", 1)
    return items


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


@pytest.fixture(scope="session")
def moore3():
    return dsx.MooreSystem(3)


@pytest.fixture(scope="session")
def moore3_p2(moore3):
    moore3.power(2)
    return moore3


def random_two_dim_delta(rng, n_vertices=5, n_edges=6, n_triangles=3):
    """Random valid 2-dimensional Delta-set built from an ordered
    simplicial complex (the identity holds automatically)."""
    verts = list(range(n_vertices))
    maximal = []
    for _ in range(n_triangles):
        maximal.append(sorted(rng.sample(verts, 3)))
    for _ in range(n_edges):
        maximal.append(sorted(rng.sample(verts, 2)))
    maximal.append([rng.choice(verts)])
    return dsx.from_simplicial_complex(maximal)


@pytest.fixture
def rng():
    return random.Random(987654321)
