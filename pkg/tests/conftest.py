import random

import pytest

from clustind.graph import Graph


def octahedron() -> Graph:
    # K_{2,2,2}: vertex i misses only i ^ 1
    return Graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6) if v != u ^ 1])


def icosahedron() -> Graph:
    edges = [(0, i) for i in range(1, 6)] + [(11, i) for i in range(6, 11)]
    for i in range(5):
        a, b = 1 + i, 1 + (i + 1) % 5
        x, y = 6 + i, 6 + (i + 1) % 5
        edges += [(a, b), (x, y), (a, x), (b, x)]
    return Graph(12, edges)


@pytest.fixture
def rng():
    return random.Random(20240611)
