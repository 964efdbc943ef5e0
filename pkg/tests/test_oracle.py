import itertools
import random
import time
from math import ceil

import pytest

from clustind.constructions import cary_tower, gi_chain, path_clique
from clustind.graph import Graph, complete_graph, disjoint_union, is_c_clustered, path_graph
from clustind.models import random_ktree, random_partial_ktree, random_two_tree
from clustind.oracle import (SizeCapExceeded, alpha_exact_bruteforce, alpha_exact_treedp,
                             chi_clustered_exact)

from conftest import icosahedron, octahedron


def naive_alpha(g, c):
    for r in range(g.n, -1, -1):
        for s in itertools.combinations(range(g.n), r):
            if is_c_clustered(g, s, c):
                return r


def test_bruteforce_examples():
    for k in range(1, 6):
        assert alpha_exact_bruteforce(complete_graph(k + 1), 1).value == 1
    g, _ = path_clique(3, 4)
    assert alpha_exact_bruteforce(g, 4).value == 4
    g2, _ = gi_chain(2)
    assert alpha_exact_bruteforce(g2, 3).value == 11


def test_bruteforce_matches_naive():
    rng = random.Random(5)
    graphs = [octahedron(), path_graph(7), complete_graph(5)]
    for _ in range(25):
        n = rng.randint(1, 10)
        graphs.append(Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.35]))
    for g in graphs:
        for c in (1, 2, 3):
            res = alpha_exact_bruteforce(g, c)
            assert res.value == naive_alpha(g, c)
            assert res.exact and len(res.witness) == res.value
            assert is_c_clustered(g, res.witness.vertices, c)


def test_bruteforce_caps():
    with pytest.raises(SizeCapExceeded):
        alpha_exact_bruteforce(Graph(29), 1)
    res = alpha_exact_bruteforce(icosahedron(), 2, budget=3)
    assert not res.exact
    assert res.to_dict()["exact"] is False


def test_treedp_examples():
    assert alpha_exact_treedp(random_two_tree(3, 0), None, 3).value == 3
    start = time.perf_counter()
    for i in range(1, 11):
        g, t = gi_chain(i)
        res = alpha_exact_treedp(t, g, 3)
        assert res.value == 5 * i + 1
        assert is_c_clustered(g, res.witness.vertices, 3)
    assert time.perf_counter() - start < 10


@pytest.mark.parametrize("k", [1, 2, 3])
def test_treedp_equals_bruteforce(k):
    for seed in range(40):
        rng = random.Random(seed * 31 + k)
        n = rng.randint(k + 1, 16)
        if seed % 2:
            g, m = random_ktree(k, n, seed)
        else:
            g, m = random_partial_ktree(k, n, seed)
        for c in range(1, 5):
            a = alpha_exact_treedp(m, g, c)
            b = alpha_exact_bruteforce(g, c)
            assert a.value == b.value, (k, seed, c)
            assert is_c_clustered(g, a.witness.vertices, c) and len(a.witness) == a.value


def test_treedp_is_deterministic():
    t = random_two_tree(60, 3)
    assert alpha_exact_treedp(t, None, 3).witness == alpha_exact_treedp(t, None, 3).witness


def test_treedp_large_two_tree():
    t = random_two_tree(1000, 11)
    res = alpha_exact_treedp(t, None, 3)
    assert res.value >= ceil(5 * 1000 / 9)


def test_treedp_state_cap():
    g, m = random_ktree(3, 30, 1)
    with pytest.raises(SizeCapExceeded):
        alpha_exact_treedp(m, g, 6, state_cap=10)


def test_chi_examples():
    assert chi_clustered_exact(complete_graph(3), 1) == 3
    assert chi_clustered_exact(Graph(2, [(0, 1)]), 2) == 1
    g, _ = cary_tower(2, 2)
    assert chi_clustered_exact(g, 2) == 3
    with pytest.raises(SizeCapExceeded):
        chi_clustered_exact(Graph(13), 1)


def test_monotone_and_chi_bound():
    instances = [octahedron(), icosahedron(), cary_tower(2, 2)[0], path_clique(3, 3)[0],
                 disjoint_union([complete_graph(3), path_graph(4)])]
    for g in instances:
        prev = 0
        for c in range(1, 5):
            a = alpha_exact_bruteforce(g, c).value
            assert a >= prev
            prev = a
            assert a >= ceil(g.n / chi_clustered_exact(g, c))
