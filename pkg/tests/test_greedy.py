import random
from math import ceil

import pytest

from clustind.constructions import path_clique
from clustind.graph import Graph, is_c_clustered
from clustind.greedy import clustered_c2_tokens, clustered_general, clustered_k1
from clustind.models import KTreeModel, random_ktree, random_partial_ktree
from clustind.oracle import alpha_exact_bruteforce


def star(leaves):
    g = Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
    m = KTreeModel(1, 0, {0: None, **{i: 0 for i in range(1, leaves + 1)}}, {0: 1, **{i: 2 for i in range(1, leaves + 1)}})
    return g, m


def test_general_base_case():
    g, m = random_ktree(2, 3, 0)
    assert clustered_general(m, g, 3).sorted() == [0, 1, 2]


def test_general_path_clique_is_optimal():
    g, m = path_clique(2, 3)
    s = clustered_general(m, g, 3)
    assert len(s) >= 3 == alpha_exact_bruteforce(g, 3).value


def test_k1_examples():
    g, m = star(6)
    s = clustered_k1(m, g, 2)
    assert len(s) >= ceil(2 * 7 / 3)
    assert alpha_exact_bruteforce(g, 2).value == 6
    p3 = Graph(3, [(0, 1), (1, 2)])
    mp = KTreeModel(1, 0, {0: None, 1: 0, 2: 1}, {0: 1, 1: 2, 2: 1})
    assert clustered_k1(mp, p3, 3).sorted() == [0, 1, 2]
    with pytest.raises(ValueError):
        clustered_k1(*random_ktree(2, 5, 0)[::-1], 2)


def test_c2_base_and_fixture():
    g, m = path_clique(2, 2)
    s = clustered_c2_tokens(m, g)
    assert len(s) == 2 == alpha_exact_bruteforce(g, 2).value
    single = KTreeModel(2, 0, {0: None}, {0: 1})
    assert clustered_c2_tokens(single, Graph(1)).sorted() == [0]


def test_general_sweep():
    for seed in range(60):
        rng = random.Random(seed)
        k, c, n = rng.randint(1, 4), rng.randint(1, 5), rng.randint(2, 60)
        n = max(n, k + 1)
        g, m = (random_ktree if seed % 2 else random_partial_ktree)(k, n, seed)
        s = clustered_general(m, g, c)
        assert is_c_clustered(g, s.vertices, c)
        assert len(s) >= ceil(c * n / (k + c + 1))


def test_k1_sweep():
    for seed in range(60):
        rng = random.Random(seed)
        c, n = rng.randint(1, 6), rng.randint(2, 100)
        g, m = (random_ktree if seed % 2 else random_partial_ktree)(1, n, seed)
        s = clustered_k1(m, g, c)
        assert is_c_clustered(g, s.vertices, c)
        assert len(s) >= ceil(c * n / (c + 1))


def test_c2_sweep_with_full_checks():
    for seed in range(40):
        rng = random.Random(seed)
        k, n = rng.randint(1, 5), rng.randint(2, 80)
        n = max(n, k + 1)
        g, m = (random_ktree if seed % 2 else random_partial_ktree)(k, n, seed)
        s, st = clustered_c2_tokens(m, g, check_all=True, return_state=True)
        assert is_c_clustered(g, s.vertices, 2)
        assert len(s) >= ceil(2 * n / (k + 2))
        if st is not None:
            assert k * len(st.S & set(range(n))) >= 2 * len(st.D & set(range(n)))


def test_small_outputs_never_beat_oracle():
    for seed in range(20):
        g, m = random_ktree(2, 12, seed)
        best = alpha_exact_bruteforce(g, 2).value
        assert len(clustered_c2_tokens(m, g)) <= best
        assert len(clustered_general(m, g, 2)) <= best
