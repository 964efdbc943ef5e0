import itertools
import random

import pytest

from clustind.constructions import gi_chain_parts, path_clique
from clustind.graph import Graph, complete_graph
from clustind.models import (KTreeModel, ModelError, NotTreewidthTwo, RootedTwoTree, contract_discard,
                             edge_maximal_graph, model_to_two_tree, normalize_distinct_tree_edge_labels,
                             random_ktree, random_partial_ktree, random_two_tree, recognize_tw2,
                             two_tree_to_model, validate_model)


def test_validate_examples():
    g, m = path_clique(3, 4)
    assert validate_model(m, g) == []
    assert validate_model(KTreeModel(0, 0, {0: None}, {0: 1}), Graph(1)) == []
    bad = KTreeModel(1, 0, {0: None, 1: 0}, {0: 1, 1: 1})
    reasons = [v.reason for v in validate_model(bad, Graph(2, [(0, 1)]))]
    assert reasons == ["equal labels"]


def test_model_rejects_cycles_and_bad_labels():
    with pytest.raises(ModelError):
        KTreeModel(1, 0, {0: None, 1: 2, 2: 1}, {0: 1, 1: 1, 2: 2})
    with pytest.raises(ModelError):
        KTreeModel(1, 0, {0: None, 1: 0}, {0: 1, 1: 3})


def test_edge_maximal_examples():
    g, _ = path_clique(3, 4)
    assert g.n == 7
    want = {(i, j) for i in range(3) for j in range(i + 1, 7)}
    assert set(g.sorted_edges()) == want
    n = 6
    chain = KTreeModel(n - 1, 0, {i: (i - 1 if i else None) for i in range(n)}, {i: i + 1 for i in range(n)})
    assert edge_maximal_graph(chain).m == n * (n - 1) // 2


def test_parents_form_cliques():
    for seed in range(30):
        k = 1 + seed % 4
        g, m = random_ktree(k, 25, seed)
        for v in m.parent:
            ps = m.parents_in(g, v)
            assert all(g.has_edge(a, b) for a, b in itertools.combinations(ps, 2))


def test_normalize_examples():
    g = Graph(3, [(0, 1), (1, 2)])
    m = KTreeModel(1, 0, {0: None, 1: 0, 2: 1}, {0: 1, 1: 2, 2: 1})
    assert normalize_distinct_tree_edge_labels(m, g) == m
    lone = KTreeModel(1, 0, {0: None, 1: 0}, {0: 1, 1: 1})
    out = normalize_distinct_tree_edge_labels(lone, Graph(2))
    assert out.label[1] != out.label[0]


def test_normalize_random_forests():
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.randint(2, 50)
        g, m = random_partial_ktree(1, n, seed)
        out = normalize_distinct_tree_edge_labels(m, g)
        assert validate_model(out, g) == []
        assert all(out.label[out.parent[v]] != out.label[v] for v in out.preorder[1:])


def test_recognize_examples():
    t = recognize_tw2(complete_graph(3))
    assert t.n == 3 and len(t.attachments) == 1
    with pytest.raises(NotTreewidthTwo):
        recognize_tw2(complete_graph(4))
    g, _, _ = gi_chain_parts(1)
    t = recognize_tw2(g)
    h = t.graph()
    assert t.n == 10
    assert set(g.sorted_edges()) <= set(h.sorted_edges())
    assert h.m == 2 * 10 - 3


def test_recognize_corpus():
    for seed in range(40):
        g, _ = random_ktree(2, 30, seed)
        assert recognize_tw2(g).graph().m == g.m
        h, _ = random_partial_ktree(2, 30, seed)
        # partial 2-trees may be disconnected; recognize each piece
        from clustind.graph import components
        for comp in components(h, range(h.n)):
            if len(comp) >= 2:
                recognize_tw2(h, comp)
    for seed in range(10):
        g, _ = random_ktree(3, 12, seed)
        with pytest.raises(NotTreewidthTwo):
            recognize_tw2(g)


def test_two_tree_model_round_trip():
    tri = RootedTwoTree((0, 1), ((2, 0, 1),))
    assert model_to_two_tree(two_tree_to_model(tri)).graph().sorted_edges() == tri.graph().sorted_edges()
    for seed in range(50):
        t = random_two_tree(random.Random(seed).randint(2, 40), seed)
        m = two_tree_to_model(t)
        assert validate_model(m, t.graph()) == []
        back = model_to_two_tree(m, t.graph())
        assert back.graph().sorted_edges() == t.graph().sorted_edges()
        assert RootedTwoTree.from_dict(t.to_dict()) == t


def test_random_ktree_examples():
    g, m = random_ktree(1, 5, 0)
    assert g.m == 4 and validate_model(m, g) == []
    g, _ = random_ktree(2, 3, 0)
    assert g.sorted_edges() == complete_graph(3).sorted_edges()
    g, m = random_ktree(3, 20, 7)
    assert validate_model(m, g) == [] and g.m == 3 * 20 - 6


def test_contract_discard_examples():
    path = KTreeModel(1, 0, {0: None, 1: 0, 2: 1}, {0: 1, 1: 2, 2: 1})
    leaf = contract_discard(path, 2)
    assert set(leaf.parent) == {0, 1}
    mid = contract_discard(path, 1)
    assert mid.parent == {0: None, 2: 0}
    with pytest.raises(ModelError):
        contract_discard(path, 0)


def test_contract_discard_keeps_validity():
    for seed in range(30):
        t = random_two_tree(15, seed)
        m = two_tree_to_model(t)
        v = random.Random(seed).choice([x for x in m.parent if x != m.root])
        g = edge_maximal_graph(m).without_vertices([v])
        assert validate_model(contract_discard(m, v), g) == []
