from fractions import Fraction

import pytest

from clustind.constructions import gi_chain
from clustind.engine import certify
from clustind.graph import Graph
from clustind.oracle import alpha_exact_bruteforce, alpha_exact_treedp
from clustind.refute import (NotFound, ProfileSearch, Witness, chain_linear, chain_shared_edge, confirm,
                             min_alpha_table, profile_search, refute, seed_tree)


def all_two_tree_graphs(n):
    """Every 2-tree on 0..n-1 built from the edge 0-1, deduplicated by edge set."""
    seen = set()
    stack = [((), ((0, 1),))]
    while stack:
        att, edges = stack.pop()
        w = 2 + len(att)
        if w == n:
            key = frozenset(edges)
            if key not in seen:
                seen.add(key)
                yield Graph(n, edges)
            continue
        for a, b in edges:
            stack.append((att + ((w, a, b),), edges + ((a, w), (b, w))))


@pytest.mark.parametrize("c", [1, 2, 3, 4])
def test_profile_search_matches_enumeration(c):
    table = dict(min_alpha_table(c, 8))
    for n in range(3, 9):
        if n == 8 and c > 2:
            continue
        want = min(alpha_exact_bruteforce(g, c).value for g in all_two_tree_graphs(n))
        assert table[n] == want, (c, n)


def test_profile_build_realizes_minimum():
    ps = ProfileSearch(3)
    for m in range(1, 12):
        ps.extend(m)
        a, i = ps.minimum(m)
        t = ps.build(m, i)
        assert t.n == m + 2 and confirm(t, 3) == a


CAPPED_CASES = [(1, 1, 3), (1, 2, 5), (2, 1, 2), (2, 5, 9), (2, 4, 7), (3, 5, 9), (3, 4, 7), (3, 3, 5),
                (3, 7, 12), (4, 3, 5), (4, 8, 13), (4, 5, 8), (4, 2, 3)]


@pytest.mark.parametrize("c,p,q", CAPPED_CASES)
def test_capped_search_matches_uncapped_minima(c, p, q):
    table = min_alpha_table(c, 18)
    first = next((n for n, a in table if q * a < p * n), None)
    res = profile_search(c, p, q, max_n=18, budget=None)
    if first is None:
        assert res == NotFound("exhausted", 18)
    else:
        assert isinstance(res, Witness) and res.n == first and q * res.alpha < p * res.n


def test_refute_examples():
    w = refute(3, 3, 5)
    assert isinstance(w, Witness) and w.ratio < Fraction(3, 5)
    assert alpha_exact_treedp(w.two_tree, None, 3).value == w.alpha
    w = refute(2, 5, 9)
    assert isinstance(w, Witness) and w.ratio < Fraction(5, 9)
    assert refute(3, 1, 2) == NotFound("certified", 0)


def test_gi_chain_two_refutes_three_fifths():
    g, t = gi_chain(2)
    assert Fraction(confirm(t, 3), g.n) == Fraction(11, 19) < Fraction(3, 5)


def test_seed_and_chains():
    seed = certify(2, 5, 9)
    t = seed_tree(seed, 40)
    assert t is not None and t.n <= 40
    assert chain_shared_edge(t, 3).n == 2 + 3 * (t.n - 2)
    assert chain_linear(t, 3).n > t.n


def test_budget_is_reported():
    res = refute(3, 4, 7, max_n=40, budget=20_000)
    assert isinstance(res, NotFound) and res.reason == "budget"
    assert res.to_dict()["found"] is False


def test_exhausted_when_nothing_small():
    res = refute(3, 4, 7, max_n=12, budget=None)
    assert res == NotFound("exhausted", 12)
