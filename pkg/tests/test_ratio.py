from fractions import Fraction

import pytest

from clustind.ratio import find_ratio, stern_brocot_bounds, successor, x2c_table


@pytest.mark.parametrize("c,q_max,want", [(3, 20, (5, 9)), (4, 20, (8, 13)), (15, 40, (21, 25))])
def test_find_ratio_examples(c, q_max, want):
    res = find_ratio(c, q_max)
    assert (res.p, res.q) == want
    assert res.frontier > res.ratio


def test_successor_is_next_fraction_up_to_2q():
    for p, q in [(1, 2), (5, 9), (8, 13), (2, 3), (9, 13), (21, 25)]:
        s = successor(p, q)
        assert s.denominator <= 2 * q
        between = [Fraction(a, b) for b in range(1, 2 * q + 1) for a in range(b + 1)
                   if Fraction(p, q) < Fraction(a, b) < s]
        assert between == []
    assert [successor(*r) for r in [(1, 2), (5, 9), (8, 13), (2, 3), (9, 13)]] == [
        Fraction(2, 3), Fraction(9, 16), Fraction(13, 21), Fraction(3, 4), Fraction(16, 23)]


def test_bounds():
    assert stern_brocot_bounds(5, 9) == (Fraction(1, 2), Fraction(4, 7))
    assert stern_brocot_bounds(1, 1) == (Fraction(0, 1), None)


def test_table_prefix():
    assert x2c_table(2, 6) == [(2, Fraction(1, 2)), (3, Fraction(5, 9)), (4, Fraction(8, 13)),
                               (5, Fraction(2, 3)), (6, Fraction(9, 13))]


def test_find_ratio_with_witness():
    res = find_ratio(2, 10, with_witness=True)
    assert res.ratio == Fraction(1, 2)
    assert res.witness.ratio < res.frontier
