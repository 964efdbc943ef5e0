"""Stern-Brocot search for the largest certifiable ratio, and the x_{2,c} table."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import Certificate, certify
from .refute import refute


@dataclass
class RatioResult:
    c: int
    p: int
    q: int
    certificate: Certificate
    frontier: Fraction  # smallest ratio seen failing during the descent
    witness: object = None  # Witness / NotFound for ``frontier`` when requested

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)


def stern_brocot_bounds(p: int, q: int) -> tuple:
    """Left and right Stern-Brocot ancestors of p/q (the fractions it is the mediant of)."""
    target = Fraction(p, q)
    lo, hi = (0, 1), (1, 0)
    while True:
        mp, mq = lo[0] + hi[0], lo[1] + hi[1]
        mid = Fraction(mp, mq)
        if mid == target:
            return Fraction(*lo), (Fraction(*hi) if hi[1] else None)
        if target < mid:
            hi = (mp, mq)
        else:
            lo = (mp, mq)


def successor(p: int, q: int) -> Fraction:
    """Right child of p/q in the Stern-Brocot tree.

    This is also the next fraction above p/q among denominators <= 2q.
    """
    _, hi = stern_brocot_bounds(p, q)
    if hi is None:
        return Fraction(p + 1, q)
    return Fraction(p + hi.numerator, q + hi.denominator)


def find_ratio(c: int, q_max: int, with_witness: bool = False, max_n: int = 40,
               budget: int | None = 2_000_000) -> RatioResult:
    """Largest p/q (q <= q_max) whose closure search succeeds.

    Descends the Stern-Brocot tree between 0/1 and 1/1, certifying each
    mediant: success moves the lower end up, failure the upper end down.
    """
    if c < 2:
        raise ValueError("find_ratio needs c >= 2")
    lo, hi = (0, 1), (1, 1)
    best = None
    while True:
        p, q = lo[0] + hi[0], lo[1] + hi[1]
        if q > q_max:
            break
        res = certify(c, p, q)
        if isinstance(res, Certificate):
            best = res
            lo = (p, q)
        else:
            hi = (p, q)
    if best is None:
        raise ValueError(f"no ratio with denominator <= {q_max} could be certified")
    out = RatioResult(c, best.p, best.q, best, Fraction(*hi))
    if with_witness:
        out.witness = refute(c, hi[0], hi[1], max_n=max_n, budget=budget)
    return out


def x2c_table(c_from: int = 2, c_to: int = 15, q_max: int = 30) -> list:
    """[(c, Fraction)] with the largest certified ratio for each c."""
    return [(c, find_ratio(c, q_max).ratio) for c in range(c_from, c_to + 1)]
