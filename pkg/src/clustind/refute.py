"""Counterexample search: rooted 2-trees whose alpha_c/n falls below p/q.

Three sources are tried in order: the 2-tree rebuilt from a failed closure
search, chains of copies of it, and an exhaustive search over all rooted
2-trees up to a size bound, pruned by a certified lower bound.  Every witness is confirmed by the exact tree
DP (and by brute force when it is small enough).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import Certificate, FailureSeed, certify
from .models import RootedTwoTree
from .oracle import alpha_exact_bruteforce, alpha_exact_treedp

NEG = -(10 ** 9)
CROSS_CHECK_MAX_N = 20


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Witness:
    two_tree: RootedTwoTree
    n: int
    alpha: int
    ratio: Fraction
    source: str = "search"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "source": self.source,
            "two_tree": self.two_tree.to_dict(),
        }


@dataclass(frozen=True)
class NotFound:
    """No witness.  ``reason``: "certified" (none can exist), "exhausted"
    (every 2-tree up to ``searched_n`` vertices was covered) or "budget"."""

    reason: str
    searched_n: int = 0

    def to_dict(self) -> dict:
        return {"found": False, "reason": self.reason, "searched_n": self.searched_n}


def confirm(t: RootedTwoTree, c: int) -> int:
    """Exact alpha_c of the 2-tree, cross-checked by brute force when small."""
    t, _ = t.compact()
    g = t.graph()
    value = alpha_exact_treedp(t, g, c).value
    if t.n <= CROSS_CHECK_MAX_N:
        bf = alpha_exact_bruteforce(g, c)
        if bf.exact and bf.value != value:
            raise AssertionError(f"oracles disagree on a witness: treedp {value}, brute force {bf.value}")
    return value


def _witness_if_below(t: RootedTwoTree, c: int, p: int, q: int, source: str):
    t, _ = t.compact()
    a = confirm(t, c)
    if q * a < p * t.n:
        return Witness(t, t.n, a, Fraction(a, t.n), source)
    return None


# -- rebuilding a 2-tree from a failed closure search ------------------------


class _Builder:
    def __init__(self, max_n: int):
        self.att = []
        self.next = 2
        self.max_n = max_n

    def new(self, a: int, b: int) -> int:
        if self.next >= self.max_n:
            raise BudgetExceeded("seed expansion exceeds the size bound")
        w = self.next
        self.next += 1
        self.att.append((w, a, b))
        return w


def _realize(derivation: dict, t, u: int, v: int, b: _Builder) -> None:
    how = derivation[t]
    if how[0] == "base":
        return
    if how[0] == "sibling":
        _realize(derivation, how[1], u, v, b)
        _realize(derivation, how[2], u, v, b)
        return
    _, _, x, y = how
    w = b.new(u, v)
    _realize(derivation, x, u, w, b)
    _realize(derivation, y, v, w, b)


def seed_tree(seed: FailureSeed, max_n: int) -> RootedTwoTree | None:
    """The rooted 2-tree whose bottom-up typing reproduces the failure."""
    if seed.reason not in ("no-candidate", "root"):
        return None
    b = _Builder(max_n)
    try:
        if seed.reason == "no-candidate":
            x, y = seed.pair
            w = b.new(0, 1)
            _realize(seed.derivation, x, 0, w, b)
            _realize(seed.derivation, y, 1, w, b)
        else:
            _realize(seed.derivation, seed.type, 0, 1, b)
    except BudgetExceeded:
        return None
    return RootedTwoTree((0, 1), tuple(b.att))


def chain_shared_edge(t: RootedTwoTree, copies: int) -> RootedTwoTree:
    """``copies`` copies of everything below the root edge, all on that edge."""
    u0, v0 = t.root_edge
    att = []
    nxt = 2
    for _ in range(copies):
        mapping = {u0: 0, v0: 1}
        for w, a, b in t.attachments:
            mapping[w] = nxt
            nxt += 1
            att.append((mapping[w], mapping[a], mapping[b]))
    return RootedTwoTree((0, 1), tuple(att))


def chain_linear(t: RootedTwoTree, copies: int) -> RootedTwoTree:
    """Copies arranged in a line: each copy's root edge is the last edge of the previous one."""
    t, _ = t.compact()
    att = []
    top = (0, 1)
    nxt = 2
    for _ in range(copies):
        mapping = {0: top[0], 1: top[1]}
        last = top
        for w, a, b in t.attachments:
            mapping[w] = nxt
            nxt += 1
            att.append((mapping[w], mapping[a], mapping[b]))
            last = (mapping[a], mapping[w])
        top = last
    return RootedTwoTree((0, 1), tuple(att))


# -- exhaustive search over rooted 2-trees -----------------------------------


class ProfileSearch:
    """Pareto-minimal boundary profiles of all child sets of an edge ab.

    A profile maps each boundary state to the largest number of inner
    vertices a c-clustered set can hold: (0,0) neither endpoint chosen;
    (1,0,x) / (0,1,x) only a / only b chosen, x inner vertices in its
    component; (1,1,z) both chosen, z inner vertices in their component.
    A profile that is pointwise >= another can never give a smaller alpha,
    so only minimal ones are kept.  ``A[m]`` holds profiles of child sets
    with m inner vertices, ``S1[m]`` those of a single child.
    """

    def __init__(self, c: int):
        if c < 1:
            raise ValueError("c must be >= 1")
        self.c = c
        st = [(0, 0, 0)] + [(1, 0, x) for x in range(c)] + [(0, 1, y) for y in range(c)]
        st += [(1, 1, z) for z in range(c - 1)]
        self.states = st
        self.idx = {s: i for i, s in enumerate(st)}
        self.L = len(st)
        self._child_rules = self._build_child_rules()
        self._sib_rules = self._build_sib_rules()
        empty = tuple(0 if s[2] == 0 else NEG for s in st)
        self.A = {0: [empty]}
        self.A_from = {0: [("empty",)]}
        self.S1 = {}
        self.S1_from = {}
        self.work = 0

    def _build_child_rules(self) -> list:
        """(out, in_x, in_y, add) with X on edge (a, w) and Y on edge (b, w)."""
        c, idx = self.c, self.idx
        rules = []
        for sa in (0, 1):
            for sb in (0, 1):
                xs = range(c) if sa else [0]
                ys = range(c) if sb else [0]
                for x in xs:
                    for y in ys:
                        ix, iy = idx.get((sa, 0, x)), idx.get((sb, 0, y))
                        if ix is None or iy is None:
                            continue
                        if sa and sb:
                            if x + y <= c - 2:
                                rules.append((idx[(1, 1, x + y)], ix, iy, 0))
                        elif sa:
                            rules.append((idx[(1, 0, x)], ix, iy, 0))
                        elif sb:
                            rules.append((idx[(0, 1, y)], ix, iy, 0))
                        else:
                            rules.append((idx[(0, 0, 0)], ix, iy, 0))
                for x in range(c):
                    for y in range(c):
                        ix, iy = idx.get((sa, 1, x)), idx.get((sb, 1, y))
                        if ix is None or iy is None:
                            continue
                        tot = 1 + x + y
                        if sa and sb:
                            if tot <= c - 2:
                                rules.append((idx[(1, 1, tot)], ix, iy, 1))
                        elif sa or sb:
                            if tot <= c - 1:
                                rules.append((idx[(sa, sb, tot)], ix, iy, 1))
                        elif tot <= c:
                            rules.append((idx[(0, 0, 0)], ix, iy, 1))
        return rules

    def _build_sib_rules(self) -> list:
        c, idx = self.c, self.idx
        rules = [(idx[(0, 0, 0)], idx[(0, 0, 0)], idx[(0, 0, 0)])]
        for a, b, lim in ((1, 0, c), (0, 1, c), (1, 1, c - 1)):
            for x1 in range(lim):
                for x2 in range(lim - x1):
                    rules.append((idx[(a, b, x1 + x2)], idx[(a, b, x1)], idx[(a, b, x2)]))
        return rules

    def _child(self, X, Y) -> tuple:
        out = [NEG] * self.L
        for o, ix, iy, add in self._child_rules:
            vx = X[ix]
            if vx <= NEG // 2:
                continue
            vy = Y[iy]
            if vy <= NEG // 2:
                continue
            val = vx + vy + add
            if val > out[o]:
                out[o] = val
        return tuple(out)

    def _sib(self, X, Y) -> tuple:
        out = [NEG] * self.L
        for o, ix, iy in self._sib_rules:
            vx = X[ix]
            if vx <= NEG // 2:
                continue
            vy = Y[iy]
            if vy <= NEG // 2:
                continue
            if vx + vy > out[o]:
                out[o] = vx + vy
        return tuple(out)

    @staticmethod
    def _pareto(cands: dict) -> tuple:
        """Minimal profiles (and one provenance each), in a fixed order."""
        keep, froms = [], []
        for t in sorted(cands, key=lambda v: (sum(v), v)):
            if any(all(a <= b for a, b in zip(k, t)) for k in keep):
                continue
            keep.append(t)
            froms.append(cands[t])
        return keep, froms

    def alpha(self, t) -> int:
        """alpha_c of the 2-tree made of the root edge ab plus this child set."""
        best = t[0]
        for s, i in self.idx.items():
            if t[i] <= NEG // 2:
                continue
            best = max(best, t[i] + s[0] + s[1])
        return best

    def extend(self, m: int, budget: int | None = None, cap: int | None = None) -> None:
        """Compute ``S1[m]`` and ``A[m]`` (all smaller sizes must be present).

        With ``cap``, profiles whose (0,0) value exceeds it are dropped.  The
        test is monotone under domination, so a kept set still dominates
        every child set whose (0,0) value is at most ``cap``.
        """
        cands = {}
        for mx in range(m):
            my = m - 1 - mx
            for i, X in enumerate(self.A[mx]):
                for j, Y in enumerate(self.A[my]):
                    self.work += 1
                    t = self._child(X, Y)
                    if t not in cands:
                        cands[t] = ("child", (mx, i), (my, j))
            if budget is not None and self.work > budget:
                raise BudgetExceeded(f"profile search stopped at {m + 2} vertices")
        self.S1[m], self.S1_from[m] = self._capped(self._pareto(cands), cap)
        cands = {t: ("one", (m, i)) for i, t in enumerate(self.S1[m])}
        for j in range(1, m):
            for i1, t1 in enumerate(self.S1[j]):
                for i2, t2 in enumerate(self.A[m - j]):
                    self.work += 1
                    t = self._sib(t1, t2)
                    if t not in cands:
                        cands[t] = ("sib", (j, i1), (m - j, i2))
            if budget is not None and self.work > budget:
                raise BudgetExceeded(f"profile search stopped at {m + 2} vertices")
        self.A[m], self.A_from[m] = self._capped(self._pareto(cands), cap)

    @staticmethod
    def _capped(kept: tuple, cap: int | None) -> tuple:
        if cap is None:
            return kept
        pairs = [(t, f) for t, f in zip(*kept) if t[0] <= cap]
        return [t for t, _ in pairs], [f for _, f in pairs]

    def minimum(self, m: int) -> tuple:
        """(min alpha, index into A[m]) over 2-trees with m + 2 vertices.

        (None, -1) when every profile of that size was capped away.
        """
        vals = [(self.alpha(t), i) for i, t in enumerate(self.A[m])]
        return min(vals) if vals else (None, -1)

    def build(self, m: int, i: int) -> RootedTwoTree:
        att = []
        counter = [2]

        def grow_set(ref, u, v):
            mm, ii = ref
            how = self.A_from[mm][ii]
            if how[0] == "empty":
                return
            if how[0] == "one":
                grow_single(how[1], u, v)
                return
            grow_single(how[1], u, v)
            grow_set(how[2], u, v)

        def grow_single(ref, u, v):
            mm, ii = ref
            _, rx, ry = self.S1_from[mm][ii]
            w = counter[0]
            counter[0] += 1
            att.append((w, u, v))
            grow_set(rx, u, w)
            grow_set(ry, v, w)

        grow_set((m, i), 0, 1)
        return RootedTwoTree((0, 1), tuple(att))


def min_alpha_table(c: int, max_n: int, budget: int | None = None) -> list:
    """[(n, min alpha_c over 2-trees on n vertices)] for n = 2..max_n."""
    ps = ProfileSearch(c)
    out = [(2, ps.minimum(0)[0])]
    for m in range(1, max_n - 1):
        ps.extend(m, budget)
        out.append((m + 2, ps.minimum(m)[0]))
    return out


def _certified_floor(c: int, p: int, q: int) -> Fraction:
    """Largest certifiable ratio on the Stern-Brocot path to p/q, below it.

    Falls back to c/(c+3), the general peel bound for treewidth 2.
    """
    best = Fraction(c, c + 3)
    if c < 2:
        return best
    target = Fraction(p, q)
    lo, hi = (0, 1), (1, 1)
    while True:
        a, b = lo[0] + hi[0], lo[1] + hi[1]
        med = Fraction(a, b)
        if med == target:
            return best
        if med < target:
            if med > best and isinstance(certify(c, a, b), Certificate):
                best = med
            lo = (a, b)
        else:
            hi = (a, b)


def _caps(c: int, p: int, q: int, max_n: int) -> list:
    """caps[m]: the largest (0,0) value a child set with m inner vertices can
    have and still sit inside a 2-tree on n <= max_n vertices with alpha_c < pn/q.

    The (0,0) set avoids both endpoints, so it joins any clustered set of the
    other n - m - 2 vertices; those form a partial 2-tree and hold at least
    ceil(floor * (n - m - 2)) by a certificate.
    """
    fl = _certified_floor(c, p, q)

    def lb(r):
        return -(-fl.numerator * r // fl.denominator) if r > 0 else 0

    return [max(-(-p * n // q) - 1 - lb(n - m - 2) for n in range(m + 2, max_n + 1))
            for m in range(max_n - 1)]


def refute(c: int, p: int, q: int, max_n: int = 40, budget: int | None = 2_000_000,
           cert_result=None):
    """Look for a 2-tree with alpha_c/n < p/q on at most ``max_n`` vertices.

    Returns a :class:`Witness` or a :class:`NotFound`.  A successful
    certificate rules out any witness, so that case returns at once.
    """
    if cert_result is None:
        cert_result = certify(c, p, q)
    if isinstance(cert_result, Certificate):
        return NotFound("certified", 0)
    seed = cert_result
    base = seed_tree(seed, max_n)
    if base is not None:
        hit = _witness_if_below(base, c, p, q, "seed")
        if hit:
            return hit
        size = base.n - 2
        if size > 0:
            for copies in range(2, (max_n - 2) // size + 1):
                for make, name in ((chain_shared_edge, "chain-shared"), (chain_linear, "chain-linear")):
                    hit = _witness_if_below(make(base, copies), c, p, q, name)
                    if hit:
                        return hit
    return profile_search(c, p, q, max_n, budget)


def profile_search(c: int, p: int, q: int, max_n: int = 40, budget: int | None = 2_000_000):
    """Smallest 2-tree with alpha_c/n < p/q on at most ``max_n`` vertices.

    Child sets that cannot be part of such a tree are capped away, so the
    result is exact: a Witness, or NotFound("exhausted") proving none exists.
    """
    ps = ProfileSearch(c)
    caps = _caps(c, p, q, max_n)
    searched = 2
    try:
        for m in range(1, max_n - 1):
            ps.extend(m, budget, caps[m])
            searched = m + 2
            a, i = ps.minimum(m)
            if a is not None and q * a < p * (m + 2):
                hit = _witness_if_below(ps.build(m, i), c, p, q, "search")
                if hit is None:
                    raise AssertionError("profile search and tree DP disagree")
                return hit
    except BudgetExceeded:
        return NotFound("budget", searched)
    return NotFound("exhausted", searched)
