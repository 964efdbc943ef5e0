"""Surplus/threat types over rooted 2-trees and closure certification.

For a set W of children of an edge uv (u listed first), a type records

* ``surplus`` = q|S_W| - p(|V(G_W)| - 2), absorbed at the good level 2p,
* ``threat_u`` / ``threat_v``: total size of the components of G[S_W]
  touching only u / only v,
* ``threat_common``: total size of the components touching both.

Threats are capped at c: a component set of total size >= c already stops
its endpoint from joining, so larger values behave identically.

``certify`` grows a set of types from the empty type until it is closed
under both ways of combining types.  A closed set whose members all pass the
root check proves x_{2,c} >= p/q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple


class EngineError(ValueError):
    pass


class TypeRecord(NamedTuple):
    surplus: int
    threat_u: int
    threat_v: int
    threat_common: int

    def projection(self) -> tuple:
        """Two-threat form ``(alpha, s, beta)``: common components count at both ends."""
        return (self.threat_u + self.threat_common, self.surplus, self.threat_v + self.threat_common)

    def label(self) -> str:
        a, s, b = self.projection()
        return f"_{a}({s})_{b}"

    def to_list(self) -> list:
        return list(self)


BASE = TypeRecord(0, 0, 0, 0)


class Candidate(NamedTuple):
    kind: str  # "include" or "exclude"
    raw_surplus: int
    type: TypeRecord


def _check_params(c: int, p: int, q: int) -> None:
    if c < 2:
        raise EngineError("the type engine needs c >= 2")
    if not 0 < p < q:
        raise EngineError(f"need 0 < p < q, got {p}/{q}")
    if gcd(p, q) != 1:
        raise EngineError(f"{p}/{q} is not in lowest terms")


def combine_sibling(t1: TypeRecord, t2: TypeRecord, c: int, p: int, q: int) -> TypeRecord:
    """Type of X u Y for disjoint child sets X, Y of the same edge."""
    return TypeRecord(
        min(t1.surplus + t2.surplus, 2 * p),
        min(t1.threat_u + t2.threat_u, c),
        min(t1.threat_v + t2.threat_v, c),
        min(t1.threat_common + t2.threat_common, c),
    )


def combine_child(tx: TypeRecord, ty: TypeRecord, c: int, p: int, q: int) -> list:
    """Candidate types of {w} from X (children of uw) and Y (children of vw).

    ``tx`` has its threats at (u, w, common) and ``ty`` at (v, w, common).
    Returns the feasible :class:`Candidate` list, include-w first; empty
    when neither option keeps the surplus non-negative.
    """
    out = []
    merged = 1 + tx.threat_v + tx.threat_common + ty.threat_v + ty.threat_common
    if merged <= c:
        raw = tx.surplus + ty.surplus + (q - p)
        if raw >= 0:
            out.append(Candidate("include", raw, TypeRecord(min(raw, 2 * p), tx.threat_u, ty.threat_u, merged)))
    raw = tx.surplus + ty.surplus - p
    if raw >= 0:
        out.append(Candidate("exclude", raw, TypeRecord(
            min(raw, 2 * p),
            min(tx.threat_u + tx.threat_common, c),
            min(ty.threat_u + ty.threat_common, c),
            0,
        )))
    return out


def root_bonus(t: TypeRecord, c: int) -> int:
    """How many root endpoints can join S_W0 (0, 1 or 2)."""
    if 2 + t.threat_u + t.threat_v + t.threat_common <= c:
        return 2
    if 1 + t.threat_u + t.threat_common <= c or 1 + t.threat_v + t.threat_common <= c:
        return 1
    return 0


def root_endpoints(t: TypeRecord, c: int) -> tuple:
    """Which endpoints to add at the root: a subset of ("u", "v")."""
    b = root_bonus(t, c)
    if b == 2:
        return ("u", "v")
    if b == 1:
        return ("u",) if 1 + t.threat_u + t.threat_common <= c else ("v",)
    return ()


def passes_root(t: TypeRecord, c: int, p: int, q: int) -> bool:
    return t.surplus + q * root_bonus(t, c) >= 2 * p


def _choose(cands: list, known: set, p: int):
    good = [x for x in cands if x.type.surplus >= 2 * p]
    if good:
        return good[0]
    inside = [x for x in cands if x.type in known]
    pool = inside or cands
    return max(pool, key=lambda x: (x.type.surplus, -x.type.threat_common, -(x.type.threat_u + x.type.threat_v)))


@dataclass(frozen=True)
class StrategyEntry:
    """One recorded combination: inputs, the option used and its output."""

    kind: str  # "sibling" or "child"
    left: TypeRecord
    right: TypeRecord
    choice: str  # "sum", "include" or "exclude"
    raw_surplus: int
    out: TypeRecord

    def to_list(self) -> list:
        return [self.kind, self.left.to_list(), self.right.to_list(), self.choice, self.raw_surplus, self.out.to_list()]

    @classmethod
    def from_list(cls, row: list) -> "StrategyEntry":
        kind, left, right, choice, raw, out = row
        return cls(kind, TypeRecord(*left), TypeRecord(*right), choice, raw, TypeRecord(*out))


@dataclass
class Certificate:
    c: int
    p: int
    q: int
    types: list
    strategy: dict = field(repr=False)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)

    def child_entry(self, tx: TypeRecord, ty: TypeRecord) -> StrategyEntry:
        try:
            return self.strategy[("child", tx, ty)]
        except KeyError:
            raise EngineError(f"certificate has no child strategy for {tx} / {ty}") from None

    def sibling_entry(self, t1: TypeRecord, t2: TypeRecord) -> StrategyEntry:
        key = ("sibling",) + (tuple(sorted((t1, t2))))
        try:
            return self.strategy[key]
        except KeyError:
            raise EngineError(f"certificate has no sibling entry for {t1} / {t2}") from None

    def root_table(self) -> dict:
        return {t: root_bonus(t, self.c) for t in self.types}

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "p": self.p,
            "q": self.q,
            "types": [t.to_list() for t in self.types],
            "root_bonus": [root_bonus(t, self.c) for t in self.types],
            "strategy": [e.to_list() for e in self.strategy.values()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        try:
            types = [TypeRecord(*t) for t in data["types"]]
            entries = [StrategyEntry.from_list(r) for r in data["strategy"]]
            c, p, q = int(data["c"]), int(data["p"]), int(data["q"])
        except (KeyError, TypeError, ValueError) as exc:
            raise EngineError(f"bad certificate JSON: {exc}") from None
        strategy = {}
        for e in entries:
            key = ("sibling",) + tuple(sorted((e.left, e.right))) if e.kind == "sibling" else ("child", e.left, e.right)
            strategy[key] = e
        return cls(c, p, q, types, strategy)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


@dataclass
class FailureSeed:
    """Why a closure search failed, with enough history to rebuild a 2-tree.

    ``reason`` is "no-candidate" (``pair`` = (X, Y) admits neither option),
    "root" (``type`` fails the root check) or "budget".  ``derivation``
    maps every type found to how it was first produced.
    """

    c: int
    p: int
    q: int
    reason: str
    pair: tuple | None = None
    type: TypeRecord | None = None
    derivation: dict = field(default_factory=dict, repr=False)
    types_seen: int = 0

    def to_dict(self) -> dict:
        out = {"c": self.c, "p": self.p, "q": self.q, "reason": self.reason, "types_seen": self.types_seen}
        if self.pair is not None:
            out["pair"] = [t.to_list() for t in self.pair]
        if self.type is not None:
            out["type"] = self.type.to_list()
        return out


def certify(c: int, p: int, q: int, max_types: int = 200_000):
    """Closure search for x_{2,c} >= p/q.  Returns a Certificate or a FailureSeed.

    Pairs are processed in discovery order: when the i-th type appears it is
    combined with every earlier type (both child orders and the sibling
    sum), so the result is deterministic.  A new type failing the root
    check ends the search at once.
    """
    _check_params(c, p, q)
    types = [BASE]
    known = {BASE}
    derivation = {BASE: ("base",)}
    strategy = {}

    def seed(reason, **kw):
        return FailureSeed(c, p, q, reason, derivation=derivation, types_seen=len(types), **kw)

    if not passes_root(BASE, c, p, q):
        return seed("root", type=BASE)
    i = 0
    while i < len(types):
        a = types[i]
        for j in range(i + 1):
            b = types[j]
            found = []
            s = combine_sibling(a, b, c, p, q)
            lo, hi = sorted((a, b))
            strategy[("sibling", lo, hi)] = StrategyEntry("sibling", lo, hi, "sum", a.surplus + b.surplus, s)
            found.append((s, ("sibling", lo, hi)))
            for x, y in ((a, b), (b, a)) if a != b else ((a, b),):
                cands = combine_child(x, y, c, p, q)
                if not cands:
                    return seed("no-candidate", pair=(x, y))
                pick = _choose(cands, known, p)
                strategy[("child", x, y)] = StrategyEntry("child", x, y, pick.kind, pick.raw_surplus, pick.type)
                found.append((pick.type, ("child", pick.kind, x, y)))
            for t, how in found:
                if t.surplus >= 2 * p or t in known:
                    continue
                known.add(t)
                types.append(t)
                derivation[t] = how
                if not passes_root(t, c, p, q):
                    return seed("root", type=t)
                if len(types) > max_types:
                    return seed("budget")
        i += 1
    return Certificate(c, p, q, types, strategy)


def verify_certificate(cert: Certificate) -> list:
    """Re-check a certificate from its data alone; returns a list of problems.

    Checks: the empty type is present, every recorded choice is a legal
    candidate with the right surplus arithmetic, every pair of listed types
    has entries whose outputs are good or listed, and every listed type
    passes the root check.
    """
    c, p, q = cert.c, cert.p, cert.q
    problems = []
    try:
        _check_params(c, p, q)
    except EngineError as exc:
        return [str(exc)]
    listed = set(cert.types)
    if BASE not in listed:
        problems.append("empty type missing")
    for t in cert.types:
        if t.surplus < 0 or t.surplus >= 2 * p:
            problems.append(f"type {t} has surplus outside [0, 2p)")
        if max(t.threat_u, t.threat_v, t.threat_common) > c or min(t[1:]) < 0:
            problems.append(f"type {t} has threats outside [0, c]")
        if not passes_root(t, c, p, q):
            problems.append(f"type {t} fails the root check")

    def closed(out: TypeRecord) -> bool:
        return out.surplus >= 2 * p or out in listed

    for a in cert.types:
        for b in cert.types:
            if a <= b:
                e = cert.strategy.get(("sibling", a, b))
                if e is None:
                    problems.append(f"no sibling entry for {a} / {b}")
                elif e.out != combine_sibling(a, b, c, p, q) or e.raw_surplus != a.surplus + b.surplus:
                    problems.append(f"sibling entry for {a} / {b} has wrong output")
                elif not closed(e.out):
                    problems.append(f"sibling {a} / {b} leaves the closure")
            e = cert.strategy.get(("child", a, b))
            if e is None:
                problems.append(f"no child entry for {a} / {b}")
                continue
            legal = {(x.kind, x.raw_surplus, x.type) for x in combine_child(a, b, c, p, q)}
            if (e.choice, e.raw_surplus, e.out) not in legal:
                problems.append(f"child entry for {a} / {b} is not a legal option")
            elif not closed(e.out):
                problems.append(f"child {a} / {b} leaves the closure")
    return problems


def surplus_delta(entry: StrategyEntry, p: int, q: int) -> int:
    """The surplus change a combination adds on top of the two input surpluses."""
    return {"sum": 0, "include": q - p, "exclude": -p}[entry.choice]
