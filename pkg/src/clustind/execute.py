"""Concrete execution of a certificate on a rooted 2-tree."""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Certificate, EngineError, TypeRecord, certify, root_endpoints
from .graph import ClusteredSet, Graph, components
from .models import RootedTwoTree, recognize_tw2


@dataclass(frozen=True)
class Piece:
    """A child set W of an oriented edge with its chosen set S_W.

    Threats are exact (uncapped); ``surplus`` is q|S_W| - p|inner|.
    """

    S: frozenset
    inner: frozenset
    surplus: int
    tu: int
    tv: int
    tm: int

    def key(self, c: int, p: int) -> TypeRecord:
        return TypeRecord(min(self.surplus, 2 * p), min(self.tu, c), min(self.tv, c), min(self.tm, c))


EMPTY = Piece(frozenset(), frozenset(), 0, 0, 0, 0)


class _Cut(Exception):
    def __init__(self, piece: Piece, u: int, v: int):
        self.piece, self.u, self.v = piece, u, v


def _check_piece(g: Graph, piece: Piece, u: int, v: int, c: int, p: int, q: int) -> None:
    """Recompute surplus and threats of ``piece`` from its concrete set."""
    if piece.S & {u, v} or not piece.S <= piece.inner:
        raise AssertionError(f"S_W for edge {u}-{v} leaves the inner vertices")
    if q * len(piece.S) - p * len(piece.inner) != piece.surplus:
        raise AssertionError(f"surplus bookkeeping off at edge {u}-{v}")
    tu = tv = tm = 0
    for comp in components(g, piece.S):
        if len(comp) > c:
            raise AssertionError(f"component of size {len(comp)} under edge {u}-{v}")
        at_u = any(x in g.adj[u] for x in comp)
        at_v = any(x in g.adj[v] for x in comp)
        if at_u and at_v:
            tm += len(comp)
        elif at_u:
            tu += len(comp)
        elif at_v:
            tv += len(comp)
    if (tu, tv, tm) != (piece.tu, piece.tv, piece.tm):
        raise AssertionError(f"threats at edge {u}-{v}: tracked {(piece.tu, piece.tv, piece.tm)}, actual {(tu, tv, tm)}")


def _single(cert: Certificate, px: Piece, py: Piece, w: int) -> Piece:
    """Piece for {w} from the pieces of its two child edges, as the strategy says."""
    c, p, q = cert.c, cert.p, cert.q
    entry = cert.child_entry(px.key(c, p), py.key(c, p))
    S = px.S | py.S
    inner = px.inner | py.inner | {w}
    if entry.choice == "include":
        merged = 1 + px.tv + px.tm + py.tv + py.tm
        if merged > c:
            raise EngineError("strategy includes w but the merged component is too large")
        return Piece(S | {w}, inner, px.surplus + py.surplus + q - p, px.tu, py.tu, merged)
    return Piece(S, inner, px.surplus + py.surplus - p, px.tu + px.tm, py.tu + py.tm, 0)


def _add(a: Piece, b: Piece) -> Piece:
    return Piece(a.S | b.S, a.inner | b.inner, a.surplus + b.surplus, a.tu + b.tu, a.tv + b.tv, a.tm + b.tm)


def _run_pass(tree: RootedTwoTree, g: Graph, cert: Certificate, verify: bool):
    """One bottom-up sweep.  Raises _Cut on a good set, else returns the root piece."""
    c, p = cert.c, cert.p
    listed = set(cert.types)
    kids = tree.edge_children()
    orient = tree.orientation()
    single = {}

    def known(piece: Piece, u: int, v: int) -> Piece:
        key = piece.key(c, p)
        if key.surplus >= 2 * p:
            raise _Cut(piece, u, v)
        if key not in listed:
            raise EngineError(f"type {key} at edge {u}-{v} is not in the certificate")
        if verify:
            _check_piece(g, piece, u, v, c, cert.p, cert.q)
        return piece

    def fold(u: int, v: int) -> Piece:
        acc = EMPTY
        for w in kids[(u, v)]:
            acc = known(_add(acc, single[w]), u, v)
        return acc

    for w, a, b in reversed(tree.attachments):
        x, y = orient[frozenset((a, b))]
        px = fold(x, w)
        py = fold(y, w)
        single[w] = known(_single(cert, px, py, w), x, y)
    return fold(*tree.root_edge)


def execute(t: RootedTwoTree, c: int, p: int, q: int, cert: Certificate | None = None,
            verify: bool = False, g: Graph | None = None) -> ClusteredSet:
    """c-clustered set S of the 2-tree with q|S| >= p*n, driven by a certificate.

    Good sets are cut off together with their parent edge; what remains is
    split into components, each re-completed to a 2-tree and handled the
    same way.  ``verify`` recomputes every tracked type from the concrete
    sets.  ``g`` may be any spanning subgraph of the 2-tree; the result is
    checked against it as well.
    """
    if cert is None:
        cert = certify(c, p, q)
        if not isinstance(cert, Certificate):
            raise EngineError(f"no certificate for c={c}, {p}/{q}")
    if (cert.c, cert.p, cert.q) != (c, p, q):
        raise EngineError("certificate parameters do not match")
    full = t.graph()
    chosen = set()
    work = [t]
    while work:
        tree = work.pop()
        # re-completed pieces carry fill edges, so each tree uses its own graph
        cur = tree.graph(full.n)
        try:
            root = _run_pass(tree, cur, cert, verify)
        except _Cut as cut:
            chosen |= cut.piece.S
            rest = set(tree.vertices()) - cut.piece.inner - {cut.u, cut.v}
            for comp in components(cur, rest):
                if len(comp) <= 2:
                    chosen |= comp
                else:
                    work.append(recognize_tw2(cur, comp))
            continue
        u0, v0 = tree.root_edge
        chosen |= root.S
        ends = root_endpoints(root.key(c, p), c)
        if "u" in ends:
            chosen.add(u0)
        if "v" in ends:
            chosen.add(v0)
    out = ClusteredSet.checked(full, chosen, c)
    if q * len(out) < p * t.n:
        raise AssertionError(f"execute produced {len(out)} vertices, below {p}/{q} of {t.n}")
    if g is not None:
        ClusteredSet.checked(g, chosen, c)
    return out

