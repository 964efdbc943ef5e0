"""k-tree models ``(T, L)`` and rooted 2-trees.

A k-tree model is a rooted tree ``T`` on the vertices of a graph plus a
labelling into ``1..k+1`` such that every graph edge joins two differently
labelled vertices, one of which is the lowest ancestor of the other carrying
its label.  A rooted 2-tree is stored as its construction sequence: a base
edge followed by ``(w, a, b)`` attachments of a new vertex ``w`` to an
existing edge ``ab``.
"""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .graph import Graph, GraphError, components


class ModelError(ValueError):
    pass


class NotTreewidthTwo(ValueError):
    """Raised by :func:`recognize_tw2`; ``core`` is a vertex set of min degree >= 3."""

    def __init__(self, core):
        self.core = frozenset(core)
        super().__init__(f"graph has treewidth > 2 (min-degree-3 core {sorted(self.core)})")


@dataclass(frozen=True)
class KTreeModel:
    k: int
    root: int
    parent: Mapping
    label: Mapping

    def __post_init__(self):
        if self.k < 0:
            raise ModelError("width k must be >= 0")
        parent = dict(self.parent)
        label = dict(self.label)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "label", label)
        if set(parent) != set(label):
            raise ModelError("parent and label maps cover different vertex sets")
        if self.root not in parent or parent[self.root] is not None:
            raise ModelError("root must be present and have no parent")
        for v, p in parent.items():
            if v != self.root and p not in parent:
                raise ModelError(f"vertex {v} has unknown parent {p}")
        for v, lab in label.items():
            if not 1 <= lab <= self.k + 1:
                raise ModelError(f"label {lab} of vertex {v} outside 1..{self.k + 1}")
        if len(self.preorder) != len(parent):
            raise ModelError("parent links contain a cycle or do not reach the root")

    # -- structure ---------------------------------------------------------

    @cached_property
    def children(self) -> dict:
        ch = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                ch[p].append(v)
        return {v: tuple(sorted(c)) for v, c in ch.items()}

    @cached_property
    def preorder(self) -> tuple:
        order = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
            if len(order) > len(self.parent):
                break
        return tuple(order)

    @cached_property
    def depth(self) -> dict:
        d = {self.root: 0}
        for v in self.preorder[1:]:
            d[v] = d[self.parent[v]] + 1
        return d

    @cached_property
    def lowest_by_label(self) -> dict:
        """``v -> {label: lowest proper ancestor of v with that label}``."""
        out = {}
        for v in self.preorder:
            p = self.parent[v]
            if p is None:
                out[v] = {}
            else:
                table = dict(out[p])
                table[self.label[p]] = p
                out[v] = table
        return out

    @property
    def vertices(self) -> list:
        return sorted(self.parent)

    def __len__(self) -> int:
        return len(self.parent)

    def height(self) -> int:
        return max(self.depth.values()) + 1

    def is_ancestor(self, a: int, v: int) -> bool:
        """True when ``a`` is a proper ancestor of ``v``."""
        p = self.parent[v]
        while p is not None:
            if p == a:
                return True
            p = self.parent[p]
        return False

    def subtree(self, v: int) -> list:
        out = []
        stack = [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return out

    def parents_in(self, g: Graph, v: int) -> list:
        """Neighbours of ``v`` in ``g`` that are ancestors of ``v``, highest first."""
        d = self.depth
        return sorted((u for u in g.adj[v] if u in d and d[u] < d[v]), key=d.__getitem__)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        n = len(self.parent)
        if set(self.parent) != set(range(n)):
            raise ModelError("JSON export needs vertex ids 0..n-1")
        return {
            "k": self.k,
            "root": self.root,
            "parent": [-1 if self.parent[v] is None else self.parent[v] for v in range(n)],
            "label": [self.label[v] for v in range(n)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KTreeModel":
        try:
            parent = data["parent"]
            label = data["label"]
            k = data["k"]
            root = data["root"]
        except (KeyError, TypeError) as exc:
            raise ModelError(f"model JSON needs k, root, parent, label: {exc}") from None
        if len(parent) != len(label):
            raise ModelError("parent and label arrays differ in length")
        par = {v: (None if p == -1 else p) for v, p in enumerate(parent)}
        return cls(k, root, par, dict(enumerate(label)))

    @classmethod
    def from_arrays(cls, k: int, parent: list, label: list) -> "KTreeModel":
        roots = [v for v, p in enumerate(parent) if p in (-1, None)]
        if len(roots) != 1:
            raise ModelError(f"expected exactly one root, found {roots}")
        par = {v: (None if p in (-1, None) else p) for v, p in enumerate(parent)}
        return cls(k, roots[0], par, dict(enumerate(label)))


class Violation(NamedTuple):
    u: int
    v: int
    reason: str


def validate_model(m: KTreeModel, g: Graph) -> list:
    """Check ``m`` against ``g``; an empty list means the model is valid.

    Vertices of ``g`` missing from the model are tolerated only when isolated,
    which lets a contracted model be checked against ``g`` with edges removed.
    """
    out = []
    low = m.lowest_by_label
    for v in m.parent:
        if not 0 <= v < g.n:
            out.append(Violation(v, v, "vertex not in graph"))
    for u, v in g.sorted_edges():
        if u not in m.parent or v not in m.parent:
            out.append(Violation(u, v, "endpoint missing from model"))
            continue
        if m.label[u] == m.label[v]:
            out.append(Violation(u, v, "equal labels"))
            continue
        if low[v].get(m.label[u]) == u or low[u].get(m.label[v]) == v:
            continue
        out.append(Violation(u, v, "not lowest ancestor"))
    return out


def edge_maximal_graph(m: KTreeModel, n: int | None = None) -> Graph:
    """Join every vertex to its lowest ancestor of each other label."""
    if n is None:
        n = max(m.parent) + 1
    edges = []
    for v, table in m.lowest_by_label.items():
        for lab, a in table.items():
            if lab != m.label[v]:
                edges.append((a, v))
    return Graph(n, edges)


def contract_discard(m: KTreeModel, v: int) -> KTreeModel:
    """Remove ``v`` by hanging its tree children under its immediate ancestor."""
    p = m.parent[v]
    if p is None:
        raise ModelError("cannot contract the root")
    parent = {x: (p if q == v else q) for x, q in m.parent.items() if x != v}
    label = {x: lab for x, lab in m.label.items() if x != v}
    return KTreeModel(m.k, m.root, parent, label)


def delete_vertices(m: KTreeModel, vs: Iterable[int]) -> KTreeModel | None:
    """Contract every vertex of ``vs`` away; returns None when nothing is left.

    A deleted root is replaced by its first remaining child, with the other
    children hung beneath it.  Extra ancestors above a subtree never change a
    lowest-ancestor relation inside it, so the result stays a valid model.
    """
    drop = set(vs)
    parent = dict(m.parent)
    children = {x: list(c) for x, c in m.children.items()}
    root = m.root
    for v in [x for x in m.preorder if x in drop]:
        p = parent.pop(v)
        kids = children.pop(v)
        if p is not None:
            children[p].remove(v)
            for x in kids:
                parent[x] = p
            children[p].extend(kids)
        elif kids:
            root = kids[0]
            parent[root] = None
            for x in kids[1:]:
                parent[x] = root
            children[root].extend(kids[1:])
        else:
            root = None
    if not parent:
        return None
    label = {x: m.label[x] for x in parent}
    return KTreeModel(m.k, root, parent, label)


def normalize_distinct_tree_edge_labels(m: KTreeModel, g: Graph | None = None) -> KTreeModel:
    """Return a model of the same graph in which no tree edge joins equal labels.

    A tree edge ``(parent(u), u)`` with equal labels is removed either by
    re-hanging the subtree of ``u`` under the lowest ancestor with a different
    label, or, when no such ancestor exists (the subtree is then not joined to
    the rest of the graph), by swapping label ``L(u)`` with another one inside
    the subtree.  Each step fixes one bad tree edge and creates none.
    """
    parent = dict(m.parent)
    label = dict(m.label)
    cap = max(1, len(parent)) ** 2
    for _ in range(cap + 1):
        cur = KTreeModel(m.k, m.root, parent, label)
        bad = next((u for u in cur.preorder[1:] if label[parent[u]] == label[u]), None)
        if bad is None:
            if g is not None and validate_model(cur, g):
                raise ModelError("normalization produced an invalid model")
            return cur
        w = parent[bad]
        while w is not None and label[w] == label[bad]:
            w = parent[w]
        if w is not None:
            parent[bad] = w
        else:
            if m.k == 0:
                raise ModelError("a width-0 model cannot be normalized")
            old = label[bad]
            new = 1 if old != 1 else 2
            for x in cur.subtree(bad):
                if label[x] == old:
                    label[x] = new
                elif label[x] == new:
                    label[x] = old
    raise ModelError(f"normalization did not finish within {cap} steps")


# -- rooted 2-trees ----------------------------------------------------------


@dataclass(frozen=True)
class RootedTwoTree:
    """A 2-tree given by its base edge and ordered ``(w, a, b)`` attachments.

    Every edge is oriented parent-first: the base edge as given, and an
    attachment ``(w, a, b)`` creates ``(a, w)`` and ``(b, w)``.
    """

    root_edge: tuple
    attachments: tuple = ()

    def __post_init__(self):
        u0, v0 = self.root_edge
        if u0 == v0:
            raise ModelError("root edge needs two distinct vertices")
        object.__setattr__(self, "root_edge", (u0, v0))
        att = tuple(tuple(x) for x in self.attachments)
        object.__setattr__(self, "attachments", att)
        present = {u0, v0}
        edges = {frozenset((u0, v0))}
        for w, a, b in att:
            if w in present:
                raise ModelError(f"vertex {w} attached twice")
            if frozenset((a, b)) not in edges:
                raise ModelError(f"attachment of {w} to non-edge {a}-{b}")
            present.add(w)
            edges.add(frozenset((a, w)))
            edges.add(frozenset((b, w)))

    @property
    def n(self) -> int:
        return 2 + len(self.attachments)

    def vertices(self) -> list:
        return list(self.root_edge) + [w for w, _, _ in self.attachments]

    def oriented_edges(self) -> list:
        out = [self.root_edge]
        for w, a, b in self.attachments:
            out.append((a, w))
            out.append((b, w))
        return out

    def edge_children(self) -> dict:
        """Ordered edge ``(x, y)`` -> list of vertices attached to it, in order."""
        orient = {}
        kids = {}
        for e in self.oriented_edges():
            orient[frozenset(e)] = e
            kids[e] = []
        for w, a, b in self.attachments:
            kids[orient[frozenset((a, b))]].append(w)
        return kids

    def orientation(self) -> dict:
        return {frozenset(e): e for e in self.oriented_edges()}

    def graph(self, n: int | None = None) -> Graph:
        vs = self.vertices()
        if n is None:
            n = max(vs) + 1
        return Graph(n, [tuple(e) for e in self.oriented_edges()])

    def relabel(self, mapping: Mapping) -> "RootedTwoTree":
        u0, v0 = self.root_edge
        return RootedTwoTree(
            (mapping[u0], mapping[v0]),
            tuple((mapping[w], mapping[a], mapping[b]) for w, a, b in self.attachments),
        )

    def compact(self) -> tuple["RootedTwoTree", list]:
        """Relabel to ids ``0..n-1`` in construction order; returns the old ids too."""
        old = self.vertices()
        return self.relabel({v: i for i, v in enumerate(old)}), old

    def to_dict(self) -> dict:
        return {"root_edge": list(self.root_edge), "attach": [list(a) for a in self.attachments]}

    @classmethod
    def from_dict(cls, data: dict) -> "RootedTwoTree":
        try:
            return cls(tuple(data["root_edge"]), tuple(tuple(a) for a in data.get("attach", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"bad 2-tree JSON: {exc}") from None


def recognize_tw2(g: Graph, vertices: Iterable[int] | None = None) -> RootedTwoTree:
    """Complete a connected graph of treewidth <= 2 to a rooted 2-tree.

    Vertices of degree <= 2 are eliminated smallest-id first; a degree-2
    vertex joins its two neighbours by a fill edge, a degree-1 vertex is
    attached to its neighbour plus one further neighbour of it.  Reversing
    the elimination order gives the construction sequence.  ``vertices``
    restricts the work to one component of ``g``.
    """
    vs = set(range(g.n)) if vertices is None else set(vertices)
    if len(vs) < 2:
        raise GraphError("a rooted 2-tree needs at least two vertices")
    if len(components(g, vs)) != 1:
        raise GraphError("recognize_tw2 expects a connected graph")
    nb = {v: set(g.adj[v]) & vs for v in vs}
    heap = [(len(nb[v]), v) for v in vs]
    heapq.heapify(heap)
    alive = set(vs)
    order = []
    while len(alive) > 2:
        while heap and (heap[0][1] not in alive or heap[0][0] != len(nb[heap[0][1]])):
            heapq.heappop(heap)
        if not heap or heap[0][0] > 2:
            raise NotTreewidthTwo(alive)
        _, x = heapq.heappop(heap)
        ns = sorted(nb[x])
        if len(ns) == 2:
            a, b = ns
            if b not in nb[a]:
                nb[a].add(b)
                nb[b].add(a)
        else:
            (a,) = ns
            b = min(nb[a] - {x})
        for y in ns:
            nb[y].discard(x)
        for y in {a, b}:
            heapq.heappush(heap, (len(nb[y]), y))
        alive.discard(x)
        del nb[x]
        order.append((x, a, b))
    u0, v0 = sorted(alive)
    return RootedTwoTree((u0, v0), tuple(reversed(order)))


def two_tree_to_model(t: RootedTwoTree) -> KTreeModel:
    """2-tree model rooted at ``u0`` whose edge-maximal graph is the 2-tree."""
    u0, v0 = t.root_edge
    parent = {u0: None, v0: u0}
    label = {u0: 1, v0: 2}
    depth = {u0: 0, v0: 1}
    for w, a, b in t.attachments:
        lower = a if depth[a] > depth[b] else b
        parent[w] = lower
        depth[w] = depth[lower] + 1
        (label[w],) = {1, 2, 3} - {label[a], label[b]}
    return KTreeModel(2, u0, parent, label)


def model_to_two_tree(m: KTreeModel, g: Graph | None = None) -> RootedTwoTree:
    """Read a construction sequence off a width-2 model whose graph is a 2-tree."""
    if m.k != 2:
        raise ModelError(f"model_to_two_tree needs k=2, got k={m.k}")
    full = edge_maximal_graph(m)
    if g is not None and set(g.edges) != set(full.edges):
        raise ModelError("graph is not the edge-maximal graph of the model")
    root_edge = None
    att = []
    for x in m.preorder[1:]:
        ps = m.parents_in(full, x)
        if len(ps) == 1 and root_edge is None and ps[0] == m.root:
            root_edge = (m.root, x)
        elif len(ps) == 2:
            att.append((x, ps[0], ps[1]))
        else:
            raise ModelError(f"vertex {x} has {len(ps)} parents; graph is not a 2-tree")
    if root_edge is None:
        raise ModelError("model has fewer than two vertices")
    return RootedTwoTree(root_edge, tuple(att))


# -- random instances --------------------------------------------------------


def random_ktree(k: int, n: int, seed: int) -> tuple[Graph, KTreeModel]:
    """Random k-tree on ``n`` vertices with a model; deterministic in the seed.

    Starts from a labelled path model of ``K_{k+1}``.  Each new vertex picks a
    uniform vertex ``v`` that already has ``k`` parents, drops one of them at
    random, and hangs below ``v`` with the dropped parent's label.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < k + 1:
        raise ValueError(f"a k-tree needs n >= k+1 (k={k}, n={n})")
    rng = random.Random(seed)
    parent = {0: None}
    label = {0: 1}
    parents_of = {0: []}
    for i in range(1, k + 1):
        parent[i] = i - 1
        label[i] = i + 1
        parents_of[i] = list(range(i))
    full = [k]
    for x in range(k + 1, n):
        v = rng.choice(full)
        drop = rng.randrange(k)
        ps = parents_of[v]
        parent[x] = v
        label[x] = label[ps[drop]]
        parents_of[x] = ps[:drop] + ps[drop + 1:] + [v]
        full.append(x)
    m = KTreeModel(k, 0, parent, label)
    edges = [(p, x) for x, ps in parents_of.items() for p in ps]
    return Graph(n, edges), m


def random_partial_ktree(k: int, n: int, seed: int, keep: float = 0.6) -> tuple[Graph, KTreeModel]:
    """Random spanning-ish subgraph of :func:`random_ktree`, same model."""
    g, m = random_ktree(k, n, seed)
    rng = random.Random(seed * 7919 + 1)
    return Graph(n, [e for e in g.sorted_edges() if rng.random() < keep]), m


def random_two_tree(n: int, seed: int) -> RootedTwoTree:
    """Random rooted 2-tree on ``0..n-1``: each vertex attaches to a uniform edge."""
    if n < 2:
        raise ValueError("a 2-tree needs n >= 2")
    rng = random.Random(seed)
    edges = [(0, 1)]
    att = []
    for w in range(2, n):
        a, b = rng.choice(edges)
        att.append((w, a, b))
        edges.append((a, w))
        edges.append((b, w))
    return RootedTwoTree((0, 1), tuple(att))


# -- JSON helpers ------------------------------------------------------------


def load_model(data: dict) -> KTreeModel:
    """Accept either model JSON or 2-tree JSON (converted to a width-2 model)."""
    if "root_edge" in data:
        return two_tree_to_model(RootedTwoTree.from_dict(data))
    return KTreeModel.from_dict(data)


def load_model_text(text: str) -> KTreeModel:
    return load_model(json.loads(text))
