"""Extremal graph families used as upper-bound witnesses and fixtures."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, disjoint_union
from .models import KTreeModel, RootedTwoTree, edge_maximal_graph, recognize_tw2, two_tree_to_model

MAX_VERTICES = 200_000

FAMILIES = ("cary_tower", "path_clique", "gi_chain", "disjoint_copies")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: int | None = None
    c: int | None = None
    i: int | None = None
    copies: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        need = {"cary_tower": ("k", "c"), "path_clique": ("k", "c"), "gi_chain": ("i",),
                "disjoint_copies": ()}[self.family]
        for name in need:
            val = getattr(self, name)
            if val is None or val < 1:
                raise ValueError(f"{self.family} needs a positive {name}")
        if self.copies < 1:
            raise ValueError("copies must be >= 1")

    def build(self) -> tuple[Graph, KTreeModel]:
        if self.family == "cary_tower":
            g, m = cary_tower(self.k, self.c)
        elif self.family == "path_clique":
            g, m = path_clique(self.k, self.c)
        elif self.family == "gi_chain":
            g, t = gi_chain(self.i)
            m = two_tree_to_model(t)
        else:
            raise ValueError("disjoint_copies wraps another family; build that one and use disjoint_copies()")
        if self.copies > 1:
            g, m = disjoint_copies(g, m, self.copies)
        return g, m


def cary_tower(k: int, c: int, max_vertices: int = MAX_VERTICES) -> tuple[Graph, KTreeModel]:
    """Edge-maximal graph of the full c-ary tree of height k+1 labelled by depth.

    Every root-to-leaf path becomes a clique on k+1 vertices.
    """
    if k < 1 or c < 1:
        raise ValueError("k and c must be >= 1")
    n = k + 1 if c == 1 else (c ** (k + 1) - 1) // (c - 1)
    if n > max_vertices:
        raise ValueError(f"cary_tower({k},{c}) has {n} vertices, above the cap {max_vertices}")
    parent = {0: None}
    label = {0: 1}
    level = [0]
    nxt = 1
    for depth in range(1, k + 1):
        new_level = []
        for p in level:
            for _ in range(c):
                parent[nxt] = p
                label[nxt] = depth + 1
                new_level.append(nxt)
                nxt += 1
        level = new_level
    m = KTreeModel(k, 0, parent, label)
    return edge_maximal_graph(m, n), m


def path_clique(k: int, c: int) -> tuple[Graph, KTreeModel]:
    """Path model on ``k+c`` vertices: ``k`` universal vertices over ``c`` independent ones."""
    if k < 1 or c < 1:
        raise ValueError("k and c must be >= 1")
    n = k + c
    parent = {0: None}
    parent.update({i: i - 1 for i in range(1, n)})
    label = {i: (i + 1 if i < k else k + 1) for i in range(n)}
    m = KTreeModel(k, 0, parent, label)
    return edge_maximal_graph(m, n), m


# One copy of G_1 on local ids 0..9; copy j is shifted by 9j so that its v6
# (local 9) is the v1 (local 0) of copy j+1.
#   0: v1   1: v2   2: v3   3: v4   4: v5   9: v6      (v1, v3, v4, v6 white)
#   gray triangles {v2, 5, 6} and {v5, 7, 8}
# Whites v3 and v4 are ears on the edges 5-7 and 6-8 joining the triangles;
# v1 and v6 hang off v2 and v5.
_G1_EDGES = (
    (0, 1),
    (1, 5), (1, 6), (5, 6),
    (4, 7), (4, 8), (7, 8),
    (5, 7), (6, 8),
    (2, 5), (2, 7),
    (3, 6), (3, 8),
    (4, 9),
)
_G1_WHITE = (0, 2, 3, 9)
_G1_TRIANGLES = ((1, 5, 6), (4, 7, 8))


def gi_chain_parts(i: int) -> tuple[Graph, frozenset, list]:
    """G_i with its white set A and the partition of the rest into triangles."""
    if i < 1:
        raise ValueError("i must be >= 1")
    edges = set()
    white = set()
    triangles = []
    for j in range(i):
        off = 9 * j
        for u, v in _G1_EDGES:
            edges.add((u + off, v + off))
        white.update(w + off for w in _G1_WHITE)
        triangles.extend(tuple(x + off for x in t) for t in _G1_TRIANGLES)
        if j + 1 < i:
            # v5 of this copy to v2 of the next one
            edges.add((4 + off, 1 + off + 9))
    return Graph(9 * i + 1, edges), frozenset(white), triangles


def gi_chain(i: int) -> tuple[Graph, RootedTwoTree]:
    """G_i (9i+1 vertices, outerplanar) and a rooted 2-tree containing it."""
    g, _, _ = gi_chain_parts(i)
    return g, recognize_tw2(g)


def disjoint_copies(g: Graph, m: KTreeModel, copies: int) -> tuple[Graph, KTreeModel]:
    """``copies`` disjoint copies of ``g`` with one model: copy roots hang under the previous root.

    Extra ancestors above a copy never change a lowest-ancestor relation
    inside it, so the combined tree is a model of the union.
    """
    if copies < 1:
        raise ValueError("copies must be >= 1")
    n = g.n
    parent = {}
    label = {}
    for j in range(copies):
        off = j * n
        for v, p in m.parent.items():
            parent[v + off] = None if p is None else p + off
            label[v + off] = m.label[v]
        if j:
            parent[m.root + off] = m.root + off - n
    return disjoint_union([g] * copies), KTreeModel(m.k, m.root, parent, label)
