"""Undirected simple graphs on dense integer ids and clustered vertex sets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    """Malformed graph data (loops, duplicate edges, ids out of range)."""


class NotClusteredError(ValueError):
    pass


@dataclass(frozen=True, init=False)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``edges`` holds pairs ``(u, v)`` with ``u < v``. Adjacency is stored both as
    frozensets and as int bitmasks; the masks drive the exact oracles.
    """

    n: int
    edges: frozenset
    adj: tuple = field(repr=False, compare=False)
    masks: tuple = field(repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        seen = set()
        nbrs = [set() for _ in range(n)]
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key[0]}-{key[1]}")
            seen.add(key)
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))
        object.__setattr__(self, "masks", tuple(_to_mask(s) for s in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def with_edges(self, extra: Iterable) -> "Graph":
        """Supergraph with ``extra`` edges added (already-present ones skipped)."""
        new = set(self.edges)
        for u, v in extra:
            new.add((min(u, v), max(u, v)))
        return Graph(self.n, new)

    def without_vertices(self, vs: Iterable[int]) -> "Graph":
        """Same vertex ids, every edge touching ``vs`` dropped."""
        drop = set(vs)
        return Graph(self.n, [e for e in self.edges if e[0] not in drop and e[1] not in drop])

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph relabelled to ``0..len(keep)-1``; returns it with the old ids."""
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        es = [(new_id[u], new_id[v]) for u, v in self.edges if u in new_id and v in new_id]
        return Graph(len(old), es), old

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            n = data["n"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"graph JSON needs 'n' and 'edges': {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphError("'n' must be an integer")
        for e in edges:
            if len(e) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
                raise GraphError(f"bad edge entry {e!r}")
        return cls(n, edges)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, highlight: Iterable[int] = (), name: str = "G") -> str:
        marked = set(highlight)
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            style = ' style=filled fillcolor="#9ecae1"' if v in marked else ""
            lines.append(f'  {v} [label="{v}"{style}];')
        for u, v in self.sorted_edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def mask_to_list(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check_subset(g: Graph, s: Iterable[int]) -> set:
    vs = set(s)
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise GraphError(f"vertex {v!r} out of range for n={g.n}")
    return vs


def components(g: Graph, s: Iterable[int]) -> list:
    """Connected components of ``g[s]``, each a frozenset, ordered by smallest member."""
    remaining = _check_subset(g, s)
    out = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        comp = {start}
        remaining.discard(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in remaining:
                    remaining.discard(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def is_c_clustered(g: Graph, s: Iterable[int], c: int) -> bool:
    if c < 1:
        raise ValueError("cluster cap c must be >= 1")
    return all(len(comp) <= c for comp in components(g, s))


def disjoint_union(gs: Iterable[Graph]) -> Graph:
    """Vertex-disjoint union; the i-th graph's ids are shifted by the sizes before it."""
    offset = 0
    edges = []
    for g in gs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


@dataclass(frozen=True)
class ClusteredSet:
    """A vertex set together with the cap ``c`` it was verified against."""

    c: int
    vertices: frozenset

    @classmethod
    def checked(cls, g: Graph, vertices: Iterable[int], c: int) -> "ClusteredSet":
        vs = frozenset(vertices)
        comps = components(g, vs)
        big = [sorted(comp) for comp in comps if len(comp) > c]
        if big:
            raise NotClusteredError(f"components larger than {c}: {big[:3]}")
        return cls(c, vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list:
        return sorted(self.vertices)
