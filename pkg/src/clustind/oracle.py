"""Exact alpha_c and chi_c at desk scale.

Three independent routes: branch and bound over vertex subsets, a dynamic
program over a k-tree model, and exhaustive colouring for chi_c.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import ClusteredSet, Graph, mask_to_list
from .models import KTreeModel, RootedTwoTree, edge_maximal_graph, two_tree_to_model, validate_model

BRUTE_FORCE_MAX_N = 28
CHI_MAX_N = 12
DEFAULT_STATE_CAP = 2_000_000


class SizeCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class AlphaResult:
    """``exact`` is False only when a node budget ran out; ``value`` is then a lower bound."""

    value: int
    witness: ClusteredSet
    exact: bool = True
    nodes: int = 0

    def to_dict(self) -> dict:
        return {"alpha": self.value, "witness": self.witness.sorted(), "exact": self.exact}


def _component_sizes(masks: tuple, chosen: int) -> list:
    comps = []
    rest = chosen
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= masks[b.bit_length() - 1]
                f ^= b
            frontier = grow & chosen & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def alpha_exact_bruteforce(g: Graph, c: int, budget: int | None = None) -> AlphaResult:
    """Maximum c-clustered set by branch and bound (vertices in descending degree).

    A vertex is branched "in" first.  The bound counts the undecided vertices
    that could still be added one at a time; anything blocked stays blocked
    because components only grow along a branch.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise SizeCapExceeded(f"brute force is capped at {BRUTE_FORCE_MAX_N} vertices (got {n})")
    masks = g.masks
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))

    def addable(u: int, comps: list) -> bool:
        total = 1
        for comp in comps:
            if comp & masks[u]:
                total += comp.bit_count()
                if total > c:
                    return False
        return True

    # greedy start
    best_mask = 0
    for v in order:
        if addable(v, _component_sizes(masks, best_mask)):
            best_mask |= 1 << v
    best = [best_mask.bit_count(), best_mask]
    nodes = 0
    exhausted = False

    def search(i: int, chosen: int, size: int) -> None:
        nonlocal nodes, exhausted
        nodes += 1
        if budget is not None and nodes > budget:
            exhausted = True
            return
        if i == n:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        comps = _component_sizes(masks, chosen)
        free = sum(1 for u in order[i:] if addable(u, comps))
        if size + free <= best[0]:
            return
        v = order[i]
        if addable(v, comps):
            search(i + 1, chosen | (1 << v), size + 1)
            if exhausted:
                return
        search(i + 1, chosen, size)

    search(0, 0, 0)
    witness = ClusteredSet.checked(g, mask_to_list(best[1]), c)
    return AlphaResult(best[0], witness, exact=not exhausted, nodes=nodes)


# -- dynamic program over a k-tree model ------------------------------------


def _merge_blocks(blocks: Iterable, c: int):
    """Union blocks sharing a member; None when some merged block exceeds c."""
    merged = []
    for members, count in blocks:
        members = set(members)
        keep = []
        for other in merged:
            if other[0] & members:
                members |= other[0]
                count += other[1]
            else:
                keep.append(other)
        keep.append((members, count))
        merged = keep
    out = []
    for members, count in merged:
        if len(members) + count > c:
            return None
        out.append((tuple(sorted(members)), count))
    return tuple(sorted(out))


def _join_blocks(blocks: tuple, a: int, b: int, c: int):
    """Merge the blocks holding ``a`` and ``b`` (an edge of the graph)."""
    ia = next(i for i, blk in enumerate(blocks) if a in blk[0])
    ib = next(i for i, blk in enumerate(blocks) if b in blk[0])
    if ia == ib:
        return blocks
    (ma, ca), (mb, cb) = blocks[ia], blocks[ib]
    if len(ma) + len(mb) + ca + cb > c:
        return None
    rest = [blk for i, blk in enumerate(blocks) if i not in (ia, ib)]
    rest.append((tuple(sorted(ma + mb)), ca + cb))
    return tuple(sorted(rest))


def alpha_exact_treedp(model, g: Graph | None, c: int, state_cap: int = DEFAULT_STATE_CAP) -> AlphaResult:
    """Exact alpha_c by dynamic programming bottom-up over a k-tree model.

    ``model`` is a :class:`KTreeModel` or a :class:`RootedTwoTree`; ``g``
    defaults to the model's edge-maximal graph.  The state at a tree vertex
    ``v`` records which of the ancestors adjacent to the subtree below ``v``
    are selected, and how the selected ones are linked through the subtree,
    with the number of subtree vertices in each such block.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    if isinstance(model, RootedTwoTree):
        if g is None:
            g = model.graph()
        model = two_tree_to_model(model)
    elif g is None:
        g = edge_maximal_graph(model)
    if not isinstance(model, KTreeModel):
        raise TypeError("model must be a KTreeModel or RootedTwoTree")
    bad = validate_model(model, g)
    if bad:
        raise ValueError(f"model does not fit the graph: {bad[:3]}")

    depth = model.depth
    up = {v: [u for u in g.adj[v] if depth[u] < depth[v]] for v in model.parent}
    rel = {}
    tables = {}
    total_states = 0
    for v in reversed(model.preorder):
        kids = model.children[v]
        r = set(up[v])
        for u in kids:
            r |= rel[u]
        r.discard(v)
        rel[v] = r
        scope = sorted(r) + [v]
        grouped = []
        for u in kids:
            by_sel = {}
            for key, val in tables[u].items():
                by_sel.setdefault(key[0], []).append((key, val[0]))
            grouped.append((u, rel[u], by_sel))
        table = {}
        for size in range(len(scope) + 1):
            for sel in combinations(scope, size):
                sel_set = frozenset(sel)
                partial = {tuple(sorted(((x,), 0) for x in sel)): (0, ())}
                for u, ru, by_sel in grouped:
                    entries = by_sel.get(sel_set & ru, ())
                    nxt = {}
                    for blocks, (val, picks) in partial.items():
                        for key, cval in entries:
                            merged = _merge_blocks(blocks + key[1], c)
                            if merged is None:
                                continue
                            cand = (val + cval, picks + (key,))
                            old = nxt.get(merged)
                            if old is None or cand[0] > old[0]:
                                nxt[merged] = cand
                    partial = nxt
                    if not partial:
                        break
                v_in = v in sel_set
                for blocks, (val, picks) in partial.items():
                    if v_in:
                        for x in up[v]:
                            if x in sel_set and blocks is not None:
                                blocks = _join_blocks(blocks, v, x, c)
                        if blocks is None:
                            continue
                        forgotten = []
                        for members, count in blocks:
                            if v in members:
                                rest = tuple(x for x in members if x != v)
                                if rest:
                                    forgotten.append((rest, count + 1))
                            else:
                                forgotten.append((members, count))
                        blocks = tuple(sorted(forgotten))
                    key = (sel_set - {v}, blocks)
                    cand = (val + (1 if v_in else 0), v_in, picks)
                    old = table.get(key)
                    if old is None or cand[0] > old[0]:
                        table[key] = cand
        tables[v] = table
        total_states += len(table)
        if total_states > state_cap:
            raise SizeCapExceeded(f"tree DP exceeded {state_cap} states")

    root_key = (frozenset(), ())
    value = tables[model.root][root_key][0]
    chosen = []
    stack = [(model.root, root_key)]
    while stack:
        v, key = stack.pop()
        _, v_in, picks = tables[v][key]
        if v_in:
            chosen.append(v)
        for u, ukey in zip(model.children[v], picks):
            stack.append((u, ukey))
    witness = ClusteredSet.checked(g, chosen, c)
    if len(witness) != value:
        raise AssertionError("tree DP witness size disagrees with its value")
    return AlphaResult(value, witness, exact=True, nodes=total_states)


# -- clustered chromatic number ---------------------------------------------


def chi_clustered_exact(g: Graph, c: int) -> int:
    """Fewest colour classes, each c-clustered, covering ``g`` (n <= 12)."""
    if c < 1:
        raise ValueError("c must be >= 1")
    n = g.n
    if n > CHI_MAX_N:
        raise SizeCapExceeded(f"chi_c search is capped at {CHI_MAX_N} vertices (got {n})")
    if n == 0:
        return 0
    masks = g.masks
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))

    def comp_size(v: int, cls: int) -> int:
        comp = 1 << v
        frontier = comp
        while frontier:
            grow = 0
            for x in mask_to_list(frontier):
                grow |= masks[x]
            frontier = grow & cls & ~comp
            comp |= frontier
        return comp.bit_count()

    def colourable(t: int) -> bool:
        classes = [0] * t

        def place(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            # a fresh colour is only tried once: the unused ones are interchangeable
            for col in range(min(used + 1, t)):
                classes[col] |= 1 << v
                if comp_size(v, classes[col]) <= c and place(i + 1, max(used, col + 1)):
                    return True
                classes[col] &= ~(1 << v)
            return False

        return place(0, 0)

    t = 1
    while not colourable(t):
        t += 1
    return t
