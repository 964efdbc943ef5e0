"""Constructive lower bounds for alpha_c on graphs with a k-tree model.

``clustered_general`` and ``clustered_k1`` peel off subtrees of the model;
``clustered_c2_tokens`` runs the token procedure for c = 2 and checks its
invariants while it goes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .graph import ClusteredSet, Graph, components
from .models import KTreeModel, ModelError, edge_maximal_graph, normalize_distinct_tree_edge_labels, validate_model


class InvariantViolation(AssertionError):
    """One of the token procedure's invariants failed; carries a trace."""

    def __init__(self, message: str, trace: list):
        super().__init__(message + "\n  recent steps: " + "; ".join(trace[-8:]))
        self.trace = trace


def _check_model(m: KTreeModel, g: Graph) -> None:
    bad = validate_model(m, g)
    if bad:
        raise ModelError(f"invalid model: {bad[:3]}")


def _live_descendant_counts(m: KTreeModel, live: set) -> dict:
    counts = {}
    for v in reversed(m.preorder):
        total = 0
        for u in m.children[v]:
            total += counts[u] + (1 if u in live else 0)
        counts[v] = total
    return counts


def _upper_neighbours(m: KTreeModel, v: int, live: set) -> set:
    """Lowest live ancestor of ``v`` for each label other than ``L(v)``.

    These are the neighbours of ``v`` above it in the edge-maximal graph of
    the contracted model, so they cover every edge leaving the subtree.
    """
    found = {}
    x = m.parent[v]
    while x is not None and len(found) < m.k:
        lab = m.label[x]
        if x in live and lab != m.label[v] and lab not in found:
            found[lab] = x
        x = m.parent[x]
    return set(found.values())


def _peel(m: KTreeModel, c: int, drop_neighbours: bool) -> list:
    """Repeatedly take the descendants A of a lowest vertex v with >= c of them.

    Removed vertices stay in the tree but are marked dead; ancestry among the
    survivors is what contraction would leave, so no model rebuild is needed.
    """
    live = set(m.parent)
    taken = []
    depth = m.depth
    while True:
        counts = _live_descendant_counts(m, live)
        cands = [v for v in live if counts[v] >= c]
        if not cands:
            break
        v = min(cands, key=lambda x: (-depth[x], x))
        a = [x for x in m.subtree(v) if x != v and x in live]
        taken.extend(a)
        gone = set(a) | {v}
        if drop_neighbours:
            gone |= _upper_neighbours(m, v, live)
        live -= gone
    # what is left is a forest of pieces with fewer than c+1 vertices each
    taken.extend(live)
    return taken


def clustered_general(m: KTreeModel, g: Graph, c: int) -> ClusteredSet:
    """c-clustered set of size >= ceil(c*n/(k+c+1)) for any graph with model ``m``."""
    if c < 1:
        raise ValueError("c must be >= 1")
    _check_model(m, g)
    taken = _peel(m, c, drop_neighbours=True)
    taken.extend(v for v in range(g.n) if v not in m.parent)
    return ClusteredSet.checked(g, taken, c)


def clustered_k1(m: KTreeModel, g: Graph, c: int) -> ClusteredSet:
    """c-clustered set of size >= ceil(c*n/(c+1)) in a forest with a 1-tree model.

    After normalization no descendant of v reaches past v, so only
    A and v itself are removed per step.
    """
    if m.k != 1:
        raise ValueError("clustered_k1 needs a 1-tree model")
    if c < 1:
        raise ValueError("c must be >= 1")
    _check_model(m, g)
    m = normalize_distinct_tree_edge_labels(m, g)
    taken = _peel(m, c, drop_neighbours=False)
    taken.extend(v for v in range(g.n) if v not in m.parent)
    return ClusteredSet.checked(g, taken, c)


# -- the c = 2 token procedure -----------------------------------------------

UNDECIDED, TAKEN, DISCARDED = 0, 1, 2


@dataclass
class TokenState:
    """Mutable state of one token run.

    ``par[x]`` holds the current parents of x (adjacent ancestors still in
    the model) and ``chi[x]`` the current children.  ``tree`` is the
    contracted model's parent map.  Artificial vertices from the
    replacement step get ids >= n.
    """

    k: int
    n: int
    adj: dict
    par: dict
    chi: dict
    tree: dict
    label: dict
    depth: dict
    status: dict
    tokens: dict
    granted: int = 0
    spent: int = 0
    stranded: int = 0
    pending: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    steps: int = 0

    @property
    def S(self) -> set:
        return {v for v, st in self.status.items() if st == TAKEN}

    @property
    def D(self) -> set:
        return {v for v, st in self.status.items() if st == DISCARDED}

    def s(self, v: int) -> int:
        return sum(1 for x in self.chi[v] if self.status[x] == TAKEN)

    def undecided_children(self, v: int) -> list:
        return sorted(x for x in self.chi[v] if self.status[x] == UNDECIDED)

    def model(self) -> KTreeModel:
        """The current contracted model over taken and undecided vertices."""
        live = set(self.tree)
        roots = sorted((x for x, p in self.tree.items() if p is None), key=lambda x: (self.depth[x], x))
        parent = dict(self.tree)
        for extra in roots[1:]:
            parent[extra] = roots[0]
        return KTreeModel(self.k, roots[0], parent, {x: self.label[x] for x in live})

    # -- invariant checks ---------------------------------------------------

    def check(self, vs) -> None:
        k = self.k
        for v in vs:
            st = self.status.get(v)
            if st is None or st == DISCARDED:
                continue
            und = self.undecided_children(v)
            s = self.s(v)
            if st == TAKEN:
                if und:
                    self.fail(f"I1: taken {v} has undecided children {und}")
                if s > 1:
                    self.fail(f"I1: taken {v} has {s} taken children")
                if s == 1 and self.par[v]:
                    self.fail(f"I1: taken {v} has a taken child and live parents {sorted(self.par[v])}")
            else:
                t = self.tokens[v]
                if (und or s >= 2) and t < s:
                    self.fail(f"I2: vertex {v} has t={t} < s={s}")
                if not und and t < s + len(self.par[v]) - k:
                    self.fail(f"I3: vertex {v} has t={t} < s+p-k={s + len(self.par[v]) - k}")

    def fail(self, message: str) -> None:
        raise InvariantViolation(message, self.trace)

    def neighbourhood(self, vs) -> set:
        out = set()
        for v in vs:
            out.add(v)
            out |= self.par.get(v, set())
            out |= self.chi.get(v, set())
        return out


def _init_state(m: KTreeModel, g_full: Graph) -> TokenState:
    depth = m.depth
    adj = {v: set(g_full.adj[v]) & set(m.parent) for v in m.parent}
    par = {v: {u for u in adj[v] if depth[u] < depth[v]} for v in m.parent}
    chi = {v: {u for u in adj[v] if depth[u] > depth[v]} for v in m.parent}
    return TokenState(
        k=m.k, n=g_full.n, adj=adj, par=par, chi=chi, tree=dict(m.parent), label=dict(m.label),
        depth=dict(depth), status={v: UNDECIDED for v in m.parent}, tokens={v: 0 for v in m.parent},
    )


def _remove_from_model(st: TokenState, v: int) -> None:
    """Contract ``v`` into its tree parent and drop it from every parent/child set."""
    p = st.tree.pop(v)
    for x, q in st.tree.items():
        if q == v:
            st.tree[x] = p
    for x in st.par[v]:
        st.chi[x].discard(v)
    for x in st.chi[v]:
        st.par[x].discard(v)


def _take(st: TokenState, v: int) -> None:
    if st.tokens[v] < 0:
        st.fail(f"taking {v} with {st.tokens[v]} tokens")
    st.status[v] = TAKEN
    st.stranded += st.tokens.pop(v)


def _discard(st: TokenState, v: int) -> None:
    if st.tokens[v] < 0:
        st.fail(f"discarding {v} left it at {st.tokens[v]} tokens")
    st.status[v] = DISCARDED
    st.spent += 2
    st.stranded += st.tokens.pop(v)
    _remove_from_model(st, v)


def _grant(st: TokenState, v: int) -> None:
    """Take ``v`` after paying ``k - p_v`` onto it and 1 onto each parent (Case 1)."""
    st.granted += st.k
    p = len(st.par[v])
    st.tokens[v] += st.k - p
    for x in st.par[v]:
        st.tokens[x] += 1
    _take(st, v)


def _lowest_parent(st: TokenState, v: int) -> int:
    return max(st.par[v], key=lambda x: (st.depth[x], -x))


def _component_size(st: TokenState, v: int) -> int:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in st.adj[x]:
            if y not in seen and st.status.get(y) == TAKEN:
                seen.add(y)
                stack.append(y)
    return len(seen)


def clustered_c2_tokens(m: KTreeModel, g: Graph, check_all: bool = False, return_state: bool = False):
    """2-clustered set of size >= ceil(2n/(k+2)) by the token procedure.

    The graph is first completed to the edge-maximal graph of ``m``.  The
    invariants are checked around every touched vertex after each step
    (``check_all`` re-checks every vertex instead) and once more globally at
    the end.  With ``return_state`` the final :class:`TokenState` is
    returned alongside the set.
    """
    _check_model(m, g)
    k = m.k
    n_model = len(m.parent)
    extra = [v for v in range(g.n) if v not in m.parent]
    if n_model <= k + 2:
        base = sorted(m.parent)[:2]
        out = ClusteredSet.checked(g, base + extra, 2)
        return (out, None) if return_state else out

    g_full = edge_maximal_graph(m, g.n)
    st = _init_state(m, g_full)
    # Cases 1 and 2 are exhausted first, deepest vertex first
    ready = [(-st.depth[v], v) for v in m.parent]
    heapq.heapify(ready)
    # then a leaf-like v whose lowest parent is deepest; this choice is what
    # guarantees a leaf-like second child in Case 4
    lows = []
    next_id = max(g.n, max(m.parent) + 1)

    def low_key(x):
        if st.status.get(x) != UNDECIDED or st.undecided_children(x):
            return None
        depth_w = max((st.depth[y] for y in st.par[x]), default=-1)
        return (-depth_w, x)

    def push(x):
        heapq.heappush(ready, (-st.depth[x], x))
        key = low_key(x)
        if key is not None:
            heapq.heappush(lows, key)

    for x in m.parent:
        push(x)

    def log(msg: str) -> None:
        st.trace.append(msg)
        if len(st.trace) > 64:
            del st.trace[:32]

    while True:
        v = None
        while ready:
            _, x = heapq.heappop(ready)
            if st.status.get(x) == UNDECIDED and not st.undecided_children(x) and st.s(x) != 1:
                v = x
                break
        while v is None and lows:
            key = heapq.heappop(lows)
            cur = low_key(key[1])
            if cur == key:
                v = key[1]
            elif cur is not None:
                heapq.heappush(lows, cur)
        if v is None:
            if any(s == UNDECIDED for s in st.status.values()):
                st.fail("undecided vertices left but none is leaf-like")
            break
        st.steps += 1
        touched = st.neighbourhood([v])
        s_v = st.s(v)
        t_v = st.tokens[v]
        if st.undecided_children(v):
            st.fail(f"lowest undecided vertex {v} has undecided children")
        if s_v == 0:
            log(f"case1 take {v}")
            _grant(st, v)
        elif s_v >= 2:
            log(f"case2 discard {v}")
            if t_v < 2:
                st.fail(f"case 2 at {v} with only {t_v} tokens")
            st.tokens[v] -= 2
            _discard(st, v)
        elif not st.par[v]:
            # s_v = 1 and no parents left: taking v keeps both components small
            log(f"case1' take {v}")
            _grant(st, v)
        else:
            w = _lowest_parent(st, v)
            touched |= st.neighbourhood([w])
            others = [u for u in st.undecided_children(w) if u != v]
            if st.tokens[w] >= 1:
                log(f"case3 discard {w} (via {v})")
                st.tokens[v] -= 1
                st.tokens[w] -= 1
                _discard(st, w)
            elif others:
                leafy = [u for u in others if not st.undecided_children(u)]
                if not leafy:
                    st.fail(f"case 4 at {w}: every other undecided child has undecided children")
                u = leafy[0]
                touched |= st.neighbourhood([u])
                log(f"case4 discard {w} (via {v},{u})")
                st.tokens[u] -= 1
                st.tokens[v] -= 1
                _discard(st, w)
            else:
                if st.tokens[w] != 0 or st.s(w) != 0:
                    st.fail(f"case 5 at {w}: t_w={st.tokens[w]}, s_w={st.s(w)}")
                P = set(st.par[v])
                rest = P - {w}
                deficit = st.tokens[v] + st.tokens[w] - len(rest)
                if deficit < 2 - k:
                    st.fail(f"case 5 deficit {deficit} below 2-k")
                z = st.tree[w]
                u = next_id
                next_id += 1
                log(f"case5 merge {v},{w} into artificial {u}")
                st.tokens.pop(v)
                st.tokens.pop(w)
                _remove_from_model(st, v)
                _remove_from_model(st, w)
                st.status[v] = st.status[w] = None
                st.tree[u] = z
                st.label[u] = st.label[v]
                st.depth[u] = st.depth[v]
                st.adj[u] = set(rest)
                st.par[u] = set(rest)
                st.chi[u] = set()
                for x in rest:
                    st.adj[x].add(u)
                    st.chi[x].add(u)
                    st.tokens[x] += 1
                st.status[u] = TAKEN
                st.pending.append((u, v, w, frozenset(P), deficit))
                touched |= rest | {u}
        st.check(list(st.status) if check_all else touched)
        for x in touched:
            if st.status.get(x) == UNDECIDED:
                push(x)

    # unwind the replacement steps, latest first
    while st.pending:
        u, v, w, P, deficit = st.pending.pop()
        for x in st.adj.pop(u):
            st.adj[x].discard(u)
        del st.status[u]
        st.granted += k
        st.spent += 2
        st.stranded += deficit + k - 2
        if deficit + k - 2 < 0:
            st.fail(f"replacement at {v},{w} does not balance")
        if any(st.status.get(x) == TAKEN for x in P):
            log(f"resolve take {w} discard {v}")
            st.status[w], st.status[v] = TAKEN, DISCARDED
            size = _component_size(st, w)
        else:
            log(f"resolve take {v} discard {w}")
            st.status[v], st.status[w] = TAKEN, DISCARDED
            size = _component_size(st, v)
        if size > 2:
            st.fail(f"resolving {v},{w} made a component of size {size}")

    taken = sorted(x for x, s in st.status.items() if s == TAKEN)
    dropped = [x for x, s in st.status.items() if s == DISCARDED]
    if k * len(taken) < 2 * len(dropped):
        st.fail(f"ledger: k|S|={k * len(taken)} < 2|D|={2 * len(dropped)}")
    if st.granted - st.spent != st.stranded or st.stranded < 0:
        st.fail(f"token conservation broken: granted {st.granted}, spent {st.spent}, left {st.stranded}")
    bad = [sorted(cc) for cc in components(g_full, taken) if len(cc) > 2]
    if bad:
        st.fail(f"result is not 2-clustered: {bad[:3]}")
    out = ClusteredSet.checked(g, taken + extra, 2)
    return (out, st) if return_state else out
