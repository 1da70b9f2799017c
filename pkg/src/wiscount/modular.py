"""Modular decomposition and counting by contracting modules.

The standard tree is built top-down: a disconnected node splits into its
components, a node with disconnected complement into its co-components,
and otherwise into its maximal proper modules, found by closing pairs of
vertices under the distinguisher relation.  Nodes are strong modules of
size at least two; singletons are not tree nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import InputError
from .graph import (
    Estimate,
    WeightedGraph,
    complement,
    connected_components,
    induced_subgraph,
)

PrimeCounter = Callable[[WeightedGraph, float], Estimate]


@dataclass
class ModuleNode:
    vertices: frozenset[int]
    kind: str  # "parallel", "series" or "prime"
    children: list["ModuleNode | int"] = field(default_factory=list)

    def child_sets(self) -> list[frozenset[int]]:
        return [c.vertices if isinstance(c, ModuleNode) else frozenset({c}) for c in self.children]


def is_module(G: WeightedGraph, M: Iterable[int]) -> bool:
    M = frozenset(M)
    for x in G:
        if x in M:
            continue
        k = len(G.neighbors(x) & M)
        if 0 < k < len(M):
            return False
    return True


def module_closure(G: WeightedGraph, S: Iterable[int], within: Optional[frozenset[int]] = None) -> frozenset[int]:
    """Smallest module of G[within] containing S."""
    within = frozenset(G.vertices) if within is None else within
    M = set(S)
    changed = True
    while changed:
        changed = False
        for x in within - M:
            k = len(G.neighbors(x) & M)
            if 0 < k < len(M):
                M.add(x)
                changed = True
    return frozenset(M)


def _min_key(c: "ModuleNode | int") -> int:
    return min(c.vertices) if isinstance(c, ModuleNode) else c


def _decompose(G: WeightedGraph, S: frozenset[int]) -> "ModuleNode | int":
    if len(S) == 1:
        return next(iter(S))
    sub = induced_subgraph(G, S)
    comps = connected_components(sub)
    if len(comps) > 1:
        kind, parts = "parallel", comps
    else:
        cocomps = connected_components(complement(sub))
        if len(cocomps) > 1:
            kind, parts = "series", cocomps
        else:
            kind, parts = "prime", _maximal_modules(G, S)
    children = sorted((_decompose(G, p) for p in parts), key=_min_key)
    return ModuleNode(S, kind, children)


def _maximal_modules(G: WeightedGraph, S: frozenset[int]) -> list[frozenset[int]]:
    # for a connected and co-connected G[S] these partition S
    order = sorted(S)
    parent = {v: v for v in order}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, u in enumerate(order):
        for v in order[i + 1:]:
            if find(u) == find(v):
                continue
            m = module_closure(G, (u, v), S)
            if m != S:
                for w in m:
                    ru, rw = find(u), find(w)
                    if ru != rw:
                        parent[rw] = ru
    groups: dict[int, set[int]] = {}
    for v in order:
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(g) for g in groups.values()]


def standard_tree(G: WeightedGraph) -> "ModuleNode | int | None":
    """Root of the standard decomposition tree; a bare vertex id if n == 1."""
    if G.n == 0:
        return None
    return _decompose(G, frozenset(G.vertices))


def strong_modules(G: WeightedGraph) -> list[frozenset[int]]:
    """All strong modules with at least two vertices (V included)."""
    root = standard_tree(G)
    out: list[frozenset[int]] = []

    def walk(node) -> None:
        if isinstance(node, ModuleNode):
            out.append(node.vertices)
            for c in node.children:
                walk(c)

    walk(root)
    return out


def is_prime(G: WeightedGraph) -> bool:
    """True when every strong module is trivial."""
    return all(len(M) == G.n for M in strong_modules(G))


def postorder(G: WeightedGraph) -> list[ModuleNode]:
    root = standard_tree(G)
    out: list[ModuleNode] = []

    def walk(node) -> None:
        if isinstance(node, ModuleNode):
            for c in node.children:
                walk(c)
            out.append(node)

    walk(root)
    return out


def contract_module(G: WeightedGraph, M: Iterable[int], nonempty_weight, new_id: Optional[int] = None) -> tuple[WeightedGraph, int]:
    """Replace the module M by one vertex of the given weight.

    With nonempty_weight = W(G[M]) - 1 the total weight W is unchanged.
    Returns the new graph and the id of the contracted vertex.
    """
    M = frozenset(M)
    if not M or not M <= set(G.vertices):
        raise InputError("contraction needs a nonempty set of known vertices")
    if not is_module(G, M):
        raise InputError(f"{sorted(M)} is not a module")
    vid = G.fresh_id() if new_id is None else new_id
    any_m = next(iter(M))
    outside = G.neighbors(any_m) - M
    weights = {v: G.weight(v) for v in G if v not in M}
    weights[vid] = nonempty_weight
    edges = [(u, v) for u, v in G.edges() if u not in M and v not in M]
    edges += [(vid, o) for o in outside]
    return WeightedGraph(weights, edges), vid


@dataclass(frozen=True)
class ExtendedModularTree:
    """Leaves M~_1..M~_h in postorder and the graphs G_0..G_h.

    leaf i (0-based) lives in graphs[i] and contracts to the vertex
    contracted[i] of graphs[i + 1].
    """

    leaves: tuple[WeightedGraph, ...]
    graphs: tuple[WeightedGraph, ...]
    contracted: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.leaves)


def extended_tree(G: WeightedGraph, weigh: Optional[Callable[[WeightedGraph], Fraction]] = None) -> ExtendedModularTree:
    """Contract the standard tree's nodes in postorder.

    ``weigh(leaf)`` gives the weight of each contracted vertex; by default
    it is W(leaf) - 1 computed from scratch, so every G_i keeps W(G).
    """
    if weigh is None:
        from .oracle import brute_total_weight

        def weigh(leaf: WeightedGraph) -> Fraction:
            return brute_total_weight(leaf) - 1

    nodes = postorder(G)
    rep: dict[frozenset[int], int] = {}
    cur = G
    graphs = [G]
    leaves = []
    contracted = []
    next_id = G.fresh_id()
    for node in nodes:
        members = []
        for c in node.children:
            members.append(rep[c.vertices] if isinstance(c, ModuleNode) else c)
        leaf = induced_subgraph(cur, members)
        cur, vid = contract_module(cur, members, weigh(leaf), next_id)
        next_id += 1
        rep[node.vertices] = vid
        leaves.append(leaf)
        graphs.append(cur)
        contracted.append(vid)
    return ExtendedModularTree(tuple(leaves), tuple(graphs), tuple(contracted))


def count_with_modules(G: WeightedGraph, prime_counter: PrimeCounter, eps: float = 0.0) -> Estimate:
    """W(G) by counting each prime leaf and contracting it with weight W - 1.

    Each prime_counter call gets eps / (2 n^2).  The contracted vertex
    carries the weight of the nonempty independent sets of its module, so
    the last vertex standing has weight W(G) - 1.
    """
    n = G.n
    if n == 0:
        return Estimate(Fraction(1))
    call_eps = eps / (2 * n * n)
    approx = []

    def weigh(leaf: WeightedGraph) -> Fraction:
        est = prime_counter(leaf, call_eps)
        approx.append(est)
        return Fraction(est.value) - 1

    tree = extended_tree(G, weigh)
    last = tree.graphs[-1]
    (v,) = last.vertices
    value = 1 + last.weight(v)
    if all(e.eps == 0 for e in approx):
        return Estimate(value)
    return Estimate(value, eps, "mcmc")
