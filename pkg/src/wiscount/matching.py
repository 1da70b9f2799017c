"""Line graphs of bipartite graphs: root recovery and matching sums.

Independent sets of L(B) are matchings of B, so W_k(L(B)) is the total
weight M_k(B) of k-edge matchings.  Each M_k becomes one permanent after
padding B with dummy vertices so that every k-matching extends to a perfect
matching in a fixed number of ways.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .context import EngineLike, RunContext, as_context
from .errors import CapExceeded, InputError, NotLineGraphOfBipartite
from .graph import Estimate, WeightedGraph, connected_components, induced_subgraph, to_weight
from .permanent import AnnealSettings, PermanentInstance, permanent_exact, permanent_mcmc


@dataclass(frozen=True)
class WeightedBipartiteGraph:
    left: frozenset
    right: frozenset
    edges: Mapping[tuple, Fraction]  # (left vertex, right vertex) -> weight

    def __post_init__(self) -> None:
        if self.left & self.right:
            raise InputError("the two sides must be disjoint")
        for (u, v), w in self.edges.items():
            if u not in self.left or v not in self.right:
                raise InputError(f"edge ({u}, {v}) does not cross the bipartition")
            if w <= 0:
                raise InputError("edge weights must be positive")

    @classmethod
    def build(cls, left, right, edges) -> WeightedBipartiteGraph:
        return cls(frozenset(left), frozenset(right), {(u, v): to_weight(w) for (u, v), w in dict(edges).items()})

    @property
    def n1(self) -> int:
        return len(self.left)

    @property
    def n2(self) -> int:
        return len(self.right)

    def swapped(self) -> WeightedBipartiteGraph:
        return WeightedBipartiteGraph(self.right, self.left, {(v, u): w for (u, v), w in self.edges.items()})


def line_graph(root: WeightedBipartiteGraph) -> tuple[WeightedGraph, dict[int, tuple]]:
    """L(root) with vertex ids 0..m-1 in sorted edge order, plus the id -> edge map."""
    edge_list = sorted(root.edges, key=repr)
    weights = {i: root.edges[e] for i, e in enumerate(edge_list)}
    at: dict = {}
    for i, (u, v) in enumerate(edge_list):
        at.setdefault(("L", u), []).append(i)
        at.setdefault(("R", v), []).append(i)
    adj = set()
    for group in at.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                adj.add((group[a], group[b]))
    return WeightedGraph(weights, adj), dict(enumerate(edge_list))


def line_graph_of_multigraph(edges: list[tuple], weights: list) -> WeightedGraph:
    """Line graph of a multigraph given as an edge list (parallel edges allowed)."""
    at: dict = {}
    for i, (u, v) in enumerate(edges):
        at.setdefault(u, []).append(i)
        at.setdefault(v, []).append(i)
    adj = set()
    for group in at.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                adj.add((group[a], group[b]))
    return WeightedGraph(dict(enumerate(weights)), adj)


def merge_parallel(G: WeightedGraph) -> WeightedGraph:
    """Collapse each true-twin class to its smallest vertex, summing weights."""
    classes: dict[frozenset, list[int]] = {}
    for v in G:
        classes.setdefault(G.closed_neighbors(v), []).append(v)
    if len(classes) == G.n:
        return G
    keep = {}
    rep_of = {}
    for members in classes.values():
        r = min(members)
        keep[r] = sum((G.weight(v) for v in members), Fraction(0))
        for v in members:
            rep_of[v] = r
    edges = {(rep_of[u], rep_of[v]) for u, v in G.edges() if rep_of[u] != rep_of[v]}
    return WeightedGraph(keep, edges)


def recover_bipartite_root(G: WeightedGraph) -> tuple[WeightedBipartiteGraph, dict[int, tuple]]:
    """Root B with L(B) = G, via the clique structure of each neighbourhood.

    Each vertex's neighbourhood must split into at most two cliques with no
    edges between them; those cliques plus the vertex are the root nodes.
    Raises NotLineGraphOfBipartite when that fails, when the root would need
    a parallel edge, or when it is not bipartite.
    """
    node_of: dict[frozenset, int] = {}
    ends: dict[int, list[int]] = {}
    pendant = 0
    for v in G:
        nb = G.neighbors(v)
        parts = connected_components_of(G, nb)
        if len(parts) > 2 or any(not G.is_clique(p) for p in parts):
            raise NotLineGraphOfBipartite(f"neighbourhood of {v} is not two anticomplete cliques")
        groups = [frozenset(p | {v}) for p in parts]
        while len(groups) < 2:
            pendant -= 1
            groups.append(frozenset({("pendant", pendant)}))
        ends[v] = []
        for grp in groups:
            if grp not in node_of:
                node_of[grp] = len(node_of)
            ends[v].append(node_of[grp])
    # every root node must be exactly the set of edges that meet it
    members: dict[int, set[int]] = {}
    for v, (a, b) in ends.items():
        members.setdefault(a, set()).add(v)
        members.setdefault(b, set()).add(v)
    for grp, idx in node_of.items():
        real = {x for x in grp if not isinstance(x, tuple)}
        if real and members.get(idx, set()) != real:
            raise NotLineGraphOfBipartite("neighbourhood cliques do not fit together")
    pairs = {}
    for v, (a, b) in ends.items():
        key = frozenset((a, b))
        if key in pairs or a == b:
            raise NotLineGraphOfBipartite("root would have parallel edges")
        pairs[key] = v
    side = _two_colour(len(node_of), [tuple(e) for e in ends.values()])
    if side is None:
        raise NotLineGraphOfBipartite("root graph has an odd cycle")
    for u in G:
        for v in G:
            if u < v and G.adjacent(u, v) != bool(set(ends[u]) & set(ends[v])):
                raise NotLineGraphOfBipartite("line graph of the candidate root differs")
    edges = {}
    mapping = {}
    for v, (a, b) in ends.items():
        if side[a] == 1:
            a, b = b, a
        edges[(a, b)] = G.weight(v)
        mapping[v] = (a, b)
    left = frozenset(x for x in range(len(node_of)) if side[x] == 0)
    right = frozenset(x for x in range(len(node_of)) if side[x] == 1)
    return WeightedBipartiteGraph(left, right, edges), mapping


def connected_components_of(G: WeightedGraph, S) -> list[frozenset[int]]:
    return connected_components(induced_subgraph(G, S))


def _two_colour(n: int, edges: list[tuple[int, int]]) -> list[int] | None:
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    side = [-1] * n
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for x in adj[u]:
                if side[x] < 0:
                    side[x] = 1 - side[u]
                    queue.append(x)
                elif side[x] == side[u]:
                    return None
    return side


def maximum_matching_size(B: WeightedBipartiteGraph) -> int:
    adj: dict = {u: [] for u in B.left}
    for u, v in B.edges:
        adj[u].append(v)
    match: dict = {}

    def augment(u, seen: set) -> bool:
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                if v not in match or augment(match[v], seen):
                    match[v] = u
                    return True
        return False

    return sum(1 for u in sorted(B.left, key=repr) if augment(u, set()))


def pad_for_k(B: WeightedBipartiteGraph, k: int) -> PermanentInstance:
    """Square instance whose permanent is (n1-k)! (n2-k)! M_k(B).

    Rows are V1 followed by n2-k dummy rows; columns are V2 followed by
    n1-k dummy columns.  Dummies are complete to the real opposite side and
    never meet each other.
    """
    n1, n2 = B.n1, B.n2
    if not 0 <= k <= min(n1, n2):
        raise InputError(f"k={k} outside 0..{min(n1, n2)}")
    left = sorted(B.left, key=repr)
    right = sorted(B.right, key=repr)
    pad_rows, pad_cols = n2 - k, n1 - k
    size = n1 + n2 - k
    one, zero = Fraction(1), Fraction(0)
    rows = []
    for u in left:
        rows.append(tuple(B.edges.get((u, v), zero) for v in right) + (one,) * pad_cols)
    for _ in range(pad_rows):
        rows.append((one,) * n2 + (zero,) * pad_cols)
    assert all(len(r) == size for r in rows)
    return PermanentInstance(tuple(rows))


def _permanent(A: PermanentInstance, eps: float, ctx: RunContext) -> Estimate:
    ctx.trace["permanent_calls"] += 1
    if ctx.engine == "exact":
        if A.n > ctx.exact_cap:
            raise CapExceeded(f"permanent of size {A.n} exceeds the exact cap {ctx.exact_cap}")
        return Estimate(permanent_exact(A, ctx.exact_cap))
    ctx.trace["mcmc_calls"] += 1
    return permanent_mcmc(A, eps, ctx.next_seed(), AnnealSettings(max_chains=ctx.mcmc_budget))


def matching_weight_vector(B: WeightedBipartiteGraph, eps: float = 0.0,
                           engine: EngineLike = "exact") -> list[Estimate]:
    """[M_0, ..., M_nu] where nu is the maximum matching size.

    The error budget is split evenly over |E(B)| + 1 permanent calls, one
    per possible k, even though only nu of them are made.
    """
    ctx = as_context(engine)
    nu = maximum_matching_size(B)
    call_eps = eps / (len(B.edges) + 1)
    out = [Estimate(Fraction(1))]
    for k in range(1, nu + 1):
        est = _permanent(pad_for_k(B, k), call_eps, ctx)
        denom = math.factorial(B.n1 - k) * math.factorial(B.n2 - k)
        out.append(Estimate(est.value / denom, est.eps, est.engine))
    return out


def line_graph_total_weight(G: WeightedGraph, eps: float = 0.0, engine: EngineLike = "exact") -> Estimate:
    """W(G) for G the line graph of a bipartite multigraph, via permanents.

    Sizes k above the maximum matching size contribute exactly zero and
    are skipped; the k = 0 term is 1.
    """
    ctx = as_context(engine)
    if G.n == 0:
        return Estimate(Fraction(1))
    H = merge_parallel(G)
    B, _ = recover_bipartite_root(H)
    terms = matching_weight_vector(B, eps, ctx)
    value = sum((t.value for t in terms), Fraction(0))
    if all(t.eps == 0 for t in terms):
        return Estimate(value)
    return Estimate(value, eps, "mcmc")
