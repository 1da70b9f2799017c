"""Clique cutset decomposition and the counting recursion built on it.

Cutsets are found through a minimal triangulation: every clique minimal
separator of G is a minimal separator of the MCS-M triangulation H, and
those are among the sets madj_H(x).  Atoms are then peeled one at a time
so that the cliques K_1..K_h form a path, with A_0 the last remaining atom.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .atoms import atom_weight
from .context import EngineLike, as_context
from .errors import InputError, NotInClass
from .graph import (
    Estimate,
    WeightedGraph,
    connected_components,
    delete_vertices,
    induced_subgraph,
)

AtomCounter = Callable[[WeightedGraph, float], Estimate]


@dataclass(frozen=True)
class CutsetTree:
    """atoms[0] is A_0; cliques[i - 1] is K_i and belongs with atoms[i]."""

    atoms: tuple[frozenset[int], ...]
    cliques: tuple[frozenset[int], ...]

    @property
    def h(self) -> int:
        return len(self.cliques)

    def private_part(self, i: int) -> frozenset[int]:
        """A'_i = A_i minus K_i, for 1 <= i <= h."""
        return self.atoms[i] - self.cliques[i - 1]


def mcs_m(G: WeightedGraph) -> tuple[list[int], dict[int, set[int]]]:
    """MCS-M ordering and the fill-in adjacency of the minimal triangulation.

    Returns the elimination order (first eliminated first) and the adjacency
    of H = G plus fill edges.
    """
    weight = {v: 0 for v in G}
    numbered: set[int] = set()
    order_rev: list[int] = []
    H = {v: set(G.neighbors(v)) for v in G}
    for _ in range(G.n):
        v = max((u for u in G if u not in numbered), key=lambda u: (weight[u], -u))
        # bottleneck search: reach[u] = least possible max weight of inner vertices
        reach: dict[int, int] = {}
        heap = [(-1, u) for u in G.neighbors(v) if u not in numbered]
        for _, u in heap:
            reach[u] = -1
        heapq.heapify(heap)
        while heap:
            b, u = heapq.heappop(heap)
            if reach.get(u, None) != b:
                continue
            through = max(b, weight[u])
            for x in G.neighbors(u):
                if x in numbered or x == v:
                    continue
                if through < reach.get(x, 1 << 30):
                    reach[x] = through
                    heapq.heappush(heap, (through, x))
        raised = [u for u, b in reach.items() if b < weight[u]]
        for u in raised:
            H[u].add(v)
            H[v].add(u)
            weight[u] += 1
        numbered.add(v)
        order_rev.append(v)
    return order_rev[::-1], H


def _is_minimal_separator(G: WeightedGraph, S: frozenset[int]) -> bool:
    """S separates G and at least two components of G - S are full (see all of S)."""
    rest = [v for v in G if v not in S]
    comps = connected_components(induced_subgraph(G, rest))
    if len(comps) < 2:
        return False
    full = sum(1 for c in comps if _neighborhood(G, c) == S)
    return full >= 2


def find_clique_cutset(G: WeightedGraph) -> Optional[frozenset[int]]:
    """A clique minimal separator of the connected graph G, or None.

    Restricting to minimal separators keeps atoms from nesting inside one
    another.
    """
    if G.n < 3:
        return None
    order, H = mcs_m(G)
    pos = {v: i for i, v in enumerate(order)}
    seen: set[frozenset[int]] = set()
    for x in order:
        S = frozenset(u for u in H[x] if pos[u] > pos[x])
        if not S or S in seen:
            continue
        seen.add(S)
        if G.is_clique(S) and _is_minimal_separator(G, S):
            return S
    return None


def has_clique_cutset(G: WeightedGraph) -> bool:
    if len(connected_components(G)) > 1:
        return True
    return find_clique_cutset(G) is not None


def _neighborhood(G: WeightedGraph, D: frozenset[int]) -> frozenset[int]:
    out: set[int] = set()
    for v in D:
        out |= G.neighbors(v)
    return frozenset(out - D)


def _peel_one(H: WeightedGraph, K: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Find D with D + N(D) an atom of H and N(D) a clique cutset of H.

    Starts from the cutset K and descends into blocks avoiding the current
    attaching clique, so that every descent keeps N_H(D) inside a clique.
    """
    comps = connected_components(delete_vertices(H, K))
    D = min(comps, key=lambda c: (len(c), min(c)))
    while True:
        N = _neighborhood(H, D)
        block = induced_subgraph(H, D | N)
        Kp = find_clique_cutset(block)
        if Kp is None:
            return D, N
        sub = connected_components(delete_vertices(block, Kp))
        # N is a clique, so all of N - Kp lies in at most one of these
        D = next(c for c in sorted(sub, key=lambda c: (len(c), min(c))) if not (c & N))


def decompose_cutsets(G: WeightedGraph) -> CutsetTree:
    """Path-of-cliques decomposition of a connected graph."""
    if len(connected_components(G)) > 1:
        raise InputError("decompose_cutsets needs a connected graph; split components first")
    peeled: list[tuple[frozenset[int], frozenset[int]]] = []
    H = G
    while True:
        K = find_clique_cutset(H)
        if K is None:
            break
        D, N = _peel_one(H, K)
        peeled.append((D | N, N))
        H = delete_vertices(H, D)
    # peeled[0] was removed first, so it is the top stage A_h
    peeled.reverse()
    atoms = (frozenset(H.vertices),) + tuple(a for a, _ in peeled)
    cliques = tuple(k for _, k in peeled)
    return CutsetTree(atoms, cliques)


def _combine(values: list[Estimate], eps: float) -> tuple[str, float]:
    engines = {e.engine for e in values}
    if all(e.eps == 0 for e in values):
        return "exact", 0.0
    return ("mcmc" if "mcmc" in engines else "exact"), eps


def count_with_cutsets(G: WeightedGraph, atom_counter: AtomCounter, eps: float = 0.0) -> Estimate:
    """W(G) = W(A_0) * prod W(A'_i), reweighting K_i after each stage.

    ``atom_counter(H, eps)`` must handle every induced subgraph of every
    atom.  Each call gets eps / n^2.  Disconnected inputs are split into
    components first.
    """
    n = G.n
    if n == 0:
        return Estimate(Fraction(1))
    call_eps = eps / (n * n)
    calls: list[Estimate] = []
    total = Fraction(1)
    for comp in connected_components(G):
        H = induced_subgraph(G, comp)
        tree = decompose_cutsets(H)
        for i in range(tree.h, 0, -1):
            Ap = tree.private_part(i)
            K = tree.cliques[i - 1]
            base = atom_counter(induced_subgraph(H, Ap), call_eps)
            calls.append(base)
            updates = {}
            for v in sorted(K):
                rest = Ap - H.neighbors(v)
                part = atom_counter(induced_subgraph(H, rest), call_eps)
                calls.append(part)
                updates[v] = H.weight(v) * Fraction(part.value) / Fraction(base.value)
            total *= Fraction(base.value)
            H = delete_vertices(H, Ap).with_weights(updates)
        last = atom_counter(H, call_eps)
        calls.append(last)
        total *= Fraction(last.value)
    engine, out_eps = _combine(calls, eps)
    return Estimate(total, out_eps, engine)


def count_claw_odd_hole_free(G: WeightedGraph, eps: float = 0.0, engine: EngineLike = "exact") -> Estimate:
    """W(G) for a (claw, odd hole)-free graph.

    Works on any graph whose atoms have independence number at most three
    or are augmented line graphs of bipartite graphs; anything else raises
    NotInClass.  A returned value is never a guess.
    """
    ctx = as_context(engine)
    try:
        return count_with_cutsets(G, lambda A, e: atom_weight(A, e, ctx), eps)
    except NotInClass as exc:
        raise NotInClass(f"not (claw, odd hole)-free: {exc}") from exc
