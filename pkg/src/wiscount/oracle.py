"""Brute-force ground truth and forbidden-pattern detectors.

Everything here is exponential and meant for small instances only.  The
vertex caps can be raised with the ``WISCOUNT_ORACLE_CAP`` environment
variable (weight vectors and odd holes) when a test suite needs it.
"""

from __future__ import annotations

import enum
import itertools
import os
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CapExceeded, InputError
from .graph import WeightedGraph

DEFAULT_CAP = 20
PERMANENT_CAP = 9
MATCHING_CAP = 18


def oracle_cap() -> int:
    raw = os.environ.get("WISCOUNT_ORACLE_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"WISCOUNT_ORACLE_CAP must be an integer, got {raw!r}") from exc


def _bitmasks(G: WeightedGraph) -> tuple[list[int], list[int], list[Fraction]]:
    order = list(G.vertices)
    index = {v: i for i, v in enumerate(order)}
    nbr = [0] * len(order)
    for v in order:
        for u in G.neighbors(v):
            nbr[index[v]] |= 1 << index[u]
    return order, nbr, [G.weight(v) for v in order]


def _poly_add(p: list, q: list) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


def brute_weight_vector(G: WeightedGraph, cap: Optional[int] = None) -> list[Fraction]:
    """[W_0, ..., W_alpha] by exhaustive recursion over vertex subsets.

    Uses I(S) = I(S - v) + w(v) x I(S - N[v]) with memoisation on the
    remaining vertex set.  Zero-weight vertices count as present but
    contribute nothing, so trailing zero entries are trimmed.
    """
    cap = oracle_cap() if cap is None else cap
    if G.n > cap:
        raise CapExceeded(f"oracle refuses n={G.n} (cap {cap})")
    _, nbr, w = _bitmasks(G)
    memo: dict[int, list] = {0: [Fraction(1)]}

    def poly(mask: int) -> list:
        got = memo.get(mask)
        if got is not None:
            return got
        low = mask & -mask
        i = low.bit_length() - 1
        without = poly(mask & ~low)
        with_v = poly(mask & ~low & ~nbr[i])
        res = _poly_add(without, [Fraction(0)] + [w[i] * c for c in with_v])
        memo[mask] = res
        return res

    vec = poly((1 << G.n) - 1)
    while len(vec) > 1 and vec[-1] == 0:
        vec.pop()
    return vec


def brute_total_weight(G: WeightedGraph, cap: Optional[int] = None) -> Fraction:
    return sum(brute_weight_vector(G, cap), Fraction(0))


class PatternKind(enum.Enum):
    CLAW = "claw"
    DIAMOND = "diamond"
    GEM = "gem"
    FORK = "fork"
    WHEEL4 = "wheel4"
    ODDHOLE = "oddhole"


# fixed small patterns as (vertex count, edge list)
PATTERNS: dict[PatternKind, tuple[int, list[tuple[int, int]]]] = {
    PatternKind.CLAW: (4, [(0, 1), (0, 2), (0, 3)]),
    PatternKind.DIAMOND: (4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]),
    PatternKind.GEM: (5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]),
    PatternKind.FORK: (5, [(1, 0), (1, 2), (1, 3), (3, 4)]),
    PatternKind.WHEEL4: (5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)]),
}


def pattern_graph(kind: PatternKind) -> WeightedGraph:
    n, edges = PATTERNS[kind]
    return WeightedGraph.unit(n, edges)


def find_induced(G: WeightedGraph, H: WeightedGraph) -> Optional[dict[int, int]]:
    """An induced embedding of H into G as a map V(H) -> V(G), or None.

    Plain backtracking: H vertices are placed in an order where each one
    after the first touches an already placed vertex when possible.
    """
    if H.n > G.n:
        return None
    order: list[int] = []
    rest = set(H.vertices)
    while rest:
        nxt = max(rest, key=lambda h: (sum(1 for p in order if H.adjacent(h, p)), H.degree(h), -h))
        order.append(nxt)
        rest.remove(nxt)
    gdeg = {v: G.degree(v) for v in G}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        h = order[i]
        placed_nbr = [p for p in order[:i] if H.adjacent(h, p)]
        if placed_nbr:
            cands = G.neighbors(mapping[placed_nbr[0]])
        else:
            cands = G.vertices
        for g in sorted(cands):
            if g in used or gdeg[g] < H.degree(h):
                continue
            if all(G.adjacent(g, mapping[p]) == H.adjacent(h, p) for p in order[:i]):
                mapping[h] = g
                used.add(g)
                if extend(i + 1):
                    return True
                used.discard(g)
                del mapping[h]
        return False

    return dict(mapping) if extend(0) else None


def find_odd_hole(G: WeightedGraph, cap: Optional[int] = None) -> Optional[list[int]]:
    """Vertices of an induced odd cycle of length at least 5, in cycle order."""
    cap = oracle_cap() if cap is None else cap
    if G.n > cap:
        raise CapExceeded(f"odd-hole search refuses n={G.n} (cap {cap})")
    for s in G.vertices:
        # the cycle's smallest vertex is s, and its second vertex is below its last
        path = [s]
        on_path = {s}

        def dfs() -> Optional[list[int]]:
            last = path[-1]
            for x in sorted(G.neighbors(last)):
                if x <= s or x in on_path:
                    continue
                # x may touch only `last` among the path, apart from closing at s
                touches = [p for p in path[:-1] if G.adjacent(x, p)]
                if touches and touches != [s]:
                    continue
                if touches == [s]:
                    if len(path) == 1:
                        continue
                    if len(path) + 1 >= 5 and (len(path) + 1) % 2 == 1 and path[1] < x:
                        return path + [x]
                    continue
                path.append(x)
                on_path.add(x)
                found = dfs()
                if found:
                    return found
                path.pop()
                on_path.discard(x)
            return None

        found = dfs()
        if found:
            return found
    return None


def contains_pattern(G: WeightedGraph, kind: PatternKind | str, cap: Optional[int] = None) -> Optional[frozenset[int]]:
    """Vertex set of an induced copy of the pattern in G, or None."""
    kind = PatternKind(kind)
    if kind is PatternKind.ODDHOLE:
        hole = find_odd_hole(G, cap)
        return frozenset(hole) if hole else None
    emb = find_induced(G, pattern_graph(kind))
    return frozenset(emb.values()) if emb else None


def brute_permanent(A: Sequence[Sequence]) -> Fraction:
    """Permanent by summing over all n! permutations."""
    rows = [list(r) for r in A]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("permanent needs a square matrix")
    if n > PERMANENT_CAP:
        raise CapExceeded(f"naive permanent refuses n={n} (cap {PERMANENT_CAP})")
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        prod = Fraction(1)
        for i, j in enumerate(perm):
            prod *= rows[i][j]
            if prod == 0:
                break
        total += prod
    return total


def brute_matching_weight(B, k: int) -> Fraction:
    """Total weight of k-edge matchings of a WeightedBipartiteGraph."""
    if B.n1 + B.n2 > MATCHING_CAP:
        raise CapExceeded(f"matching oracle refuses {B.n1}+{B.n2} vertices")
    if k < 0:
        raise InputError("k must be nonnegative")
    if k > min(B.n1, B.n2):
        return Fraction(0)
    left = sorted(B.left)
    adj: dict = {u: [] for u in left}
    for (u, v), w in B.edges.items():
        adj[u].append((v, w))

    def rec(i: int, need: int, used: frozenset) -> Fraction:
        if need == 0:
            return Fraction(1)
        if len(left) - i < need:
            return Fraction(0)
        u = left[i]
        total = rec(i + 1, need, used)
        for v, w in adj[u]:
            if v not in used:
                total += w * rec(i + 1, need - 1, used | {v})
        return total

    return rec(0, k, frozenset())
