"""Exact-weight undirected graphs and the elementary operations on them.

Vertices are integer ids that survive every subgraph operation, so a vertex
of ``induced_subgraph(G, U)`` is the same vertex of ``G``.  Weights are
:class:`fractions.Fraction` values; floats are refused so that nothing inexact
leaks into the exact counting path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import InputError

Weight = Fraction
WeightLike = Union[Fraction, int, str]
WeightVector = list  # list[Fraction], entry k is W_k, length alpha + 1


def to_weight(x: WeightLike) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a nonnegative Fraction."""
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"weights must be exact rationals, got {x!r}")
    try:
        w = Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse weight {x!r}") from exc
    if w < 0:
        raise InputError(f"weights must be nonnegative, got {w}")
    return w


class WeightedGraph:
    """Immutable simple graph with a nonnegative rational weight per vertex."""

    __slots__ = ("_adj", "_w", "_vertices")

    def __init__(
        self,
        weights: Mapping[int, WeightLike],
        edges: Iterable[tuple[int, int]] = (),
    ):
        w = {int(v): to_weight(x) for v, x in weights.items()}
        adj: dict[int, set[int]] = {v: set() for v in w}
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise InputError(f"edge ({u}, {v}) references an unknown vertex")
            adj[u].add(v)
            adj[v].add(u)
        self._w = w
        self._adj = {v: frozenset(s) for v, s in adj.items()}
        self._vertices = tuple(sorted(w))

    @classmethod
    def _raw(cls, weights: dict[int, Fraction], adj: dict[int, frozenset[int]]) -> WeightedGraph:
        # Trusted constructor for internal use: no validation, no copying.
        g = cls.__new__(cls)
        g._w = weights
        g._adj = adj
        g._vertices = tuple(sorted(weights))
        return g

    @classmethod
    def unit(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> WeightedGraph:
        return cls({v: 1 for v in range(n)}, edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._w

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def weight(self, v: int) -> Fraction:
        return self._w[v]

    @property
    def weights(self) -> dict[int, Fraction]:
        return dict(self._w)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in self._adj for v in self._adj[u] if u < v)

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(vs[j] in self._adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_independent(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return not any(vs[j] in self._adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def with_weights(self, updates: Mapping[int, WeightLike]) -> WeightedGraph:
        """Copy of the graph with some vertex weights replaced."""
        w = dict(self._w)
        for v, x in updates.items():
            if v not in w:
                raise InputError(f"unknown vertex {v}")
            w[v] = to_weight(x)
        return WeightedGraph._raw(w, self._adj)

    def fresh_id(self) -> int:
        return self._vertices[-1] + 1 if self._vertices else 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._w == other._w and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((tuple(sorted(self._w.items())), tuple(self.edges())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Estimate:
    """A counted value with its relative-error bound and the engine that produced it.

    Values are always Fractions so they can feed back into graph weights;
    an mcmc estimate is the exact binary value of the float it came from.
    Exact results carry ``eps == 0``.
    """

    value: Fraction
    eps: float = 0.0
    engine: str = "exact"

    @property
    def exact(self) -> bool:
        return self.eps == 0


def _check_vertices(G: WeightedGraph, U: Iterable[int]) -> frozenset[int]:
    U = frozenset(U)
    bad = [u for u in U if u not in G]
    if bad:
        raise InputError(f"unknown vertices {sorted(bad)}")
    return U


def induced_subgraph(G: WeightedGraph, U: Iterable[int]) -> WeightedGraph:
    """G[U]: vertices U, the edges of G inside U, weights restricted to U."""
    U = _check_vertices(G, U)
    adj = {v: G.neighbors(v) & U for v in U}
    return WeightedGraph._raw({v: G.weight(v) for v in U}, adj)


def delete_vertices(G: WeightedGraph, U: Iterable[int]) -> WeightedGraph:
    U = _check_vertices(G, U)
    return induced_subgraph(G, set(G.vertices) - U)


def delete_closed_neighborhood(G: WeightedGraph, v: int) -> WeightedGraph:
    """G[V minus N[v]]."""
    if v not in G:
        raise InputError(f"unknown vertex {v}")
    return induced_subgraph(G, set(G.vertices) - G.closed_neighbors(v))


def normalize(G: WeightedGraph) -> WeightedGraph:
    """Drop zero-weight vertices; every W_k is unchanged."""
    keep = [v for v in G if G.weight(v) > 0]
    if len(keep) == G.n:
        return G
    return induced_subgraph(G, keep)


def scale_weights(G: WeightedGraph, lam: WeightLike) -> WeightedGraph:
    """Multiply every weight by ``lam``; W_k scales by lam**k."""
    lam = to_weight(lam)
    if lam == 0:
        raise InputError("scaling by zero would delete every vertex")
    return WeightedGraph._raw({v: G.weight(v) * lam for v in G}, G._adj)


def connected_components(G: WeightedGraph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by smallest vertex id."""
    seen: set[int] = set()
    comps = []
    for s in G:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for x in G.neighbors(u):
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def complement(G: WeightedGraph) -> WeightedGraph:
    vs = frozenset(G.vertices)
    adj = {v: vs - G.closed_neighbors(v) for v in G}
    return WeightedGraph._raw(G.weights, adj)


def relabel(G: WeightedGraph, mapping: Mapping[int, int]) -> WeightedGraph:
    """Rename vertices; ``mapping`` must be injective on V(G)."""
    w = {mapping[v]: G.weight(v) for v in G}
    if len(w) != G.n:
        raise InputError("relabelling is not injective")
    adj = {mapping[v]: frozenset(mapping[u] for u in G.neighbors(v)) for v in G}
    return WeightedGraph._raw(w, adj)


def disjoint_union(*graphs: WeightedGraph) -> WeightedGraph:
    """Union of graphs, relabelling each after the previous one's largest id."""
    weights: dict[int, Fraction] = {}
    edges: list[tuple[int, int]] = []
    offset = 0
    for g in graphs:
        mp = {v: offset + i for i, v in enumerate(g.vertices)}
        for v in g:
            weights[mp[v]] = g.weight(v)
        edges.extend((mp[u], mp[v]) for u, v in g.edges())
        offset += g.n
    return WeightedGraph(weights, edges)


def is_connected(G: WeightedGraph) -> bool:
    return len(connected_components(G)) <= 1


def independence_number(G: WeightedGraph) -> int:
    """Size of a largest independent set, by branch and bound.

    Ignores weights.  Exact, exponential in the worst case, fast on the
    dense claw-free instances the pipeline sees.
    """
    order = list(G.vertices)
    index = {v: i for i, v in enumerate(order)}
    nbr = [sum(1 << index[u] for u in G.neighbors(v)) for v in order]
    best = 0

    def search(mask: int, size: int) -> None:
        nonlocal best
        if mask == 0:
            best = max(best, size)
            return
        if size + bin(mask).count("1") <= best:
            return
        # branch on a vertex of minimum degree inside mask
        v = min((i for i in range(len(nbr)) if mask >> i & 1),
                key=lambda i: bin(nbr[i] & mask).count("1"))
        search(mask & ~(1 << v) & ~nbr[v], size + 1)
        if nbr[v] & mask:
            search(mask & ~(1 << v), size)

    search((1 << G.n) - 1, 0)
    return best
