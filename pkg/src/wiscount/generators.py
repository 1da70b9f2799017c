"""Random instance generators for the two graph classes.

Every generator takes a ``random.Random`` and returns a graph with vertex
ids 0..n-1.  Where membership is not guaranteed by construction alone the
generator filters candidates through the pattern detectors, so callers
always get an in-class instance (or an InputError after too many tries).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cutset import has_clique_cutset
from .errors import InputError
from .graph import WeightedGraph, disjoint_union, is_connected, relabel
from .matching import WeightedBipartiteGraph, line_graph
from .modular import ModuleNode, standard_tree
from .oracle import PatternKind, contains_pattern, find_induced, pattern_graph

WEIGHT_MODES = ("unit", "random")
MAX_TRIES = 2000


def random_weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 4))


def with_weights(G: WeightedGraph, rng: random.Random, mode: str) -> WeightedGraph:
    """Dense ids 0..n-1 and fresh weights (unit or random rationals)."""
    if mode not in WEIGHT_MODES:
        raise InputError(f"weights must be one of {WEIGHT_MODES}")
    G = relabel(G, {v: i for i, v in enumerate(G.vertices)})
    if mode == "unit":
        return G.with_weights({v: 1 for v in G})
    return G.with_weights({v: random_weight(rng) for v in G})


def is_claw_class(G: WeightedGraph) -> bool:
    return contains_pattern(G, PatternKind.CLAW) is None and contains_pattern(G, PatternKind.ODDHOLE) is None


def is_fork_class(G: WeightedGraph) -> bool:
    return contains_pattern(G, PatternKind.FORK) is None and contains_pattern(G, PatternKind.ODDHOLE) is None


def _retry(make: Callable[[], Optional[WeightedGraph]], what: str) -> WeightedGraph:
    for _ in range(MAX_TRIES):
        G = make()
        if G is not None:
            return G
    raise InputError(f"could not generate a {what} instance with these parameters")


# ---------------------------------------------------------------- line graphs

def random_bipartite(rng: random.Random, n1: int, n2: int, p: float = 0.5) -> WeightedBipartiteGraph:
    left = range(n1)
    right = range(n1, n1 + n2)
    edges = {(u, v): 1 for u in left for v in right if rng.random() < p}
    return WeightedBipartiteGraph.build(left, right, edges)


def lg_bipartite(rng: random.Random, size: int = 5, weights: str = "random", max_n: int = 18) -> WeightedGraph:
    """L(B) for a random bipartite B on size + (size - 1) nodes, edge probability 1/2."""
    if size < 2:
        raise InputError("lg-bipartite needs size >= 2")

    def make():
        B = random_bipartite(rng, size, size - 1)
        if not 1 <= len(B.edges) <= max_n:
            return None
        return line_graph(B)[0]

    return with_weights(_retry(make, "lg-bipartite"), rng, weights)


def flat_edges(G: WeightedGraph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in G.edges() if not (G.neighbors(u) & G.neighbors(v))]


def blow_up(G: WeightedGraph, v: int, k: int) -> tuple[WeightedGraph, list[int]]:
    """Replace v by a clique of k true twins (v itself plus k - 1 new ids)."""
    base = G.fresh_id()
    clique = [v] + [base + i for i in range(k - 1)]
    weights = G.weights
    for c in clique[1:]:
        weights[c] = G.weight(v)
    edges = list(G.edges())
    for c in clique[1:]:
        edges += [(c, u) for u in G.neighbors(v)]
    edges += list(itertools.combinations(clique, 2))
    return WeightedGraph(weights, edges), clique


def augment_edge(G: WeightedGraph, x: int, y: int, a: int, b: int, rng: random.Random) -> WeightedGraph:
    """Augment the flat edge xy by cliques of sizes a, b and a random nonempty F."""
    G, X = blow_up(G, x, a)
    G, Y = blow_up(G, y, b)
    cut = [(p, q) for p in X for q in Y]
    keep = [e for e in cut if rng.random() < 0.5] or [rng.choice(cut)]
    drop = set(cut) - set(keep)
    edges = [e for e in G.edges() if e not in drop and (e[1], e[0]) not in drop]
    return WeightedGraph(G.weights, edges)


def independent_flat_edges(G: WeightedGraph, rng: random.Random, count: int) -> list[tuple[int, int]]:
    cands = flat_edges(G)
    rng.shuffle(cands)
    chosen: list[tuple[int, int]] = []
    for u, v in cands:
        touched = {u, v} | G.neighbors(u) | G.neighbors(v)
        if any(p in touched or q in touched for p, q in chosen):
            continue
        chosen.append((u, v))
        if len(chosen) == count:
            break
    return chosen


def augmented(rng: random.Random, size: int = 4, weights: str = "random", max_n: int = 18) -> WeightedGraph:
    """Line graph of a bipartite graph with one or two augmented flat edges."""
    if size < 2:
        raise InputError("augmented needs size >= 2")

    def make():
        B = random_bipartite(rng, size, size - 1)
        # a left node of degree two gives a flat edge in the line graph
        edges = dict(B.edges)
        extra = size + size - 1
        rights = sorted(B.right)
        if len(rights) >= 2:
            r1, r2 = rng.sample(rights, 2)
            edges[(extra, r1)] = 1
            edges[(extra, r2)] = 1
        B = WeightedBipartiteGraph.build(set(B.left) | {extra}, B.right, edges)
        L = line_graph(B)[0]
        picks = independent_flat_edges(L, rng, rng.choice((1, 2)))
        if not picks:
            return None
        G = L
        for x, y in picks:
            a, b = rng.choice([(2, 1), (1, 2), (2, 2), (3, 1), (2, 3), (3, 2), (3, 3)])
            G = augment_edge(G, x, y, a, b, rng)
        if G.n > max_n or not is_claw_class(G):
            return None
        return G

    return with_weights(_retry(make, "augmented"), rng, weights)


# ------------------------------------------------------------------ peculiar

@dataclass(frozen=True)
class PeculiarSpec:
    """Part sizes and the edges removed from (A_1,B_2), (A_2,B_3), (A_3,B_1).

    ``removed[i]`` lists pairs (p, q) of indices into A_{i+1} and B_{i+2}.
    """

    a: tuple[int, int, int] = (1, 1, 1)
    b: tuple[int, int, int] = (1, 1, 1)
    k: tuple[int, int, int] = (1, 1, 1)
    removed: tuple[tuple[tuple[int, int], ...], ...] = (((0, 0),), ((0, 0),), ((0, 0),))

    def __post_init__(self) -> None:
        if min(self.a + self.b + self.k) < 1:
            raise InputError("every part of a peculiar graph is nonempty")
        if len(self.removed) != 3 or any(not r for r in self.removed):
            raise InputError("at least one edge is removed from each designated cut")
        for i, pairs in enumerate(self.removed):
            for p, q in pairs:
                if not (0 <= p < self.a[i] and 0 <= q < self.b[(i + 1) % 3]):
                    raise InputError(f"removed pair {(p, q)} out of range")

    @property
    def n(self) -> int:
        return sum(self.a) + sum(self.b) + sum(self.k)


def peculiar_graph(spec: PeculiarSpec = PeculiarSpec()) -> WeightedGraph:
    ids = itertools.count()
    A = [[next(ids) for _ in range(s)] for s in spec.a]
    B = [[next(ids) for _ in range(s)] for s in spec.b]
    K = [[next(ids) for _ in range(s)] for s in spec.k]
    core = [v for part in A + B for v in part]
    drop = set()
    for i, pairs in enumerate(spec.removed):
        for p, q in pairs:
            u, v = A[i][p], B[(i + 1) % 3][q]
            drop.add((min(u, v), max(u, v)))
    edges = [e for e in itertools.combinations(core, 2) if e not in drop]
    for i in range(3):
        edges += list(itertools.combinations(K[i], 2))
        outside = set(core) - set(A[i]) - set(B[i])
        edges += [(c, v) for c in K[i] for v in outside]
    return WeightedGraph.unit(spec.n, edges)


def random_peculiar_spec(rng: random.Random, size: int = 1) -> PeculiarSpec:
    if size < 1:
        raise InputError("peculiar needs size >= 1")
    pick = lambda: tuple(rng.randint(1, size) for _ in range(3))  # noqa: E731
    a, b, k = pick(), pick(), pick()
    removed = []
    for i in range(3):
        cut = [(p, q) for p in range(a[i]) for q in range(b[(i + 1) % 3])]
        chosen = tuple(e for e in cut if rng.random() < 0.5) or (rng.choice(cut),)
        removed.append(chosen)
    return PeculiarSpec(a, b, k, tuple(removed))


def peculiar(rng: random.Random, size: int = 1, weights: str = "random") -> WeightedGraph:
    return with_weights(peculiar_graph(random_peculiar_spec(rng, size)), rng, weights)


# ------------------------------------------------------------------- gluing

def glue(G1: WeightedGraph, G2: WeightedGraph, Q1: Sequence[int], Q2: Sequence[int]) -> WeightedGraph:
    """Identify clique Q1 of G1 with clique Q2 of G2 (in the given order)."""
    if len(Q1) != len(Q2):
        raise InputError("glued cliques must have equal size")
    off = G1.fresh_id()
    ident = dict(zip(Q2, Q1))
    mp = {v: ident.get(v, off + i) for i, v in enumerate(G2.vertices)}
    weights = G1.weights
    for v in G2:
        if v not in ident:
            weights[mp[v]] = G2.weight(v)
    edges = list(G1.edges()) + [(mp[u], mp[v]) for u, v in G2.edges() if not (u in ident and v in ident)]
    return WeightedGraph(weights, edges)


def _random_clique(G: WeightedGraph, rng: random.Random, size: int) -> Optional[list[int]]:
    vs = list(G.vertices)
    rng.shuffle(vs)
    for v in vs:
        Q = [v]
        for u in sorted(G.neighbors(v), key=lambda _: rng.random()):
            if len(Q) == size:
                break
            if all(G.adjacent(u, q) for q in Q):
                Q.append(u)
        if len(Q) == size:
            return Q
    return None


def cutset_glued(rng: random.Random, size: int = 3, weights: str = "random", max_n: int = 18) -> WeightedGraph:
    """Two or three small in-class pieces glued along cliques of size 1..2."""

    def piece() -> WeightedGraph:
        kind = rng.choice(("lg", "lg", "aug", "clique"))
        if kind == "lg":
            return lg_bipartite(rng, rng.randint(2, size), weights, max_n=8)
        if kind == "aug":
            return augmented(rng, 2, weights, max_n=9)
        k = rng.randint(2, 4)
        return with_weights(WeightedGraph.unit(k, itertools.combinations(range(k), 2)), rng, weights)

    def make():
        G = piece()
        for _ in range(rng.randint(1, 2)):
            H = piece()
            q = rng.choice((1, 1, 2))
            Q1, Q2 = _random_clique(G, rng, q), _random_clique(H, rng, q)
            if Q1 is None or Q2 is None:
                return None
            G = glue(G, H, Q1, Q2)
        if not 5 <= G.n <= max_n or not is_connected(G) or not has_clique_cutset(G) or not is_claw_class(G):
            return None
        return G

    return with_weights(_retry(make, "cutset-glued"), rng, weights)


def peculiar_glued(rng: random.Random, weights: str = "random", max_n: int = 18) -> WeightedGraph:
    """A peculiar graph next to further in-class pieces.

    A peculiar graph admits no claw-free attachment along a nonempty clique,
    so its pieces meet along the empty cutset.
    """
    P = peculiar(rng, rng.choice((1, 1, 2)), weights)
    room = max_n - P.n
    if room < 2:
        return P
    other = cutset_glued(rng, 3, weights, max_n=room) if room >= 5 else lg_bipartite(rng, 2, weights, max_n=room)
    return disjoint_union(P, other)


def mixed(rng: random.Random, weights: str = "random", max_n: int = 18) -> WeightedGraph:
    """Union of pieces of several kinds: augmented, glued, peculiar, line graphs."""
    parts = []
    room = max_n
    kinds = ["aug", "glued", "pec", "lg"]
    rng.shuffle(kinds)
    for kind in kinds:
        if room < 3:
            break
        if kind == "aug" and room >= 6:
            g = augmented(rng, 2, weights, max_n=room)
        elif kind == "glued" and room >= 5:
            g = cutset_glued(rng, 3, weights, max_n=room)
        elif kind == "pec" and room >= 9:
            g = peculiar(rng, 1, weights)
        else:
            g = lg_bipartite(rng, 2, weights, max_n=room)
        parts.append(g)
        room -= g.n
    return disjoint_union(*parts)


# --------------------------------------------------------------- fork class

def knn_minus_matching(n: int) -> WeightedGraph:
    """K_{n,n} minus a perfect matching; sides 0..n-1 and n..2n-1."""
    if n < 1:
        raise InputError("size must be >= 1")
    return WeightedGraph.unit(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


def substitute(G: WeightedGraph, v: int, H: WeightedGraph) -> WeightedGraph:
    """Replace vertex v by the graph H, every H vertex inheriting N(v)."""
    off = G.fresh_id()
    mp = {h: off + i for i, h in enumerate(H.vertices)}
    weights = {u: G.weight(u) for u in G if u != v}
    for h in H:
        weights[mp[h]] = H.weight(h)
    edges = [(a, b) for a, b in G.edges() if v not in (a, b)]
    edges += [(mp[a], mp[b]) for a, b in H.edges()]
    edges += [(mp[h], u) for h in H for u in G.neighbors(v)]
    return WeightedGraph(weights, edges)


def _small_module(rng: random.Random, k: int) -> WeightedGraph:
    kind = rng.choice(("clique", "stable", "random"))
    if kind == "clique":
        return WeightedGraph.unit(k, itertools.combinations(range(k), 2))
    if kind == "stable":
        return WeightedGraph.unit(k)
    return WeightedGraph.unit(k, [e for e in itertools.combinations(range(k), 2) if rng.random() < 0.5])


CLAW = WeightedGraph.unit(4, [(0, 1), (0, 2), (0, 3)])


def module_subst(rng: random.Random, size: int = 12, weights: str = "random", core: str = "claw") -> WeightedGraph:
    """Fork-free graph from substituting small modules into a core graph.

    ``core`` is "claw" (the centre becomes a clique) or "knn" (K_{m,m} minus
    a perfect matching, m = 3..4).  Candidates are filtered for the class.
    """
    if size < 4:
        raise InputError("module-subst needs size >= 4")

    def make():
        if core == "claw":
            k = rng.randint(2, 4)
            G = substitute(CLAW, 0, WeightedGraph.unit(k, itertools.combinations(range(k), 2)))
        else:
            G = knn_minus_matching(rng.randint(3, 4))
        for _ in range(rng.randint(1, 4)):
            v = rng.choice(list(G.vertices))
            k = rng.randint(2, 3)
            if G.n + k - 1 > size:
                break
            G = substitute(G, v, _small_module(rng, k))
        if G.n > size or not is_fork_class(G):
            return None
        return G

    return with_weights(_retry(make, "module-subst"), rng, weights)


def fork_free_prime(n: int = 4, weights: str = "unit", rng: Optional[random.Random] = None) -> WeightedGraph:
    """K_{n,n} minus a perfect matching: prime and fork-free."""
    G = knn_minus_matching(n)
    return with_weights(G, rng or random.Random(0), weights)


def random_prime_fork_free(rng: random.Random, n: int = 12, weights: str = "random") -> WeightedGraph:
    """Random prime fork-free graph on n vertices.

    Grows a random fork-free graph one vertex at a time, rejecting any
    vertex whose neighbourhood would create a fork, and keeps the result
    only if it has no odd hole and no nontrivial module at all.
    """
    if n < 4:
        raise InputError("prime graphs with a nontrivial structure need n >= 4")
    fork = pattern_graph(PatternKind.FORK)

    def make():
        p = rng.choice((0.3, 0.5, 0.7))
        G = WeightedGraph.unit(1)
        while G.n < n:
            v = G.n
            for _ in range(50):
                nb = [u for u in G if rng.random() < p]
                H = WeightedGraph.unit(v + 1, list(G.edges()) + [(u, v) for u in nb])
                if find_induced(H, fork) is None:
                    G = H
                    break
            else:
                return None
        if not _strictly_prime(G) or contains_pattern(G, PatternKind.ODDHOLE) is not None:
            return None
        return G

    return with_weights(_retry(make, "prime fork-free"), rng, weights)


def _strictly_prime(G: WeightedGraph) -> bool:
    root = standard_tree(G)
    return (isinstance(root, ModuleNode) and root.kind == "prime"
            and all(not isinstance(c, ModuleNode) for c in root.children))


def module_rich(rng: random.Random, n: int = 12, weights: str = "random") -> WeightedGraph:
    """Random graph built by nested substitution of small graphs."""
    G = _small_module(rng, rng.randint(2, 4))
    while G.n < n:
        v = rng.choice(list(G.vertices))
        k = min(rng.randint(2, 4), n - G.n + 1)
        if k < 2:
            break
        G = substitute(G, v, _small_module(rng, k) if rng.random() < 0.7 else
                       WeightedGraph.unit(k, [(i, i + 1) for i in range(k - 1)]))
    return with_weights(G, rng, weights)


def inject_odd_hole(G: WeightedGraph, rng: random.Random, length: int = 5) -> WeightedGraph:
    """G plus an odd hole attached to a random vertex set."""
    base = G.fresh_id()
    cyc = [base + i for i in range(length)]
    weights = G.weights
    for c in cyc:
        weights[c] = random_weight(rng)
    edges = list(G.edges()) + [(cyc[i], cyc[(i + 1) % length]) for i in range(length)]
    if G.n:
        anchor = rng.choice(list(G.vertices))
        edges.append((anchor, cyc[0]))
        if rng.random() < 0.5:
            edges.append((anchor, cyc[1]))
    return relabel(WeightedGraph(weights, edges), {v: i for i, v in enumerate(sorted(weights))})


GENERATORS = ("lg-bipartite", "augmented", "peculiar", "cutset-glued", "module-subst", "fork-free-prime")


def generate(kind: str, size: int, seed: int, weights: str = "unit") -> WeightedGraph:
    rng = random.Random(seed)
    if kind == "lg-bipartite":
        return lg_bipartite(rng, size, weights)
    if kind == "augmented":
        return augmented(rng, size, weights)
    if kind == "peculiar":
        return peculiar(rng, size, weights)
    if kind == "cutset-glued":
        return cutset_glued(rng, size, weights)
    if kind == "module-subst":
        return module_subst(rng, size, weights)
    if kind == "fork-free-prime":
        return fork_free_prime(size, weights, rng)
    raise InputError(f"unknown generator {kind!r}; choose from {GENERATORS}")
