"""Counting on atoms: small independence number, or elementary structure.

An atom with no independent set of size four is counted directly.  Any
other atom must be elementary: its Gallai graph is bipartite, and after
every augment is swapped for a three-vertex gadget of equal weight the
graph is the line graph of a bipartite multigraph, whose independent sets
are matchings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .context import EngineLike, as_context
from .errors import NotInClass, NotLineGraphOfBipartite
from .graph import Estimate, WeightedGraph, normalize
from .matching import line_graph_total_weight, merge_parallel, recover_bipartite_root


def small_alpha_weight(G: WeightedGraph) -> Optional[list[Fraction]]:
    """[W_0..W_alpha] when alpha(G) <= 3, else None.

    Enumerates independent sets of size at most four in increasing vertex
    order, stopping at the first one of size four.
    """
    vs = list(G.vertices)
    W = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    later = {v: [u for u in vs if u > v and not G.adjacent(u, v)] for v in vs}
    for a in vs:
        wa = G.weight(a)
        W[1] += wa
        cand_a = later[a]
        for i, b in enumerate(cand_a):
            wab = wa * G.weight(b)
            W[2] += wab
            cand_b = [c for c in cand_a[i + 1:] if not G.adjacent(b, c)]
            for j, c in enumerate(cand_b):
                W[3] += wab * G.weight(c)
                for d in cand_b[j + 1:]:
                    if not G.adjacent(c, d):
                        return None
    while len(W) > 1 and W[-1] == 0:
        W.pop()
    return W


def gallai_graph(G: WeightedGraph) -> dict[tuple[int, int], set[tuple[int, int]]]:
    """Adjacency of Gal(G): edges xy and yz are adjacent when x, z are not."""
    gal: dict[tuple[int, int], set[tuple[int, int]]] = {e: set() for e in G.edges()}
    for y in G:
        nb = sorted(G.neighbors(y))
        for i, x in enumerate(nb):
            for z in nb[i + 1:]:
                if not G.adjacent(x, z):
                    e1 = (min(x, y), max(x, y))
                    e2 = (min(y, z), max(y, z))
                    gal[e1].add(e2)
                    gal[e2].add(e1)
    return gal


@dataclass(frozen=True)
class ElementaryColouring:
    colour: dict  # edge -> 1 or 2; edges isolated in the Gallai graph are absent


def elementary_colouring(G: WeightedGraph) -> Optional[ElementaryColouring]:
    """Two-colouring of Gal(G), or None when G is not elementary."""
    gal = gallai_graph(G)
    colour: dict[tuple[int, int], int] = {}
    for start in sorted(gal):
        if start in colour or not gal[start]:
            continue
        colour[start] = 1
        queue = deque([start])
        while queue:
            e = queue.popleft()
            for f in gal[e]:
                if f not in colour:
                    colour[f] = 3 - colour[e]
                    queue.append(f)
                elif colour[f] == colour[e]:
                    return None
    return ElementaryColouring(colour)


@dataclass(frozen=True)
class Augment:
    X: frozenset[int]
    Y: frozenset[int]

    @property
    def Z(self) -> frozenset[int]:
        return self.X | self.Y

    def F(self, G: WeightedGraph) -> list[tuple[int, int]]:
        return [(x, y) for x in sorted(self.X) for y in sorted(self.Y) if G.adjacent(x, y)]


@dataclass(frozen=True)
class GadgetParams:
    rho: Fraction
    rho_bar: Fraction
    sigma: Fraction
    sigma_bar: Fraction


def is_augment(G: WeightedGraph, X, Y) -> bool:
    """Check the defining conditions of an augment (X, Y) directly."""
    X, Y = frozenset(X), frozenset(Y)
    if not X or not Y or X & Y:
        return False
    if not G.is_clique(X) or not G.is_clique(Y):
        return False
    if not any(G.adjacent(x, y) for x in X for y in Y):
        return False
    for v in G:
        if v in X or v in Y:
            continue
        hx = len(G.neighbors(v) & X)
        hy = len(G.neighbors(v) & Y)
        if hx not in (0, len(X)) or hy not in (0, len(Y)):
            return False
        if hx and hy:
            return False
    return True


def _seed_augment(G: WeightedGraph, x0: int, y0: int) -> Optional[Augment]:
    """Smallest augment with x0 in X and y0 in Y, if any.

    Vertices near the seed are classified as common neighbours S (inside Z,
    side to be chosen), private neighbours T of x0 (in X or outside), private
    neighbours U of y0 (in Y or outside).  The constraints force some T/U
    vertices out, tie adjacent t, u together, and make each side choice for
    an S vertex pull certain T/U vertices in.  Unforced T/U vertices stay
    outside.
    """
    Nx, Ny = G.neighbors(x0), G.neighbors(y0)
    S = sorted((Nx & Ny))
    T = sorted(Nx - Ny - {y0})
    U = sorted(Ny - Nx - {x0})
    near = Nx | Ny | {x0, y0}
    R = {v for v in G if v not in near}
    for s in S:
        if G.neighbors(s) & R:
            return None
    forced_out: set[int] = set()
    for group in (T, U):
        for i, a in enumerate(group):
            if G.neighbors(a) & R:
                forced_out.add(a)
            for b in group[i + 1:]:
                if not G.adjacent(a, b):
                    forced_out.update((a, b))
    # adjacent t, u must be both inside or both outside
    tie: dict[int, set[int]] = {v: set() for v in T + U}
    for t in T:
        for u in U:
            if G.adjacent(t, u):
                tie[t].add(u)
                tie[u].add(t)
    cls: dict[int, frozenset[int]] = {}
    for v in T + U:
        if v in cls:
            continue
        comp = {v}
        queue = [v]
        while queue:
            a = queue.pop()
            for b in tie[a]:
                if b not in comp:
                    comp.add(b)
                    queue.append(b)
        fz = frozenset(comp)
        for a in comp:
            cls[a] = fz
    blocked = {a for a in cls if cls[a] & forced_out}

    def pulled(s: int, side: str) -> Optional[set[int]]:
        # vertices dragged inside when s joins X (side "X") or Y
        same, other = (T, U) if side == "X" else (U, T)
        if any(not G.adjacent(s, a) for a in same):
            return None
        need: set[int] = set()
        for a in other:
            if G.adjacent(s, a):
                if a in blocked:
                    return None
                need |= cls[a]
        return need

    options = {s: {side: pulled(s, side) for side in ("X", "Y")} for s in S}
    # S vertices that are not adjacent must take different sides
    side_of: dict[int, str] = {}
    inside: set[int] = set()
    for s0 in S:
        if s0 in side_of:
            continue
        comp = [s0]
        seen = {s0}
        k = 0
        while k < len(comp):
            a = comp[k]
            k += 1
            for b in S:
                if b not in seen and not G.adjacent(a, b):
                    seen.add(b)
                    comp.append(b)
        best = None
        for first in ("X", "Y"):
            assign = {s0: first}
            queue = [s0]
            ok = True
            while queue and ok:
                a = queue.pop()
                for b in comp:
                    if b != a and not G.adjacent(a, b):
                        want = "Y" if assign[a] == "X" else "X"
                        if b not in assign:
                            assign[b] = want
                            queue.append(b)
                        elif assign[b] != want:
                            ok = False
            if not ok:
                continue
            need: set[int] = set()
            for b, sd in assign.items():
                got = options[b][sd]
                if got is None:
                    ok = False
                    break
                need |= got
            if ok and (best is None or len(need) < len(best[1])):
                best = (assign, need)
        if best is None:
            return None
        side_of.update(best[0])
        inside |= best[1]
    X = {x0} | {s for s, sd in side_of.items() if sd == "X"} | (inside & set(T))
    Y = {y0} | {s for s, sd in side_of.items() if sd == "Y"} | (inside & set(U))
    if not is_augment(G, X, Y):
        return None
    if len(Y) > len(X):
        X, Y = Y, X
    return Augment(frozenset(X), frozenset(Y))


def find_augments(G: WeightedGraph) -> list[Augment]:
    """Pairwise disjoint augments on at least three vertices, canonical order.

    Candidates come from every edge as a seed.  Those contained in a larger
    candidate are dropped, and the rest are taken greedily by minimum vertex
    id, skipping any that meet one already taken.
    """
    found: dict[frozenset[int], Augment] = {}
    for x0, y0 in G.edges():
        aug = _seed_augment(G, x0, y0)
        if aug is None or len(aug.Z) < 3:
            continue
        found.setdefault(aug.Z, aug)
    zs = list(found)
    maximal = [z for z in zs if not any(z < other for other in zs)]
    chosen: list[Augment] = []
    used: set[int] = set()
    for z in sorted(maximal, key=lambda z: (min(z), -len(z), sorted(z))):
        if z & used:
            continue
        chosen.append(found[z])
        used |= z
    return chosen


def gadget_params(G: WeightedGraph, aug: Augment) -> GadgetParams:
    W1X = sum((G.weight(x) for x in aug.X), Fraction(0))
    W1Y = sum((G.weight(y) for y in aug.Y), Fraction(0))
    W2Z = sum((G.weight(x) * G.weight(y) for x in aug.X for y in aug.Y if not G.adjacent(x, y)), Fraction(0))
    rho = W2Z / W1Y
    return GadgetParams(rho=rho, rho_bar=W1X - rho, sigma=Fraction(0), sigma_bar=W1Y)


def replace_augment(G: WeightedGraph, aug: Augment) -> WeightedGraph:
    """Swap the augment for the gadget x1 - x2 - y2 with sigma = 0.

    x1 and x2 take X's outside neighbours and y2 takes Y's.  New vertices get
    fresh ids; x1 is dropped when its weight rho is zero.
    """
    p = gadget_params(G, aug)
    outside_x = set().union(*(G.neighbors(x) for x in aug.X)) - aug.Z
    outside_y = set().union(*(G.neighbors(y) for y in aug.Y)) - aug.Z
    base = G.fresh_id()
    x1, x2, y2 = base, base + 1, base + 2
    weights = {v: G.weight(v) for v in G if v not in aug.Z}
    weights.update({x1: p.rho, x2: p.rho_bar, y2: p.sigma_bar})
    edges = [(u, v) for u, v in G.edges() if u not in aug.Z and v not in aug.Z]
    edges += [(x1, x2), (x2, y2)]
    edges += [(x1, o) for o in outside_x] + [(x2, o) for o in outside_x]
    edges += [(y2, o) for o in outside_y]
    return normalize(WeightedGraph(weights, edges))


def replace_all_augments(G: WeightedGraph) -> tuple[WeightedGraph, int]:
    """Replace augments on four or more vertices until none remain."""
    count = 0
    while True:
        big = [a for a in find_augments(G) if len(a.Z) >= 4]
        if not big:
            return G, count
        G = replace_augment(G, big[0])
        count += 1


def atom_weight(G: WeightedGraph, eps: float = 0.0, engine: EngineLike = "exact") -> Estimate:
    """W(G) for an atom of a (claw, odd hole)-free graph, or NotInClass."""
    ctx = as_context(engine)
    ctx.trace["atoms"] += 1
    G = normalize(G)
    if G.n == 0:
        return Estimate(Fraction(1))
    vec = small_alpha_weight(G)
    if vec is not None:
        ctx.trace["small_alpha"] += 1
        return Estimate(sum(vec, Fraction(0)))
    if elementary_colouring(G) is None:
        raise NotInClass("atom with independence number above 3 is not elementary")
    try:
        recover_bipartite_root(merge_parallel(G))
        H = G
    except NotLineGraphOfBipartite:
        H, replaced = replace_all_augments(G)
        ctx.trace["augments_replaced"] += replaced
    try:
        return line_graph_total_weight(H, eps, ctx)
    except NotLineGraphOfBipartite as exc:
        raise NotInClass(f"elementary atom is not an augmented bipartite line graph: {exc}") from exc
