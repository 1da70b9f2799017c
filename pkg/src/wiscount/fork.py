"""Counting on (fork, odd hole)-free graphs, and the top weight W_alpha.

On a prime fork-free graph, ordering the vertices v_1..v_n and charging each
nonempty independent set to its first vertex gives

    W(G) = 1 + sum_i w(v_i) W(R_i),   R_i = G[{v_i..v_n} - N[v_i]].

Every prime leaf in the modular decomposition of R_i is claw-free, so R_i is
counted by contracting modules and handing the leaves to the claw driver.
Arbitrary graphs are lifted to prime ones by the same contraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .context import EngineLike, as_context
from .cutset import count_claw_odd_hole_free
from .errors import InputError, NotInClass
from .graph import (
    Estimate,
    WeightedGraph,
    connected_components,
    independence_number,
    induced_subgraph,
    normalize,
    scale_weights,
)
from .modular import count_with_modules

Driver = Callable[..., Estimate]


def _degenerate_weight(G: WeightedGraph) -> Fraction | None:
    # leaves of series and parallel nodes are complete or edgeless
    ws = [G.weight(v) for v in G]
    if G.m == 0:
        return math.prod((1 + w for w in ws), start=Fraction(1))
    if 2 * G.m == G.n * (G.n - 1):
        return 1 + sum(ws, Fraction(0))
    return None


def partition_terms(G: WeightedGraph) -> list[tuple[int, WeightedGraph]]:
    """(v_i, R_i) for i = 1..n in increasing vertex id order."""
    order = sorted(G.vertices)
    out = []
    for i, v in enumerate(order):
        rest = [u for u in order[i + 1:] if not G.adjacent(u, v)]
        out.append((v, induced_subgraph(G, rest)))
    return out


def count_prime_fork_free(G: WeightedGraph, eps: float = 0.0, engine: EngineLike = "exact") -> Estimate:
    """W(G) for a prime (fork, odd hole)-free graph by the partition formula.

    Primality is trusted, not checked.  Each term gets the full eps, since a
    sum of positive terms each within eps is itself within eps.
    """
    ctx = as_context(engine)
    if G.n == 0:
        return Estimate(Fraction(1))
    quick = _degenerate_weight(G)
    if quick is not None:
        return Estimate(quick)
    ctx.trace["prime_fork_free"] += 1

    def leaf(M: WeightedGraph, e: float) -> Estimate:
        ctx.trace["claw_free_leaves"] += 1
        quick = _degenerate_weight(M)
        if quick is not None:
            return Estimate(quick)
        return count_claw_odd_hole_free(M, e, ctx)

    total = Fraction(1)
    approx = False
    for v, R in partition_terms(G):
        try:
            est = count_with_modules(R, leaf, eps)
        except NotInClass as exc:
            raise NotInClass(f"not (fork, odd hole)-free: {exc}") from exc
        approx = approx or est.eps > 0
        total += G.weight(v) * Fraction(est.value)
    if approx:
        return Estimate(total, eps, "mcmc")
    return Estimate(total)


def count_fork_free(G: WeightedGraph, eps: float = 0.0, engine: EngineLike = "exact") -> Estimate:
    """W(G) for a (fork, odd hole)-free graph."""
    ctx = as_context(engine)
    G = normalize(G)
    total = Fraction(1)
    approx = False
    for comp in connected_components(G):
        est = count_with_modules(induced_subgraph(G, comp), lambda P, e: count_prime_fork_free(P, e, ctx), eps)
        approx = approx or est.eps > 0
        total *= Fraction(est.value)
    if approx:
        return Estimate(total, eps, "mcmc")
    return Estimate(total)


def scaling_factor(G: WeightedGraph, alpha: int, eps: float) -> int:
    """lambda = ceil(2^n (w_max / w_min)^alpha / (eps / 2))."""
    ws = [G.weight(v) for v in G]
    ratio = max(ws) / min(ws)
    return math.ceil(Fraction(2) ** G.n * ratio ** alpha / Fraction(eps / 2))


def count_max_weight(G: WeightedGraph, driver: Driver = count_claw_odd_hole_free, eps: float = 0.05,
                     engine: EngineLike = "exact") -> Estimate:
    """W_alpha(G) as W(lambda G) / lambda^alpha.

    The result lies in [W_alpha, W_alpha + W(G) / lambda), so it is within
    eps/2 of W_alpha before any counting error.  alpha is computed exactly.
    """
    if not 0 < eps < 1:
        raise InputError("eps must lie in (0, 1)")
    ctx = as_context(engine)
    H = normalize(G)
    if H.n == 0:
        return Estimate(Fraction(1))
    alpha = independence_number(H)
    if alpha < independence_number(G):
        # every maximum independent set meets a zero-weight vertex
        return Estimate(Fraction(0))
    lam = scaling_factor(H, alpha, eps)
    ctx.trace["lambda_bits"] = lam.bit_length()
    est = driver(scale_weights(H, lam), eps / 2, ctx)
    value = Fraction(est.value) / Fraction(lam) ** alpha
    if est.eps > 0:
        return Estimate(value, eps, "mcmc")
    return Estimate(value, eps, "exact")
