"""Permanent engines: exact Ryser and an annealed Markov chain estimator.

Both take a :class:`PermanentInstance` of nonnegative rationals.  The exact
engine works in integers after clearing row denominators and collapses
repeated rows and columns, which is what makes the padded instances coming
from matching problems cheap.  The mcmc engine estimates the permanent as
n! times a product of ratios along an annealing path from the all-ones
matrix, and refuses rather than return an estimate it cannot vouch for.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, CapExceeded, InputError
from .graph import Estimate, to_weight

EXACT_CAP = 22


@dataclass(frozen=True)
class PermanentInstance:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise InputError("permanent instances must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> PermanentInstance:
        return cls(tuple(tuple(to_weight(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def transpose(self) -> PermanentInstance:
        return PermanentInstance(tuple(zip(*self.rows)) if self.rows else ())

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "rows": [[_frac_str(x) for x in r] for r in self.rows]})

    @classmethod
    def from_json(cls, text: str) -> PermanentInstance:
        doc = json.loads(text)
        inst = cls.from_rows(doc["rows"])
        if "n" in doc and doc["n"] != inst.n:
            raise InputError("declared dimension does not match rows")
        return inst

    def __iter__(self):
        return iter(self.rows)

    def __len__(self) -> int:
        return self.n


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _as_instance(A) -> PermanentInstance:
    return A if isinstance(A, PermanentInstance) else PermanentInstance.from_rows(A)


def _integer_rows(A: PermanentInstance) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns the matrix and the total scale."""
    out = []
    scale = 1
    for r in A.rows:
        d = math.lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
        scale *= d
    return out, scale


def _groups(vectors: list[tuple[int, ...]]) -> tuple[list[tuple[int, ...]], list[int]]:
    seen: dict[tuple[int, ...], int] = {}
    reps: list[tuple[int, ...]] = []
    mult: list[int] = []
    for v in vectors:
        if v in seen:
            mult[seen[v]] += 1
        else:
            seen[v] = len(reps)
            reps.append(v)
            mult.append(1)
    return reps, mult


def _ryser_grouped(M: list[list[int]]) -> int:
    """Ryser's formula over count vectors of identical-column classes."""
    n = len(M)
    cols, cmult = _groups([tuple(M[i][j] for i in range(n)) for j in range(n)])
    rows, rmult = _groups([tuple(c[i] for c in cols) for i in range(n)])
    J, I = len(cols), len(rows)
    # rows[i][j] is the entry of row class i in column class j
    a = [0] * J
    focus = list(range(J + 1))
    direction = [1] * J
    rowsum = [0] * I
    binom = 1
    size = 0
    total = 0
    while True:
        if size:
            prod = binom
            for i in range(I):
                s = rowsum[i]
                if s == 0:
                    prod = 0
                    break
                prod *= s ** rmult[i] if rmult[i] > 1 else s
            if prod:
                total += -prod if (n - size) & 1 else prod
        j = focus[0]
        focus[0] = 0
        if j == J:
            break
        step = direction[j]
        c = a[j]
        if step > 0:
            binom = binom * (cmult[j] - c) // (c + 1)
        else:
            binom = binom * c // (cmult[j] - c + 1)
        a[j] = c + step
        size += step
        for i in range(I):
            rowsum[i] += step * rows[i][j]
        if a[j] == 0 or a[j] == cmult[j]:
            direction[j] = -step
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1
    return total


def _state_count(M: list[list[int]]) -> int:
    n = len(M)
    _, mult = _groups([tuple(M[i][j] for i in range(n)) for j in range(n)])
    return math.prod(m + 1 for m in mult)


def permanent_exact(A, cap: int = EXACT_CAP) -> Fraction:
    """Exact permanent by Ryser inclusion-exclusion in integer arithmetic."""
    A = _as_instance(A)
    n = A.n
    if n == 0:
        return Fraction(1)
    if n > cap:
        raise CapExceeded(f"exact permanent refuses n={n} (cap {cap})")
    if any(not any(r) for r in A.rows) or any(not any(c) for c in zip(*A.rows)):
        return Fraction(0)
    M, scale = _integer_rows(A)
    T, tscale = _integer_rows(A.transpose())
    if _state_count(T) < _state_count(M):
        M, scale = T, tscale
    return Fraction(_ryser_grouped(M), scale)


def has_perfect_matching(support: Sequence[Sequence[bool]]) -> bool:
    """Kuhn's augmenting-path test on a square 0/1 support pattern."""
    n = len(support)
    match_col = [-1] * n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in range(n):
            if support[i][j] and not seen[j]:
                seen[j] = True
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    return all(augment(i, [False] * n) for i in range(n))


@dataclass(frozen=True)
class AnnealSettings:
    pilot_chains: int = 400
    sweeps: int = 2
    safety: float = 16.0  # chains >= safety * relvar / eps^2
    stages_per_n: float = 2.0  # annealing stages per unit of n * log(1 / lam_min)
    max_chains: int = 200_000


def _anneal_batch(A: np.ndarray, lams: np.ndarray, chains: int, sweeps: int,
                  rng: np.random.Generator) -> np.ndarray:
    """One AIS batch; returns the importance weight of each chain.

    Distributions along the path are pi_t(s) proportional to prod_i B_t[i, s(i)],
    B_t = max(A, lams[t]); the last stage is A itself.  Moves are random
    transpositions with Metropolis acceptance.
    """
    n = A.shape[0]
    rows = np.arange(n)
    perm = np.array([rng.permutation(n) for _ in range(chains)])
    logw = np.zeros(chains)
    cur = np.log(np.maximum(A, lams[0]))
    with np.errstate(divide="ignore"):
        stages = [np.log(np.maximum(A, lam)) for lam in lams[1:]] + [np.log(A)]
    alive = np.ones(chains, dtype=bool)
    idx = np.arange(chains)
    for nxt in stages:
        delta = nxt[rows, perm].sum(axis=1) - cur[rows, perm].sum(axis=1)
        logw += np.where(alive, delta, 0.0)
        alive &= np.isfinite(logw)
        cur = nxt
        if not alive.any():
            break
        for _ in range(sweeps * n):
            i = rng.integers(0, n, chains)
            j = rng.integers(0, n - 1, chains)
            j = np.where(j >= i, j + 1, j)
            si, sj = perm[idx, i], perm[idx, j]
            old = cur[i, si] + cur[j, sj]
            new = cur[i, sj] + cur[j, si]
            with np.errstate(invalid="ignore"):
                accept = np.log(rng.random(chains)) < new - old
            accept &= alive & np.isfinite(new)
            perm[idx[accept], i[accept]] = sj[accept]
            perm[idx[accept], j[accept]] = si[accept]
    return np.where(alive, np.exp(logw), 0.0)


def permanent_mcmc(A, eps: float, seed: int, settings: AnnealSettings | None = None) -> Estimate:
    """Annealed importance sampling estimate of per(A) within relative eps.

    The chain count comes from a pilot run: enough chains that Chebyshev's
    inequality, with the observed relative variance and a safety factor,
    puts the failure probability well under 1/4.  When that count exceeds
    the budget a BudgetExceeded is raised.
    """
    settings = settings or AnnealSettings()
    A = _as_instance(A)
    n = A.n
    if not 0 < eps < 1:
        raise InputError("eps must lie in (0, 1)")
    if n == 0:
        return Estimate(Fraction(1), eps, "mcmc")
    if not has_perfect_matching([[x > 0 for x in r] for r in A.rows]):
        return Estimate(Fraction(0), eps, "mcmc")
    if n == 1:
        return Estimate(A.rows[0][0], eps, "mcmc")
    top = max(max(r) for r in A.rows)
    M = np.array([[float(x / top) for x in r] for r in A.rows])
    positive = M[M > 0]
    a_min = float(positive.min())
    lam_min = min(a_min, a_min ** n / (n * math.factorial(n)))
    steps = max(1, math.ceil(settings.stages_per_n * n * math.log(1.0 / lam_min))) if lam_min < 1 else 1
    lams = np.geomspace(1.0, lam_min, steps + 1)
    rng = np.random.default_rng(seed)
    weights = _anneal_batch(M, lams, settings.pilot_chains, settings.sweeps, rng)
    mean = weights.mean()
    relvar = weights.var() / mean ** 2 if mean > 0 else math.inf
    need = max(settings.pilot_chains, math.ceil(settings.safety * relvar / eps ** 2))
    if need > settings.max_chains:
        raise BudgetExceeded(
            f"permanent n={n} needs ~{need} chains for eps={eps:.3g}, budget {settings.max_chains}"
        )
    batches = [weights]
    have = len(weights)
    while have < need:
        k = min(need - have, 20_000)
        batches.append(_anneal_batch(M, lams, k, settings.sweeps, rng))
        have += k
    ratio = float(np.concatenate(batches).mean())
    value = Fraction(ratio) * math.factorial(n) * top ** n
    return Estimate(value, eps, "mcmc")
