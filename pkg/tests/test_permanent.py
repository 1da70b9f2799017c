import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wiscount.errors import BudgetExceeded, CapExceeded, InputError
from wiscount.oracle import brute_permanent
from wiscount.permanent import (
    AnnealSettings,
    PermanentInstance,
    has_perfect_matching,
    permanent_exact,
    permanent_mcmc,
)


def ones(n):
    return [[1] * n for _ in range(n)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("n", range(1, 13))
def test_all_ones_gives_factorial(n):
    assert permanent_exact(ones(n)) == math.factorial(n)


def test_small_exact_examples():
    assert permanent_exact(identity(6)) == 1
    assert permanent_exact([[1, 2], [3, 4]]) == 10
    assert permanent_exact([]) == 1
    assert permanent_exact([[0, 1], [0, 1]]) == 0
    with pytest.raises(CapExceeded):
        permanent_exact(ones(23))
    with pytest.raises(InputError):
        PermanentInstance.from_rows([[1, 2]])


@given(st.integers(1, 8), st.randoms())
def test_ryser_matches_naive(n, rnd):
    rows = [[Fraction(rnd.randint(0, 4), rnd.randint(1, 3)) for _ in range(n)] for _ in range(n)]
    assert permanent_exact(rows) == brute_permanent(rows)


@given(st.integers(1, 6), st.randoms())
def test_repeated_columns_are_handled(n, rnd):
    base = [[rnd.randint(0, 2) for _ in range(2)] for _ in range(n)]
    rows = [[r[rnd.randint(0, 1)] if j % 2 else r[0] for j in range(n)] for r in base]
    assert permanent_exact(rows) == brute_permanent(rows)


def test_json_round_trip():
    A = PermanentInstance.from_rows([[Fraction(1, 3), 2], [0, "5/7"]])
    text = A.to_json()
    assert '"1/3"' in text
    assert PermanentInstance.from_json(text) == A


def test_perfect_matching_check():
    assert has_perfect_matching([[True, False], [False, True]])
    assert not has_perfect_matching([[True, True], [False, False]])


def test_mcmc_zero_and_trivial_cases():
    assert permanent_mcmc([[0, 1], [0, 1]], 0.1, 1).value == 0
    assert permanent_mcmc([[Fraction(3, 4)]], 0.1, 1).value == Fraction(3, 4)
    with pytest.raises(InputError):
        permanent_mcmc(ones(3), 0, 1)


def test_mcmc_is_deterministic_given_seed():
    A = [[1, 2, 0], [1, 1, 1], [0, 3, 1]]
    assert permanent_mcmc(A, 0.2, 42) == permanent_mcmc(A, 0.2, 42)


def test_mcmc_all_ones_and_identity():
    hits = sum(abs(float(permanent_mcmc(ones(4), 0.1, s).value) / 24 - 1) <= 0.1 for s in range(30))
    assert hits >= 27
    assert abs(float(permanent_mcmc(identity(5), 0.1, 3).value) - 1) <= 0.1


def test_mcmc_random_six_by_six_against_exact():
    rng = random.Random(9)
    A = [[Fraction(rng.randint(0, 3), rng.randint(1, 2)) for _ in range(6)] for _ in range(6)]
    exact = float(permanent_exact(A))
    hits = sum(abs(float(permanent_mcmc(A, 0.1, s).value) / exact - 1) <= 0.1 for s in range(20))
    assert hits >= 15


def test_mcmc_refuses_instead_of_guessing():
    with pytest.raises(BudgetExceeded):
        permanent_mcmc([[1, 2, 0], [1, 1, 1], [0, 3, 1]], 1e-6, 1, AnnealSettings(max_chains=10_000))


def test_anneal_weights_are_finite():
    from wiscount.permanent import _anneal_batch

    A = np.array([[1.0, 0.5], [0.0, 1.0]])
    w = _anneal_batch(A, np.geomspace(1, 0.01, 5), 50, 2, np.random.default_rng(0))
    assert np.all(np.isfinite(w)) and w.mean() > 0
