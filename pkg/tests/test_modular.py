import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete, graphs, path
from wiscount.errors import InputError
from wiscount.generators import knn_minus_matching, module_rich, substitute
from wiscount.graph import Estimate, WeightedGraph, induced_subgraph
from wiscount.modular import (
    contract_module,
    count_with_modules,
    extended_tree,
    is_module,
    is_prime,
    standard_tree,
    strong_modules,
)
from wiscount.oracle import brute_total_weight


def brute_strong_modules(G):
    vs = G.vertices
    mods = [frozenset(S) for k in range(1, G.n + 1) for S in itertools.combinations(vs, k) if is_module(G, S)]
    strong = []
    for M in mods:
        if all(M <= N or N <= M or not (M & N) for N in mods):
            strong.append(M)
    return {M for M in strong if len(M) >= 2}


def oracle_counter(H, eps):
    return Estimate(brute_total_weight(H))


# M1 = {0,1} and M2 = {2,3} are non-adjacent pairs joined into M3; M4 = {4,5}
# is a non-adjacent pair; M5 = {6,7} is an edge and M6 = M5 plus 8; the top
# level is the path M3 - M4 - M6 - 9.
NESTED_EDGES = (
    [(a, b) for a in (0, 1) for b in (2, 3)]
    + [(a, b) for a in (0, 1, 2, 3) for b in (4, 5)]
    + [(6, 7)]
    + [(a, b) for a in (4, 5) for b in (6, 7, 8)]
    + [(a, 9) for a in (6, 7, 8)]
)
NESTED = WeightedGraph.unit(10, NESTED_EDGES)


def test_strong_module_examples():
    P4 = path(4)
    assert strong_modules(P4) == [frozenset(range(4))]
    assert is_prime(P4)
    assert strong_modules(complete(3)) == [frozenset(range(3))]
    G = WeightedGraph.unit(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    # 0 and 1 are true twins; 2 is universal, so {0, 1, 3} is a module too
    assert set(strong_modules(G)) == {frozenset({0, 1}), frozenset({0, 1, 3}), frozenset(range(4))}
    G = WeightedGraph.unit(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    assert set(strong_modules(G)) == {frozenset({0, 1}), frozenset(range(5))}


def test_nested_module_shape():
    mods = strong_modules(NESTED)
    assert len(mods) == 7
    ext = extended_tree(NESTED)
    assert ext.h == 7
    sizes = [leaf.n for leaf in ext.leaves]
    # postorder: M1, M2, M3 (two contracted pairs), M4, M5, M6, then the P4 quotient
    assert sizes == [2, 2, 2, 2, 2, 2, 4]
    assert [leaf.m for leaf in ext.leaves] == [0, 0, 1, 0, 1, 0, 3]
    assert ext.leaves[0].vertices == (0, 1) and ext.leaves[1].vertices == (2, 3)
    assert ext.graphs[-1].n == 1


def test_extended_tree_boundaries():
    P4 = path(4)
    ext = extended_tree(P4)
    assert ext.h == 1 and ext.leaves[0] == P4 and ext.graphs[-1].n == 1
    one = WeightedGraph({0: Fraction(2)}, [])
    ext = extended_tree(one)
    assert ext.h == 0 and ext.graphs == (one,)
    assert standard_tree(WeightedGraph({}, [])) is None


def test_contract_examples():
    a, b, c = Fraction(2), Fraction(3, 2), Fraction(5, 7)
    adj = WeightedGraph({0: a, 1: b, 2: c}, [(0, 1), (0, 2), (1, 2)])
    H, v = contract_module(adj, {0, 1}, a + b)
    assert brute_total_weight(H) == brute_total_weight(adj) == 1 + a + b + c
    non = WeightedGraph({0: a, 1: b, 2: c}, [(0, 2), (1, 2)])
    H, v = contract_module(non, {0, 1}, brute_total_weight(induced_subgraph(non, {0, 1})) - 1)
    assert H.weight(v) == a + b + a * b
    assert brute_total_weight(H) == brute_total_weight(non)
    H, v = contract_module(non, {2}, c)
    assert brute_total_weight(H) == brute_total_weight(non)
    with pytest.raises(InputError):
        contract_module(path(4), {0, 1}, 1)


def test_uncorrected_weight_double_counts_the_empty_set():
    a, b, c = Fraction(2), Fraction(3), Fraction(5)
    G = WeightedGraph({0: a, 1: b, 2: c}, [(0, 1), (0, 2), (1, 2)])
    full = brute_total_weight(induced_subgraph(G, {0, 1}))
    wrong, _ = contract_module(G, {0, 1}, full)
    right, _ = contract_module(G, {0, 1}, full - 1)
    assert brute_total_weight(wrong) == 2 + a + b + c != brute_total_weight(G)
    assert brute_total_weight(right) == 1 + a + b + c == brute_total_weight(G)


def test_count_with_modules_examples():
    calls = []

    def counter(H, eps):
        calls.append(H)
        return oracle_counter(H, eps)

    assert count_with_modules(path(4), counter).value == 8
    assert len(calls) == 1
    calls.clear()
    K = knn_minus_matching(4)
    assert count_with_modules(K, counter).value == brute_total_weight(K)
    assert len(calls) == 1
    # a cograph from three nested substitutions
    G = WeightedGraph.unit(2, [(0, 1)])
    G = substitute(G, 0, WeightedGraph.unit(3))
    G = substitute(G, 1, WeightedGraph.unit(3, [(0, 1), (1, 2), (0, 2)]))
    G = substitute(G, max(G.vertices), WeightedGraph.unit(3))
    assert G.n == 8
    assert count_with_modules(G, oracle_counter).value == brute_total_weight(G)


def test_prime_calls_get_eps_over_two_n_squared():
    seen = []

    def counter(H, eps):
        seen.append(eps)
        return oracle_counter(H, eps)

    count_with_modules(NESTED, counter, 0.5)
    assert len(seen) == 7 and all(e == pytest.approx(0.5 / 200) for e in seen)


@given(graphs(max_n=7))
def test_strong_modules_match_brute_force(G):
    if G.n == 0:
        return
    assert set(strong_modules(G)) == brute_strong_modules(G)


@given(graphs(max_n=10))
def test_modules_are_modules_and_nested(G):
    mods = strong_modules(G)
    for M in mods:
        assert is_module(G, M)
    for M, N in itertools.combinations(mods, 2):
        assert M <= N or N <= M or not (M & N)


@given(graphs(max_n=9), st.data())
def test_heredity(G, data):
    if G.n == 0:
        return
    U = data.draw(st.sets(st.sampled_from(G.vertices), min_size=1))
    H = induced_subgraph(G, U)
    for M in strong_modules(G):
        if M & U:
            assert is_module(H, M & U)


@given(graphs(max_n=8))
def test_leaves_are_prime_and_sizes_add_up(G):
    if G.n == 0:
        return
    ext = extended_tree(G)
    assert ext.h <= G.n - 1 or G.n == 1
    if ext.h:
        assert sum(leaf.n for leaf in ext.leaves) == G.n + ext.h - 1
    for leaf in ext.leaves:
        assert leaf.n >= 2
        assert brute_strong_modules(leaf) == {frozenset(leaf.vertices)}


def test_contraction_conserves_weight_on_module_rich_graphs():
    rng = random.Random(21)
    for _ in range(40):
        G = module_rich(rng, rng.randint(4, 14))
        ext = extended_tree(G)
        W = brute_total_weight(G)
        assert all(brute_total_weight(Gi) == W for Gi in ext.graphs)
        assert 1 + ext.graphs[-1].weight(ext.graphs[-1].vertices[0]) == W
        assert count_with_modules(G, oracle_counter).value == W
