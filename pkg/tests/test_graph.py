from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CLAW, complete, cycle, graphs, weights
from wiscount.errors import InputError
from wiscount.graph import (
    WeightedGraph,
    complement,
    connected_components,
    delete_closed_neighborhood,
    disjoint_union,
    independence_number,
    induced_subgraph,
    normalize,
    scale_weights,
    to_weight,
)
from wiscount.oracle import brute_total_weight, brute_weight_vector


def test_weights_parse_exactly():
    assert to_weight("3/6") == Fraction(1, 2)
    assert to_weight(4) == 4
    for bad in (0.5, True, "-1/2", "x", "1/0"):
        with pytest.raises(InputError):
            to_weight(bad)


def test_graph_rejects_loops_and_unknown_vertices():
    with pytest.raises(InputError):
        WeightedGraph({0: 1}, [(0, 0)])
    with pytest.raises(InputError):
        WeightedGraph({0: 1}, [(0, 1)])


def test_induced_subgraph_examples():
    C5 = cycle(5)
    assert induced_subgraph(C5, C5.vertices) == C5
    assert induced_subgraph(C5, []).n == 0
    P = induced_subgraph(C5, {0, 1, 2})
    assert P.edges() == [(0, 1), (1, 2)]
    with pytest.raises(InputError):
        induced_subgraph(C5, {7})


def test_delete_closed_neighborhood_examples():
    assert delete_closed_neighborhood(CLAW, 0).n == 0
    rest = delete_closed_neighborhood(cycle(5), 0)
    assert rest.vertices == (2, 3) and rest.edges() == [(2, 3)]
    assert delete_closed_neighborhood(complete(4), 2).n == 0
    with pytest.raises(InputError):
        delete_closed_neighborhood(CLAW, 9)


def test_normalize_examples():
    assert normalize(CLAW) == CLAW
    lone = WeightedGraph({0: 0}, [])
    assert normalize(lone).n == 0 and brute_total_weight(lone) == 1
    G = WeightedGraph({0: 0, 1: Fraction(5, 2)}, [(0, 1)])
    H = normalize(G)
    assert H.vertices == (1,)
    assert brute_total_weight(G) == brute_total_weight(H) == Fraction(7, 2)


def test_scale_weights_examples():
    assert scale_weights(CLAW, 1) == CLAW
    assert brute_total_weight(scale_weights(WeightedGraph({0: 2}, []), 3)) == 7
    assert brute_weight_vector(scale_weights(CLAW, 2)) == [1, 8, 12, 8]
    with pytest.raises(InputError):
        scale_weights(CLAW, 0)


def test_components_and_product_rule():
    G = WeightedGraph({0: 1, 1: 1, 2: Fraction(2, 3)}, [(0, 1)])
    comps = connected_components(G)
    assert comps == [frozenset({0, 1}), frozenset({2})]
    assert brute_total_weight(G) == 3 * (1 + Fraction(2, 3))
    assert connected_components(WeightedGraph({}, [])) == []
    assert len(connected_components(cycle(6))) == 1


def test_complement_examples():
    assert complement(complete(3)).m == 0
    C5 = cycle(5)
    assert complement(complement(C5)) == C5
    # C5 is self-complementary: its complement is again a 5-cycle
    comp = complement(C5)
    assert all(comp.degree(v) == 2 for v in comp) and len(connected_components(comp)) == 1


def test_independence_number_small_cases():
    assert independence_number(CLAW) == 3
    assert independence_number(cycle(7)) == 3
    assert independence_number(complete(5)) == 1
    assert independence_number(WeightedGraph({}, [])) == 0


@given(graphs(max_n=10), st.data())
def test_induced_subgraph_matches_oracle_on_subset(G, data):
    U = data.draw(st.sets(st.sampled_from(G.vertices)) if G.n else st.just(set()))
    H = induced_subgraph(G, U)
    assert set(H.vertices) == set(U)
    for u, v in H.edges():
        assert G.adjacent(u, v)
    assert H.m == sum(1 for u, v in G.edges() if u in U and v in U)


@given(graphs(max_n=10, zero_weights=True))
def test_normalize_preserves_weight_vector(G):
    assert brute_weight_vector(normalize(G)) == brute_weight_vector(G)


@given(graphs(max_n=10), weights)
def test_scaling_multiplies_kth_entry(G, lam):
    before = brute_weight_vector(G)
    after = brute_weight_vector(scale_weights(G, lam))
    assert after == [lam ** k * w for k, w in enumerate(before)]


@given(graphs(max_n=11))
def test_component_product_rule(G):
    prod = Fraction(1)
    for comp in connected_components(G):
        prod *= brute_total_weight(induced_subgraph(G, comp))
    assert prod == brute_total_weight(G)


@given(graphs(max_n=9))
def test_independence_number_is_oracle_vector_length(G):
    assert independence_number(G) == len(brute_weight_vector(G)) - 1


@given(graphs(max_n=6), graphs(max_n=6))
def test_disjoint_union_multiplies(G, H):
    assert brute_total_weight(disjoint_union(G, H)) == brute_total_weight(G) * brute_total_weight(H)
