import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import CLAW, complete, complete_bipartite, graphs, path
from wiscount.atoms import (
    Augment,
    atom_weight,
    elementary_colouring,
    find_augments,
    gadget_params,
    gallai_graph,
    is_augment,
    replace_all_augments,
    replace_augment,
    small_alpha_weight,
)
from wiscount.context import RunContext
from wiscount.errors import NotInClass
from wiscount.generators import augmented, lg_bipartite, peculiar_graph
from wiscount.graph import WeightedGraph
from wiscount.matching import line_graph
from wiscount.oracle import PatternKind, brute_total_weight, brute_weight_vector, contains_pattern

# A base line graph, then one and two flat edges augmented.  Ids: v=0, x1=1,
# x2=2, v'=3, y1=4, y2=5, x1'=6, y1'=7, x2'=8, y2'=9.
AUG_BASE = [(3, 4), (4, 5), (5, 3), (1, 4), (2, 5), (0, 1), (1, 2), (2, 0)]
AUG_ONE = AUG_BASE + [(0, 6), (6, 2), (3, 7), (7, 5), (1, 6), (4, 7), (1, 7), (6, 7)]
AUG_TWO = AUG_ONE + [(2, 8), (5, 9), (8, 5), (8, 9), (8, 0), (8, 1), (8, 6), (9, 3), (9, 4), (9, 7)]


def induced_p3s(G):
    for y in G:
        for x, z in itertools.combinations(sorted(G.neighbors(y)), 2):
            if not G.adjacent(x, z):
                yield x, y, z


def edge(a, b):
    return (min(a, b), max(a, b))


def test_small_alpha_examples():
    assert small_alpha_weight(peculiar_graph()) == [1, 9, 12, 1]
    assert small_alpha_weight(complete(4)) == [1, 4]
    LK44, _ = line_graph(complete_bipartite(4, 4))
    assert small_alpha_weight(LK44) is None
    assert small_alpha_weight(CLAW) == [1, 4, 3, 1]


def test_gallai_examples():
    tri = gallai_graph(complete(3))
    assert len(tri) == 3 and all(not nb for nb in tri.values())
    p3 = gallai_graph(path(3))
    assert p3 == {(0, 1): {(1, 2)}, (1, 2): {(0, 1)}}
    claw = gallai_graph(CLAW)
    assert all(len(nb) == 2 for nb in claw.values())


def test_elementary_examples():
    assert elementary_colouring(CLAW) is None
    assert elementary_colouring(complete(3)).colour == {}
    LK33, _ = line_graph(complete_bipartite(3, 3))
    assert elementary_colouring(LK33) is not None


@given(graphs(max_n=9))
def test_colouring_is_valid_whenever_returned(G):
    col = elementary_colouring(G)
    if col is None:
        return
    gal = gallai_graph(G)
    for e, nb in gal.items():
        assert (e in col.colour) == bool(nb)
    for x, y, z in induced_p3s(G):
        assert col.colour[edge(x, y)] != col.colour[edge(y, z)]


def test_line_graphs_have_no_augments():
    rng = random.Random(3)
    for _ in range(20):
        G = lg_bipartite(rng, 4)
        if len({G.closed_neighbors(v) for v in G}) == G.n:
            assert find_augments(G) == []


def test_augment_examples():
    assert find_augments(WeightedGraph.unit(6, AUG_BASE)) == []
    mid = find_augments(WeightedGraph.unit(8, AUG_ONE))
    assert mid == [Augment(frozenset({1, 6}), frozenset({4, 7}))]
    right = find_augments(WeightedGraph.unit(10, AUG_TWO))
    assert len(right) == 2
    assert all(len(a.X) == len(a.Y) == 2 for a in right)
    assert not (right[0].Z & right[1].Z)


def test_degenerate_augment_is_unchanged():
    a, b = Fraction(3, 2), Fraction(5)
    G = WeightedGraph({0: a, 1: b}, [(0, 1)])
    aug = Augment(frozenset({0}), frozenset({1}))
    p = gadget_params(G, aug)
    assert p.rho == 0 and p.rho_bar == a and p.sigma_bar == b
    H = replace_augment(G, aug)
    assert H.n == 2 and H.m == 1 and sorted(H.weights.values()) == sorted([a, b])


def test_three_vertex_gadget_numbers():
    # X = {x1, x2} (adjacent), Y = {y}, F = {x1 y}
    G = WeightedGraph.unit(3, [(0, 1), (0, 2)])
    aug = Augment(frozenset({0, 1}), frozenset({2}))
    assert is_augment(G, aug.X, aug.Y)
    p = gadget_params(G, aug)
    assert (p.rho, p.rho_bar, p.sigma, p.sigma_bar) == (1, 1, 0, 1)
    assert p.rho * p.sigma_bar + p.rho_bar * p.sigma == 1
    assert brute_weight_vector(replace_augment(G, aug)) == brute_weight_vector(G)


def test_single_augment_replacement_preserves_every_wk():
    G = WeightedGraph.unit(8, AUG_ONE)
    (aug,) = find_augments(G)
    assert brute_weight_vector(replace_augment(G, aug)) == brute_weight_vector(G)


def test_gadget_equivalence_on_random_augmented_instances():
    rng = random.Random(17)
    checked = 0
    while checked < 40:
        G = augmented(rng, rng.randint(2, 4), "random", max_n=16)
        augs = find_augments(G)
        for aug in augs:
            assert is_augment(G, aug.X, aug.Y)
            assert aug.F(G) and len(aug.X) >= len(aug.Y) and len(aug.Z) >= 3
            p = gadget_params(G, aug)
            W1X = sum(G.weight(x) for x in aug.X)
            W1Y = sum(G.weight(y) for y in aug.Y)
            W2Z = sum(G.weight(x) * G.weight(y) for x in aug.X for y in aug.Y if not G.adjacent(x, y))
            assert p.rho + p.rho_bar == W1X and p.sigma + p.sigma_bar == W1Y
            assert p.rho * p.sigma_bar + p.rho_bar * p.sigma == W2Z
            assert min(p.rho, p.rho_bar, p.sigma, p.sigma_bar) >= 0
            assert brute_weight_vector(replace_augment(G, aug)) == brute_weight_vector(G)
        for a, b in itertools.combinations(augs, 2):
            assert not (a.Z & b.Z)
        H, _ = replace_all_augments(G)
        assert brute_weight_vector(H) == brute_weight_vector(G)
        for kind in (PatternKind.CLAW, PatternKind.GEM, PatternKind.WHEEL4, PatternKind.ODDHOLE):
            assert contains_pattern(H, kind) is None
        checked += 1


def test_atom_weight_examples():
    assert atom_weight(peculiar_graph()).value == 23
    LK44, _ = line_graph(complete_bipartite(4, 4))
    ctx = RunContext()
    assert atom_weight(LK44, 0, ctx).value == brute_total_weight(LK44) == 209
    assert ctx.trace["permanent_calls"] == 4
    assert atom_weight(CLAW).value == 9


def test_atom_weight_rejects_non_elementary_atoms():
    C9 = WeightedGraph.unit(9, [(i, (i + 1) % 9) for i in range(9)])
    with pytest.raises(NotInClass):
        atom_weight(C9)


def test_atom_weight_counts_augmented_atoms_exactly():
    rng = random.Random(8)
    for _ in range(25):
        G = augmented(rng, rng.randint(3, 5), "random")
        assert atom_weight(G).value == brute_total_weight(G)
