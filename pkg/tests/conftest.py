import itertools
import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from wiscount.graph import WeightedGraph
from wiscount.matching import WeightedBipartiteGraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def cycle(n):
    return WeightedGraph.unit(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return WeightedGraph.unit(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return WeightedGraph.unit(n, itertools.combinations(range(n), 2))


def complete_bipartite(a, b, w=1):
    return WeightedBipartiteGraph.build(range(a), range(a, a + b), {(i, j): w for i in range(a) for j in range(a, a + b)})


CLAW = WeightedGraph.unit(4, [(0, 1), (0, 2), (0, 3)])
TWO_TRIANGLES = WeightedGraph.unit(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])

weights = st.builds(Fraction, st.integers(1, 9), st.integers(1, 4))


@st.composite
def graphs(draw, min_n=0, max_n=9, zero_weights=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    w_strat = st.one_of(st.just(Fraction(0)), weights) if zero_weights else weights
    ws = draw(st.lists(w_strat, min_size=n, max_size=n))
    return WeightedGraph(dict(enumerate(ws)), [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def bipartite_graphs(draw, max_side=5, min_side=1):
    n1 = draw(st.integers(min_side, max_side))
    n2 = draw(st.integers(min_side, max_side))
    edges = {}
    for i in range(n1):
        for j in range(n1, n1 + n2):
            if draw(st.booleans()):
                edges[(i, j)] = draw(weights)
    return WeightedBipartiteGraph.build(range(n1), range(n1, n1 + n2), edges)


@pytest.fixture
def claw():
    return CLAW


# acceptance tests record "PASS"/"FAIL" lines here; they are echoed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
