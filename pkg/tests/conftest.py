import itertools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from corona_spectra import CoronaOperands, make_named_graph, validate_graph

settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def C(k):
    return make_named_graph("cycle", k)


def K(k):
    return make_named_graph("complete", k)


def P(k):
    return make_named_graph("path", k)


def E(k):
    return make_named_graph("empty", k)


@pytest.fixture
def svev_fixture():
    """C4 with K2 copies on vertices and K2 copies on inserted vertices."""
    return CoronaOperands(C(4), K(2), K(2))


@pytest.fixture
def svee_fixture():
    return CoronaOperands(C(4), K(2), K(1))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return validate_graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, min_n=2, max_n=10):
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    edges = set()
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        u, v = perm[i], perm[j]
        edges.add((min(u, v), max(u, v)))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges.update(e for e, keep in zip(pairs, mask) if keep)
    return validate_graph(n, edges)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
