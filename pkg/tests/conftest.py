import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from uspgraph.graph import build_graph
from uspgraph.relations import EdgeRelation

settings.register_profile(
    "repo", deadline=None, max_examples=60, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def connected_graphs(draw, min_n=1, max_n=7):
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
        edges.update(extra)
    return build_graph(n, sorted(edges))


@st.composite
def graphs_with_relation(draw, min_n=2, max_n=7, max_k=4):
    g = draw(connected_graphs(min_n=min_n, max_n=max_n))
    k = draw(st.integers(1, max_k))
    labels = draw(st.lists(st.integers(0, k - 1), min_size=g.m, max_size=g.m))
    return g, EdgeRelation(g, tuple(labels))


@pytest.fixture
def rng():
    return random.Random(12345)
