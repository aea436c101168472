import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_graphs
from oracles import brute_product, to_nx
from uspgraph import fixtures as F
from uspgraph.errors import IsomorphismFailure, NotCertifiedUsp, NotTwoClasses, PreconditionNotMet
from uspgraph.generators import random_product, random_suite
from uspgraph.graph import build_graph
from uspgraph.iso import are_isomorphic, canonical_form, find_isomorphism
from uspgraph.partitions import VertexPartition
from uspgraph.products import (
    cartesian_product,
    cartesian_product_all,
    cartesian_product_weighted,
    complement_components_induced,
    is_product_relation_pair,
    prime_factorize_small,
    product_relation_of,
    verify_loopless_decomposition,
    verify_quotient_decomposition,
    verify_weighted_decomposition,
    weighted_decomposition_mismatch,
)
from uspgraph.quotients import QuotientGraph, WeightedDigraph, quotient_graph
from uspgraph.relations import EdgeRelation, certify_usp, compute_delta, coarsen

LOOP = QuotientGraph(("*",), frozenset({(0, 0)}))


def test_product_examples():
    assert are_isomorphic(cartesian_product(F.k2(), F.k2()), F.c4())
    assert are_isomorphic(cartesian_product(F.cycle(6), F.k2()), F.prism().graph)
    assert are_isomorphic(cartesian_product_all([F.k2()] * 3), F.q3())
    p = cartesian_product(F.k2(), F.p3())
    assert p.names[4] == (1, 1)
    with pytest.raises(ValueError):
        cartesian_product_all([])


def test_loops_propagate():
    q = cartesian_product(F.c4(), LOOP)
    assert isinstance(q, QuotientGraph)
    assert q.loops == [0, 1, 2, 3]
    assert len([e for e in q.edges if e[0] != e[1]]) == 4
    m8 = F.m8()
    assert are_isomorphic(q, quotient_graph(m8.graph, VertexPartition.from_blocks(
        8, [[0, 4], [1, 5], [2, 6], [3, 7]])))


def test_weighted_loop_weights_add():
    a = WeightedDigraph(("x",), ((0, 0, 1),))
    w = cartesian_product_weighted(a, a)
    assert w.arcs == ((0, 0, 2),)
    k2 = WeightedDigraph(("a", "b"), ((0, 1, 3), (1, 0, 3)))
    w = cartesian_product_weighted(k2, a)
    assert w.weight(0, 0) == 1 and w.weight(0, 1) == 3


@given(connected_graphs(max_n=4), connected_graphs(max_n=4))
def test_product_matches_brute_force(g, h):
    p = cartesian_product(g, h)
    expect = {(a * h.n + b, c * h.n + d) for (a, b), (c, d) in brute_product(g.edges, g.n, h.edges, h.n)}
    assert set(p.edges) == expect
    assert p.connected


@given(connected_graphs(max_n=3), connected_graphs(max_n=3), connected_graphs(max_n=3))
@settings(max_examples=30)
def test_product_commutes_and_associates(a, b, c):
    assert find_isomorphism(cartesian_product(a, b), cartesian_product(b, a)) is not None
    left = cartesian_product(cartesian_product(a, b), c)
    right = cartesian_product(a, cartesian_product(b, c))
    # the flat tuple labels give the bijection ((x, y), z) -> (x, (y, z)) directly
    where = {lab: v for v, lab in enumerate(right.names)}
    fwd = {v: where[(lab[0][0], (lab[0][1], lab[1]))] for v, lab in enumerate(left.names)}
    assert {tuple(sorted((fwd[u], fwd[v]))) for u, v in left.edges} == set(right.edges)


def test_product_relation_examples():
    g, r = product_relation_of([F.k2()] * 3)
    assert r == compute_delta(g)
    g, r = product_relation_of([F.cycle(6), F.k2()])
    assert r.k == 2 and certify_usp(g, r).certified
    with pytest.raises(ValueError):
        product_relation_of([F.k2()])
    with pytest.raises(ValueError):
        product_relation_of([F.k2(), F.complete(1)])


def test_prodrel_examples():
    fx = F.prism()
    res = is_product_relation_pair(fx.graph, fx.relation)
    assert res.holds
    assert {f.n for f in res.factors} == {6, 2}
    fx = F.m8()
    res = is_product_relation_pair(fx.graph, fx.relation)
    assert not res.holds
    x, y, cell = res.witness
    assert len(cell) != 1
    c4 = F.c4()
    assert is_product_relation_pair(c4, compute_delta(c4)).holds
    with pytest.raises(NotTwoClasses):
        is_product_relation_pair(F.q3(), compute_delta(F.q3()))
    g = F.p3()
    with pytest.raises(NotCertifiedUsp):
        is_product_relation_pair(g, EdgeRelation.discrete(g))


def test_prodrel_isomorphism_is_explicit():
    fx = F.prism()
    res = is_product_relation_pair(fx.graph, fx.relation)
    f1, f2 = res.factors
    for u, v in fx.graph.edges:
        (a, b), (c, d) = res.isomorphism[u], res.isomorphism[v]
        assert (a == c and f2.has_edge(b, d)) or (b == d and f1.has_edge(a, c))


def test_decomposition_m8():
    fx = F.m8()
    dec = verify_quotient_decomposition(fx.graph, fx.relation)
    assert are_isomorphic(dec.quotient, cartesian_product(F.c4(), LOOP))
    sizes = sorted(f.n for f in dec.factors)
    assert sizes == [1, 4]
    assert verify_weighted_decomposition(fx.graph, fx.relation)


def test_decomposition_fig1_and_prism():
    for fx in (F.fig1(), F.prism(), F.q3_dimension_classes()):
        dec = verify_quotient_decomposition(fx.graph, fx.relation)
        assert dec.quotient.n == dec.product.n
        assert weighted_decomposition_mismatch(fx.graph, fx.relation) is None


def test_decomposition_requires_certificate():
    g = F.p3()
    with pytest.raises(NotCertifiedUsp):
        verify_quotient_decomposition(g, EdgeRelation.discrete(g))


def test_loopless_examples():
    fx = F.prism()
    assert complement_components_induced(fx.graph, fx.relation) is None
    assert verify_loopless_decomposition(fx.graph, fx.relation)
    fx = F.m8()
    phi, edge = complement_components_induced(fx.graph, fx.relation)
    assert edge in fx.graph.edges
    with pytest.raises(PreconditionNotMet):
        verify_loopless_decomposition(fx.graph, fx.relation)


def test_weighted_witness_shape():
    fx = F.diagonal_cube()
    r = coarsen(fx.relation, [0, 0, 1, 1])
    status = certify_usp(fx.graph, r, witness=fx.relation)
    assert weighted_decomposition_mismatch(fx.graph, r, status) is None


def test_factorization_examples():
    names = lambda res: sorted((f.n, f.m) for f in res.factors)  # noqa: E731
    assert names(prime_factorize_small(F.prism().graph)) == [(2, 1), (6, 6)]
    assert names(prime_factorize_small(F.q3())) == [(2, 1)] * 3
    assert names(prime_factorize_small(F.m8().graph)) == [(8, 12)]
    assert len(prime_factorize_small(F.k1())) == 1
    res = prime_factorize_small(F.c4())
    assert len(res) == 2 and len(res.certificates) == 1


def prime_multiset(factors):
    return sorted(canonical_form(p) for f in factors for p in prime_factorize_small(f).factors)


def test_factorization_round_trip_random():
    rng = random.Random(3)
    for _ in range(15):
        factors = random_product(rng, max_n=40, max_factor=4)
        g = cartesian_product_all(factors)
        res = prime_factorize_small(g)
        # prime factorization of connected graphs is unique
        assert sorted(canonical_form(f) for f in res.factors) == prime_multiset(factors)
        for f in res.factors:
            assert len(prime_factorize_small(f)) == 1


def test_factorization_matches_networkx_isomorphism():
    import networkx as nx

    g = cartesian_product(F.path(3), F.k3())
    res = prime_factorize_small(g)
    back = cartesian_product_all(list(res.factors))
    assert nx.is_isomorphic(to_nx(g.n, g.edges), to_nx(back.n, back.edges))


def test_decomposition_over_suite():
    for inst in random_suite(seed=1, count=60):
        status = certify_usp(inst.graph, inst.relation, inst.witness)
        if not status.certified:
            continue
        dec = verify_quotient_decomposition(inst.graph, inst.relation, status)
        assert dec.quotient.n == dec.product.n
        assert weighted_decomposition_mismatch(inst.graph, inst.relation, status) is None


def test_isomorphism_failure_carries_witness():
    err = IsomorphismFailure("x", witness=(1, 2))
    assert err.witness == (1, 2)


@given(st.integers(2, 5), st.integers(2, 4))
def test_grid_factors(a, b):
    g = cartesian_product(F.path(a), F.path(b))
    res = prime_factorize_small(g)
    assert sorted(canonical_form(f) for f in res.factors) == prime_multiset([F.path(a), F.path(b)])


def test_build_graph_of_product_names():
    g = cartesian_product(build_graph(2, [(0, 1)], ["a", "b"]), F.k2())
    assert g.names == (("a", 0), ("a", 1), ("b", 0), ("b", 1))
