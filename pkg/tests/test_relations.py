import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs, graphs_with_relation
from oracles import (
    brute_delta_matrix, brute_S1, brute_S2, canonical, partition_of, random_connected_edges, warshall,
)
from uspgraph import fixtures as F
from uspgraph.errors import GraphMismatch, UnknownClassId, WitnessNotFiner
from uspgraph.graph import Square, build_graph
from uspgraph.relations import (
    EdgeRelation,
    S1Violation,
    UspKind,
    certify_usp,
    closure,
    coarsen,
    compute_delta,
    contains_delta,
    delta_pairs,
    first_S1_violation,
    first_S2_violation,
    has_square_property,
    is_finer,
    merge_classes,
    satisfies_S1,
    satisfies_S2,
    split_off,
)


def test_delta_examples():
    c4 = compute_delta(F.c4())
    assert c4.k == 2
    assert {tuple(c4.class_edges(i)) for i in range(2)} == {((0, 1), (2, 3)), ((0, 3), (1, 2))}
    assert compute_delta(F.k3()).k == 1
    fx = F.q3_dimension_classes()
    assert compute_delta(fx.graph) == fx.relation


def test_delta_pairs_reflexive_symmetric():
    g = F.m8().graph
    pairs = delta_pairs(g)
    assert all((e, e) in pairs for e in range(g.m))
    assert all((f, e) in pairs for e, f in pairs)


@given(connected_graphs(max_n=7))
def test_delta_matches_matrix_closure(g):
    if g.m > 12:
        return
    _, rel, _ = brute_delta_matrix(g.n, g.edges)
    expect = {(i, j) for i in range(g.m) for j in range(g.m) if rel[i][j]}
    assert set(delta_pairs(g)) == expect
    assert canonical(compute_delta(g).class_of) == partition_of(warshall(rel))
    assert compute_delta(g) == closure(g, expect)


def test_S1_examples():
    fx = F.fig1()
    assert satisfies_S1(fx.graph, fx.relation)
    fx = F.m8()
    assert satisfies_S1(fx.graph, fx.relation)
    assert satisfies_S1(F.c4(), EdgeRelation.trivial(F.c4()))


def test_S1_violation_details():
    # P3 with its two edges in different classes: no square at all
    g = F.p3()
    v = first_S1_violation(g, EdgeRelation.discrete(g))
    assert v.kind == S1Violation.NO_QUALIFYING_SQUARE and v.witnesses == ()
    # diagonal cube, horizontal vs vertical+diagonal: two qualifying squares
    fx = F.diagonal_cube()
    r = coarsen(fx.relation, [0, 0, 1, 1])
    v = first_S1_violation(fx.graph, r)
    assert v.kind == S1Violation.MULTIPLE_QUALIFYING_SQUARES
    assert len(v.witnesses) == 2


def test_S2_examples():
    fx = F.fig1()
    assert first_S2_violation(fx.graph, fx.relation) == Square(0, 1, 2, 3)
    assert not satisfies_S2(fx.graph, fx.relation)
    assert satisfies_S2(F.c4(), compute_delta(F.c4()))
    assert satisfies_S2(F.q3(), compute_delta(F.q3()))


def test_square_property_examples():
    assert has_square_property(F.c4(), compute_delta(F.c4()))
    fx = F.fig1()
    assert not has_square_property(fx.graph, fx.relation)
    g = F.m8().graph
    assert has_square_property(g, EdgeRelation.trivial(g))


@given(graphs_with_relation(max_n=7))
def test_S1_S2_match_brute_force(gr):
    g, r = gr
    assert satisfies_S1(g, r) == brute_S1(g.n, g.edges, r.class_of)
    assert satisfies_S2(g, r) == brute_S2(g.n, g.edges, r.class_of)


@given(graphs_with_relation(max_n=7))
def test_square_property_iff_delta_contained(gr):
    g, r = gr
    direct = satisfies_S1(g, r) and satisfies_S2(g, r)
    assert direct == contains_delta(g, r) == has_square_property(g, r)


@given(graphs_with_relation(max_n=7), st.randoms(use_true_random=False))
def test_square_property_survives_merges(gr, rnd):
    g, _ = gr
    d = compute_delta(g)
    if d.k < 2:
        return
    ids = rnd.sample(range(d.k), 2)
    assert has_square_property(g, merge_classes(d, ids))


def test_finer_examples():
    g = F.q3()
    d, one = compute_delta(g), EdgeRelation.trivial(g)
    assert is_finer(d, one) and not is_finer(one, d) and is_finer(d, d)
    with pytest.raises(GraphMismatch):
        is_finer(d, EdgeRelation.trivial(F.c4()))


def test_merge_examples():
    d = compute_delta(F.c4())
    assert merge_classes(d, [0, 1]).k == 1
    q = compute_delta(F.q3())
    s = merge_classes(q, [1, 2])
    assert s.k == 2
    assert set(s.classes[1]) == set(q.classes[1]) | set(q.classes[2])
    with pytest.raises(UnknownClassId):
        merge_classes(d, [0])
    with pytest.raises(UnknownClassId):
        merge_classes(d, [0, 5])


def test_merge_renumbers_by_smallest_edge():
    q = compute_delta(F.q3())
    s = merge_classes(q, [0, 2])
    firsts = [c[0] for c in s.classes]
    assert firsts == sorted(firsts)


def test_split_off():
    q = compute_delta(F.q3())
    s = split_off(q, [1])
    assert s.k == 2 and set(s.classes[1]) == set(q.classes[1])


def test_usp_not_closed_under_coarsening():
    fx = F.diagonal_cube()
    g, q = fx.graph, fx.relation
    assert satisfies_S1(g, q) and not satisfies_S2(g, q)
    r = coarsen(q, [0, 0, 1, 1])
    assert not satisfies_S1(g, r)
    status = certify_usp(g, r, witness=q)
    assert status.kind is UspKind.USP_BY_WITNESS and status.witness == q


def test_certify_examples():
    fx = F.m8()
    assert certify_usp(fx.graph, fx.relation).kind is UspKind.HAS_USP
    fx = F.fig1()
    assert certify_usp(fx.graph, fx.relation).kind is UspKind.HAS_USP
    assert certify_usp(fx.graph, fx.relation, witness=fx.relation).certified


def test_certify_rejects_coarser_witness():
    g = F.q3()
    d = compute_delta(g)
    with pytest.raises(WitnessNotFiner):
        certify_usp(g, d, witness=EdgeRelation.trivial(g))


def test_certify_search_finds_witness():
    fx = F.diagonal_cube()
    r = coarsen(fx.relation, [0, 1, 0, 1])
    status = certify_usp(fx.graph, r)
    assert status.kind is UspKind.USP_BY_WITNESS
    assert is_finer(status.witness, r) and satisfies_S1(fx.graph, status.witness)


def test_certify_not_usp_and_unknown():
    g = F.p3()
    assert certify_usp(g, EdgeRelation.discrete(g)).kind is UspKind.NOT_USP
    # a class larger than the search limit gives up honestly
    g = F.complete(7)
    r = EdgeRelation(g, tuple(0 if e < 20 else 1 for e in range(g.m)))
    assert certify_usp(g, r).kind is UspKind.UNKNOWN
    # an exhausted budget is Unknown, never NotUsp
    fx = F.diagonal_cube()
    r = coarsen(fx.relation, [0, 1, 0, 1])
    assert certify_usp(fx.graph, r, budget=5).kind is UspKind.UNKNOWN
    assert certify_usp(fx.graph, r, budget=1000).kind is UspKind.USP_BY_WITNESS


def _brute_usp(g, r):
    """Any refinement of r with (S1), by enumerating every set partition of the edges."""
    def growth(prefix, top):
        if len(prefix) == g.m:
            yield tuple(prefix)
            return
        for lab in range(top + 2):
            yield from growth(prefix + [lab], max(top, lab))

    for labels in growth([], -1):
        q = EdgeRelation(g, labels)
        if is_finer(q, r) and brute_S1(g.n, g.edges, q.class_of):
            return True
    return False


def test_certify_agrees_with_exhaustive_refinements():
    rng = random.Random(7)
    checked = 0
    while checked < 25:
        n = rng.randint(3, 5)
        edges = random_connected_edges(rng, n, 0.6)
        g = build_graph(n, edges)
        if g.m > 6:
            continue
        r = EdgeRelation(g, tuple(rng.randrange(2) for _ in range(g.m)))
        st_ = certify_usp(g, r)
        assert st_.kind is not UspKind.UNKNOWN
        assert st_.certified == _brute_usp(g, r)
        checked += 1


@given(graphs_with_relation(max_n=6))
def test_observation_squares(gr):
    g, r = gr
    status = certify_usp(g, r, budget=5000)
    if not status.certified:
        return
    for (e, f), found in g.spanned.items():
        if r.same(e, f):
            continue
        assert any(r.same(e, oe) and r.same(f, of) for oe, of in found)
