"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL ...`` line (shown even without
``-s``) and then asserts.  Run alone with ``pytest tests/test_acceptance.py``.
"""

import itertools
import random
import time

import pytest

from oracles import brute_delta_star, canonical, connected_edge_sets
from uspgraph import fixtures as F
from uspgraph.generators import non_usp_instances, random_connected_graph, random_product, random_relation, random_suite
from uspgraph.graph import build_graph
from uspgraph.harness import (
    check_incidence,
    check_intersection_criterion,
    check_join_corollary,
    check_monotonicity,
    check_neighbor_counts,
    check_subset_props,
    check_union_components,
)
from uspgraph.iso import are_isomorphic, canonical_form
from uspgraph.partitions import common_refinement, is_equitable
from uspgraph.products import (
    cartesian_product,
    cartesian_product_all,
    cartesian_product_weighted,
    is_product_relation_pair,
    prime_factorize_small,
    product_relation_of,
    verify_quotient_decomposition,
    verify_weighted_decomposition,
)
from uspgraph.quotients import QuotientGraph, WeightedDigraph
from uspgraph.relations import (
    certify_usp,
    compute_delta,
    contains_delta,
    first_S2_violation,
    is_finer,
    merge_classes,
    satisfies_S1,
    satisfies_S2,
)

pytestmark = pytest.mark.slow

LOOP = QuotientGraph(("*",), frozenset({(0, 0)}))


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def suite():
    """The 500-instance suite with certification done once."""
    out = []
    for inst in random_suite(seed=0, count=500, max_n=10):
        status = certify_usp(inst.graph, inst.relation, inst.witness)
        out.append((inst, status))
    return out


def certified(suite):
    return [(inst, st) for inst, st in suite if st.certified]


def test_criterion_1_delta_oracle(report):
    start = time.perf_counter()
    graphs = mismatches = 0
    for n in range(1, 7):
        for edges in connected_edge_sets(n):
            g = build_graph(n, edges)
            graphs += 1
            if canonical(compute_delta(g).class_of) != brute_delta_star(n, g.edges):
                mismatches += 1
    elapsed = time.perf_counter() - start
    report(1, mismatches == 0 and elapsed < 60,
           f"{graphs} connected graphs n<=6, {mismatches} mismatches, {elapsed:.1f}s (limit 60s)")


def test_criterion_2_square_property_iff_delta(report):
    rng = random.Random(2)
    mismatches = 0
    for _ in range(1000):
        g = random_connected_graph(rng, rng.randint(1, 8), rng.choice((0.3, 0.5, 0.7)))
        r = random_relation(rng, g)
        direct = satisfies_S1(g, r) and satisfies_S2(g, r)
        if direct != contains_delta(g, r):
            mismatches += 1
    report(2, mismatches == 0, f"1000 random instances, {mismatches} mismatches")


def test_criterion_3_fixture_facts(report):
    facts = {}
    facts["delta*(C4) has 2 classes"] = compute_delta(F.c4()).k == 2
    facts["delta*(K3) has 1 class"] = compute_delta(F.k3()).k == 1
    g, prod = product_relation_of([F.k2(), F.k2(), F.k2()])
    dq = compute_delta(g)
    facts["delta*(Q3) = product relation of K2,K2,K2"] = dq.k == 3 and dq == prod
    facts["delta*(Q3) matches fixture"] = compute_delta(F.q3()).k == 3
    fx = F.fig1()
    sq = first_S2_violation(fx.graph, fx.relation)
    named = tuple(fx.graph.names[v] for v in sq) if sq else None
    facts["FIG1 has (S1)"] = satisfies_S1(fx.graph, fx.relation)
    facts["FIG1 fails (S2) at (1,2,3,4)"] = named == (1, 2, 3, 4)
    bad = [k for k, v in facts.items() if not v]
    report(3, not bad, f"{len(facts) - len(bad)}/{len(facts)} facts" + (f", failed: {bad}" if bad else ""))


def test_criterion_4_equitable(report, suite):
    cert = certified(suite)
    failures = [inst.name for inst, _ in cert if is_equitable(inst.graph, common_refinement(inst.graph, inst.relation)) is None]
    report(4, not failures and len(cert) > 0,
           f"{len(cert)}/{len(suite)} certified instances, {len(failures)} failures")


def test_criterion_5_quotient_decomposition(report, suite):
    cert = certified(suite)
    failures = []
    for inst, st in cert:
        try:
            verify_quotient_decomposition(inst.graph, inst.relation, st)
        except Exception as exc:  # noqa: BLE001 - any error counts as a failure
            failures.append((inst.name, repr(exc)))
    fx = F.m8()
    dec = verify_quotient_decomposition(fx.graph, fx.relation)
    m8_ok = are_isomorphic(dec.quotient, cartesian_product(F.c4(), LOOP))
    report(5, not failures and m8_ok,
           f"{len(cert)} instances, {len(failures)} failures; M8 quotient = C4 □ looped K1: {m8_ok}")


def test_criterion_6_weighted(report, suite):
    cert = certified(suite)
    failures = [inst.name for inst, st in cert
                if not verify_weighted_decomposition(inst.graph, inst.relation, st)]
    loop = WeightedDigraph(("*",), ((0, 0, 1),))
    w = cartesian_product_weighted(loop, loop)
    loop_weight = w.weight(0, 0)
    report(6, not failures and loop_weight == 2,
           f"{len(cert)} instances, {len(failures)} failures; looped K1 □ looped K1 loop weight {loop_weight}")


def _prime_forms(factors):
    return sorted(canonical_form(p) for f in factors for p in prime_factorize_small(f).factors)


def test_criterion_7_product_relations(report):
    start = time.perf_counter()
    checks = {}
    fx = F.prism()
    checks["PRISM passes"] = bool(is_product_relation_pair(fx.graph, fx.relation))
    fx = F.m8()
    checks["M8 fails"] = not is_product_relation_pair(fx.graph, fx.relation)
    shapes = lambda g: sorted(canonical_form(f) for f in prime_factorize_small(g).factors)  # noqa: E731
    checks["PRISM = C6, K2"] = shapes(F.prism().graph) == sorted(map(canonical_form, [F.cycle(6), F.k2()]))
    checks["Q3 = K2, K2, K2"] = shapes(F.q3()) == [canonical_form(F.k2())] * 3
    checks["M8 prime"] = shapes(F.m8().graph) == [canonical_form(F.m8().graph)]
    rng = random.Random(7)
    round_trip_failures = 0
    for _ in range(100):
        factors = random_product(rng, max_n=125, max_factor=5, max_factors=3)
        g = cartesian_product_all(factors)
        found = sorted(canonical_form(f) for f in prime_factorize_small(g).factors)
        if found != _prime_forms(factors):
            round_trip_failures += 1
    elapsed = time.perf_counter() - start
    bad = [k for k, v in checks.items() if not v]
    ok = not bad and round_trip_failures == 0 and elapsed < 300
    examples = f"{len(checks) - len(bad)}/{len(checks)} examples" + (f" (failed: {bad})" if bad else "")
    report(7, ok, f"{examples}; 100 round trips, {round_trip_failures} failures; {elapsed:.1f}s (limit 300s)")


def _finer_coarser_pairs(g, r, st):
    pairs = []
    q = st.s1_relation(r)
    if q != r:
        pairs.append((q, r))
    d = compute_delta(g)
    if d != r and is_finer(d, r):
        pairs.append((d, r))
    for phi, psi in itertools.combinations(range(r.k), 2):
        pairs.append((r, merge_classes(r, [phi, psi])))
    return pairs


def test_criterion_8_monotonicity(report, suite):
    pairs = failures = 0
    for inst, st in certified(suite):
        for fine, coarse in _finer_coarser_pairs(inst.graph, inst.relation, st):
            pairs += 1
            if check_monotonicity(inst.graph, fine, coarse).failed:
                failures += 1
    report(8, failures == 0 and pairs > 0, f"{pairs} (finer, coarser) pairs, {failures} failures")


def test_criterion_9_class_joins(report, suite):
    checks = (check_union_components, check_intersection_criterion, check_subset_props, check_join_corollary)
    failures, evaluated = [], 0
    grows = same = 0
    for inst, st in certified(suite):
        g, r = inst.graph, inst.relation
        if r.k < 2:
            continue
        for phi, psi in itertools.permutations(range(r.k), 2):
            for check in checks:
                evaluated += 1
                if check(g, r, phi, psi, status=st).failed:
                    failures.append((inst.name, check.__name__, phi, psi))
            if phi < psi:
                s = merge_classes(r, [phi, psi])
                if not certify_usp(g, s, witness=st.s1_relation(r)).certified:
                    continue
                pr, ps = common_refinement(g, r), common_refinement(g, s)
                if pr == ps:
                    same += 1
                elif len(ps.blocks) > len(pr.blocks):
                    grows += 1
    ok = not failures and grows > 0 and same > 0
    report(9, ok, f"{evaluated} checks, {len(failures)} failures; "
                  f"merges refining P: {grows}, merges keeping P: {same}")


def test_criterion_10_harness_teeth(report):
    incidence = neighbors = total = 0
    for inst in non_usp_instances(seed=0):
        total += 1
        if check_incidence(inst.graph, inst.relation, require_usp=False).failed:
            incidence += 1
        if check_neighbor_counts(inst.graph, inst.relation, require_usp=False).failed:
            neighbors += 1
    report(10, incidence >= 1 and neighbors >= 1,
           f"{total} non-USP instances; incidence failures {incidence}, neighbour-count failures {neighbors}")
