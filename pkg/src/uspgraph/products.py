"""Cartesian products, product relations and the product structure of quotients.

The decomposition check builds the explicit bijection
``V_R(x) -> (block of x in P_phibar for each class phi)`` and verifies it
against the product of the per-class quotients ``G_phi / P_phibar``; no generic
isomorphism search is involved.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Sequence, Union

from .errors import (
    BudgetExceeded,
    IsomorphismFailure,
    NotCertifiedUsp,
    NotTwoClasses,
    PreconditionNotMet,
)
from .graph import Graph, build_graph, component_labels, induced_subgraph
from .iso import canonical_form
from .partitions import (
    VertexPartition,
    common_refinement,
    complement_partition,
)
from .quotients import (
    QuotientGraph,
    WeightedDigraph,
    quotient_graph,
    underlying_simple,
    weighted_quotient,
)
from .relations import (
    EdgeRelation,
    UspStatus,
    certify_usp,
    compute_delta,
    split_off,
)

GraphLike = Union[Graph, QuotientGraph]


# ------------------------------------------------------------------ products


def _loop_edges(x: GraphLike) -> tuple[tuple[Hashable, ...], set[tuple[int, int]]]:
    return tuple(x.names if isinstance(x, Graph) else x.labels), set(x.edges)


def _product_edges(sizes: Sequence[int], factor_edges: Sequence[set]) -> set[tuple[int, int]]:
    """Edges of the product on mixed-radix vertex ids (last coordinate fastest)."""
    strides = [math.prod(sizes[i + 1:]) for i in range(len(sizes))]
    total = math.prod(sizes)
    out = set()
    for vid in range(total):
        coords = [(vid // strides[i]) % sizes[i] for i in range(len(sizes))]
        for i, edges in enumerate(factor_edges):
            c = coords[i]
            for a, b in edges:
                if a == c:
                    other = b
                elif b == c:
                    other = a
                else:
                    continue
                wid = vid + (other - c) * strides[i]
                out.add((min(vid, wid), max(vid, wid)))
    return out


def cartesian_product_all(factors: Sequence[GraphLike]) -> GraphLike:
    """Product of one or more factors with flat tuple labels.

    Returns a :class:`Graph` when every factor is one, else a
    :class:`QuotientGraph`; a loop at a factor vertex yields a loop at every
    product vertex projecting onto it.
    """
    if not factors:
        raise ValueError("need at least one factor")
    parts = [_loop_edges(f) for f in factors]
    sizes = [len(labels) for labels, _ in parts]
    edges = _product_edges(sizes, [e for _, e in parts])
    labels = tuple(itertools.product(*(labels for labels, _ in parts)))
    if all(isinstance(f, Graph) for f in factors):
        connected = all(f.connected for f in factors)
        return Graph(len(labels), tuple(sorted(edges)), labels, connected)
    return QuotientGraph(labels, frozenset(edges))


def cartesian_product(g: GraphLike, h: GraphLike) -> GraphLike:
    """``g x h``; vertex ``(i, j)`` has id ``i * |V(h)| + j`` and label ``(name_i, name_j)``."""
    return cartesian_product_all([g, h])


def weighted_product_all(factors: Sequence[WeightedDigraph]) -> WeightedDigraph:
    """Product of weighted digraphs.

    An arc moving one coordinate keeps that factor's weight; the loop at a
    product vertex weighs the sum of the factor loop weights there.
    """
    if not factors:
        raise ValueError("need at least one factor")
    sizes = [f.n for f in factors]
    strides = [math.prod(sizes[i + 1:]) for i in range(len(sizes))]
    weights: dict[tuple[int, int], int] = {}
    for vid in range(math.prod(sizes)):
        coords = [(vid // strides[i]) % sizes[i] for i in range(len(sizes))]
        loop = 0
        for i, f in enumerate(factors):
            c = coords[i]
            for a, b, w in f.arcs:
                if a != c:
                    continue
                if b == c:
                    loop += w
                else:
                    weights[(vid, vid + (b - c) * strides[i])] = w
        if loop:
            weights[(vid, vid)] = loop
    labels = tuple(itertools.product(*(f.labels for f in factors)))
    return WeightedDigraph.from_weights(labels, weights)


def cartesian_product_weighted(a: WeightedDigraph, b: WeightedDigraph) -> WeightedDigraph:
    return weighted_product_all([a, b])


def product_relation_of(factors: Sequence[Graph]) -> tuple[Graph, EdgeRelation]:
    """The product graph and the relation grouping edges by moving coordinate."""
    if len(factors) < 2:
        raise ValueError("a product relation needs at least two factors")
    for f in factors:
        if f.m == 0:
            raise ValueError("every factor needs at least one edge")
    g = cartesian_product_all(factors)
    labels = []
    for u, v in g.edges:
        a, b = g.names[u], g.names[v]
        (j,) = [i for i in range(len(factors)) if a[i] != b[i]]
        labels.append(j)
    return g, EdgeRelation(g, tuple(labels))


# ------------------------------------------------------- product relations


def _require_certified(g: Graph, r: EdgeRelation, status: UspStatus | None, witness=None) -> UspStatus:
    if status is None:
        status = certify_usp(g, r, witness)
    if not status.certified:
        raise NotCertifiedUsp(f"relation is not certified as a USP-relation ({status})")
    return status


@dataclass(frozen=True)
class ProductSplit:
    """Outcome of the one-vertex-intersection test on a two-class relation.

    When ``holds``: ``factors`` are the components of ``G_phi`` and
    ``G_phibar`` through vertex 0, and ``isomorphism[v]`` gives the vertex
    pair (factor ids) that ``v`` maps to in their product.  Otherwise
    ``witness`` is ``(x, y, intersection)`` with ``|V(G_phi^x) & V(G_phibar^y)| != 1``.
    """

    holds: bool
    factors: tuple[Graph, Graph] | None = None
    isomorphism: tuple[tuple[int, int], ...] | None = None
    witness: tuple[int, int, tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_product_relation_pair(
    g: Graph,
    r: EdgeRelation,
    status: UspStatus | None = None,
    witness: EdgeRelation | None = None,
) -> ProductSplit:
    """Test ``|V(G_phi^x) & V(G_phibar^y)| = 1`` for all ``x, y``.

    For a certified two-class USP-relation this holds iff the relation is a
    product relation; on success the explicit isomorphism onto
    ``G_phi^0 x G_phibar^0`` is built and checked.
    """
    r.require_graph(g)
    if r.k != 2:
        raise NotTwoClasses(f"relation has {r.k} classes")
    _require_certified(g, r, status, witness)
    a = component_labels(g, r.classes[0])
    b = component_labels(g, r.classes[1])
    na, nb = max(a) + 1, max(b) + 1
    cells: dict[tuple[int, int], list[int]] = {}
    for v in range(g.n):
        cells.setdefault((a[v], b[v]), []).append(v)
    for i in range(na):
        for j in range(nb):
            cell = cells.get((i, j), [])
            if len(cell) != 1:
                x = a.index(i)
                y = b.index(j)
                return ProductSplit(False, witness=(x, y, tuple(cell)))

    comp_a = [v for v in range(g.n) if a[v] == a[0]]
    comp_b = [v for v in range(g.n) if b[v] == b[0]]
    f1 = induced_subgraph(g, comp_a, r.classes[0])
    f2 = induced_subgraph(g, comp_b, r.classes[1])
    pos_a = {v: i for i, v in enumerate(comp_a)}
    pos_b = {v: i for i, v in enumerate(comp_b)}
    iso = tuple(
        (pos_a[cells[(a[0], b[v])][0]], pos_b[cells[(a[v], b[0])][0]]) for v in range(g.n)
    )
    _check_product_iso(g, f1, f2, iso)
    return ProductSplit(True, (f1, f2), iso)


def _check_product_iso(g: Graph, f1: Graph, f2: Graph, iso) -> None:
    if len(set(iso)) != g.n or g.n != f1.n * f2.n:
        raise IsomorphismFailure("split map is not a bijection", witness=iso)
    if g.m != f1.m * f2.n + f2.m * f1.n:
        raise IsomorphismFailure("edge counts of graph and product differ")
    for u, v in g.edges:
        (p1, p2), (q1, q2) = iso[u], iso[v]
        ok = (p1 == q1 and f2.has_edge(p2, q2)) or (p2 == q2 and f1.has_edge(p1, q1))
        if not ok:
            raise IsomorphismFailure(f"edge {(u, v)} is not a product edge", witness=(u, v))


# ------------------------------------------------- quotient decomposition


@dataclass(frozen=True)
class ProductDecomposition:
    """``G/P^R`` together with its factors ``G_phi/P_phibar`` and the bijection.

    ``block_map[i]`` is the tuple of factor-vertex ids that block ``i`` of
    ``P^R`` is sent to.
    """

    quotient: QuotientGraph
    factors: tuple[QuotientGraph, ...]
    product: QuotientGraph
    block_map: tuple[tuple[int, ...], ...]
    partition: VertexPartition = field(repr=False)
    factor_partitions: tuple[VertexPartition, ...] = field(repr=False)

    def product_index(self, block: int) -> int:
        sizes = [f.n for f in self.factors]
        vid = 0
        for c, s in zip(self.block_map[block], sizes):
            vid = vid * s + c
        return vid


def _block_bijection(g: Graph, p: VertexPartition, parts: Sequence[VertexPartition]):
    """The map ``V_R(x) -> (block of x in each part)`` with its sanity checks."""
    block_map = []
    for block in p.blocks:
        image = tuple(q.block_of[block[0]] for q in parts)
        for x in block[1:]:
            other = tuple(q.block_of[x] for q in parts)
            if other != image:
                raise IsomorphismFailure(
                    f"map not well defined on block {block}", witness=(block[0], x)
                )
        block_map.append(image)
    if len(set(block_map)) != len(block_map):
        dup = next(t for t in block_map if block_map.count(t) > 1)
        raise IsomorphismFailure(f"map not injective at {dup}", witness=dup)
    expected = math.prod(len(q.blocks) for q in parts)
    if len(block_map) != expected:
        have = set(block_map)
        missing = next(
            t for t in itertools.product(*(range(len(q.blocks)) for q in parts)) if t not in have
        )
        raise IsomorphismFailure(f"map not surjective, missing {missing}", witness=missing)
    return tuple(block_map)


def _compare_edges(quot: QuotientGraph, prod: QuotientGraph, index_of) -> None:
    images = set()
    for i, j in quot.sorted_edges():
        a, b = index_of(i), index_of(j)
        e = (min(a, b), max(a, b))
        if e not in prod.edges:
            raise IsomorphismFailure(
                f"quotient edge {(i, j)} has no product counterpart", witness=(i, j)
            )
        images.add(e)
    extra = sorted(prod.edges - images)
    if extra:
        raise IsomorphismFailure(
            f"product edge {extra[0]} has no quotient counterpart", witness=extra[0]
        )


def verify_quotient_decomposition(
    g: Graph, r: EdgeRelation, status: UspStatus | None = None
) -> ProductDecomposition:
    """Check ``G/P^R`` against the product of ``G_phi/P_phibar`` over all classes.

    Raises IsomorphismFailure with a witness if the explicit block map is not
    a well-defined bijection preserving edges and loops in both directions.
    """
    r.require_graph(g)
    _require_certified(g, r, status)
    p = common_refinement(g, r)
    quot = quotient_graph(g, p)
    parts = tuple(complement_partition(g, r, phi) for phi in range(r.k))
    factors = tuple(quotient_graph(g, parts[phi], r.classes[phi]) for phi in range(r.k))
    prod = cartesian_product_all(factors)
    block_map = _block_bijection(g, p, parts)
    dec = ProductDecomposition(quot, factors, prod, block_map, p, parts)
    _compare_edges(quot, prod, dec.product_index)
    return dec


def weighted_decomposition_mismatch(
    g: Graph, r: EdgeRelation, status: UspStatus | None = None
) -> tuple | None:
    """First arc whose weight differs between ``->(G/P^R)`` and the product of
    ``->(G_phi/P_phibar)`` under the block map, as ``(i, j, w_quotient, w_product)``."""
    dec = verify_quotient_decomposition(g, r, status)
    wq = weighted_quotient(g, dec.partition)
    wf = [
        weighted_quotient(g, dec.factor_partitions[phi], r.classes[phi]) for phi in range(r.k)
    ]
    wp = weighted_product_all(wf)
    seen = set()
    for i in range(wq.n):
        for j in range(wq.n):
            a, b = dec.product_index(i), dec.product_index(j)
            seen.add((a, b))
            if wq.weight(i, j) != wp.weight(a, b):
                return (i, j, wq.weight(i, j), wp.weight(a, b))
    for a, b, w in wp.arcs:
        if (a, b) not in seen:
            return (None, None, 0, w)
    return None


def verify_weighted_decomposition(g: Graph, r: EdgeRelation, status: UspStatus | None = None) -> bool:
    """Weighted quotients multiply: ``->(G/P^R)`` equals the weighted product."""
    return weighted_decomposition_mismatch(g, r, status) is None


def complement_components_induced(g: Graph, r: EdgeRelation) -> tuple[int, tuple[int, int]] | None:
    """First ``(phi, edge)`` where a class-``phi`` edge joins two vertices of the
    same component of ``G_phibar``; None when all those components are induced."""
    for phi in range(r.k):
        comp = component_labels(g, r.complement(phi))
        for e in r.classes[phi]:
            u, v = g.edges[e]
            if comp[u] == comp[v]:
                return (phi, (u, v))
    return None


def verify_loopless_decomposition(g: Graph, r: EdgeRelation, status: UspStatus | None = None) -> bool:
    """When every component of each ``G_phibar`` is induced, ``G/P^R`` is
    loopless and is the product of the simple graphs ``N(G/P_phibar)``."""
    bad = complement_components_induced(g, r)
    if bad is not None:
        phi, edge = bad
        raise PreconditionNotMet(
            f"class {phi} edge {edge} lies inside one component of its complement"
        )
    dec = verify_quotient_decomposition(g, r, status)
    if dec.quotient.loops:
        return False
    simple = [
        underlying_simple(quotient_graph(g, dec.factor_partitions[phi])) for phi in range(r.k)
    ]
    prod = cartesian_product_all(simple)
    as_loop_graph = QuotientGraph(prod.names, frozenset(prod.edges))
    try:
        _compare_edges(dec.quotient, as_loop_graph, dec.product_index)
    except IsomorphismFailure:
        return False
    return True


# -------------------------------------------------------------- factorizer


@dataclass(frozen=True)
class SplitCertificate:
    """One split ``G = F1 x F2`` found by the factorizer."""

    graph: Graph
    classes: tuple[int, ...]
    relation: EdgeRelation
    split: ProductSplit


@dataclass(frozen=True)
class FactorizationResult:
    factors: tuple[Graph, ...]
    certificates: tuple[SplitCertificate, ...]

    def __len__(self) -> int:
        return len(self.factors)


def factor_key(g: Graph):
    return (g.n, g.m, canonical_form(g))


def _split_order(k: int):
    """Sides containing class 0, by size then lexicographically."""
    rest = range(1, k)
    for size in range(0, k - 1):
        for combo in itertools.combinations(rest, size):
            yield (0,) + combo


def find_split(g: Graph, bound: int = 20) -> SplitCertificate | None:
    """First two-class coarsening of ``delta*`` passing the product test."""
    d = compute_delta(g)
    if d.k > bound:
        raise BudgetExceeded(f"delta* has {d.k} classes, bound is {bound}")
    for side in _split_order(d.k):
        rel = split_off(d, side)
        res = is_product_relation_pair(g, rel, status=certify_usp(g, rel))
        if res:
            return SplitCertificate(g, side, rel, res)
    return None


def prime_factorize_small(g: Graph, bound: int = 20) -> FactorizationResult:
    """Prime factors of ``g`` by recursive splitting along coarsenings of ``delta*``.

    Every product relation coarsens ``delta*``, so trying the
    ``2^(k-1) - 1`` two-class coarsenings finds a split whenever one exists.
    Factors come out sorted by ``(vertex count, edge count, canonical form)``.
    """
    primes: list[Graph] = []
    certs: list[SplitCertificate] = []
    stack = [g]
    while stack:
        h = stack.pop()
        cert = find_split(h, bound) if h.m > 1 else None
        if cert is None:
            primes.append(h)
            continue
        certs.append(cert)
        stack.extend(reversed(cert.split.factors))
    primes.sort(key=factor_key)
    return FactorizationResult(tuple(primes), tuple(certs))
