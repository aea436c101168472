"""Random graphs, relations and instance suites for the harness.

Everything is driven by an explicit ``random.Random`` so a seed reproduces a
suite exactly.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, NamedTuple

from .fixtures import diagonal_cube, fig1, m8
from .graph import Graph, build_graph
from .products import cartesian_product_all, product_relation_of
from .relations import EdgeRelation, UspKind, certify_usp, coarsen, compute_delta, merge_classes, satisfies_S1

EDGE_PROBABILITIES = (0.2, 0.35, 0.5, 0.7, 0.9)


class Instance(NamedTuple):
    name: str
    graph: Graph
    relation: EdgeRelation
    witness: EdgeRelation | None = None


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return build_graph(n, sorted(edges))


def random_relation(rng: random.Random, g: Graph, k: int | None = None) -> EdgeRelation:
    """Uniform labels from ``k`` colours (``k`` random when omitted)."""
    if k is None:
        k = rng.randint(1, max(1, min(4, g.m)))
    return EdgeRelation(g, tuple(rng.randrange(k) for _ in range(g.m)))


def random_coarsening(rng: random.Random, r: EdgeRelation) -> EdgeRelation:
    """Map each class to one of ``1..k`` groups at random."""
    groups = rng.randint(1, r.k)
    return coarsen(r, [rng.randrange(groups) for _ in range(r.k)])


def random_merges(rng: random.Random, r: EdgeRelation) -> EdgeRelation:
    """Unite two random classes, between 1 and ``k - 1`` times."""
    for _ in range(rng.randint(1, max(1, r.k - 1))):
        if r.k < 2:
            break
        r = merge_classes(r, rng.sample(range(r.k), 2))
    return r


def twisted_bundle(base: int, fiber: Graph, twist, split_fiber: bool = False) -> tuple[Graph, EdgeRelation]:
    """Copies ``0..base-1`` of ``fiber`` along a cycle, the last copy joined
    back to the first through the permutation ``twist``.

    The relation separates fiber edges from cycle edges; with ``split_fiber``
    the fiber edges are further split by the fiber's own ``delta*`` classes.
    For an automorphism ``twist`` of the fiber it often has (S1) without (S2).
    """
    k = fiber.n
    vid = lambda i, f: i * k + f  # noqa: E731
    fiber_class = compute_delta(fiber).class_of if split_fiber else (0,) * fiber.m
    fib: dict[int, list] = {}
    for i in range(base):
        for e, (a, b) in enumerate(fiber.edges):
            fib.setdefault(fiber_class[e], []).append((vid(i, a), vid(i, b)))
    cyc = [(vid(i, f), vid(i + 1, f)) for i in range(base - 1) for f in range(k)]
    cyc += [(vid(base - 1, f), vid(0, twist[f])) for f in range(k)]
    g = build_graph(base * k, [e for c in fib.values() for e in c] + cyc)
    return g, EdgeRelation.from_classes(g, list(fib.values()) + [cyc])


def _fiber_automorphisms(fiber: Graph) -> list[tuple[int, ...]]:
    edges = set(fiber.edges)
    out = []
    for perm in itertools.permutations(range(fiber.n)):
        if all((min(perm[a], perm[b]), max(perm[a], perm[b])) in edges for a, b in fiber.edges):
            out.append(perm)
    return out


def _fibers() -> list[Graph]:
    return [
        build_graph(2, [(0, 1)]),
        build_graph(3, [(0, 1), (1, 2)]),
        build_graph(3, [(0, 1), (1, 2), (0, 2)]),
        build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
        build_graph(4, [(0, 1), (1, 2), (2, 3)]),
        build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
    ]


def bundle_instances(max_n: int = 10) -> list[Instance]:
    """All twisted bundles up to ``max_n`` vertices whose relation has (S1)."""
    out = []
    for fi, fiber in enumerate(_fibers()):
        for base in range(3, max_n // fiber.n + 1):
            for t, twist in enumerate(_fiber_automorphisms(fiber)):
                for split in (False, True):
                    g, r = twisted_bundle(base, fiber, twist, split)
                    if (split and r.k < 3) or not satisfies_S1(g, r):
                        continue
                    tag = "-split" if split else ""
                    out.append(Instance(f"bundle-f{fi}-b{base}-t{t}{tag}", g, r))
    return out


def _set_partitions(items: list[int]) -> Iterator[list[int]]:
    """Restricted-growth labellings of ``items`` (each set partition once)."""
    def grow(prefix, top):
        if len(prefix) == len(items):
            yield list(prefix)
            return
        for lab in range(top + 2):
            yield from grow(prefix + [lab], max(top, lab))
    yield from grow([], -1)


def witness_instances(sources: list[Instance]) -> list[Instance]:
    """Coarsenings of (S1) relations that lose (S1); the source is the witness."""
    out = []
    for src in sources:
        for groups in _set_partitions(list(range(src.relation.k))):
            r = coarsen(src.relation, groups)
            if not satisfies_S1(src.graph, r):
                tag = "".join(map(str, groups))
                out.append(Instance(f"{src.name}-coarse{tag}", src.graph, r, src.relation))
    return out


def random_product(rng: random.Random, max_n: int = 10, max_factor: int = 5, max_factors: int = 3):
    """Random list of 2..``max_factors`` connected factors, product within ``max_n``."""
    while True:
        count = rng.randint(2, max_factors)
        sizes = [rng.randint(2, max_factor) for _ in range(count)]
        total = 1
        for s in sizes:
            total *= s
        if total <= max_n:
            break
    return [random_connected_graph(rng, s, rng.choice(EDGE_PROBABILITIES)) for s in sizes]


def random_suite(seed: int = 0, count: int = 500, max_n: int = 10) -> list[Instance]:
    """Mixed suite of certified-USP candidates.

    Sources rotate over: product relations of random factor lists, ``delta*``
    of products and of random connected graphs, random coarsenings of those,
    and (S1) relations without (S2) (twisted bundles, the diagonal cube) plus
    their coarsenings, which carry the finer relation as witness.
    """
    rng = random.Random(seed)
    bundles = bundle_instances(max_n)
    named = [
        Instance(name, fx.graph, fx.relation)
        for name, fx in (("diagonal-cube", diagonal_cube()), ("fig1", fig1()), ("m8", m8()))
        if fx.graph.n <= max_n
    ]
    out: list[Instance] = witness_instances(named)[:count]
    for i in range(len(out), count):
        kind = i % 6
        if kind in (0, 1):
            factors = random_product(rng, max_n)
            g, r = product_relation_of(factors)
            if kind == 1:
                r = random_coarsening(rng, compute_delta(g))
            out.append(Instance(f"product-{i}", g, r))
        elif kind in (2, 3):
            n = rng.randint(3, max_n)
            g = random_connected_graph(rng, n, rng.choice(EDGE_PROBABILITIES))
            d = compute_delta(g)
            r = d if kind == 2 else random_coarsening(rng, d)
            out.append(Instance(f"graph-{i}", g, r))
        elif kind == 4:
            factors = random_product(rng, max_n)
            g = cartesian_product_all(factors)
            out.append(Instance(f"delta-product-{i}", g, compute_delta(g)))
        else:
            pool = named if named and rng.random() < 0.5 else bundles
            b = pool[rng.randrange(len(pool))]
            if rng.random() < 0.5:
                out.append(Instance(f"{b.name}-{i}", b.graph, b.relation))
            else:
                r = random_merges(rng, b.relation)
                out.append(Instance(f"{b.name}-merged-{i}", b.graph, r, b.relation))
    return out


def non_usp_instances(seed: int = 0, tries: int = 400, max_n: int = 6) -> Iterator[Instance]:
    """Random relations on small random graphs that certification rejects."""
    rng = random.Random(seed)
    for i in range(tries):
        n = rng.randint(3, max_n)
        g = random_connected_graph(rng, n, rng.choice(EDGE_PROBABILITIES))
        r = random_relation(rng, g, rng.randint(2, 3))
        if certify_usp(g, r).kind is UspKind.NOT_USP:
            yield Instance(f"non-usp-{i}", g, r)
