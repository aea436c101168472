"""Quotient graphs of vertex partitions.

Undirected quotients may carry loops (a block that is not independent gets a
loop).  Weighted quotients are directed and carry the partition degree matrix
entries as arc weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable

from .errors import NotEquitable, PartitionMismatch
from .graph import Graph, build_graph
from .partitions import VertexPartition, equitability_violation, is_equitable


@dataclass(frozen=True)
class QuotientGraph:
    """Undirected graph with optional loops.

    ``edges`` holds index pairs ``(i, j)`` with ``i <= j``; ``(i, i)`` is a loop.
    For quotients the labels are the blocks as sorted vertex tuples; for
    products they are coordinate tuples.
    """

    labels: tuple[Hashable, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def has_loop(self, i: int) -> bool:
        return (i, i) in self.edges

    @property
    def loops(self) -> list[int]:
        return sorted(i for i, j in self.edges if i == j)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class WeightedDigraph:
    """Directed graph with loops and positive integer arc weights.

    ``arcs`` is a sorted tuple of ``(i, j, weight)``; absent arcs have weight 0.
    """

    labels: tuple[Hashable, ...]
    arcs: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for i, j, w in self.arcs:
            if w < 1:
                raise ValueError(f"arc {(i, j)} has non-positive weight {w}")
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    @classmethod
    def from_weights(cls, labels, weights: dict[tuple[int, int], int]) -> "WeightedDigraph":
        return cls(tuple(labels), tuple((i, j, w) for (i, j), w in weights.items() if w))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def weights(self) -> dict[tuple[int, int], int]:
        return {(i, j): w for i, j, w in self.arcs}

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def weight(self, i: int, j: int) -> int:
        return self.weights.get((i, j), 0)

    def underlying(self) -> QuotientGraph:
        """Undirected unweighted graph: one edge per arc pair, loops kept."""
        return QuotientGraph(
            self.labels, frozenset((min(i, j), max(i, j)) for i, j, _ in self.arcs)
        )


def _edge_pool(g: Graph, edge_ids: Iterable[int] | None):
    if edge_ids is None:
        return g.edges
    return [g.edges[e] for e in edge_ids]


def quotient_graph(g: Graph, p: VertexPartition, edge_ids: Iterable[int] | None = None) -> QuotientGraph:
    """``G/P``; with ``edge_ids`` the quotient of the spanning subgraph on those edges."""
    if p.n != g.n:
        raise PartitionMismatch(f"partition covers {p.n} vertices, graph has {g.n}")
    b = p.block_of
    edges = frozenset(
        (min(b[u], b[v]), max(b[u], b[v])) for u, v in _edge_pool(g, edge_ids)
    )
    return QuotientGraph(p.blocks, edges)


def weighted_quotient(
    g: Graph, p: VertexPartition, edge_ids: Iterable[int] | None = None
) -> WeightedDigraph:
    """Directed weighted quotient; arc ``(A, B)`` has weight ``m_AB`` when positive."""
    if edge_ids is not None:
        edge_ids = tuple(edge_ids)
    dm = is_equitable(g, p, edge_ids)
    if dm is None:
        v = equitability_violation(g, p, edge_ids)
        raise NotEquitable(
            f"vertices {v.x} and {v.x2} of block {v.a} have {v.count_x} and "
            f"{v.count_x2} neighbours in block {v.b}"
        )
    weights = {
        (a, b): w for a, row in enumerate(dm.rows) for b, w in enumerate(row) if w
    }
    return WeightedDigraph.from_weights(p.blocks, weights)


def underlying_simple(q: QuotientGraph | WeightedDigraph) -> Graph:
    """Drop loops, weights and directions.

    The result is a relaxed :class:`Graph`: check ``.connected`` when it matters.
    """
    if isinstance(q, WeightedDigraph):
        q = q.underlying()
    edges = [(i, j) for i, j in q.edges if i != j]
    return build_graph(q.n, edges, list(q.labels), require_connected=False)


def is_covering_projection(g: Graph, edge_ids: Iterable[int], p: VertexPartition) -> bool:
    """Whether ``(V, edge_ids) -> (V, edge_ids)/p`` is a locally bijective
    homomorphism onto a simple (loopless) base."""
    if p.n != g.n:
        raise PartitionMismatch(f"partition covers {p.n} vertices, graph has {g.n}")
    edge_ids = tuple(edge_ids)
    q = quotient_graph(g, p, edge_ids)
    if q.loops:
        return False
    b = p.block_of
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in _edge_pool(g, edge_ids):
        nbrs[u].append(v)
        nbrs[v].append(u)
    for x in range(g.n):
        images = [b[y] for y in nbrs[x]]
        if len(set(images)) != len(images) or set(images) != q.adj[b[x]]:
            return False
    return True
