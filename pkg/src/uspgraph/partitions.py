"""Vertex partitions induced by edge relations, and equitability.

``P_phi`` is the component partition of the spanning subgraph on one class,
``P_phibar`` the one on the complement of that class, and the common
refinement ``P^R`` of all ``P_phibar`` has blocks ``V_R(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import PartitionMismatch, UnknownClassId, VertexOutOfRange
from .graph import Graph, component_labels


def _canonical_labels(labels: Sequence) -> tuple[int, ...]:
    """Renumber arbitrary hashable labels by first occurrence."""
    seen: dict = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


@dataclass(frozen=True)
class VertexPartition:
    """Partition of ``0..n-1``; block ids are ordered by smallest member.

    Construction canonicalizes the labels, so two partitions with the same
    blocks compare equal.
    """

    block_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_of", _canonical_labels(self.block_of))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "VertexPartition":
        labels = [-1] * n
        for i, block in enumerate(blocks):
            for v in block:
                if not 0 <= v < n:
                    raise VertexOutOfRange(f"vertex {v} not in 0..{n - 1}")
                if labels[v] >= 0:
                    raise PartitionMismatch(f"vertex {v} appears in two blocks")
                labels[v] = i
        if -1 in labels:
            raise PartitionMismatch(f"vertex {labels.index(-1)} is in no block")
        return cls(tuple(labels))

    @classmethod
    def singletons(cls, n: int) -> "VertexPartition":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.block_of)

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(max(self.block_of, default=-1) + 1)]
        for v, b in enumerate(self.block_of):
            out[b].append(v)
        return tuple(tuple(b) for b in out)

    def __len__(self) -> int:
        return len(self.blocks)

    def block(self, v: int) -> tuple[int, ...]:
        return self.blocks[self.block_of[v]]

    def refines(self, other: "VertexPartition") -> bool:
        """Every block of self lies inside a block of ``other``."""
        if other.n != self.n:
            raise PartitionMismatch("partitions of different vertex sets")
        img: dict[int, int] = {}
        for a, b in zip(self.block_of, other.block_of):
            if img.setdefault(a, b) != b:
                return False
        return True

    def meet(self, other: "VertexPartition") -> "VertexPartition":
        """Common refinement (blockwise intersection)."""
        if other.n != self.n:
            raise PartitionMismatch("partitions of different vertex sets")
        return VertexPartition(tuple(zip(self.block_of, other.block_of)))

    def is_discrete(self) -> bool:
        return len(self.blocks) == self.n


def _check_partition(g: Graph, p: VertexPartition) -> None:
    if p.n != g.n:
        raise PartitionMismatch(f"partition covers {p.n} vertices, graph has {g.n}")


def _class_edges(r, phi: int) -> tuple[int, ...]:
    if not 0 <= phi < r.k:
        raise UnknownClassId(phi)
    return r.classes[phi]


def class_partition(g: Graph, r, phi: int) -> VertexPartition:
    """Components of the spanning subgraph on the edges of class ``phi``."""
    r.require_graph(g)
    return VertexPartition(tuple(component_labels(g, _class_edges(r, phi))))


def complement_partition(g: Graph, r, phi: int) -> VertexPartition:
    """Components of the spanning subgraph on all edges outside class ``phi``."""
    r.require_graph(g)
    _class_edges(r, phi)
    return VertexPartition(tuple(component_labels(g, r.complement(phi))))


def common_refinement(g: Graph, r) -> VertexPartition:
    """The partition ``P^R`` whose block through ``x`` is ``V_R(x)``."""
    r.require_graph(g)
    p = complement_partition(g, r, 0)
    for phi in range(1, r.k):
        p = p.meet(complement_partition(g, r, phi))
    return p


def vr_block(g: Graph, r, x: int) -> frozenset[int]:
    """``V_R(x)`` by direct set intersection (independent of ``common_refinement``)."""
    out = frozenset(range(g.n))
    for phi in range(r.k):
        comp = complement_partition(g, r, phi)
        out &= frozenset(comp.block(x))
    return out


def neighbor_set_in_class(g: Graph, r, u: int, phi: int) -> frozenset[int]:
    """``N_phi(u)``: neighbours of ``u`` joined to it by a class-``phi`` edge."""
    r.require_graph(g)
    if not 0 <= u < g.n:
        raise VertexOutOfRange(f"vertex {u} not in 0..{g.n - 1}")
    if not 0 <= phi < r.k:
        raise UnknownClassId(phi)
    out = set()
    for e in g.incident[u]:
        if r.class_of[e] == phi:
            a, b = g.edges[e]
            out.add(b if a == u else a)
    return frozenset(out)


@dataclass(frozen=True)
class DegreeMatrix:
    """Partition degree matrix ``m[A][B] = |N(x) & B|`` for any ``x`` in ``A``."""

    partition: VertexPartition
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, ab: tuple[int, int]) -> int:
        a, b = ab
        return self.rows[a][b]

    def as_array(self):
        import numpy as np

        return np.array(self.rows, dtype=int)


@dataclass(frozen=True)
class EquitabilityViolation:
    """Vertices ``x`` and ``x2`` of block ``a`` see different counts in block ``b``."""

    a: int
    b: int
    x: int
    x2: int
    count_x: int
    count_x2: int


def _neighbor_lists(g: Graph, edge_ids: Iterable[int] | None) -> list[list[int]]:
    if edge_ids is None:
        return [list(nb) for nb in g.neighbors]
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for e in edge_ids:
        u, v = g.edges[e]
        nbrs[u].append(v)
        nbrs[v].append(u)
    return nbrs


def _count_table(g: Graph, p: VertexPartition, edge_ids) -> list[list[int]]:
    k = len(p.blocks)
    counts = [[0] * k for _ in range(g.n)]
    for x, nbrs in enumerate(_neighbor_lists(g, edge_ids)):
        row = counts[x]
        for y in nbrs:
            row[p.block_of[y]] += 1
    return counts


def equitability_violation(
    g: Graph, p: VertexPartition, edge_ids: Iterable[int] | None = None
) -> EquitabilityViolation | None:
    """First violating ``(A, B, x, x')`` in lexicographic order, else None.

    With ``edge_ids`` the check runs on the spanning subgraph on those edges.
    """
    _check_partition(g, p)
    counts = _count_table(g, p, edge_ids)
    for a, block in enumerate(p.blocks):
        x = block[0]
        for b in range(len(p.blocks)):
            for x2 in block[1:]:
                if counts[x2][b] != counts[x][b]:
                    return EquitabilityViolation(a, b, x, x2, counts[x][b], counts[x2][b])
    return None


def is_equitable(
    g: Graph, p: VertexPartition, edge_ids: Iterable[int] | None = None
) -> DegreeMatrix | None:
    """The partition degree matrix if ``p`` is equitable, otherwise None."""
    if edge_ids is not None:
        edge_ids = tuple(edge_ids)
    if equitability_violation(g, p, edge_ids) is not None:
        return None
    counts = _count_table(g, p, edge_ids)
    rows = tuple(tuple(counts[block[0]]) for block in p.blocks)
    return DegreeMatrix(p, rows)
