"""Equivalence relations on edge sets.

Covers the relation delta and its closure, the square conditions (S1) and
(S2), the finer/coarser lattice, and certification of USP-relations (relations
admitting a finer relation with the unique square property).
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    GraphMismatch,
    InternalInconsistency,
    UnknownClassId,
    WitnessNotFiner,
)
from .graph import Graph, Square
from .partitions import _canonical_labels

DEFAULT_MAX_CLASS_SIZE = 16
DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class EdgeRelation:
    """An edge partition: ``class_of[e]`` is the class id of edge id ``e``.

    Class ids are contiguous and ordered by smallest member edge; any labels
    passed in are renumbered accordingly.
    """

    graph: Graph
    class_of: tuple[int, ...]

    def __post_init__(self):
        if len(self.class_of) != self.graph.m:
            raise ValueError(f"expected {self.graph.m} labels, got {len(self.class_of)}")
        object.__setattr__(self, "class_of", _canonical_labels(self.class_of))

    @classmethod
    def from_classes(cls, g: Graph, classes: Iterable[Iterable[Sequence[int]]]) -> "EdgeRelation":
        """Build from classes given as lists of ``(u, v)`` pairs."""
        labels = [-1] * g.m
        for i, cls_edges in enumerate(classes):
            for u, v in cls_edges:
                e = g.edge_id(u, v)
                if labels[e] >= 0:
                    raise ValueError(f"edge {(u, v)} in two classes")
                labels[e] = i
        if -1 in labels:
            raise ValueError(f"edge {g.edges[labels.index(-1)]} has no class")
        return cls(g, tuple(labels))

    @classmethod
    def trivial(cls, g: Graph) -> "EdgeRelation":
        return cls(g, (0,) * g.m)

    @classmethod
    def discrete(cls, g: Graph) -> "EdgeRelation":
        return cls(g, tuple(range(g.m)))

    @property
    def k(self) -> int:
        return max(self.class_of, default=-1) + 1

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for e, c in enumerate(self.class_of):
            out[c].append(e)
        return tuple(tuple(c) for c in out)

    def complement(self, phi: int) -> tuple[int, ...]:
        if not 0 <= phi < self.k:
            raise UnknownClassId(phi)
        return tuple(e for e, c in enumerate(self.class_of) if c != phi)

    def same(self, e: int, f: int) -> bool:
        return self.class_of[e] == self.class_of[f]

    def class_edges(self, phi: int) -> list[tuple[int, int]]:
        if not 0 <= phi < self.k:
            raise UnknownClassId(phi)
        return [self.graph.edges[e] for e in self.classes[phi]]

    def require_graph(self, g: Graph) -> None:
        if self.graph is not g and self.graph != g:
            raise GraphMismatch("relation belongs to a different graph")


# --------------------------------------------------------------------- delta


def delta_pairs(g: Graph) -> frozenset[tuple[int, int]]:
    """The relation delta as a reflexive, symmetric set of edge-id pairs."""
    pairs = set((e, e) for e in range(g.m))
    for sq in g.squares:
        for a, b in sq.opposite_pairs():
            e, f = g.edge_index[a], g.edge_index[b]
            pairs.add((e, f))
            pairs.add((f, e))
    for (e, f), found in g.spanned.items():
        if not found:
            pairs.add((e, f))
            pairs.add((f, e))
    return frozenset(pairs)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                ra, rb = rb, ra
            self.parent[ra] = rb


def closure(g: Graph, pairs: Iterable[tuple[int, int]]) -> EdgeRelation:
    """Finest equivalence relation containing ``pairs``."""
    uf = _UnionFind(g.m)
    for e, f in pairs:
        uf.union(e, f)
    return EdgeRelation(g, tuple(uf.find(e) for e in range(g.m)))


def compute_delta(g: Graph) -> EdgeRelation:
    """``delta*``: the finest relation with the square property."""
    return closure(g, delta_pairs(g))


# -------------------------------------------------------- square properties


@dataclass(frozen=True)
class S1Violation:
    """Adjacent cross-class edges ``e``, ``f`` without exactly one qualifying square."""

    NO_QUALIFYING_SQUARE = "NoQualifyingSquare"
    MULTIPLE_QUALIFYING_SQUARES = "MultipleQualifyingSquares"

    e: tuple[int, int]
    f: tuple[int, int]
    kind: str
    witnesses: tuple[Square, ...]


def _qualifying(r: EdgeRelation, e: int, f: int, found) -> list[tuple[int, int]]:
    ce, cf = r.class_of[e], r.class_of[f]
    cls = r.class_of
    return [(oe, of) for oe, of in found if cls[oe] == ce and cls[of] == cf]


def _square_of(g: Graph, e: int, f: int, oe: int, of: int) -> Square:
    verts = set(g.edges[e]) | set(g.edges[f]) | set(g.edges[oe])
    x = (set(g.edges[e]) & set(g.edges[f])).pop()
    y = g.edges[e][0] if g.edges[e][1] == x else g.edges[e][1]
    z = g.edges[f][0] if g.edges[f][1] == x else g.edges[f][1]
    (u,) = verts - {x, y, z}
    return Square.canonical((x, y, u, z))


def first_S1_violation(g: Graph, r: EdgeRelation) -> S1Violation | None:
    r.require_graph(g)
    for (e, f), found in g.spanned.items():
        if r.same(e, f):
            continue
        q = _qualifying(r, e, f, found)
        if len(q) != 1:
            kind = S1Violation.NO_QUALIFYING_SQUARE if not q else S1Violation.MULTIPLE_QUALIFYING_SQUARES
            squares = tuple(sorted(_square_of(g, e, f, oe, of) for oe, of in q))
            return S1Violation(g.edges[e], g.edges[f], kind, squares)
    return None


def satisfies_S1(g: Graph, r: EdgeRelation) -> bool:
    """Adjacent edges of distinct classes span exactly one chordless square
    whose opposite edges are pairwise in the same class."""
    return first_S1_violation(g, r) is None


def first_S2_violation(g: Graph, r: EdgeRelation) -> Square | None:
    r.require_graph(g)
    idx = g.edge_index
    for sq in g.squares:
        for a, b in sq.opposite_pairs():
            if not r.same(idx[a], idx[b]):
                return sq
    return None


def satisfies_S2(g: Graph, r: EdgeRelation) -> bool:
    """Opposite edges of every chordless square are in the same class."""
    return first_S2_violation(g, r) is None


def contains_delta(g: Graph, r: EdgeRelation) -> bool:
    r.require_graph(g)
    return all(r.same(e, f) for e, f in delta_pairs(g))


def has_square_property(g: Graph, r: EdgeRelation) -> bool:
    """(S1) and (S2), cross-checked against containment of delta."""
    direct = satisfies_S1(g, r) and satisfies_S2(g, r)
    via_delta = contains_delta(g, r)
    if direct != via_delta:
        raise InternalInconsistency(
            f"(S1 and S2) = {direct} but delta-containment = {via_delta}"
        )
    return direct


# ------------------------------------------------------------------ lattice


def is_finer(q: EdgeRelation, r: EdgeRelation) -> bool:
    """Every class of ``q`` lies inside a class of ``r``."""
    if q.graph is not r.graph and q.graph != r.graph:
        raise GraphMismatch("relations on different graphs")
    img: dict[int, int] = {}
    for a, b in zip(q.class_of, r.class_of):
        if img.setdefault(a, b) != b:
            return False
    return True


def merge_classes(r: EdgeRelation, ids: Iterable[int]) -> EdgeRelation:
    """Unite the named classes; ids are renumbered by smallest member edge."""
    ids = set(ids)
    if len(ids) < 2:
        raise UnknownClassId(f"need at least two class ids to merge, got {sorted(ids)}")
    for i in ids:
        if not 0 <= i < r.k:
            raise UnknownClassId(i)
    target = min(ids)
    return EdgeRelation(r.graph, tuple(target if c in ids else c for c in r.class_of))


def coarsen(r: EdgeRelation, groups: Sequence[int]) -> EdgeRelation:
    """Relation whose class of ``e`` is ``groups[r.class_of[e]]``."""
    if len(groups) != r.k:
        raise ValueError(f"expected {r.k} group labels, got {len(groups)}")
    return EdgeRelation(r.graph, tuple(groups[c] for c in r.class_of))


def split_off(r: EdgeRelation, classes: Iterable[int]) -> EdgeRelation:
    """Two-class relation ``{chi, E - chi}`` where ``chi`` is the union of ``classes``."""
    chosen = set(classes)
    for c in chosen:
        if not 0 <= c < r.k:
            raise UnknownClassId(c)
    return coarsen(r, [0 if c in chosen else 1 for c in range(r.k)])


# ------------------------------------------------------------ certification


class UspKind(str, enum.Enum):
    HAS_USP = "HasUSP"
    USP_BY_WITNESS = "UspByWitness"
    NOT_USP = "NotUsp"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class UspStatus:
    kind: UspKind
    witness: EdgeRelation | None = None
    explored: int = 0

    @property
    def certified(self) -> bool:
        return self.kind in (UspKind.HAS_USP, UspKind.USP_BY_WITNESS)

    def s1_relation(self, r: EdgeRelation) -> EdgeRelation:
        """A relation finer than ``r`` known to satisfy (S1)."""
        if self.kind is UspKind.HAS_USP:
            return r
        if self.kind is UspKind.USP_BY_WITNESS:
            return self.witness
        raise ValueError(f"no (S1) relation available for status {self.kind.value}")

    def __str__(self) -> str:
        return self.kind.value


def certify_usp(
    g: Graph,
    r: EdgeRelation,
    witness: EdgeRelation | None = None,
    budget: int = DEFAULT_BUDGET,
    max_class_size: int = DEFAULT_MAX_CLASS_SIZE,
) -> UspStatus:
    """Decide whether ``r`` admits a finer relation with (S1).

    Order of attempts: ``r`` itself, the supplied witness, then a backtracking
    search over refinements of ``r``.  The search gives up with ``Unknown``
    when a class has more than ``max_class_size`` edges or after ``budget``
    partial assignments; ``NotUsp`` is only returned after exhausting it.
    """
    r.require_graph(g)
    if witness is not None:
        witness.require_graph(g)
        if not is_finer(witness, r):
            raise WitnessNotFiner("witness relation is not finer than the relation")
    if satisfies_S1(g, r):
        return UspStatus(UspKind.HAS_USP)
    if witness is not None and satisfies_S1(g, witness):
        return UspStatus(UspKind.USP_BY_WITNESS, witness)
    if max(len(c) for c in r.classes) > max_class_size:
        return UspStatus(UspKind.UNKNOWN)
    found, explored = _search_refinement(g, r, budget)
    if found is None:
        kind = UspKind.UNKNOWN if explored > budget else UspKind.NOT_USP
        return UspStatus(kind, None, explored)
    q = EdgeRelation(g, found)
    if not (is_finer(q, r) and satisfies_S1(g, q)):
        raise InternalInconsistency("refinement search returned an invalid witness")
    return UspStatus(UspKind.USP_BY_WITNESS, q, explored)


def _search_refinement(g: Graph, r: EdgeRelation, budget: int):
    """Depth-first search for a refinement of ``r`` satisfying (S1).

    Sub-labels inside each class of ``r`` follow restricted growth so each
    refinement is visited once.  Returns ``(labels or None, nodes explored)``.
    """
    rc = r.class_of
    m = g.m
    # One constraint per adjacent pair; only squares that could qualify under
    # some refinement (opposite edges already r-equal) are kept.
    constraints = []
    touching: list[list[int]] = [[] for _ in range(m)]
    for (e, f), found in g.spanned.items():
        sqs = tuple((oe, of) for oe, of in found if rc[oe] == rc[e] and rc[of] == rc[f])
        if rc[e] != rc[f] and len(sqs) == 0:
            return None, 0
        ci = len(constraints)
        constraints.append((e, f, sqs))
        involved = {e, f}
        for oe, of in sqs:
            involved.update((oe, of))
        for t in involved:
            touching[t].append(ci)

    q = [-1] * m
    used = [0] * r.k  # number of sub-labels opened per class
    explored = 0

    def ok(ci: int) -> bool:
        e, f, sqs = constraints[ci]
        if rc[e] == rc[f]:
            if q[e] < 0 or q[f] < 0 or q[e] == q[f]:
                return True
        qe, qf = q[e], q[f]
        definite = possible = 0
        for oe, of in sqs:
            a, b = q[oe], q[of]
            if (a >= 0 and qe >= 0 and a != qe) or (b >= 0 and qf >= 0 and b != qf):
                continue
            possible += 1
            if a >= 0 and qe >= 0 and b >= 0 and qf >= 0:
                definite += 1
        return definite <= 1 and possible >= 1

    def dfs(t: int) -> bool:
        nonlocal explored
        if t == m:
            return True
        c = rc[t]
        opened = used[c]
        for lab in range(opened + 1):
            explored += 1
            if explored > budget:
                return False
            q[t] = lab
            if lab == opened:
                used[c] += 1
            if all(ok(ci) for ci in touching[t]) and dfs(t + 1):
                return True
            if lab == opened:
                used[c] -= 1
            if explored > budget:
                q[t] = -1
                return False
        q[t] = -1
        return False

    if sys.getrecursionlimit() < m + 100:
        sys.setrecursionlimit(m + 100)
    if dfs(0):
        return tuple((rc[e], q[e]) for e in range(m)), explored
    return None, explored
