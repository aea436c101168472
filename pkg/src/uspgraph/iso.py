"""Small-graph isomorphism and canonical forms.

Both work on :class:`Graph` and on loop-carrying :class:`QuotientGraph`
values; a loop counts as the vertex being its own neighbour.
"""

from __future__ import annotations

from typing import Union

from .errors import TooLarge
from .graph import Graph
from .quotients import QuotientGraph

MAX_ISO_VERTICES = 12

GraphLike = Union[Graph, QuotientGraph]


def _adjacency(x: GraphLike) -> list[frozenset[int]]:
    """Neighbour sets; a loop at ``v`` puts ``v`` in its own set."""
    return list(x.adj)


def _edge_count(x: GraphLike) -> int:
    return len(x.edges)


def find_isomorphism(a: GraphLike, b: GraphLike) -> dict[int, int] | None:
    """A vertex bijection ``a -> b`` preserving adjacency and loops, or None.

    Plain backtracking with degree, loop and neighbour-degree pruning; capped
    at ``MAX_ISO_VERTICES`` vertices.
    """
    if a.n != b.n or _edge_count(a) != _edge_count(b):
        return None
    if a.n > MAX_ISO_VERTICES:
        raise TooLarge(f"isomorphism search is capped at {MAX_ISO_VERTICES} vertices")
    adj_a, adj_b = _adjacency(a), _adjacency(b)
    n = a.n

    def signature(adj, v):
        return (len(adj[v]), v in adj[v], tuple(sorted(len(adj[w]) for w in adj[v])))

    sig_a = [signature(adj_a, v) for v in range(n)]
    sig_b = [signature(adj_b, v) for v in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None

    # Visit vertices so that each (after the first of its component) has a
    # mapped neighbour; that makes the adjacency test prune early.
    order: list[int] = []
    seen = set()
    for s in sorted(range(n), key=lambda v: (-len(adj_a[v]), v)):
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop(0)
            order.append(v)
            for w in sorted(adj_a[v]):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)

    fwd: dict[int, int] = {}
    used = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for cand in range(n):
            if cand in used or sig_b[cand] != sig_a[v]:
                continue
            if (v in adj_a[v]) != (cand in adj_b[cand]):
                continue
            if any((w in adj_a[v]) != (fwd[w] in adj_b[cand]) for w in fwd):
                continue
            fwd[v] = cand
            used.add(cand)
            if extend(i + 1):
                return True
            del fwd[v]
            used.discard(cand)
        return False

    return dict(fwd) if extend(0) else None


def are_isomorphic(a: GraphLike, b: GraphLike) -> bool:
    return find_isomorphism(a, b) is not None


# ------------------------------------------------------------ canonical form


def _renumber(keys) -> tuple[int, ...]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return tuple(order[k] for k in keys)


def _refine(adj: list[frozenset[int]], colors: tuple[int, ...]) -> tuple[int, ...]:
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))
        ]
        new = _renumber(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(x: GraphLike) -> tuple[int, tuple[tuple[int, int], ...]]:
    """``(n, sorted edge list)`` under a canonical labelling.

    Individualization-refinement, branching on the first smallest
    non-singleton colour cell and skipping twins.  Two graph values have equal
    canonical forms iff they are isomorphic.
    """
    adj = _adjacency(x)
    n = len(adj)
    if n == 0:
        return (0, ())
    start = _refine(adj, _renumber([(v in adj[v], len(adj[v])) for v in range(n)]))
    best: list = [None]

    def leaf(colors):
        edges = set()
        for v in range(n):
            for w in adj[v]:
                a, b = colors[v], colors[w]
                edges.add((min(a, b), max(a, b)))
        cert = tuple(sorted(edges))
        if best[0] is None or cert < best[0]:
            best[0] = cert

    def search(colors):
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1 and (target is None or len(cells[c]) < len(cells[target])):
                target = c
        if target is None:
            leaf(colors)
            return
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(adj, v, u) for u in tried):
                continue
            tried.append(v)
            ind = _renumber([(c, 0 if w == v else 1) for w, c in enumerate(colors)])
            search(_refine(adj, ind))

    search(start)
    return (n, best[0])


def _twins(adj, u: int, v: int) -> bool:
    return (u in adj[u]) == (v in adj[v]) and adj[u] - {u, v} == adj[v] - {u, v}
