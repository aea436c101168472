"""Finite simple graphs, spanning-subgraph components and chordless squares.

Vertices are dense integers ``0..n-1``; edges are stored as sorted pairs and
identified by their index in ``Graph.edges`` (the "edge id").  External names
only travel along in ``Graph.names`` for display and I/O.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple, Sequence

from .errors import Disconnected, DuplicateEdge, LoopEdge, NotAdjacent, VertexOutOfRange

Edge = tuple[int, int]


class Square(NamedTuple):
    """A chordless square ``a-b-c-d-a`` in canonical (lexicographically least) form."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def canonical(cls, cycle: Sequence[int]) -> "Square":
        rotations = []
        for seq in (tuple(cycle), tuple(reversed(cycle))):
            for i in range(4):
                rotations.append(seq[i:] + seq[:i])
        return cls(*min(rotations))

    def edges(self) -> tuple[Edge, Edge, Edge, Edge]:
        a, b, c, d = self
        return (_norm(a, b), _norm(b, c), _norm(c, d), _norm(d, a))

    def opposite_pairs(self) -> tuple[tuple[Edge, Edge], tuple[Edge, Edge]]:
        ab, bc, cd, da = self.edges()
        return (ab, cd), (bc, da)


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``connected`` is False only for relaxed values built with
    ``require_connected=False`` (e.g. the simple graph underlying a quotient).
    """

    n: int
    edges: tuple[Edge, ...]
    names: tuple[Hashable, ...] = field(default=(), compare=True)
    connected: bool = True

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(range(self.n)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self.adj)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self.edge_index[_norm(u, v)]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def name_of(self, v: int) -> Hashable:
        return self.names[v]

    @cached_property
    def squares(self) -> tuple[Square, ...]:
        return tuple(_enumerate_squares(self))

    @cached_property
    def adjacent_pairs(self) -> tuple[tuple[int, int, int], ...]:
        """All ``(e, f, x)`` with edge ids ``e < f`` sharing the vertex ``x``."""
        out = []
        for x in range(self.n):
            for e, f in combinations(self.incident[x], 2):
                out.append((e, f, x) if e < f else (f, e, x))
        out.sort()
        return tuple(out)

    @cached_property
    def spanned(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        """For adjacent ``e < f``: the chordless squares through both, as
        ``(opposite of e, opposite of f)`` edge-id pairs."""
        out = {}
        for e, f, x in self.adjacent_pairs:
            y = _other(self.edges[e], x)
            z = _other(self.edges[f], x)
            found = []
            if z not in self.adj[y]:
                for u in sorted((self.adj[y] & self.adj[z]) - {x}):
                    if u in self.adj[x]:
                        continue
                    found.append((self.edge_id(u, z), self.edge_id(y, u)))
            out[(e, f)] = tuple(found)
        return out


def _other(edge: Edge, x: int) -> int:
    return edge[1] if edge[0] == x else edge[0]


def build_graph(
    n: int,
    edge_list: Iterable[Sequence[int]],
    names: Sequence[Hashable] | None = None,
    require_connected: bool = True,
) -> Graph:
    """Validate an edge list and return a :class:`Graph`.

    Raises VertexOutOfRange, LoopEdge, DuplicateEdge, and (unless
    ``require_connected`` is False) Disconnected.
    """
    if n < 1:
        raise VertexOutOfRange(f"a graph needs at least one vertex, got n={n}")
    seen: set[Edge] = set()
    for pair in edge_list:
        u, v = (int(t) for t in pair)
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRange(f"vertex {w} not in 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        e = _norm(u, v)
        if e in seen:
            raise DuplicateEdge(f"edge {e} listed twice")
        seen.add(e)
    if names is not None and len(names) != n:
        raise ValueError(f"expected {n} names, got {len(names)}")
    edges = tuple(sorted(seen))
    connected = _is_connected(n, edges)
    if require_connected and not connected:
        raise Disconnected(f"graph on {n} vertices with {len(edges)} edges is disconnected")
    return Graph(n, edges, tuple(names) if names is not None else (), connected)


def _is_connected(n: int, edges: Sequence[Edge]) -> bool:
    labels = _component_labels(n, edges)
    return max(labels) == 0


def _component_labels(n: int, edges: Iterable[Edge]) -> list[int]:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    label = [-1] * n
    nxt = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = nxt
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if label[w] < 0:
                    label[w] = nxt
                    queue.append(w)
        nxt += 1
    return label


def component_labels(g: Graph, edge_ids: Iterable[int]) -> list[int]:
    """Component label per vertex of the spanning subgraph ``(V, edge_ids)``.

    Labels are numbered in order of the smallest vertex of each component.
    """
    return _component_labels(g.n, (g.edges[i] for i in edge_ids))


def connected_components(g: Graph, edge_ids: Iterable[int]):
    """Vertex partition into the components of the spanning subgraph on ``edge_ids``."""
    from .partitions import VertexPartition

    return VertexPartition(tuple(component_labels(g, edge_ids)))


def _enumerate_squares(g: Graph) -> list[Square]:
    out = []
    adj = g.adj
    for a in range(g.n):
        higher = [v for v in g.neighbors[a] if v > a]
        for b, d in combinations(higher, 2):
            if d in adj[b]:
                continue
            for c in sorted(adj[b] & adj[d]):
                if c <= a or c in adj[a]:
                    continue
                out.append(Square(a, b, c, d))
    out.sort()
    return out


def enumerate_chordless_squares(g: Graph) -> list[Square]:
    """Every induced 4-cycle once, canonical form, sorted."""
    return list(g.squares)


def squares_spanned_by(g: Graph, e: Edge, f: Edge) -> list[Square]:
    """Chordless squares containing both adjacent edges ``e`` and ``f``."""
    e, f = _norm(*e), _norm(*f)
    for edge in (e, f):
        if edge not in g.edge_index:
            raise NotAdjacent(f"{edge} is not an edge of the graph")
    shared = set(e) & set(f)
    if e == f or len(shared) != 1:
        raise NotAdjacent(f"{e} and {f} do not share exactly one endpoint")
    (x,) = shared
    y, z = _other(e, x), _other(f, x)
    if g.has_edge(y, z):
        return []
    out = [
        Square.canonical((x, y, u, z))
        for u in (g.adj[y] & g.adj[z]) - {x}
        if not g.has_edge(x, u)
    ]
    return sorted(out)


def distances_from(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_2_convex(g: Graph, edge_ids: Iterable[int]) -> bool:
    """True iff every component of ``(V, edge_ids)`` contains all shortest
    ``g``-paths of length at most 2 between its vertices."""
    s = frozenset(edge_ids)
    labels = component_labels(g, s)
    in_s = {g.edges[i] for i in s}
    for u in range(g.n):
        dist = distances_from(g, u)
        for v in range(u + 1, g.n):
            if labels[u] != labels[v]:
                continue
            if dist[v] == 1 and (u, v) not in in_s:
                return False
            if dist[v] == 2:
                for w in g.adj[u] & g.adj[v]:
                    if labels[w] != labels[u]:
                        return False
                    if _norm(u, w) not in in_s or _norm(w, v) not in in_s:
                        return False
    return True


def induced_subgraph(g: Graph, vertices: Iterable[int], edge_ids: Iterable[int] | None = None) -> Graph:
    """Subgraph on ``vertices`` relabelled ``0..k-1`` in ascending order.

    With ``edge_ids`` only those edges (with both ends inside) are kept.
    Names carry the original vertex names.
    """
    verts = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(verts)}
    if edge_ids is None:
        pool = g.edges
    else:
        pool = [g.edges[i] for i in edge_ids]
    new_edges = [(pos[u], pos[v]) for u, v in pool if u in pos and v in pos]
    return build_graph(len(verts), new_edges, [g.names[v] for v in verts], require_connected=False)


def relabel(g: Graph, names: Sequence[Hashable]) -> Graph:
    return Graph(g.n, g.edges, tuple(names), g.connected)
