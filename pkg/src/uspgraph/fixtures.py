"""Small named graphs and relations used throughout tests and examples."""

from __future__ import annotations

from typing import NamedTuple

from .graph import Graph, build_graph
from .relations import EdgeRelation


class Fixture(NamedTuple):
    graph: Graph
    relation: EdgeRelation | None
    class_ids: dict[str, int]


def _with_classes(g: Graph, named: dict[str, list[tuple[int, int]]]) -> Fixture:
    r = EdgeRelation.from_classes(g, named.values())
    ids = {name: r.class_of[g.edge_id(*edges[0])] for name, edges in named.items()}
    return Fixture(g, r, ids)


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def k1() -> Graph:
    return build_graph(1, [])


def k2() -> Graph:
    return complete(2)


def c4() -> Graph:
    return cycle(4)


def k3() -> Graph:
    return complete(3)


def p3() -> Graph:
    return path(3)


def hypercube(d: int) -> Graph:
    n = 1 << d
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)]
    names = [format(v, f"0{d}b") for v in range(n)]
    return build_graph(n, edges, names)


def q3() -> Graph:
    return hypercube(3)


def q3_dimension_classes() -> Fixture:
    g = q3()
    named = {}
    for b in range(3):
        named[f"dim{b}"] = [e for e in g.edges if e[0] ^ e[1] == 1 << b]
    return _with_classes(g, named)


def prism() -> Fixture:
    """C6 x K2; vertex ``(i, j)`` has id ``2*i + j``."""
    vid = lambda i, j: 2 * (i % 6) + j  # noqa: E731
    hexes = [(vid(i, j), vid(i + 1, j)) for j in (0, 1) for i in range(6)]
    rungs = [(vid(i, 0), vid(i, 1)) for i in range(6)]
    names = [(i, j) for i in range(6) for j in (0, 1)]
    g = build_graph(12, hexes + rungs, names)
    return _with_classes(g, {"HEX": hexes, "RUNG": rungs})


def m8() -> Fixture:
    """Moebius ladder on 8 vertices: the 8-cycle plus the four long diagonals."""
    cyc = [(i, (i + 1) % 8) for i in range(8)]
    chd = [(i, i + 4) for i in range(4)]
    g = build_graph(8, cyc + chd)
    return _with_classes(g, {"CYC": cyc, "CHD": chd})


def fig1() -> Fixture:
    """Hexagon 1..6 with its three long diagonals (K_{3,3}).

    Hexagon edges form class ``c1`` and diagonals class ``c2``.  The relation
    has (S1), while the square (1,2,3,4) breaks (S2).  Vertex ids are name - 1.
    """
    hexagon = [(i, i % 6 + 1) for i in range(1, 7)]
    diagonals = [(1, 4), (2, 5), (3, 6)]
    shift = lambda es: [(u - 1, v - 1) for u, v in es]  # noqa: E731
    g = build_graph(6, shift(hexagon + diagonals), [1, 2, 3, 4, 5, 6])
    return _with_classes(g, {"c1": shift(hexagon), "c2": shift(diagonals)})


def diagonal_cube() -> Fixture:
    """Q3 plus its four body diagonals (K_{4,4}).

    Top face 0-1-2-3, bottom face 4-5-6-7, vertical edges ``i, i+4``.  The
    four classes (two horizontal directions, verticals, diagonals) have (S1)
    but not (S2); uniting them in pairs loses (S1).
    """
    top = [(0, 1), (1, 2), (2, 3), (0, 3)]
    bottom = [(4, 5), (5, 6), (6, 7), (4, 7)]
    vertical = [(i, i + 4) for i in range(4)]
    diagonals = [(0, 6), (1, 7), (2, 4), (3, 5)]
    g = build_graph(8, top + bottom + vertical + diagonals)
    return _with_classes(g, {
        "h0": [(0, 1), (2, 3), (4, 5), (6, 7)],
        "h1": [(1, 2), (0, 3), (5, 6), (4, 7)],
        "vert": vertical,
        "diag": diagonals,
    })
