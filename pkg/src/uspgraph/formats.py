"""Instance files, DOT output and short graph names.

Instance format, one record per line (``#`` starts a comment)::

    name m8
    vertices 0 1 2 3 4 5 6 7
    edge 0 1 CYC
    edge 0 4 CHD
    witness 0 1 a

``vertices`` may repeat and accumulates names in order; vertex ids follow
that order.  ``edge u v [label]`` either always or never carries a label.
``witness u v label`` lines, when present, must label every edge once and
give a relation finer than the edge labels.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import ParseError, TooManyClasses
from .graph import Graph, build_graph
from .iso import canonical_form
from .partitions import VertexPartition
from .quotients import QuotientGraph, WeightedDigraph
from .relations import EdgeRelation, is_finer


class ParsedInstance(NamedTuple):
    graph: Graph
    relation: EdgeRelation | None
    witness: EdgeRelation | None
    name: str
    class_labels: tuple[str, ...]


def _labelled_relation(g: Graph, labels: dict[tuple[int, int], str]):
    """Relation from per-edge labels plus the label of each resulting class id."""
    per_edge = [labels[e] for e in g.edges]
    order: dict[str, int] = {}
    for lab in per_edge:
        order.setdefault(lab, len(order))
    r = EdgeRelation(g, tuple(order[lab] for lab in per_edge))
    names = [""] * r.k
    for e, lab in enumerate(per_edge):
        names[r.class_of[e]] = lab
    return r, tuple(names)


def parse_instance(text: str) -> ParsedInstance:
    """Parse an instance document.

    Class ids follow the relation's canonical order (smallest edge first);
    ``class_labels[i]`` is the label written for class ``i``.
    """
    name = None
    vertex_names: list[str] = []
    pos: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    labels: dict[tuple[int, int], str] = {}
    unlabelled_line = labelled_line = None
    witness: dict[tuple[int, int], str] = {}

    def vertex(tok: str, lineno: int) -> int:
        if tok not in pos:
            raise ParseError(f"unknown vertex {tok!r}", line=lineno, field="vertex")
        return pos[tok]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key == "name":
            if name is not None:
                raise ParseError("name given twice", line=lineno, field="name")
            if not rest:
                raise ParseError("missing instance name", line=lineno, field="name")
            name = " ".join(rest)
        elif key == "vertices":
            for tok in rest:
                if tok in pos:
                    raise ParseError(f"duplicate vertex {tok!r}", line=lineno, field="vertices")
                pos[tok] = len(vertex_names)
                vertex_names.append(tok)
        elif key == "edge":
            if len(rest) not in (2, 3):
                raise ParseError("expected: edge <u> <v> [label]", line=lineno, field="edge")
            u, v = vertex(rest[0], lineno), vertex(rest[1], lineno)
            edges.append((u, v))
            if len(rest) == 3:
                labels[(min(u, v), max(u, v))] = rest[2]
                labelled_line = labelled_line or lineno
            else:
                unlabelled_line = unlabelled_line or lineno
            if labelled_line and unlabelled_line:
                raise ParseError(
                    "edge labels must be given for every edge or for none",
                    line=max(labelled_line, unlabelled_line), field="label",
                )
        elif key == "witness":
            if len(rest) != 3:
                raise ParseError("expected: witness <u> <v> <label>", line=lineno, field="witness")
            u, v = vertex(rest[0], lineno), vertex(rest[1], lineno)
            e = (min(u, v), max(u, v))
            if e in witness:
                raise ParseError(f"edge {rest[0]} {rest[1]} has two witness labels", line=lineno, field="witness")
            witness[e] = rest[2]
        else:
            raise ParseError(f"unknown record {key!r}", line=lineno, field="record")

    g = build_graph(len(vertex_names), edges, vertex_names)
    relation, class_labels = (None, ())
    if labels:
        relation, class_labels = _labelled_relation(g, labels)
    wit = None
    if witness:
        missing = [e for e in g.edges if e not in witness]
        extra = [e for e in witness if not g.has_edge(*e)]
        if missing or extra:
            e = (missing or extra)[0]
            raise ParseError(
                f"witness must label exactly the edges; check {vertex_names[e[0]]} {vertex_names[e[1]]}",
                field="witness",
            )
        if relation is None:
            raise ParseError("witness given without edge labels", field="witness")
        wit, _ = _labelled_relation(g, witness)
        if not is_finer(wit, relation):
            raise ParseError("witness relation is not finer than the edge labels", field="witness")
    return ParsedInstance(g, relation, wit, name or "instance", class_labels)


def read_instance(path: str) -> ParsedInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _token(x) -> str:
    if isinstance(x, tuple):
        return ",".join(_token(y) for y in x)
    return "".join(str(x).split())


def vertex_tokens(g: Graph) -> list[str]:
    """Whitespace-free vertex names, falling back to ids when they collide."""
    toks = [_token(g.name_of(v)) for v in range(g.n)]
    if len(set(toks)) != g.n or not all(toks) or any("#" in t for t in toks):
        toks = [str(v) for v in range(g.n)]
    return toks


def export_instance(
    g: Graph,
    r: EdgeRelation | None = None,
    witness: EdgeRelation | None = None,
    name: str = "instance",
    class_labels=None,
) -> str:
    toks = vertex_tokens(g)
    labels = list(class_labels) if class_labels else None
    if r is not None and (labels is None or len(labels) != r.k):
        labels = [f"c{i}" for i in range(r.k)]
    lines = [f"name {name}", "vertices " + " ".join(toks)]
    for e, (u, v) in enumerate(g.edges):
        tail = f" {labels[r.class_of[e]]}" if r is not None else ""
        lines.append(f"edge {toks[u]} {toks[v]}{tail}")
    if witness is not None:
        for e, (u, v) in enumerate(g.edges):
            lines.append(f"witness {toks[u]} {toks[v]} w{witness.class_of[e]}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- DOT

PALETTE = (
    "style=solid, color=black",
    "style=dashed, color=black",
    "style=dotted, color=black",
    "style=bold, color=black",
    "style=solid, color=red",
    "style=dashed, color=blue",
    "style=dotted, color=darkgreen",
    "style=bold, color=orange",
)


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    g: Graph,
    r: EdgeRelation | None = None,
    p: VertexPartition | None = None,
    styles: dict[int, str] | None = None,
    name: str = "G",
) -> str:
    """Undirected DOT text; classes become edge styles, blocks become clusters."""
    if r is not None and styles is None and r.k > len(PALETTE):
        raise TooManyClasses(f"{r.k} classes, default palette has {len(PALETTE)} styles")
    toks = vertex_tokens(g)
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle];"]
    if p is not None:
        for b, block in enumerate(p.blocks):
            members = "; ".join(str(v) for v in block)
            lines.append(f"  subgraph cluster_{b} {{ label={_quote(f'B{b}')}; {members}; }}")
    for v in range(g.n):
        lines.append(f"  {v} [label={_quote(toks[v])}];")
    for e, (u, v) in enumerate(g.edges):
        attr = ""
        if r is not None:
            c = r.class_of[e]
            style = styles[c] if styles is not None else PALETTE[c]
            attr = f" [{style}]"
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def block_label(g: Graph, block) -> str:
    toks = vertex_tokens(g)
    return "{" + ",".join(toks[v] for v in block) + "}"


def export_quotient_dot(q: QuotientGraph | WeightedDigraph, g: Graph | None = None, name: str = "Q") -> str:
    """DOT for a quotient: loops kept; a weighted quotient becomes a digraph
    with arc weights as labels.  Labels use ``g``'s vertex names when given."""
    def label(lab):
        if g is not None and isinstance(lab, tuple):
            return block_label(g, lab)
        return _token(lab)

    weighted = isinstance(q, WeightedDigraph)
    kind, op = ("digraph", "->") if weighted else ("graph", "--")
    lines = [f"{kind} {_quote(name)} {{", "  node [shape=box];"]
    for i, lab in enumerate(q.labels):
        lines.append(f"  {i} [label={_quote(label(lab))}];")
    if weighted:
        for i, j, w in q.arcs:
            lines.append(f"  {i} {op} {j} [label={w}];")
    else:
        for i, j in q.sorted_edges():
            lines.append(f"  {i} {op} {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ graph names


def _family(n: int) -> dict[str, list[tuple[int, int]]]:
    fam = {
        f"K{n}": [(i, j) for i in range(n) for j in range(i + 1, n)],
        f"P{n}": [(i, i + 1) for i in range(n - 1)],
    }
    if n >= 3:
        fam[f"C{n}"] = [(i, (i + 1) % n) for i in range(n)]
        fam[f"K1,{n - 1}"] = [(0, i) for i in range(1, n)]
    if n >= 6 and n % 2 == 0:
        fam[f"M{n}"] = fam[f"C{n}"] + [(i, i + n // 2) for i in range(n // 2)]
    return fam


def graph_name(g: Graph) -> str:
    """Short name for small familiar graphs (K, P, C, star, Moebius ladder),
    otherwise ``G(n=.., m=..)``."""
    if g.n <= 12:
        form = canonical_form(g)
        for label, edges in _family(g.n).items():
            if len(edges) == g.m and canonical_form(build_graph(g.n, edges, require_connected=False)) == form:
                return label
    return f"G(n={g.n},m={g.m})"
