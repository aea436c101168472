"""Executable checks of the structural results on USP-relations.

Every check evaluates one statement on a concrete ``(graph, relation)``
instance and returns a :class:`Verdict`.  Failing verdicts carry a replayable
witness (vertices, edges, class ids), chosen lexicographically least.
``run_all`` evaluates the whole catalogue and assembles a :class:`Report`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import NotCertifiedUsp, NotFiner, NotTwoClasses, PreconditionNotMet, UnknownClassId, USPGraphError
from .graph import Graph, build_graph, component_labels, induced_subgraph
from .partitions import (
    VertexPartition,
    common_refinement,
    complement_partition,
    equitability_violation,
    neighbor_set_in_class,
)
from .products import (
    is_product_relation_pair,
    verify_loopless_decomposition,
    verify_quotient_decomposition,
    weighted_decomposition_mismatch,
)
from .quotients import quotient_graph, underlying_simple
from .relations import (
    EdgeRelation,
    UspStatus,
    certify_usp,
    compute_delta,
    contains_delta,
    first_S1_violation,
    first_S2_violation,
    is_finer,
    merge_classes,
    satisfies_S1,
    satisfies_S2,
    split_off,
)

PASS, FAIL, SKIPPED, INFO = "pass", "fail", "skipped", "info"

FACTOR_READING = (
    "'belongs to a factor' is read as: the two-class relation {chi, E - chi} "
    "passes the one-vertex-intersection product test (any factor, not only prime)"
)


@dataclass(frozen=True)
class Verdict:
    statement: str
    anchor: str
    outcome: str
    witness: dict[str, Any] | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.outcome == PASS

    @property
    def failed(self) -> bool:
        return self.outcome == FAIL


def _verdict(sid: str, witness: dict | None, note: str = "") -> Verdict:
    return Verdict(sid, ANCHORS[sid], PASS if witness is None else FAIL, witness, note)


def _skip(sid: str, why: str) -> Verdict:
    return Verdict(sid, ANCHORS[sid], SKIPPED, None, why)


ANCHORS = {
    "def.S1": "unique square property (S1)",
    "def.S2": "square property (S2)",
    "prop.square_property": "square property iff delta is contained in R",
    "obs.squares": "USP-relation: cross-class adjacent edges span a qualifying square",
    "lem.incidence": "each vertex meets every class",
    "lem.bijection": "edge ends have equal psi-degrees",
    "lem.nonempty_intersect": "two classes: phi- and phibar-components always meet",
    "lem.subgraph": "(S1) survives restriction to two phi-components and chi-edges",
    "lem.monotonicity": "Q finer than R implies V_R(x) within V_Q(x)",
    "lem.neighbors": "constant psi-neighbour counts between phi-components",
    "cor.equitable_class": "P_phibar is equitable in G_phi",
    "note.simple_quotient": "N(G_phi/P_phibar) equals N(G/P_phibar)",
    "lem.neighborhood_cut": "neighbourhood cuts of V_R blocks",
    "thm.equitable": "P^R is an equitable partition of G",
    "thm.product": "G/P^R is the product of the G_phi/P_phibar",
    "cor.loopless": "induced complements: G/P^R loopless product of N(G/P_phibar)",
    "cor.weighted": "weighted quotients multiply",
    "thm.product_relation": "one-vertex intersections give a product relation",
    "prop.components": "components of G_(phi+psi) as unions",
    "prop.intersection": "intersection criterion for joined complements",
    "prop.subsets": "subset propagation clauses (1)-(3)",
    "cor.join": "joining two classes and the vertex partition",
}


# -------------------------------------------------------------- utilities


def _certified(g: Graph, r: EdgeRelation, status: UspStatus | None, require_usp: bool) -> UspStatus | None:
    if not require_usp:
        return status
    if status is None:
        status = certify_usp(g, r)
    if not status.certified:
        raise NotCertifiedUsp(f"relation is not certified as a USP-relation ({status})")
    return status


def _check_class(r: EdgeRelation, *ids: int) -> None:
    for i in ids:
        if not 0 <= i < r.k:
            raise UnknownClassId(i)


def _comp_sets(g: Graph, edge_ids) -> list[frozenset[int]]:
    """Per vertex, the vertex set of its component in ``(V, edge_ids)``."""
    labels = component_labels(g, edge_ids)
    groups: dict[int, set[int]] = {}
    for v, lab in enumerate(labels):
        groups.setdefault(lab, set()).add(v)
    frozen = {lab: frozenset(s) for lab, s in groups.items()}
    return [frozen[labels[v]] for v in range(g.n)]


class _Sets:
    """Cached component sets ``V(G_X^x)`` for unions of classes and their complements."""

    def __init__(self, g: Graph, r: EdgeRelation):
        self.g, self.r = g, r
        self._cache: dict[tuple, list[frozenset[int]]] = {}

    def of(self, classes, complement: bool = False) -> list[frozenset[int]]:
        key = (frozenset(classes), complement)
        if key not in self._cache:
            chosen = key[0]
            edges = [
                e for e, c in enumerate(self.r.class_of) if (c in chosen) != complement
            ]
            self._cache[key] = _comp_sets(self.g, edges)
        return self._cache[key]


def _sorted(s) -> list[int]:
    return sorted(s)


# ---------------------------------------------------------- single checks


def check_incidence(g: Graph, r: EdgeRelation, status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """Every vertex is incident to an edge of every class."""
    _certified(g, r, status, require_usp)
    for u in range(g.n):
        present = {r.class_of[e] for e in g.incident[u]}
        for phi in range(r.k):
            if phi not in present:
                return _verdict("lem.incidence", {"vertex": u, "class": phi})
    return _verdict("lem.incidence", None)


def check_degree_bijection(g: Graph, r: EdgeRelation, status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """Ends of a phi-edge have equal psi-degree for every psi != phi."""
    _certified(g, r, status, require_usp)
    deg = [[0] * r.k for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        deg[u][r.class_of[e]] += 1
        deg[v][r.class_of[e]] += 1
    for e, (u, v) in enumerate(g.edges):
        phi = r.class_of[e]
        for psi in range(r.k):
            if psi != phi and deg[u][psi] != deg[v][psi]:
                return _verdict(
                    "lem.bijection",
                    {"edge": [u, v], "class": phi, "psi": psi, "degrees": [deg[u][psi], deg[v][psi]]},
                )
    return _verdict("lem.bijection", None)


def _neighbor_count_violation(g: Graph, r: EdgeRelation) -> dict | None:
    for phi in range(r.k):
        comp = component_labels(g, r.classes[phi])
        ncomp = max(comp) + 1
        for psi in range(r.k):
            if psi == phi:
                continue
            counts = [[0] * ncomp for _ in range(g.n)]
            for e in r.classes[psi]:
                u, v = g.edges[e]
                counts[u][comp[v]] += 1
                counts[v][comp[u]] += 1
            first: dict[int, int] = {}
            for x in range(g.n):
                rep = first.setdefault(comp[x], x)
                if counts[x] != counts[rep]:
                    w = next(i for i in range(ncomp) if counts[x][i] != counts[rep][i])
                    wrep = comp.index(w)
                    return {
                        "phi": phi, "psi": psi, "v": rep, "w": wrep, "x": x,
                        "counts": [counts[rep][w], counts[x][w]],
                    }
    return None


def check_neighbor_counts(g: Graph, r: EdgeRelation, status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """``|N_psi(x) & V(G_phi^w)|`` is constant over each component ``G_phi^v``."""
    _certified(g, r, status, require_usp)
    return _verdict("lem.neighbors", _neighbor_count_violation(g, r))


def check_nonempty_intersection(g: Graph, r2: EdgeRelation, status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """For a two-class relation every phi-component meets every phibar-component."""
    if r2.k != 2:
        raise NotTwoClasses(f"relation has {r2.k} classes")
    _certified(g, r2, status, require_usp)
    a = component_labels(g, r2.classes[0])
    b = component_labels(g, r2.classes[1])
    pairs = {(a[v], b[v]) for v in range(g.n)}
    for i in range(max(a) + 1):
        for j in range(max(b) + 1):
            if (i, j) not in pairs:
                return _verdict("lem.nonempty_intersect", {"x": a.index(i), "y": b.index(j)})
    return _verdict("lem.nonempty_intersect", None)


def check_monotonicity(g: Graph, q: EdgeRelation, r: EdgeRelation) -> Verdict:
    """For ``q`` finer than ``r``: ``V_r(x)`` is contained in ``V_q(x)``."""
    if not is_finer(q, r):
        raise NotFiner("first relation is not finer than the second")
    pq, pr = common_refinement(g, q), common_refinement(g, r)
    for x in range(g.n):
        if not set(pr.block(x)) <= set(pq.block(x)):
            return _verdict(
                "lem.monotonicity",
                {"x": x, "V_R": list(pr.block(x)), "V_Q": list(pq.block(x))},
            )
    return _verdict("lem.monotonicity", None)


def _union_components_violation(sets: _Sets, g: Graph, phi: int, psi: int) -> dict | None:
    cphi, cpsi, cboth = sets.of([phi]), sets.of([psi]), sets.of([phi, psi])
    for x in range(g.n):
        via_phi = frozenset().union(*(cpsi[y] for y in cphi[x]))
        via_psi = frozenset().union(*(cphi[y] for y in cpsi[x]))
        if not cboth[x] == via_phi == via_psi:
            return {
                "phi": phi, "psi": psi, "x": x, "component": _sorted(cboth[x]),
                "union_over_phi": _sorted(via_phi), "union_over_psi": _sorted(via_psi),
            }
    return None


def check_union_components(g: Graph, r: EdgeRelation, phi: int, psi: int,
                           status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """``V(G_(phi+psi)^x)`` is the union of ``V(G_psi^y)`` over ``y`` in
    ``V(G_phi^x)``, and symmetrically."""
    _check_class(r, phi, psi)
    _certified(g, r, status, require_usp)
    return _verdict("prop.components", _union_components_violation(_Sets(g, r), g, phi, psi))


def _intersection_violation(sets: _Sets, g: Graph, phi: int, psi: int) -> dict | None:
    cphi = sets.of([phi])
    cphibar = sets.of([phi], complement=True)
    cpsibar = sets.of([psi], complement=True)
    cjoinbar = sets.of([phi, psi], complement=True)
    for x in range(g.n):
        lhs = (cphibar[x] & cpsibar[x]) == cjoinbar[x]
        rhs = (cphi[x] & cphibar[x]) <= cjoinbar[x]
        if lhs != rhs:
            return {"phi": phi, "psi": psi, "x": x, "equality": lhs, "inclusion": rhs}
    return None


def check_intersection_criterion(g: Graph, r: EdgeRelation, phi: int, psi: int,
                                 status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """``V(G_phibar^x) & V(G_psibar^x) = V(G_(phi+psi)bar^x)`` iff
    ``V(G_phi^x) & V(G_phibar^x)`` lies inside ``V(G_(phi+psi)bar^x)``."""
    _check_class(r, phi, psi)
    _certified(g, r, status, require_usp)
    return _verdict("prop.intersection", _intersection_violation(_Sets(g, r), g, phi, psi))


def _subset_violation(sets: _Sets, g: Graph, phi: int, psi: int) -> dict | None:
    cphi, cpsi = sets.of([phi]), sets.of([psi])
    cphibar = sets.of([phi], complement=True)
    cjoinbar = sets.of([phi, psi], complement=True)
    everything = frozenset(range(g.n))
    for x in range(g.n):
        if cphi[x] <= cpsi[x]:
            for y in sorted(cpsi[x]):
                if not cphi[y] <= cpsi[x]:
                    return {"clause": 1, "phi": phi, "psi": psi, "x": x, "y": y}
        if cphi[x] <= cphibar[x] and cphibar[x] != everything:
            return {"clause": 2, "phi": phi, "psi": psi, "x": x}
        if cphibar[x] == everything:
            for y in range(g.n):
                a = (cphi[y] & cphibar[y]) <= cjoinbar[y]
                b = cphi[y] <= cjoinbar[y]
                if a != b:
                    return {"clause": 3, "phi": phi, "psi": psi, "x": x, "y": y}
    return None


def check_subset_props(g: Graph, r: EdgeRelation, phi: int, psi: int,
                       status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """The three subset clauses; a clause with a false hypothesis holds vacuously."""
    _check_class(r, phi, psi)
    _certified(g, r, status, require_usp)
    return _verdict("prop.subsets", _subset_violation(_Sets(g, r), g, phi, psi))


def belongs_to_factor(g: Graph, r: EdgeRelation, classes, witness: EdgeRelation | None = None) -> bool:
    """Whether the union of ``classes`` is the edge set of a factor of ``g``.

    The whole edge set is the trivial factor.  Otherwise the two-class
    relation ``{chi, E - chi}`` must pass the product test; it inherits USP
    certification from ``witness`` (a finer (S1) relation) when given.
    """
    chosen = set(classes)
    if len(chosen) == r.k:
        return True
    pair = split_off(r, chosen)
    status = certify_usp(g, pair, witness=witness)
    return bool(is_product_relation_pair(g, pair, status=status))


def _join_violation(g: Graph, r: EdgeRelation, phi: int, psi: int, q: EdgeRelation | None) -> tuple[str, dict | None]:
    s = merge_classes(r, [phi, psi])
    s_status = certify_usp(g, s, witness=q)
    if not s_status.certified:
        return SKIPPED, None
    pr, ps = common_refinement(g, r), common_refinement(g, s)
    same = pr == ps
    phi_f = belongs_to_factor(g, r, [phi], q)
    psi_f = belongs_to_factor(g, r, [psi], q)
    base = {"phi": phi, "psi": psi, "P_R_equals_P_S": same}
    if (phi_f or psi_f) and not same:
        return FAIL, {**base, "clause": 1, "phi_factor": phi_f, "psi_factor": psi_f}
    sets = _Sets(g, r)
    cphi, cphibar = sets.of([phi]), sets.of([phi], complement=True)
    cjoinbar = sets.of([phi, psi], complement=True)
    if any(cphi[x] <= cphibar[x] for x in range(g.n)):
        cond = all(cphi[y] <= cjoinbar[y] for y in range(g.n))
        if same != cond:
            return FAIL, {**base, "clause": 2, "condition": cond}
    if same:
        join_f = belongs_to_factor(g, r, [phi, psi], q)
        if join_f != (phi_f and psi_f):
            return FAIL, {**base, "clause": 3, "join_factor": join_f,
                          "phi_factor": phi_f, "psi_factor": psi_f}
    return PASS, None


def check_join_corollary(g: Graph, r: EdgeRelation, phi: int, psi: int,
                         status: UspStatus | None = None, require_usp: bool = True) -> Verdict:
    """Clauses (1)-(3) on joining ``phi`` and ``psi``; skipped when the join
    cannot be certified."""
    _check_class(r, phi, psi)
    status = _certified(g, r, status, require_usp)
    q = status.s1_relation(r) if status is not None and status.certified else None
    outcome, witness = _join_violation(g, r, phi, psi, q)
    if outcome == SKIPPED:
        return _skip("cor.join", "joined relation not certified")
    return Verdict("cor.join", ANCHORS["cor.join"], outcome, witness, FACTOR_READING)


# -------------------------------------------------- checks used by run_all


def _obs_squares(g: Graph, r: EdgeRelation) -> dict | None:
    cls = r.class_of
    for (e, f), found in g.spanned.items():
        if cls[e] == cls[f]:
            continue
        if not any(cls[oe] == cls[e] and cls[of] == cls[f] for oe, of in found):
            return {"e": list(g.edges[e]), "f": list(g.edges[f])}
    return None


def _subgraph_violation(g: Graph, r: EdgeRelation, q: EdgeRelation) -> dict | None:
    seen = set()
    for chi in range(q.k):
        for e in q.classes[chi]:
            v, w = g.edges[e]
            for phi in range(r.k):
                if any(r.class_of[f] == phi for f in q.classes[chi]):
                    continue
                comp = _comp_sets(g, r.classes[phi])
                verts = comp[v] | comp[w]
                key = (chi, phi, verts)
                if key in seen:
                    continue
                seen.add(key)
                keep = [
                    f for f in range(g.m)
                    if (r.class_of[f] == phi or q.class_of[f] == chi)
                    and g.edges[f][0] in verts and g.edges[f][1] in verts
                ]
                h = induced_subgraph(g, verts, keep)
                back = sorted(verts)
                labels = [q.class_of[g.edge_id(back[a], back[b])] for a, b in h.edges]
                qh = EdgeRelation(h, tuple(labels))
                bad = first_S1_violation(h, qh)
                if bad is not None:
                    return {
                        "chi": chi, "phi": phi, "edge": [v, w], "vertices": sorted(verts),
                        "e": [back[t] for t in bad.e], "f": [back[t] for t in bad.f],
                        "kind": bad.kind,
                    }
    return None


def _neighborhood_cut_violation(g: Graph, r: EdgeRelation) -> dict | None:
    p = common_refinement(g, r)
    for phi in range(r.k):
        nphi = [neighbor_set_in_class(g, r, x, phi) for x in range(g.n)]
        cbar = complement_partition(g, r, phi)
        for x in range(g.n):
            for b, block in enumerate(p.blocks):
                vry = frozenset(block)
                hit = nphi[x] & vry
                if bool(hit) != all(nphi[u] & vry for u in p.block(x)):
                    return {"part": 1, "class": phi, "x": x, "y": block[0]}
                if hit and hit != nphi[x] & frozenset(cbar.block(block[0])):
                    return {"part": 2, "class": phi, "x": x, "y": block[0]}
    return None


def _equitable_class_violation(g: Graph, r: EdgeRelation) -> dict | None:
    for phi in range(r.k):
        bad = equitability_violation(g, complement_partition(g, r, phi), r.classes[phi])
        if bad is not None:
            return {"class": phi, "block_a": bad.a, "block_b": bad.b, "x": bad.x, "x2": bad.x2}
    return None


def _simple_quotient_violation(g: Graph, r: EdgeRelation) -> dict | None:
    for phi in range(r.k):
        p = complement_partition(g, r, phi)
        a = underlying_simple(quotient_graph(g, p, r.classes[phi]))
        b = underlying_simple(quotient_graph(g, p))
        if a.edges != b.edges:
            return {"class": phi, "edges_class": [list(e) for e in a.edges],
                    "edges_all": [list(e) for e in b.edges]}
    return None


def _product_relation_violation(g: Graph, r: EdgeRelation, q: EdgeRelation) -> dict | None:
    """For each class whose split passes the intersection test, the explicit
    product isomorphism must verify (checked inside the product test)."""
    if r.k < 2:
        return None
    for phi in range(r.k):
        pair = split_off(r, [phi])
        status = certify_usp(g, pair, witness=q)
        try:
            is_product_relation_pair(g, pair, status=status)
        except USPGraphError as exc:
            return {"class": phi, "error": repr(exc)}
    return None


def _nonempty_intersection_violation(g: Graph, r: EdgeRelation, q: EdgeRelation) -> dict | None:
    for phi in range(r.k):
        pair = split_off(r, [phi])
        status = certify_usp(g, pair, witness=q)
        v = check_nonempty_intersection(g, pair, status=status)
        if v.failed:
            return {"class": phi, **v.witness}
    return None


# -------------------------------------------------------------- run_all


@dataclass
class Report:
    instance: str
    usp_status: str
    verdicts: list[Verdict]
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def verdict(self, statement: str) -> Verdict:
        for v in self.verdicts:
            if v.statement == statement:
                return v
        raise KeyError(statement)

    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def to_text(self) -> str:
        lines = [f"instance: {self.instance}", f"usp: {self.usp_status}"]
        for key in sorted(self.metadata):
            lines.append(f"{key}: {self.metadata[key]}")
        for v in self.verdicts:
            line = f"{v.outcome.upper():8} {v.statement:24} {v.anchor}"
            if v.witness is not None:
                line += "  witness=" + json.dumps(v.witness, sort_keys=True)
            if v.outcome == SKIPPED and v.note:
                line += f"  ({v.note})"
            lines.append(line)
        counts = {o: sum(v.outcome == o for v in self.verdicts) for o in (PASS, FAIL, SKIPPED, INFO)}
        lines.append(
            "summary: " + ", ".join(f"{counts[o]} {o}" for o in (PASS, FAIL, SKIPPED, INFO))
        )
        return "\n".join(lines) + "\n"

    def to_jsonl(self) -> str:
        head = {"instance": self.instance, "usp": self.usp_status, "metadata": self.metadata}
        out = [json.dumps(head, sort_keys=True)]
        for v in self.verdicts:
            out.append(json.dumps(
                {"id": v.statement, "verdict": v.outcome, "witness": v.witness, "note": v.note},
                sort_keys=True,
            ))
        return "\n".join(out) + "\n"


def _guard(sid: str, fn: Callable[[], dict | None]) -> Verdict:
    try:
        return _verdict(sid, fn())
    except PreconditionNotMet as exc:
        return _skip(sid, str(exc))
    except USPGraphError as exc:
        return _verdict(sid, {"error": repr(exc)})


def _pair_check(sid, g, r, fn) -> Verdict:
    if r.k < 2:
        return _skip(sid, "needs at least two classes")
    sets = _Sets(g, r)
    for phi, psi in itertools.permutations(range(r.k), 2):
        bad = fn(sets, g, phi, psi)
        if bad is not None:
            return _verdict(sid, bad)
    return _verdict(sid, None)


def _monotonicity_all(g: Graph, r: EdgeRelation, q: EdgeRelation) -> dict | None:
    pairs = []
    if q != r:
        pairs.append((q, r))
    d = compute_delta(g)
    if is_finer(d, r) and d != r:
        pairs.append((d, r))
    for phi, psi in itertools.combinations(range(r.k), 2):
        pairs.append((r, merge_classes(r, [phi, psi])))
    for fine, coarse in pairs:
        v = check_monotonicity(g, fine, coarse)
        if v.failed:
            return v.witness
    return None


def run_all(
    g: Graph,
    r: EdgeRelation,
    witness: EdgeRelation | None = None,
    name: str = "instance",
    seed: int | None = None,
    budget: int | None = None,
) -> Report:
    """Evaluate every registered statement on ``(g, r)``.

    Statements whose hypothesis needs a USP-relation are skipped when ``r``
    cannot be certified.  Order of verdicts is fixed.
    """
    kwargs = {} if budget is None else {"budget": budget}
    status = certify_usp(g, r, witness, **kwargs)
    verdicts: list[Verdict] = []

    s1 = first_S1_violation(g, r)
    s2 = first_S2_violation(g, r)
    verdicts.append(Verdict("def.S1", ANCHORS["def.S1"], INFO,
                            None if s1 is None else {"e": list(s1.e), "f": list(s1.f), "kind": s1.kind}))
    verdicts.append(Verdict("def.S2", ANCHORS["def.S2"], INFO,
                            None if s2 is None else {"square": list(s2)}))
    direct = satisfies_S1(g, r) and satisfies_S2(g, r)
    verdicts.append(_verdict(
        "prop.square_property",
        None if direct == contains_delta(g, r) else {"S1_and_S2": direct},
    ))

    certified = status.certified
    q = status.s1_relation(r) if certified else None
    theorem_checks: list[tuple[str, Callable[[], dict | None]]] = [
        ("obs.squares", lambda: _obs_squares(g, r)),
        ("lem.incidence", lambda: check_incidence(g, r, status).witness),
        ("lem.bijection", lambda: check_degree_bijection(g, r, status).witness),
        ("lem.nonempty_intersect", lambda: _nonempty_intersection_violation(g, r, q)),
        ("lem.subgraph", lambda: _subgraph_violation(g, r, q)),
        ("lem.monotonicity", lambda: _monotonicity_all(g, r, q)),
        ("lem.neighbors", lambda: _neighbor_count_violation(g, r)),
        ("cor.equitable_class", lambda: _equitable_class_violation(g, r)),
        ("note.simple_quotient", lambda: _simple_quotient_violation(g, r)),
        ("lem.neighborhood_cut", lambda: _neighborhood_cut_violation(g, r)),
        ("thm.equitable", lambda: _equitable_violation(g, r)),
        ("thm.product", lambda: _product_violation(g, r, status)),
        ("cor.loopless", lambda: _loopless_violation(g, r, status)),
        ("cor.weighted", lambda: _weighted_violation(g, r, status)),
        ("thm.product_relation", lambda: _product_relation_violation(g, r, q)),
    ]
    for sid, fn in theorem_checks:
        if not certified:
            verdicts.append(_skip(sid, f"relation not certified ({status})"))
        elif sid == "lem.nonempty_intersect" and r.k < 2:
            verdicts.append(_skip(sid, "needs at least two classes"))
        else:
            verdicts.append(_guard(sid, fn))

    pair_checks = [
        ("prop.components", _union_components_violation),
        ("prop.intersection", _intersection_violation),
        ("prop.subsets", _subset_violation),
    ]
    for sid, fn in pair_checks:
        if not certified:
            verdicts.append(_skip(sid, f"relation not certified ({status})"))
        else:
            verdicts.append(_pair_check(sid, g, r, fn))
    if not certified:
        verdicts.append(_skip("cor.join", f"relation not certified ({status})"))
    elif r.k < 2:
        verdicts.append(_skip("cor.join", "needs at least two classes"))
    else:
        join = _verdict("cor.join", None, FACTOR_READING)
        for phi, psi in itertools.permutations(range(r.k), 2):
            outcome, wit = _join_violation(g, r, phi, psi, q)
            if outcome == FAIL:
                join = Verdict("cor.join", ANCHORS["cor.join"], FAIL, wit, FACTOR_READING)
                break
        verdicts.append(join)

    metadata: dict[str, Any] = {"classes": r.k, "vertices": g.n, "edges": g.m,
                                "factor_reading": FACTOR_READING}
    if seed is not None:
        metadata["seed"] = seed
    report = Report(name, str(status), verdicts, metadata)
    if certified and report.failures:
        report.metadata["bug"] = (
            "certified USP-relation failed a proven statement: implementation bug"
        )
    return report


def _equitable_violation(g: Graph, r: EdgeRelation) -> dict | None:
    bad = equitability_violation(g, common_refinement(g, r))
    if bad is None:
        return None
    return {"block_a": bad.a, "block_b": bad.b, "x": bad.x, "x2": bad.x2}


def _product_violation(g, r, status) -> dict | None:
    verify_quotient_decomposition(g, r, status)
    return None


def _loopless_violation(g, r, status) -> dict | None:
    if not verify_loopless_decomposition(g, r, status):
        return {"loopless_product": False}
    return None


def _weighted_violation(g, r, status) -> dict | None:
    bad = weighted_decomposition_mismatch(g, r, status)
    if bad is None:
        return None
    i, j, wq, wp = bad
    return {"arc": [i, j], "quotient_weight": wq, "product_weight": wp}


STATEMENTS = tuple(ANCHORS)
