"""Command line entry point: ``uspgraph <subcommand> <instance file>``.

Exit status is 0 on success, 1 when the analysis finds a failure, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .errors import BudgetExceeded, IsomorphismFailure, NotCertifiedUsp, USPGraphError
from .formats import (
    ParsedInstance,
    block_label,
    export_dot,
    export_quotient_dot,
    graph_name,
    read_instance,
    vertex_tokens,
)
from .generators import random_suite
from .harness import run_all
from .partitions import class_partition, common_refinement, complement_partition, is_equitable
from .products import (
    complement_components_induced,
    prime_factorize_small,
    verify_loopless_decomposition,
    verify_quotient_decomposition,
    weighted_decomposition_mismatch,
)
from .quotients import quotient_graph, weighted_quotient
from .relations import (
    EdgeRelation,
    certify_usp,
    compute_delta,
    delta_pairs,
    first_S1_violation,
    first_S2_violation,
    has_square_property,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _relation(inst: ParsedInstance, out) -> EdgeRelation:
    if inst.relation is not None:
        return inst.relation
    print("note: no edge labels, using delta*", file=sys.stderr)
    return compute_delta(inst.graph)


def _class_name(inst: ParsedInstance, c: int) -> str:
    if inst.relation is not None and c < len(inst.class_labels):
        return inst.class_labels[c]
    return f"c{c}"


def _edge_text(inst: ParsedInstance, e: int) -> str:
    toks = vertex_tokens(inst.graph)
    u, v = inst.graph.edges[e]
    return f"{toks[u]}-{toks[v]}"


def _partition_text(inst: ParsedInstance, p) -> str:
    return " ".join(block_label(inst.graph, b) for b in p.blocks)


def _witness(inst: ParsedInstance, path: str | None) -> EdgeRelation | None:
    if path is None:
        return inst.witness
    other = read_instance(path)
    if other.relation is None:
        raise UsageError(f"witness file {path} has no edge labels")
    if vertex_tokens(other.graph) != vertex_tokens(inst.graph) or other.graph.edges != inst.graph.edges:
        raise UsageError(f"witness file {path} describes a different graph")
    return EdgeRelation(inst.graph, other.relation.class_of)


# ----------------------------------------------------------- subcommands


def cmd_delta(args, inst: ParsedInstance, out) -> int:
    g = inst.graph
    pairs = delta_pairs(g)
    off = sum(1 for e, f in pairs if e < f)
    d = compute_delta(g)
    print(f"delta pairs: {off} (unordered, excluding reflexive)", file=out)
    print(f"delta* classes: {d.k}", file=out)
    for c, edges in enumerate(d.classes):
        print(f"  class {c}: " + " ".join(_edge_text(inst, e) for e in edges), file=out)
    return OK


def cmd_check(args, inst: ParsedInstance, out) -> int:
    g = inst.graph
    r = _relation(inst, out)
    status = certify_usp(g, r, _witness(inst, args.witness), budget=args.budget)
    usp = "yes" if status.certified else ("unknown" if status.kind.value == "Unknown" else "no")
    toks = vertex_tokens(g)
    square = has_square_property(g, r)
    line = f"USP: {usp}; square property: {'yes' if square else 'no'}"
    if not square:
        bad = first_S2_violation(g, r)
        if bad is not None:
            line += " (witness square (" + ",".join(toks[v] for v in bad) + "))"
        else:
            s1 = first_S1_violation(g, r)
            line += f" ((S1) fails at {toks[s1.e[0]]}-{toks[s1.e[1]]}, {toks[s1.f[0]]}-{toks[s1.f[1]]})"
    print(line, file=out)
    print(f"certificate: {status.kind.value}", file=out)
    if status.witness is not None and status.witness != r:
        print(f"witness classes: {status.witness.k}", file=out)
    return OK if status.certified else FAILED


def cmd_partitions(args, inst: ParsedInstance, out) -> int:
    g = inst.graph
    r = _relation(inst, out)
    for c in range(r.k):
        name = _class_name(inst, c)
        print(f"P[{name}]: {_partition_text(inst, class_partition(g, r, c))}", file=out)
        print(f"P[not {name}]: {_partition_text(inst, complement_partition(g, r, c))}", file=out)
    p = common_refinement(g, r)
    print(f"P^R: {_partition_text(inst, p)}", file=out)
    dm = is_equitable(g, p)
    if dm is None:
        print("P^R is not equitable", file=out)
        return FAILED
    print("degree matrix:", file=out)
    for row in dm.rows:
        print("  " + " ".join(str(x) for x in row), file=out)
    return OK


def cmd_quotient(args, inst: ParsedInstance, out) -> int:
    g = inst.graph
    r = _relation(inst, out)
    p = common_refinement(g, r)
    if args.weighted:
        q = weighted_quotient(g, p)
        for i, j, w in q.arcs:
            print(f"{block_label(g, q.labels[i])} -> {block_label(g, q.labels[j])} weight {w}", file=out)
    else:
        q = quotient_graph(g, p)
        for i, j in q.sorted_edges():
            kind = "loop" if i == j else "edge"
            print(f"{kind} {block_label(g, q.labels[i])} {block_label(g, q.labels[j])}", file=out)
    print(f"blocks: {q.n}", file=out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_quotient_dot(q, g, name=f"{inst.name}/P^R"))
    return OK


def cmd_decompose(args, inst: ParsedInstance, out) -> int:
    g = inst.graph
    r = _relation(inst, out)
    try:
        dec = verify_quotient_decomposition(g, r)
    except (IsomorphismFailure, NotCertifiedUsp) as exc:
        print(f"decomposition: FAILED ({exc})", file=out)
        return FAILED
    factors = []
    for c, f in enumerate(dec.factors):
        loops = len(f.loops)
        factors.append(f"{_class_name(inst, c)}[{f.n} blocks, {len(f.edges) - loops} edges, {loops} loops]")
    print("G/P^R = " + " □ ".join(factors) + ": verified", file=out)
    bad = weighted_decomposition_mismatch(g, r)
    print("weighted: " + ("verified" if bad is None else f"FAILED at {bad}"), file=out)
    status = OK if bad is None else FAILED
    if complement_components_induced(g, r) is None:
        ok = verify_loopless_decomposition(g, r)
        print("loopless: " + ("verified" if ok else "FAILED"), file=out)
        status = status if ok else FAILED
    else:
        print("loopless: not applicable (a class edge lies inside a complement component)", file=out)
    return status


def cmd_factor(args, inst: ParsedInstance, out) -> int:
    try:
        res = prime_factorize_small(inst.graph, bound=args.bound)
    except BudgetExceeded as exc:
        print(f"factor: {exc}", file=out)
        return FAILED
    print(" □ ".join(graph_name(f) for f in reversed(res.factors)), file=out)
    return OK


def cmd_dot(args, inst: ParsedInstance, out) -> int:
    r = inst.relation
    if r is None and args.delta:
        r = compute_delta(inst.graph)
    p = common_refinement(inst.graph, r) if (r is not None and args.blocks) else None
    out.write(export_dot(inst.graph, r, p, name=inst.name))
    return OK


def cmd_verify(args, inst: ParsedInstance, out) -> int:
    g = inst.graph
    r = _relation(inst, out)
    report = run_all(g, r, _witness(inst, args.witness), name=inst.name, seed=args.seed, budget=args.budget)
    out.write(report.to_jsonl() if args.format == "jsonl" else report.to_text())
    return report.exit_status()


def cmd_suite(args, out) -> int:
    failed = 0
    instances = random_suite(args.seed, args.count)
    for inst in instances:
        report = run_all(inst.graph, inst.relation, inst.witness, name=inst.name, seed=args.seed)
        if not report.ok:
            failed += 1
            out.write(report.to_text())
    print(f"suite seed {args.seed}: {len(instances)} instances, {failed} with failures", file=out)
    return OK if failed == 0 else FAILED


COMMANDS = {
    "delta": cmd_delta,
    "check": cmd_check,
    "partitions": cmd_partitions,
    "quotient": cmd_quotient,
    "decompose": cmd_decompose,
    "factor": cmd_factor,
    "verify": cmd_verify,
    "dot": cmd_dot,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uspgraph", description="Analyse edge relations with the unique square property.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="instance file")
        return sp

    with_file("delta", "delta pair count and delta* classes")
    sp = with_file("check", "USP certification and square-property verdicts")
    sp.add_argument("--witness", help="instance file whose labels give a finer relation")
    sp.add_argument("--budget", type=int, default=200_000, help="search nodes for certification")
    with_file("partitions", "class, complement and common-refinement vertex partitions")
    sp = with_file("quotient", "quotient by the common-refinement partition")
    sp.add_argument("--weighted", action="store_true", help="print the weighted directed quotient")
    sp.add_argument("--dot", help="also write the quotient as DOT to this path")
    with_file("decompose", "verify the product decomposition of the quotient")
    sp = with_file("factor", "prime factors of a small graph")
    sp.add_argument("--bound", type=int, default=20, help="maximum number of delta* classes")
    sp = with_file("verify", "run every statement check")
    sp.add_argument("--seed", type=int, default=None, help="seed recorded in the report")
    sp.add_argument("--witness", help="instance file whose labels give a finer relation")
    sp.add_argument("--budget", type=int, default=None, help="search nodes for certification")
    sp.add_argument("--format", choices=("text", "jsonl"), default="text")
    sp = with_file("dot", "the instance as DOT, one edge style per class")
    sp.add_argument("--delta", action="store_true", help="style by delta* when the file has no labels")
    sp.add_argument("--blocks", action="store_true", help="cluster vertices by the common-refinement partition")
    sp = sub.add_parser("suite", help="run every check over a random instance suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=500)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        if args.command == "suite":
            return cmd_suite(args, out)
        inst = read_instance(args.file)
        return COMMANDS[args.command](args, inst, out)
    except (IsomorphismFailure, NotCertifiedUsp) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (OSError, UsageError, USPGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
