"""``epg-lab`` command line.

Exit codes: 0 success, 1 a check failed, 2 bad input or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .builder import build_bundle, commuting_graph, enhanced_power_graph
from .cliques import (abelian_invariants_from_graph, clique_family,
                      count_order_elements_by_classes,
                      count_order_elements_by_inclusion_exclusion)
from .errors import EpgLabError, MarkingStuck, NotNilpotent
from .graph import DiGraph, SimpleGraph, find_induced_odd_hole_or_antihole, load_graph, to_dot
from .group import (FiniteGroup, abelian, cyclic, dihedral, direct_product, generalized_quaternion,
                    heisenberg27, klein, load_groups, m16)
from .iso import ISO_CAP, are_isomorphic, automorphism_summary, digraph_isomorphic
from .perfect import (omega_epg, pentagon_witness, perfect_verdict_nilpotent,
                      weakly_perfect_coloring)
from .recognition import check_conditions, nilpotency_from_graph, p_component, recognize_abelian_epg
from .semitree import build_p_semitree, is_p_semitree
from .verify import CHECKS, run_verify

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def _emit(args, payload, text: str | None = None):
    if args.format == "text" and text is not None:
        out = text if text.endswith("\n") else text + "\n"
    elif isinstance(payload, str):
        out = payload
    else:
        bulky = any(k in payload for k in ("table", "edges", "arcs", "colors"))
        out = json.dumps(payload, indent=None if bulky else 2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _load_one_group(path) -> FiniteGroup:
    groups = load_groups(path)
    if len(groups) != 1:
        raise InputError(f"{path} holds {len(groups)} groups; expected one")
    return groups[0]


def _load_simple(path) -> SimpleGraph:
    g = load_graph(path)
    if isinstance(g, DiGraph):
        raise InputError(f"{path} is a directed graph; an undirected one is needed")
    return g


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# group / graph

def cmd_group_build(args):
    kind, params = args.kind, _ints(args.params) if args.params else []

    def one():
        if len(params) != 1:
            raise InputError(f"--kind {kind} takes exactly one parameter")
        return params[0]

    if kind == "cyclic":
        G = cyclic(one())
    elif kind == "abelian":
        G = abelian(params)
    elif kind == "dihedral":
        G = dihedral(one())
    elif kind == "quaternion":
        G = generalized_quaternion(one())
    elif kind == "klein":
        G = klein()
    elif kind == "m16":
        G = m16()
    elif kind == "heisenberg27":
        G = heisenberg27()
    else:                                   # product
        if len(args.inputs or []) < 2:
            raise InputError("--kind product needs at least two --inputs files")
        parts = [_load_one_group(p) for p in args.inputs]
        G = parts[0]
        for H in parts[1:]:
            G = direct_product(G, H, size_cap=args.cap)
    _emit(args, G.to_json(), f"{G.name}: order {G.n}, exponent {G.exponent}")
    return OK


def cmd_graph_emit(args):
    G = _load_one_group(args.group)
    if args.kind == "commuting":
        g = commuting_graph(G)
    else:
        b = build_bundle(G)
        g = {"epg": b.enhanced, "pg": b.power, "dpg": b.directed_power}[args.kind]
    labels = None
    if args.labels == "orders":
        labels = {v: f"{v}:o{G.orders[v]}" for v in range(G.n)}
    if args.format == "dot":
        _emit(args, to_dot(g, labels, name=f"{args.kind}_{G.name}"))
    else:
        _emit(args, g.to_json(), f"{args.kind} of {G.name}: {g.n} vertices")
    return OK


# ---------------------------------------------------------------------------
# analyze

def cmd_analyze_orders(args):
    g = _load_simple(args.graph)
    family = clique_family(g)
    a = count_order_elements_by_classes(family, args.m)
    b = count_order_elements_by_inclusion_exclusion(family, args.m)
    _emit(args, {"m": args.m, "count_by_classes": a, "count_by_inclusion_exclusion": b},
          f"elements of order {args.m}: {a} (classes), {b} (inclusion-exclusion)")
    return OK if a == b else FAILED


def cmd_analyze_invariants(args):
    g = _load_simple(args.graph)
    inv = abelian_invariants_from_graph(g)
    factors = [f"C{p ** e}" for p, es in inv.items() for e in es]
    _emit(args, {"invariants": {str(p): es for p, es in inv.items()}, "factors": factors},
          "x".join(factors) or "trivial")
    return OK


# ---------------------------------------------------------------------------
# semitree

def cmd_semitree_build(args):
    s = build_p_semitree(args.p, _ints(args.tuple), cap=args.cap)
    if args.format == "dot":
        _emit(args, to_dot(s.graph, name=f"S{args.p}"))
    else:
        _emit(args, s.graph.to_json(), f"S_{args.p}({args.tuple}): {s.graph.n} vertices")
    return OK


def cmd_semitree_recognize(args):
    t = is_p_semitree(_load_simple(args.graph), args.p)
    payload = {"semitree": t is not None, "p": args.p, "tuple": list(t.a) if t else None}
    _emit(args, payload, f"S_{args.p}{t.a}" if t else "not a p-semitree")
    return OK


# ---------------------------------------------------------------------------
# recognize

def cmd_recognize_conditions(args):
    r = check_conditions(_load_simple(args.graph))
    lines = [f"{k}: {'ok' if v['holds'] else 'FAILS'}" for k, v in r.to_json().items()]
    _emit(args, r.to_json(), "\n".join(lines))
    return OK if r.all_hold else FAILED


def cmd_recognize_pcomponent(args):
    g = _load_simple(args.graph)
    try:
        comp = p_component(g, args.p)
    except MarkingStuck as exc:
        print(f"marking failed: {exc}", file=sys.stderr)
        return FAILED
    payload = comp.graph.to_json()
    payload["vertices"] = list(comp.vertices)
    _emit(args, payload, f"{len(comp.vertices)} marked vertices: {list(comp.vertices)}")
    return OK


def cmd_recognize_nilpotent(args):
    r = nilpotency_from_graph(_load_simple(args.graph))
    _emit(args, r.to_json(), "nilpotent" if r.nilpotent else "not nilpotent")
    return OK


def cmd_recognize_abelian(args):
    r = recognize_abelian_epg(_load_simple(args.graph), cap=args.cap)
    payload = {"abelian_epg": r is not None,
               "tuples": {str(p): list(t.a) for p, t in r.items()} if r is not None else None}
    _emit(args, payload, "not recognised" if r is None else
          " x ".join(f"S_{p}{t.a}" for p, t in r.items()) or "trivial")
    return OK


# ---------------------------------------------------------------------------
# perfect

def cmd_perfect_check(args):
    G = _load_one_group(args.group)
    payload = {"group": G.name, "omega": omega_epg(G)}
    try:
        v = perfect_verdict_nilpotent(G)
        payload.update(nilpotent=True, perfect=v.perfect, non_cyclic_sylow=v.non_cyclic_sylow)
    except NotNilpotent:
        payload.update(nilpotent=False, perfect=None)
    pent = pentagon_witness(G)
    payload["pentagon"] = list(pent) if pent else None
    if args.hole_bound and G.n <= 200:
        hole = find_induced_odd_hole_or_antihole(enhanced_power_graph(G), args.hole_bound)
        payload["hole"] = None if hole is None else {
            "vertices": list(hole.vertices), "in_complement": hole.in_complement}
    verdict = {True: "perfect", False: "not perfect", None: "no verdict (not nilpotent)"}
    _emit(args, payload, f"{G.name}: {verdict[payload['perfect']]}")
    return OK


def cmd_perfect_color(args):
    G = _load_one_group(args.group)
    col = weakly_perfect_coloring(G)
    _emit(args, col.to_json(), f"{G.name}: proper colouring with {col.num_colors} colours")
    return OK


# ---------------------------------------------------------------------------
# iso

def cmd_iso_compare(args):
    a, b = load_graph(args.a), load_graph(args.b)
    if args.directed:
        if not (isinstance(a, DiGraph) and isinstance(b, DiGraph)):
            raise InputError("--directed needs two directed graphs")
        cert = digraph_isomorphic(a, b, cap=args.cap)
    else:
        if isinstance(a, DiGraph) or isinstance(b, DiGraph):
            raise InputError("directed input; pass --directed")
        cert = are_isomorphic(a, b, cap=args.cap)
    payload = {"isomorphic": bool(cert),
               "mapping": list(cert.mapping) if cert else None,
               "reason": cert.reason or None}
    _emit(args, payload, "isomorphic" if cert else f"not isomorphic: {cert.reason}")
    return OK


def cmd_iso_aut(args):
    g = load_graph(args.graph)
    s = automorphism_summary(g, cap=args.cap)
    _emit(args, s.to_json(), f"|Aut| = {s.order} ({'abelian' if s.abelian else 'non-abelian'})")
    return OK


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args):
    if args.max_order > args.cap:
        raise InputError(f"--max-order {args.max_order} exceeds --cap {args.cap}")
    checks = [c for c in args.checks.split(",") if c] if args.checks else None
    report = run_verify(args.max_order, checks, args.seed)
    lines = [f"{cid}: {s['passed']}/{s['total']} passed" for cid, s in report.summary().items()]
    lines += [f"FAIL {r.check_id} {r.subject}: {r.details}" for r in report.records if not r.passed]
    _emit(args, report.to_json(), "\n".join(lines))
    return OK if report.passed else FAILED


# ---------------------------------------------------------------------------
# parser

def _globals(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomised orderings")
    p.add_argument("--cap", type=int, default=d(None), help="size cap for searches")
    p.add_argument("--out", default=d(None), help="write output to this file")
    p.add_argument("--format", choices=["json", "text", "dot"], default=d("json"))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epg-lab", parents=[_globals(True)],
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"epg-lab {__version__}")
    common = _globals(False)
    top = parser.add_subparsers(dest="command", required=True)

    def leaf(sub, name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    group = top.add_parser("group", help="build groups").add_subparsers(dest="sub", required=True)
    p = leaf(group, "build", cmd_group_build, "build a group and write its Cayley table")
    p.add_argument("--kind", required=True, choices=["cyclic", "abelian", "dihedral", "quaternion",
                                                     "klein", "m16", "heisenberg27", "product"])
    p.add_argument("--params", help="comma-separated integers, e.g. 4,2")
    p.add_argument("--inputs", nargs="+", help="group files for --kind product")

    graph = top.add_parser("graph", help="emit graphs").add_subparsers(dest="sub", required=True)
    p = leaf(graph, "emit", cmd_graph_emit, "emit one of the graphs of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--kind", choices=["epg", "pg", "dpg", "commuting"], default="epg")
    p.add_argument("--labels", choices=["orders", "ids"], default="ids")

    analyze = top.add_parser("analyze", help="clique analytics").add_subparsers(dest="sub", required=True)
    p = leaf(analyze, "orders", cmd_analyze_orders, "count elements of order m from the graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p = leaf(analyze, "abelian-invariants", cmd_analyze_invariants, "read off abelian invariants")
    p.add_argument("--graph", required=True)

    semi = top.add_parser("semitree", help="p-semitrees").add_subparsers(dest="sub", required=True)
    p = leaf(semi, "build", cmd_semitree_build, "build S_p(a)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--tuple", required=True)
    p = leaf(semi, "recognize", cmd_semitree_recognize, "decide whether a graph is a p-semitree")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=int, required=True)

    rec = top.add_parser("recognize", help="graph-side recognition").add_subparsers(dest="sub", required=True)
    for name, func, help_ in (("conditions", cmd_recognize_conditions, "necessary conditions E1-E5"),
                              ("nilpotent", cmd_recognize_nilpotent, "nilpotency from the graph"),
                              ("abelian", cmd_recognize_abelian, "recognise abelian EPGs")):
        leaf(rec, name, func, help_).add_argument("--graph", required=True)
    p = leaf(rec, "pcomponent", cmd_recognize_pcomponent, "extract a p-component")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=int, required=True)

    perf = top.add_parser("perfect", help="perfectness").add_subparsers(dest="sub", required=True)
    p = leaf(perf, "check", cmd_perfect_check, "perfectness verdict and witnesses")
    p.add_argument("--group", required=True)
    p.add_argument("--hole-bound", type=int, default=0, help="odd bound for a hole search (0: skip)")
    p = leaf(perf, "color", cmd_perfect_color, "colour the EPG with omega colours")
    p.add_argument("--group", required=True)

    iso = top.add_parser("iso", help="isomorphism and automorphisms").add_subparsers(dest="sub", required=True)
    p = leaf(iso, "compare", cmd_iso_compare, "test two graphs for isomorphism")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--directed", action="store_true")
    p = leaf(iso, "aut", cmd_iso_aut, "automorphism group summary")
    p.add_argument("--graph", required=True)

    p = leaf(top, "verify", cmd_verify, "run the catalog verification suite")
    p.add_argument("--max-order", type=int, default=200)
    p.add_argument("--checks", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    return parser


_CAP_DEFAULTS = {"verify": 200, "iso": ISO_CAP}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is None:
        args.cap = _CAP_DEFAULTS.get(args.command, 2000)
        if args.command == "iso" and args.sub == "aut":
            args.cap = 64
    if args.format == "dot" and args.func not in (cmd_graph_emit, cmd_semitree_build):
        parser.error("--format dot applies only to graph emit and semitree build")
    try:
        return args.func(args)
    except (InputError, EpgLabError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"epg-lab: error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
