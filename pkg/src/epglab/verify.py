"""Catalog sweeps that check every graph-side result against group-side truth.

Each ``check_*`` function returns a list of ``CheckRecord``; ``run_verify``
bundles the selected checks into a deterministic ``VerifyReport``.
"""

from __future__ import annotations

import math
import random
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from itertools import combinations, combinations_with_replacement

from . import __version__
from .builder import build_bundle, check_product_law, enhanced_power_graph
from .catalog import CatalogEntry, catalog, partitions
from .cliques import (abelian_invariants_from_graph, clique_family,
                      count_order_elements_by_classes,
                      count_order_elements_by_inclusion_exclusion)
from .errors import EpgLabError
from .graph import (CHROMATIC_CAP, HOLE_SEARCH_CAP, chromatic_number_exact,
                    find_induced_odd_hole_or_antihole, induced_subgraph, is_induced_cycle)
from .group import abelian, direct_product, divisors, factorize, heisenberg27, m16
from .iso import (are_isomorphic, automorphism_summary, compose, digraph_isomorphic,
                  epg_iso_to_directed_iso, is_automorphism, perm_order,
                  power_iso_preserves_enhanced)
from .perfect import coprime_square_pentagon, perfect_verdict_nilpotent, weakly_perfect_coloring
from .recognition import nilpotency_from_graph, p_component
from .semitree import build_p_semitree

SCHEMA = "epg-lab/1"


@dataclass
class CheckRecord:
    check_id: str
    subject: str
    passed: bool
    ref: str
    details: dict = field(default_factory=dict)


@dataclass
class VerifyReport:
    seed: int
    max_order: int
    checks: list[str]
    records: list[CheckRecord]
    schema: str = SCHEMA
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def summary(self) -> dict:
        out: dict[str, dict[str, int]] = {}
        for r in self.records:
            s = out.setdefault(r.check_id, {"total": 0, "passed": 0, "failed": 0})
            s["total"] += 1
            s["passed" if r.passed else "failed"] += 1
        return out

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "version": self.version,
            "seed": self.seed,
            "max_order": self.max_order,
            "checks": self.checks,
            "summary": self.summary(),
            "passed": self.passed,
            "records": [asdict(r) for r in self.records],
        }


def _entries(max_order: int, min_order: int = 1) -> list[CatalogEntry]:
    return catalog(max_order, min_order=min_order)


def _error_record(check_id: str, subject: str, ref: str, exc: Exception) -> CheckRecord:
    return CheckRecord(check_id, subject, False, ref, {"error": f"{type(exc).__name__}: {exc}"})


# ---------------------------------------------------------------------------
# individual checks

def check_counting(max_order: int = 100, seed: int = 0) -> list[CheckRecord]:
    """Both order-counting formulas against the group's own element orders."""
    ref = "count_order_elements_by_classes + count_order_elements_by_inclusion_exclusion"
    records = []
    for e in _entries(max_order):
        G = e.group
        try:
            family = clique_family(enhanced_power_graph(G))
            bad = []
            for m in divisors(G.exponent):
                truth = G.orders.count(m)
                a = count_order_elements_by_classes(family, m)
                b = count_order_elements_by_inclusion_exclusion(family, m)
                if not a == b == truth:
                    bad.append({"m": m, "brute": truth, "classes": a, "inclusion_exclusion": b})
            records.append(CheckRecord("counting", e.name, not bad, ref,
                                       {"mismatches": bad, "divisors": len(divisors(G.exponent))}))
        except EpgLabError as exc:
            records.append(_error_record("counting", e.name, ref, exc))
    return records


def check_abelian_invariants(max_order: int = 128, seed: int = 0) -> list[CheckRecord]:
    ref = "abelian_invariants_from_graph"
    records = []
    for e in _entries(max_order):
        if not e.is_abelian:
            continue
        try:
            got = abelian_invariants_from_graph(enhanced_power_graph(e.group))
            want = {p: list(t) for p, t in e.abelian_type.items()}
            records.append(CheckRecord("abelian-invariants", e.name, got == want, ref,
                                       {"expected": _keys(want), "recovered": _keys(got)}))
        except EpgLabError as exc:
            records.append(_error_record("abelian-invariants", e.name, ref, exc))
    return records


def _keys(d: dict) -> dict:
    return {str(k): v for k, v in d.items()}


def check_semitrees(max_order: int = 256, seed: int = 0, primes=(2, 3, 5)) -> list[CheckRecord]:
    """S_p(a) against the EPG of the abelian p-group of type a, plus two non-abelian twins."""
    ref = "build_p_semitree + are_isomorphic"
    records = []
    for p in primes:
        k = 1
        while p ** k <= max_order:
            for a in partitions(k):
                subject = f"S_{p}{a}"
                try:
                    s = build_p_semitree(p, a).graph
                    G = abelian([p ** x for x in a])
                    cert = are_isomorphic(s, enhanced_power_graph(G))
                    records.append(CheckRecord("semitree", subject, bool(cert), ref,
                                               {"group": G.name, "vertices": s.n,
                                                "reason": cert.reason}))
                except EpgLabError as exc:
                    records.append(_error_record("semitree", subject, ref, exc))
            k += 1
    for build, p, a in ((m16, 2, (3, 1)), (heisenberg27, 3, (1, 1, 1))):
        G = build()
        cert = are_isomorphic(enhanced_power_graph(G), build_p_semitree(p, a).graph)
        records.append(CheckRecord("semitree", f"{G.name}~S_{p}{a}", bool(cert), ref,
                                   {"reason": cert.reason}))
    return records


def check_iso_equivalence(max_order: int = 64, seed: int = 0) -> list[CheckRecord]:
    """EPG, power graph and directed power graph isomorphism verdicts coincide."""
    ref = "are_isomorphic + digraph_isomorphic + epg_iso_to_directed_iso"
    by_order: dict[int, list[CatalogEntry]] = defaultdict(list)
    for e in _entries(max_order):
        by_order[e.order].append(e)
    records = []
    bundles = {}
    for n, group in sorted(by_order.items()):
        for e in group:
            bundles[e.name] = build_bundle(e.group)
        for e1, e2 in combinations(group, 2):
            b1, b2 = bundles[e1.name], bundles[e2.name]
            subject = f"{e1.name}|{e2.name}"
            try:
                epg = are_isomorphic(b1.enhanced, b2.enhanced)
                pg = are_isomorphic(b1.power, b2.power)
                dpg = digraph_isomorphic(b1.directed_power, b2.directed_power)
                verdicts = (bool(epg), bool(pg), bool(dpg))
                details = {"epg": verdicts[0], "pg": verdicts[1], "dpg": verdicts[2]}
                ok = len(set(verdicts)) == 1
                if epg:
                    epg_iso_to_directed_iso(e1.group, e2.group, epg)
                    details["theta"] = "validated"
                records.append(CheckRecord("iso-equivalence", subject, ok, ref, details))
            except EpgLabError as exc:
                records.append(_error_record("iso-equivalence", subject, ref, exc))
    if max_order >= 27:
        a, b = bundles["C3xC3xC3"], bundles["Heis27"]
        ok = bool(are_isomorphic(a.enhanced, b.enhanced)) and bool(are_isomorphic(a.power, b.power)) \
            and bool(digraph_isomorphic(a.directed_power, b.directed_power))
        records.append(CheckRecord("iso-equivalence", "order-27 pair", ok, ref,
                                   {"isomorphic_under_all_three": ok}))
    return records


def check_power_enhanced(max_order: int = 32, seed: int = 0, words: int = 16) -> list[CheckRecord]:
    """Every power-graph automorphism or isomorphism found also preserves the EPG."""
    ref = "power_iso_preserves_enhanced"
    rng = random.Random(seed)
    records = []
    entries = _entries(max_order)
    bundles = {e.name: build_bundle(e.group) for e in entries}
    for e in entries:
        b = bundles[e.name]
        try:
            gens = list(automorphism_summary(b.power).generators)
            perms = list(gens)
            for _ in range(words if gens else 0):
                w = tuple(range(e.order))
                for _ in range(rng.randint(1, 6)):
                    w = compose(rng.choice(gens), w)
                perms.append(w)
            bad = [list(p) for p in perms if not is_automorphism(b.enhanced, p)]
            records.append(CheckRecord("power-enhanced", e.name, not bad, ref,
                                       {"automorphisms_checked": len(perms),
                                        "counterexamples": bad[:3]}))
        except EpgLabError as exc:
            records.append(_error_record("power-enhanced", e.name, ref, exc))
    for e1, e2 in combinations(entries, 2):
        if e1.order != e2.order:
            continue
        cert = are_isomorphic(bundles[e1.name].power, bundles[e2.name].power)
        if cert:
            ok = power_iso_preserves_enhanced(e1.group, e2.group, cert)
            records.append(CheckRecord("power-enhanced", f"{e1.name}|{e2.name}", ok, ref,
                                       {"isomorphism": list(cert.mapping)}))
    return records


def _square_free(n: int) -> bool:
    return all(n % (p * p) for p in range(2, math.isqrt(n) + 1))


def _prime_power(n: int) -> bool:
    return n > 1 and len(factorize(n)) == 1


def check_aut_classification(max_order: int = 16, seed: int = 0) -> list[CheckRecord]:
    """Which small groups have abelian, square-free or prime-power Aut(EPG)."""
    ref = "automorphism_summary"
    found = {"abelian": [], "square_free": [], "prime_power": []}
    records = []
    c4c2 = None
    for e in _entries(max_order, min_order=2):
        s = automorphism_summary(enhanced_power_graph(e.group))
        if s.abelian:
            found["abelian"].append(e.name)
        if _square_free(s.order):
            found["square_free"].append(e.name)
        if _prime_power(s.order):
            found["prime_power"].append(e.name)
        if e.name == "C4xC2":
            c4c2 = s
    expected = {"abelian": ["C2"], "square_free": ["C2", "C3", "Klein"],
                "prime_power": ["C2", "C4xC2"]}
    if max_order < 16:
        expected = {k: [n for n in v if n != "C4xC2" or max_order >= 8] for k, v in expected.items()}
    for key in ("abelian", "square_free", "prime_power"):
        records.append(CheckRecord("aut-classification", key,
                                   sorted(found[key]) == sorted(expected[key]), ref,
                                   {"found": found[key], "expected": expected[key]}))
    if c4c2 is not None:
        gen_orders = [perm_order(g) for g in c4c2.generators]
        ok = c4c2.order == 16 and all(o <= 2 for o in gen_orders)
        records.append(CheckRecord("aut-classification", "Aut(EPG(C4xC2))", ok, ref,
                                   {"order": str(c4c2.order), "generator_orders": gen_orders,
                                    "abelian": c4c2.abelian}))
    return records


def check_p_components(max_order: int = 100, seed: int = 0) -> list[CheckRecord]:
    """Marked p-component, group-side G_p and the Sylow subgroup's EPG agree."""
    ref = "p_component"
    records = []
    for e in _entries(max_order, min_order=2):
        G = e.group
        if not G.is_nilpotent():
            continue
        g = enhanced_power_graph(G)
        family = clique_family(g)
        for p in sorted(factorize(G.n)):
            subject = f"{e.name}@{p}"
            try:
                comp = p_component(g, p, family)
                gp = G.p_elements(p)
                side, _ = induced_subgraph(g, gp)
                sylow = enhanced_power_graph(G.subgroup(gp))
                a = are_isomorphic(comp.graph, side)
                b = are_isomorphic(side, sylow)
                records.append(CheckRecord("p-component", subject, bool(a) and bool(b), ref,
                                           {"marked": len(comp.vertices), "sylow_order": len(gp),
                                            "component~G_p": bool(a), "G_p~sylow": bool(b)}))
            except EpgLabError as exc:
                records.append(_error_record("p-component", subject, ref, exc))
    return records


def check_nilpotency(max_order: int = 200, seed: int = 0) -> list[CheckRecord]:
    ref = "nilpotency_from_graph"
    records = []
    for e in _entries(max_order):
        try:
            r = nilpotency_from_graph(enhanced_power_graph(e.group))
            truth = e.group.is_nilpotent()
            records.append(CheckRecord("nilpotency", e.name, r.nilpotent == truth, ref,
                                       {"graph": r.nilpotent, "group": truth}))
        except EpgLabError as exc:
            records.append(_error_record("nilpotency", e.name, ref, exc))
    return records


def check_pentagon(max_order: int = 0, seed: int = 0) -> list[CheckRecord]:
    """The induced 5-cycle in C2^2 x C3^2 x C5^2, built from the recipe and timed."""
    records = []
    t0 = time.perf_counter()
    ex = coprime_square_pentagon((2, 3, 5))
    g = enhanced_power_graph(ex.group)
    ok = is_induced_cycle(g, ex.vertices)
    elapsed = time.perf_counter() - t0
    records.append(CheckRecord("pentagon", f"pentagon in {ex.group.name}", ok and elapsed < 10,
                               "coprime_square_pentagon + is_induced_cycle",
                               {"vertices": list(ex.vertices), "labels": list(ex.labels),
                                "seconds": round(elapsed, 3)}))
    verdict = perfect_verdict_nilpotent(ex.group)
    records.append(CheckRecord("pentagon", f"verdict {ex.group.name}", not verdict.perfect,
                               "perfect_verdict_nilpotent",
                               {"non_cyclic_sylow": verdict.non_cyclic_sylow}))
    return records


def check_perfectness(max_order: int = HOLE_SEARCH_CAP, seed: int = 0,
                      hole_bound: int = 7) -> list[CheckRecord]:
    """Bounded Berge search on perfect nilpotent EPGs and the exponent colouring."""
    records = []
    for e in _entries(max_order):
        G = e.group
        g = enhanced_power_graph(G)
        if G.is_nilpotent() and G.n <= HOLE_SEARCH_CAP:
            v = perfect_verdict_nilpotent(G)
            if v.perfect:
                hole = find_induced_odd_hole_or_antihole(g, hole_bound)
                records.append(CheckRecord(
                    "perfectness", f"berge {e.name}", hole is None,
                    "find_induced_odd_hole_or_antihole",
                    {"bound": hole_bound, "witness": None if hole is None else list(hole.vertices)}))
        if G.exponent in G.orders:
            try:
                col = weakly_perfect_coloring(G, graph=g)
                details = {"colors": col.num_colors}
                ok = True
                if G.n <= CHROMATIC_CAP:
                    chi = chromatic_number_exact(g)
                    details["chromatic_number"] = chi
                    ok = chi == col.num_colors
                records.append(CheckRecord("perfectness", f"coloring {e.name}", ok,
                                           "weakly_perfect_coloring", details))
            except (EpgLabError, AssertionError) as exc:
                records.append(_error_record("perfectness", f"coloring {e.name}",
                                             "weakly_perfect_coloring", exc))
    return records


def check_product_law_sweep(max_order: int = 144, seed: int = 0) -> list[CheckRecord]:
    """Equal exactly when no prime divides element orders on both sides."""
    ref = "check_product_law"
    entries = _entries(max(1, max_order // 2))
    records = []
    for e1, e2 in combinations_with_replacement(entries, 2):
        if e1.order * e2.order > max_order:
            continue
        G, H = e1.group, e2.group
        subject = f"{G.name}x{H.name}"
        expected = math.gcd(G.exponent, H.exponent) == 1
        try:
            res = check_product_law(G, H)
            details = {"equal": res.equal, "expected": expected}
            ok = res.equal == expected
            if not res.equal:
                ok = ok and res.witness is not None and _witness_ok(G, H, res.witness)
                details["witness"] = list(res.witness) if res.witness else None
            records.append(CheckRecord("product-law", subject, ok, ref, details))
        except EpgLabError as exc:
            records.append(_error_record("product-law", subject, ref, exc))
    return records


def _witness_ok(G, H, witness) -> bool:
    """Re-derive from the factor EPGs that the witness is a strong-product edge
    and from the product's cyclic subgroups that it is not an EPG edge."""
    u, v = witness
    (g1, h1), (g2, h2) = divmod(u, H.n), divmod(v, H.n)
    eg, eh = enhanced_power_graph(G), enhanced_power_graph(H)
    near = (lambda a, b, gr: a == b or gr.has_edge(a, b))
    in_strong = u != v and near(g1, g2, eg) and near(h1, h2, eh)
    P = direct_product(G, H)
    in_epg = any(u in c.member_set and v in c.member_set for c in P.maximal_cyclic_subgroups())
    return in_strong and not in_epg


CHECKS = {
    "counting": check_counting,
    "abelian-invariants": check_abelian_invariants,
    "semitree": check_semitrees,
    "iso-equivalence": check_iso_equivalence,
    "power-enhanced": check_power_enhanced,
    "aut-classification": check_aut_classification,
    "p-component": check_p_components,
    "nilpotency": check_nilpotency,
    "pentagon": check_pentagon,
    "perfectness": check_perfectness,
    "product-law": check_product_law_sweep,
}

DEFAULT_BOUNDS = {
    "counting": 100,
    "abelian-invariants": 128,
    "semitree": 256,
    "iso-equivalence": 64,
    "power-enhanced": 32,
    "aut-classification": 16,
    "p-component": 100,
    "nilpotency": 200,
    "pentagon": 900,
    "perfectness": 200,
    "product-law": 144,
}


def run_verify(max_order: int = 200, checks=None, seed: int = 0) -> VerifyReport:
    """Run the selected checks, each at min(its default bound, max_order)."""
    names = list(CHECKS) if not checks else list(checks)
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    records: list[CheckRecord] = []
    for name in names:
        bound = min(DEFAULT_BOUNDS[name], max_order)
        if name in ("semitree", "pentagon"):
            bound = DEFAULT_BOUNDS[name] if max_order >= 200 else max_order
        records.extend(CHECKS[name](bound, seed))
    return VerifyReport(seed, max_order, names, records)
