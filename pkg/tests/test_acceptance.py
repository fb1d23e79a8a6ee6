"""Acceptance criteria 1-9, each run at its stated bound.

Every criterion runs the library's own sweep and then an independent
cross-check built from the oracles module. A one-line PASS/FAIL summary per
criterion is printed at the end of the session.
"""

import math
import time
from itertools import combinations

import networkx as nx
import pytest

from epglab.builder import check_product_law, enhanced_power_graph
from epglab.catalog import catalog
from epglab.cliques import (abelian_invariants_from_graph, clique_family,
                            count_order_elements_by_classes,
                            count_order_elements_by_inclusion_exclusion)
from epglab.group import abelian, direct_product, factorize, heisenberg27, m16
from epglab.iso import automorphism_summary, perm_order
from epglab.perfect import coprime_square_pentagon, weakly_perfect_coloring
from epglab.recognition import nilpotency_from_graph
from epglab.semitree import build_p_semitree
from epglab.verify import (check_abelian_invariants, check_aut_classification, check_counting,
                           check_iso_equivalence, check_nilpotency, check_p_components,
                           check_pentagon, check_perfectness, check_power_enhanced,
                           check_product_law_sweep, check_semitrees)

from oracles import (arcs_by_definition, brute_chromatic_number, brute_odd_hole_lengths,
                     epg_edges_by_definition, inclusion_exclusion_by_subsets, naive_order,
                     naive_order_counts, naive_powers, nx_automorphism_count, nx_automorphisms,
                     nx_isomorphic, power_edges_by_definition, strong_product_edges, to_nx)


def assert_all_pass(records):
    failed = [(r.subject, r.details) for r in records if not r.passed]
    assert records and not failed, failed[:5]


def table(G):
    return G.table.tolist()


# ---------------------------------------------------------------------------

@pytest.mark.criterion(1, "counting formulas match brute-force order counts (order <= 100, < 60 s)")
def test_counting_formulas_sweep():
    t0 = time.perf_counter()
    records = check_counting(100)
    elapsed = time.perf_counter() - t0
    assert_all_pass(records)
    assert elapsed < 60, elapsed


@pytest.mark.criterion(1, "counting formulas match brute-force order counts (order <= 100, < 60 s)")
def test_counting_formulas_against_naive_orders():
    for e in catalog(40):
        t = table(e.group)
        truth = naive_order_counts(t)
        family = clique_family(enhanced_power_graph(e.group))
        small = len(family.cliques) <= 12
        for m, count in truth.items():
            assert count_order_elements_by_classes(family, m) == count, (e.name, m)
            assert count_order_elements_by_inclusion_exclusion(family, m) == count, (e.name, m)
            if small:
                assert inclusion_exclusion_by_subsets(family.cliques, m) == count, (e.name, m)


# ---------------------------------------------------------------------------

def _invariants_from_orders(t):
    """Partition at each p from |{x : x^(p^k) = 1}| = p^(sum min(a_i, k))."""
    orders = [naive_order(t, x) for x in range(len(t))]
    out = {}
    for p, total in factorize(len(t)).items():
        levels = [sum(1 for o in orders if (p ** k) % o == 0) for k in range(total + 1)]
        logs = [round(math.log(c, p)) for c in levels]
        # number of parts >= k is logs[k] - logs[k-1]
        at_least = [logs[k] - logs[k - 1] for k in range(1, total + 1)]
        parts = [sum(1 for v in at_least if v >= j) for j in range(1, (at_least[0] if at_least else 0) + 1)]
        out[p] = sorted(parts, reverse=True)
    return out


@pytest.mark.criterion(2, "abelian invariants recovered from the EPG (order <= 128)")
def test_abelian_invariants_sweep():
    assert_all_pass(check_abelian_invariants(128))


@pytest.mark.criterion(2, "abelian invariants recovered from the EPG (order <= 128)")
def test_abelian_invariants_against_element_orders():
    for e in catalog(128):
        if e.is_abelian and e.order > 1:
            got = abelian_invariants_from_graph(enhanced_power_graph(e.group))
            assert got == _invariants_from_orders(table(e.group)), e.name


# ---------------------------------------------------------------------------

@pytest.mark.criterion(3, "S_p(a) matches the abelian p-group EPG (p^k <= 256), M16 and Heis27")
def test_semitree_sweep():
    records = check_semitrees(256)
    assert_all_pass(records)
    subjects = {r.subject for r in records}
    assert "S_2(3, 1)" in subjects or any("M16" in s for s in subjects)
    assert any("Heis27" in s for s in subjects)


@pytest.mark.criterion(3, "S_p(a) matches the abelian p-group EPG (p^k <= 256), M16 and Heis27")
def test_semitrees_against_networkx():
    from epglab.catalog import partitions
    for p in (2, 3, 5):
        k = 1
        while p ** k <= 32:
            for a in partitions(k):
                s = build_p_semitree(p, a).graph
                edges = epg_edges_by_definition(table(abelian([p ** x for x in a])))
                h = nx.Graph()
                h.add_nodes_from(range(p ** k))
                h.add_edges_from(edges)
                assert nx.is_isomorphic(to_nx(s), h), (p, a)
            k += 1
    assert nx_isomorphic(enhanced_power_graph(m16()), build_p_semitree(2, (3, 1)).graph)
    assert nx_isomorphic(enhanced_power_graph(heisenberg27()), build_p_semitree(3, (1, 1, 1)).graph)


# ---------------------------------------------------------------------------

@pytest.mark.criterion(4, "EPG, power and directed power isomorphism verdicts coincide (order <= 64)")
def test_iso_equivalence_sweep():
    records = check_iso_equivalence(64)
    assert_all_pass(records)
    pair = next(r for r in records if r.subject == "order-27 pair")
    assert pair.details["isomorphic_under_all_three"]
    assert all(r.details.get("theta") == "validated" for r in records if r.details.get("epg"))


def _nx_digraph(n, arcs):
    d = nx.DiGraph()
    d.add_nodes_from(range(n))
    d.add_edges_from(arcs)
    return d


def _nx_graph(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


@pytest.mark.criterion(4, "EPG, power and directed power isomorphism verdicts coincide (order <= 64)")
def test_iso_equivalence_against_networkx():
    by_order = {}
    for e in catalog(27):
        by_order.setdefault(e.order, []).append(e)
    verdicts = {}
    for group in by_order.values():
        graphs = {}
        for e in group:
            t = table(e.group)
            graphs[e.name] = (_nx_graph(e.order, epg_edges_by_definition(t)),
                              _nx_graph(e.order, power_edges_by_definition(t)),
                              _nx_digraph(e.order, arcs_by_definition(t)))
        for a, b in combinations(group, 2):
            v = tuple(nx.is_isomorphic(x, y) for x, y in zip(graphs[a.name], graphs[b.name]))
            assert len(set(v)) == 1, (a.name, b.name, v)
            verdicts[a.name, b.name] = v[0]
    assert verdicts["C3xC3xC3", "Heis27"]


# ---------------------------------------------------------------------------

@pytest.mark.criterion(5, "power-graph isomorphisms preserve enhanced adjacency (order <= 32)")
def test_power_enhanced_sweep():
    assert_all_pass(check_power_enhanced(32))


@pytest.mark.criterion(5, "power-graph isomorphisms preserve enhanced adjacency (order <= 32)")
def test_every_power_automorphism_preserves_epg_small():
    for e in catalog(10):
        t = table(e.group)
        pg = _nx_graph(e.order, power_edges_by_definition(t))
        epg = epg_edges_by_definition(t)
        matcher = nx.algorithms.isomorphism.GraphMatcher(pg, pg)
        for count, m in enumerate(matcher.isomorphisms_iter()):
            for a, b in epg:
                x, y = m[a], m[b]
                assert (min(x, y), max(x, y)) in epg, e.name
            if count > 5000:
                break


# ---------------------------------------------------------------------------

@pytest.mark.criterion(6, "Aut(EPG) classification over orders 2..16 and Aut(EPG(C4xC2))")
def test_aut_classification_sweep():
    records = check_aut_classification(16)
    assert_all_pass(records)
    c4c2 = next(r for r in records if r.subject == "Aut(EPG(C4xC2))")
    assert c4c2.details["order"] == "16"
    assert all(o <= 2 for o in c4c2.details["generator_orders"])


@pytest.mark.criterion(6, "Aut(EPG) classification over orders 2..16 and Aut(EPG(C4xC2))")
def test_aut_orders_against_networkx():
    for e in catalog(8, min_order=2):
        g = enhanced_power_graph(e.group)
        assert automorphism_summary(g).order == nx_automorphism_count(g), e.name
    auts = list(nx_automorphisms(enhanced_power_graph(abelian([4, 2]))))
    assert len(auts) == 16
    summary = automorphism_summary(enhanced_power_graph(abelian([4, 2])))
    assert all(perm_order(p) <= 2 for p in summary.generators)


# ---------------------------------------------------------------------------

@pytest.mark.criterion(7, "p-components match G_p and the Sylow EPG; graph-side nilpotency (<= 200)")
def test_p_component_sweep():
    assert_all_pass(check_p_components(100))


@pytest.mark.criterion(7, "p-components match G_p and the Sylow EPG; graph-side nilpotency (<= 200)")
def test_nilpotency_sweep():
    assert_all_pass(check_nilpotency(200))


@pytest.mark.criterion(7, "p-components match G_p and the Sylow EPG; graph-side nilpotency (<= 200)")
def test_nilpotency_against_element_counts():
    """A finite group is nilpotent iff each G_p has exactly n_[p] elements."""
    for e in catalog(200):
        t = table(e.group)
        orders = [naive_order(t, x) for x in range(e.order)]
        truth = all(sum(1 for o in orders if p ** k % o == 0) == p ** k
                    for p, k in factorize(e.order).items()) if e.order > 1 else True
        assert nilpotency_from_graph(enhanced_power_graph(e.group)).nilpotent == truth, e.name


# ---------------------------------------------------------------------------

@pytest.mark.criterion(8, "pentagon in C2^2xC3^2xC5^2 (< 10 s), bounded Berge search, omega-colouring")
def test_pentagon_recipe():
    t0 = time.perf_counter()
    ex = coprime_square_pentagon((2, 3, 5))
    g = enhanced_power_graph(ex.group)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    assert_all_pass(check_pentagon())
    t = table(ex.group)
    cyclic_sets = {frozenset(naive_powers(t, z)) for z in range(ex.group.n)}
    v = ex.vertices
    assert len(set(v)) == 5
    for i, j in combinations(range(5), 2):
        together = any(v[i] in c and v[j] in c for c in cyclic_sets)
        assert together == ((j - i) % 5 in (1, 4)), (i, j)
        assert g.has_edge(v[i], v[j]) == together


@pytest.mark.criterion(8, "pentagon in C2^2xC3^2xC5^2 (< 10 s), bounded Berge search, omega-colouring")
def test_perfectness_sweep():
    assert_all_pass(check_perfectness(200, hole_bound=7))


@pytest.mark.criterion(8, "pentagon in C2^2xC3^2xC5^2 (< 10 s), bounded Berge search, omega-colouring")
def test_perfectness_against_brute_force():
    for e in catalog(12):
        G = e.group
        t = table(G)
        edges = epg_edges_by_definition(t)
        if G.is_nilpotent() and G.non_cyclic_sylow_count() <= 2:
            assert not brute_odd_hole_lengths(G.n, edges, 7), e.name
        if G.exponent in G.orders:
            col = weakly_perfect_coloring(G)
            assert all(col.colors[a] != col.colors[b] for a, b in edges)
            if G.n <= 8:
                assert col.num_colors == brute_chromatic_number(G.n, edges), e.name


# ---------------------------------------------------------------------------

@pytest.mark.criterion(9, "strong-product law over catalog pairs with product order <= 144")
def test_product_law_sweep():
    records = check_product_law_sweep(144)
    assert_all_pass(records)
    assert any(not r.details["equal"] for r in records)
    assert any(r.details["equal"] for r in records)


@pytest.mark.criterion(9, "strong-product law over catalog pairs with product order <= 144")
def test_product_law_against_definitions():
    entries = catalog(12)
    for a, b in combinations(entries, 2):
        G, H = a.group, b.group
        if G.n * H.n > 36:
            continue
        P = direct_product(G, H)
        epg = epg_edges_by_definition(table(P))
        strong = strong_product_edges(G.n, epg_edges_by_definition(table(G)),
                                      H.n, epg_edges_by_definition(table(H)))
        equal = epg == strong
        assert equal == (math.gcd(G.exponent, H.exponent) == 1), (a.name, b.name)
        assert check_product_law(G, H).equal == equal
