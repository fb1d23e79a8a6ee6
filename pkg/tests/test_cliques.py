import pytest
from hypothesis import given, settings, strategies as st

from epglab.builder import enhanced_power_graph
from epglab.catalog import catalog
from epglab.cliques import (abelian_invariants_from_graph, approx_m_classes, class_generated_set,
                            clique_family, count_order_elements_by_classes,
                            count_order_elements_by_inclusion_exclusion, eeq_partition,
                            inclusion_exclusion_coefficients, prime_power_counts)
from epglab.errors import NotAbelianEPG, NotTransitive, TooManyCliques
from epglab.graph import SimpleGraph
from epglab.group import abelian, cyclic, dihedral, divisors, euler_phi, heisenberg27, klein

from oracles import inclusion_exclusion_by_subsets


def fam(G):
    return clique_family(enhanced_power_graph(G))


def test_clique_family_examples():
    f = clique_family(SimpleGraph.complete(5))
    assert len(f.cliques) == 1 and len(f.intersections) == 1
    f = fam(klein())
    assert f.clique_sizes == (2, 2, 2)
    assert f.total_intersection == frozenset({0})
    f = fam(abelian([4, 2]))
    assert sorted(f.clique_sizes) == [2, 2, 4, 4]
    fours = [c for c in f.cliques if len(c) == 4]
    assert len(fours[0] & fours[1]) == 2


def test_intersections_closed_and_capped():
    f = fam(abelian([4, 2]))
    sets = set(f.intersections)
    assert all(a & c in sets for a in sets for c in f.cliques)
    with pytest.raises(TooManyCliques):
        clique_family(enhanced_power_graph(abelian([2, 2, 2, 2, 2])), cap=3)


def test_eeq_partition_examples():
    assert eeq_partition(SimpleGraph.complete(4)).classes == ((0, 1, 2, 3),)
    assert eeq_partition(enhanced_power_graph(klein())).classes == ((0,), (1,), (2,), (3,))
    assert len(eeq_partition(enhanced_power_graph(cyclic(8))).classes) == 1


def test_class_generated_set_examples():
    f = fam(klein())
    assert class_generated_set(f, (0,)) == {0}
    assert class_generated_set(clique_family(SimpleGraph.complete(6)), range(6)) == set(range(6))
    G = abelian([4, 2])
    f = fam(G)
    involution = G.power(G.orders.index(4), 2)
    fours = [c for c in f.cliques if len(c) == 4]
    assert class_generated_set(f, (involution,)) == fours[0] & fours[1]


def test_approx_classes_examples():
    f = fam(abelian([4, 2]))
    assert len(approx_m_classes(f, 2)) == 3
    assert len(approx_m_classes(f, 4)) == 2
    assert len(approx_m_classes(clique_family(SimpleGraph.complete(6)), 3)) == 1


@pytest.mark.parametrize("G,m,count", [
    (abelian([4, 2]), 2, 3),
    (abelian([4, 2]), 4, 4),
    (heisenberg27(), 3, 26),
])
def test_counting_examples(G, m, count):
    f = fam(G)
    assert count_order_elements_by_classes(f, m) == count
    assert count_order_elements_by_inclusion_exclusion(f, m) == count


def test_heisenberg_has_13_cliques_of_size_3():
    f = fam(heisenberg27())
    assert f.clique_sizes == (3,) * 13


def test_not_transitive_on_non_epg():
    # three 4-cliques meeting in a chain: A&B and B&C have 2 vertices, A&C has 1
    A, B, C = {0, 1, 2, 3}, {0, 2, 4, 5}, {0, 4, 6, 7}
    edges = {(u, v) for K in (A, B, C) for u in K for v in K if u < v}
    g = SimpleGraph.from_edges(8, edges)
    with pytest.raises(NotTransitive) as info:
        approx_m_classes(clique_family(g), 2)
    a, b, c = info.value.witness
    f = clique_family(g)
    assert len(f.cliques[a] & f.cliques[b]) % 2 == 0
    assert len(f.cliques[b] & f.cliques[c]) % 2 == 0
    assert len(f.cliques[a] & f.cliques[c]) % 2 == 1


def test_invariants_examples():
    G = abelian([4, 2])
    f = fam(G)
    assert prime_power_counts(f, 2, 3) == [1, 4, 8, 8]        # logs 0, 2, 3, 3
    assert abelian_invariants_from_graph(enhanced_power_graph(G)) == {2: [2, 1]}
    assert abelian_invariants_from_graph(enhanced_power_graph(cyclic(7))) == {7: [1]}
    assert abelian_invariants_from_graph(enhanced_power_graph(heisenberg27())) == {3: [1, 1, 1]}
    assert abelian_invariants_from_graph(SimpleGraph.complete(1)) == {}


def test_invariants_reject_non_abelian_data():
    with pytest.raises(NotAbelianEPG):
        abelian_invariants_from_graph(enhanced_power_graph(dihedral(6)))


def test_coefficients_sum_to_one_on_connected_family():
    # every vertex is covered exactly once by the alternating sum
    f = fam(abelian([4, 2, 3]))
    coef = inclusion_exclusion_coefficients(f)
    for v in range(f.n):
        assert sum(k for s, k in coef.items() if v in s) == 1


@pytest.mark.parametrize("entry", catalog(64), ids=lambda e: e.name)
def test_formulas_and_class_structure_on_catalog(entry):
    G = entry.group
    g = enhanced_power_graph(G)
    f = clique_family(g)
    for m in divisors(G.exponent):
        truth = G.orders.count(m)
        assert count_order_elements_by_classes(f, m) == truth
        assert count_order_elements_by_inclusion_exclusion(f, m) == truth
        if len(f.cliques) <= 12:
            assert inclusion_exclusion_by_subsets(f.cliques, m) == truth
    part = eeq_partition(g, f)
    k = len(part.classes)
    rel = part.order_pairs()
    for i in range(k):
        assert (i, i) in rel
        for j in range(k):
            if i != j and (i, j) in rel:
                assert (j, i) not in rel
                assert all((i, l) in rel for l in range(k) if (j, l) in rel)
    for cls in part.classes:
        per_order = {}
        for v in cls:
            per_order[G.orders[v]] = per_order.get(G.orders[v], 0) + 1
        assert all(c == euler_phi(m) for m, c in per_order.items())


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5, 8, 9]), min_size=1, max_size=3))
def test_invariants_recover_random_abelian_types(factors):
    from math import prod
    if prod(factors) > 128:
        return
    G = abelian(factors)
    expected = {}
    for f in factors:
        p = min(q for q in range(2, f + 1) if f % q == 0)
        k = 0
        while f > 1:
            f //= p
            k += 1
        expected.setdefault(p, []).append(k)
    expected = {p: sorted(v, reverse=True) for p, v in sorted(expected.items())}
    assert abelian_invariants_from_graph(enhanced_power_graph(G)) == expected
