import pytest
from hypothesis import given, settings, strategies as st

from epglab.builder import enhanced_power_graph
from epglab.catalog import catalog
from epglab.errors import NoExponentElement, NotNilpotent
from epglab.graph import chromatic_number_exact, is_induced_cycle
from epglab.group import FiniteGroup, abelian, cyclic, dihedral, product_of
from epglab.perfect import (coprime_square_pentagon, omega_epg, pentagon_witness,
                            perfect_verdict_nilpotent, weakly_perfect_coloring)

from oracles import brute_chromatic_number, epg_edges_by_definition, naive_order


def test_omega_examples():
    assert omega_epg(cyclic(12)) == 12
    assert omega_epg(abelian([4, 2])) == 4
    assert omega_epg(dihedral(10)) == 5


def test_verdicts():
    assert perfect_verdict_nilpotent(abelian([2, 2])).perfect
    assert perfect_verdict_nilpotent(product_of([abelian([2, 2]), abelian([3, 3])])).perfect
    v = perfect_verdict_nilpotent(coprime_square_pentagon().group)
    assert not v.perfect and v.non_cyclic_sylow == 3
    with pytest.raises(NotNilpotent):
        perfect_verdict_nilpotent(dihedral(6))


def test_pentagon_from_recipe_against_definition():
    ex = coprime_square_pentagon((2, 3, 5))
    assert ex.group.n == 900
    assert ex.labels == ("a1b1", "b1c2", "a2", "b2", "a1c1")
    table = ex.group.table
    # adjacency straight from the definition: some <z> holds both
    v = ex.vertices

    def adjacent(x, y):
        for z in range(ex.group.n):
            if x in _powers(table, z) and y in _powers(table, z):
                return True
        return False

    for i in range(5):
        for j in range(i + 1, 5):
            ring = (j - i) % 5 in (1, 4)
            assert adjacent(v[i], v[j]) == ring


def _powers(table, z, _cache={}):
    key = (id(table), z)
    if key not in _cache:
        seen, y = {0}, z
        while y not in seen:
            seen.add(y)
            y = int(table[y][z])
        _cache[key] = seen
    return _cache[key]


def test_pentagon_other_primes():
    ex = coprime_square_pentagon((3, 2, 5))
    assert is_induced_cycle(enhanced_power_graph(ex.group), ex.vertices)
    with pytest.raises(ValueError):
        coprime_square_pentagon((2, 2, 3))


def test_pentagon_witness_absent_for_perfect_groups():
    assert pentagon_witness(abelian([2, 2, 3, 3])) is None
    assert pentagon_witness(dihedral(12)) is None


def test_pentagon_witness_seeded():
    G = product_of([abelian([2, 2]), abelian([3, 3]), abelian([5, 5])])
    w = pentagon_witness(G)
    assert w is not None and is_induced_cycle(enhanced_power_graph(G), w)


def test_coloring_against_brute_force():
    for G in (cyclic(6), abelian([2, 2]), dihedral(8), abelian([4, 2])):
        g = enhanced_power_graph(G)
        col = weakly_perfect_coloring(G, graph=g)
        edges = epg_edges_by_definition(G.table.tolist())
        assert brute_chromatic_number(G.n, edges) == col.num_colors
        assert all(col.colors[a] != col.colors[b] for a, b in edges)


def test_coloring_needs_exponent_element():
    # S3 has exponent 6 but no element of order 6
    with pytest.raises(NoExponentElement):
        weakly_perfect_coloring(dihedral(6))


@pytest.mark.parametrize("entry", [e for e in catalog(40) if e.group.exponent in e.group.orders],
                         ids=lambda e: e.name)
def test_coloring_is_optimal(entry):
    G = entry.group
    g = enhanced_power_graph(G)
    col = weakly_perfect_coloring(G, graph=g)
    assert col.num_colors == omega_epg(G) == chromatic_number_exact(g)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5, 6, 9]), min_size=1, max_size=3))
def test_abelian_groups_always_colorable(factors):
    G = product_of([cyclic(f) for f in factors])
    col = weakly_perfect_coloring(G)
    assert col.num_colors == max(naive_order(G.table, x) for x in range(G.n))
