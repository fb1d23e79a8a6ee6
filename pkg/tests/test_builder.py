import pytest

from epglab.builder import (build_bundle, check_product_law, commuting_graph,
                            directed_power_graph, enhanced_power_graph, power_graph)
from epglab.catalog import catalog
from epglab.graph import SimpleGraph, iter_bits
from epglab.group import abelian, cyclic, dihedral, generalized_quaternion, klein

from oracles import (arcs_by_definition, commuting_edges, epg_edges_by_definition,
                     power_edges_by_definition, strong_product_edges)


def test_cyclic_epg_is_complete():
    for n in (1, 2, 7, 12):
        assert enhanced_power_graph(cyclic(n)) == SimpleGraph.complete(n)


def test_klein_epg_is_a_star():
    g = enhanced_power_graph(klein())
    assert g.edge_set() == {(0, 1), (0, 2), (0, 3)}


def test_quaternion_epg_equals_power_graph():
    Q = generalized_quaternion(8)
    assert enhanced_power_graph(Q) == power_graph(Q)


def test_commuting_graph_examples():
    assert commuting_graph(abelian([4, 2])) == SimpleGraph.complete(8)
    S3 = dihedral(6)
    g = commuting_graph(S3)
    inv = [x for x in range(6) if S3.orders[x] == 2]
    rot = [x for x in range(6) if S3.orders[x] == 3]
    assert all(g.has_edge(0, x) for x in range(1, 6))
    assert g.has_edge(*rot)
    assert not any(g.has_edge(a, b) for a in inv for b in inv if a != b)
    Q = generalized_quaternion(8)
    c = commuting_graph(Q)
    minus_one = Q.orders.index(2)
    assert all(c.has_edge(minus_one, x) for x in range(8) if x != minus_one)


@pytest.mark.parametrize("entry", catalog(100), ids=lambda e: e.name)
def test_graphs_match_definitions(entry):
    G = entry.group
    t = G.table.tolist()
    b = build_bundle(G)
    assert b.enhanced.edge_set() == epg_edges_by_definition(t)
    assert b.power.edge_set() == power_edges_by_definition(t)
    assert set(b.directed_power.arcs()) == arcs_by_definition(t)
    if G.n <= 64:
        assert b.commuting.edge_set() == commuting_edges(t)
        assert b.power.is_subgraph_of(b.enhanced) and b.enhanced.is_subgraph_of(b.commuting)
    assert all(b.directed_power.has_arc(x, 0) for x in range(1, G.n))
    assert b.directed_power.masks[0] == 0
    assert all(b.enhanced.has_edge(0, x) and b.power.has_edge(0, x) for x in range(1, G.n))


def test_product_law_examples():
    assert check_product_law(cyclic(2), cyclic(3)).equal
    r = check_product_law(cyclic(2), cyclic(2))
    assert not r.equal
    u, v = r.witness
    P = abelian([2, 2])
    assert P.orders[u] == P.orders[v] == 2
    assert not enhanced_power_graph(P).has_edge(u, v)
    assert not check_product_law(cyclic(2), cyclic(4)).equal


@pytest.mark.parametrize("pair", [("C2", "C2"), ("C4", "C2"), ("Klein", "C3"), ("D6", "C5"),
                                  ("Q8", "C3"), ("C3", "C3xC3"), ("D8", "C2")])
def test_product_law_against_definition(pair):
    cat = {e.name: e.group for e in catalog(32)}
    G, H = cat[pair[0]], cat[pair[1]]
    r = check_product_law(G, H)
    eg = epg_edges_by_definition(G.table.tolist())
    eh = epg_edges_by_definition(H.table.tolist())
    strong = strong_product_edges(G.n, eg, H.n, eh)
    from epglab.group import direct_product
    epg = epg_edges_by_definition(direct_product(G, H).table.tolist())
    assert epg <= strong
    assert r.equal == (epg == strong)
    if not r.equal:
        assert tuple(sorted(r.witness)) in strong - epg


def test_directed_power_graph_is_irreflexive():
    d = directed_power_graph(dihedral(8))
    assert all(not (m >> v & 1) for v, m in enumerate(d.masks))
    assert all(v in set(iter_bits(d.masks[v] | 1 << v)) for v in range(8))
