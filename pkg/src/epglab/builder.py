"""Power graph, directed power graph and enhanced power graph of a group.

Vertex ``i`` of every graph is element ``i`` of the group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .graph import DiGraph, SimpleGraph, iter_bits, mask_of, strong_product
from .group import FiniteGroup, direct_product


def directed_power_graph(G: FiniteGroup) -> DiGraph:
    masks = []
    for x in range(G.n):
        masks.append(mask_of(G.powers(x)) & ~(1 << x))
    return DiGraph(G.n, masks)


def power_graph(G: FiniteGroup, directed: DiGraph | None = None) -> SimpleGraph:
    d = directed or directed_power_graph(G)
    return d.underlying()


def enhanced_power_graph(G: FiniteGroup) -> SimpleGraph:
    """Each maximal cyclic subgroup spans a complete subgraph; nothing else is joined."""
    masks = [0] * G.n
    for c in G.maximal_cyclic_subgroups():
        block = mask_of(c.members)
        for x in c.members:
            masks[x] |= block
    return SimpleGraph(G.n, [m & ~(1 << x) for x, m in enumerate(masks)])


def commuting_graph(G: FiniteGroup) -> SimpleGraph:
    t = G.table
    commute = t == t.T
    masks = []
    for x in range(G.n):
        row = commute[x].copy()
        row[x] = False
        masks.append(mask_of(row.nonzero()[0].tolist()))
    return SimpleGraph(G.n, masks)


@dataclass(frozen=True)
class GroupGraphBundle:
    group: FiniteGroup
    directed_power: DiGraph
    power: SimpleGraph
    enhanced: SimpleGraph

    @cached_property
    def commuting(self) -> SimpleGraph:
        return commuting_graph(self.group)


def build_bundle(G: FiniteGroup) -> GroupGraphBundle:
    dpg = directed_power_graph(G)
    pg = dpg.underlying()
    epg = enhanced_power_graph(G)
    assert pg.is_subgraph_of(epg)
    return GroupGraphBundle(G, dpg, pg, epg)


@dataclass(frozen=True)
class ProductLawResult:
    equal: bool
    witness: tuple[int, int] | None
    product_order: int


def check_product_law(G: FiniteGroup, H: FiniteGroup, *, size_cap: int = 2000) -> ProductLawResult:
    """Compare the EPG of G x H with the strong product of the two EPGs.

    The EPG of the product is always a subgraph of the strong product; when
    the two differ, ``witness`` is an edge of the strong product that is
    missing from the EPG of G x H.
    """
    P = direct_product(G, H, size_cap=size_cap)
    lhs = enhanced_power_graph(P)
    rhs = strong_product(enhanced_power_graph(G), enhanced_power_graph(H), size_cap=size_cap)
    if not lhs.is_subgraph_of(rhs):
        raise AssertionError(f"EPG({P.name}) is not contained in the strong product")
    for u in range(P.n):
        extra = rhs.masks[u] & ~lhs.masks[u]
        extra &= ~((1 << (u + 1)) - 1)
        if extra:
            v = next(iter_bits(extra))
            return ProductLawResult(False, (u, v), P.n)
    return ProductLawResult(True, None, P.n)
