"""Clique number, perfectness verdicts, induced pentagons and the exponent colouring."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .builder import enhanced_power_graph
from .errors import NoExponentElement, NotNilpotent
from .graph import (CHROMATIC_CAP, HOLE_SEARCH_CAP, SimpleGraph, clique_number_generic,
                    find_induced_odd_hole_or_antihole, is_induced_cycle, is_proper_coloring)
from .group import FiniteGroup, cyclic, is_prime, product_of


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    num_colors: int

    def to_json(self) -> dict:
        return {"colors": list(self.colors), "num_colors": self.num_colors}


def omega_epg(G: FiniteGroup) -> int:
    """Largest maximal cyclic subgroup, i.e. the clique number of the EPG."""
    omega = max(c.order for c in G.maximal_cyclic_subgroups())
    if G.n <= CHROMATIC_CAP:
        assert omega == clique_number_generic(enhanced_power_graph(G))
    return omega


@dataclass(frozen=True)
class PerfectVerdict:
    perfect: bool
    non_cyclic_sylow: int


def perfect_verdict_nilpotent(G: FiniteGroup) -> PerfectVerdict:
    """A nilpotent group has a perfect EPG iff at most two Sylow subgroups are non-cyclic."""
    if not G.is_nilpotent():
        raise NotNilpotent(f"{G.name} is not nilpotent")
    k = G.non_cyclic_sylow_count()
    return PerfectVerdict(k <= 2, k)


# ---------------------------------------------------------------------------
# pentagons

def _non_adjacent_pair(G: FiniteGroup, members: list[int]) -> tuple[int, int]:
    """x of largest order in a non-cyclic Sylow subgroup, and the first y outside <x>."""
    x = max(members, key=lambda v: (G.orders[v], -v))
    inside = set(G.powers(x))
    y = next(v for v in members if v not in inside)
    return x, y


def _seeded_pentagon(G: FiniteGroup) -> tuple[int, ...] | None:
    if not G.is_nilpotent():
        return None
    non_cyclic = []
    for rec in G.sylow_info():
        members = G.p_elements(rec.p)
        if max(G.orders[v] for v in members) < rec.p ** rec.k:
            non_cyclic.append(members)
    if len(non_cyclic) < 3:
        return None
    (a1, a2), (b1, b2), (c1, c2) = (_non_adjacent_pair(G, m) for m in non_cyclic[:3])
    m = G.mul
    return (m(a1, b1), m(b1, c2), a2, b2, m(a1, c1))


def pentagon_witness(G: FiniteGroup, *, graph: SimpleGraph | None = None,
                     cap: int = HOLE_SEARCH_CAP) -> tuple[int, ...] | None:
    """Five vertices inducing a 5-cycle in the EPG, listed in cycle order, or None.

    Nilpotent groups with three non-cyclic Sylow subgroups get the direct
    construction from one non-adjacent pair per Sylow subgroup; otherwise a
    bounded search runs on EPGs with at most ``cap`` vertices.
    """
    g = graph or enhanced_power_graph(G)
    seeded = _seeded_pentagon(G)
    if seeded is not None:
        if not is_induced_cycle(g, seeded):
            raise AssertionError(f"seeded pentagon {seeded} is not an induced 5-cycle")
        return seeded
    if g.n > cap:
        return None
    hole = find_induced_odd_hole_or_antihole(g, 5)
    if hole is None:
        return None
    v = hole.vertices
    cycle = (v[0], v[2], v[4], v[1], v[3]) if hole.in_complement else tuple(v)
    assert is_induced_cycle(g, cycle)
    return cycle


@dataclass(frozen=True)
class PentagonExample:
    group: FiniteGroup
    vertices: tuple[int, ...]
    labels: tuple[str, ...]


def coprime_square_pentagon(primes=(2, 3, 5)) -> PentagonExample:
    """C_p^2 x C_q^2 x C_r^2 with the pentagon a1b1, b1c2, a2, b2, a1c1.

    a1, a2 (and b1, b2 and c1, c2) generate the two factors of order p
    (q and r); the five products are built in the product's coordinates.
    """
    p, q, r = primes
    if len(set(primes)) != 3 or not all(is_prime(x) for x in primes):
        raise ValueError(f"need three distinct primes, got {primes}")
    factors = [cyclic(p), cyclic(p), cyclic(q), cyclic(q), cyclic(r), cyclic(r)]
    G = product_of(factors, name=f"C{p}^2xC{q}^2xC{r}^2")
    radix = [f.n for f in factors]

    def element(coords):
        idx = 0
        for c, base in zip(coords, radix):
            idx = idx * base + c
        return idx

    gen = {name: element([int(i == pos) for i in range(6)])
           for pos, name in enumerate(("a1", "a2", "b1", "b2", "c1", "c2"))}
    words = (("a1", "b1"), ("b1", "c2"), ("a2",), ("b2",), ("a1", "c1"))
    vertices = []
    for w in words:
        x = 0
        for name in w:
            x = G.mul(x, gen[name])
        vertices.append(x)
    return PentagonExample(G, tuple(vertices), tuple("".join(w) for w in words))


# ---------------------------------------------------------------------------
# colouring

def weakly_perfect_coloring(G: FiniteGroup, *, graph: SimpleGraph | None = None) -> Coloring:
    """Proper colouring of the EPG with exactly omega colours.

    x^k gets colour k for an element x of order exp(G); every other class of
    mutual generators borrows the colours of the class of <x> with the same
    element order, matched in increasing id order.
    """
    e = G.exponent
    x = next((v for v in range(G.n) if G.orders[v] == e), None)
    if x is None:
        raise NoExponentElement(f"{G.name} has no element of order {e}")
    powers = G.powers(x)                         # x^0, x^1, ..., x^(e-1)
    color_of_power = {v: k for k, v in enumerate(powers)}
    by_order: dict[int, list[int]] = {}
    for k, v in enumerate(powers):
        by_order.setdefault(e // math.gcd(k, e), []).append(v)
    for o in by_order:
        by_order[o].sort()

    colors = [-1] * G.n
    for v in range(G.n):
        if colors[v] >= 0:
            continue
        cls = sorted(G.generator_class(v))
        target = by_order[G.orders[v]]
        assert len(target) == len(cls)
        for a, b in zip(cls, target):
            colors[a] = color_of_power[b]
    g = graph or enhanced_power_graph(G)
    if not is_proper_coloring(g, colors):
        raise AssertionError("exponent colouring is not proper")
    used = len(set(colors))
    assert used == e == omega_epg(G)
    return Coloring(tuple(colors), used)
