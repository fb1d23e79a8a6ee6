"""Isomorphism and automorphism search for (di)graphs, plus the group-side
constructions that move isomorphisms between the three graphs of a group.

Graphs from groups have huge twin classes, so every search first collapses
twins (vertices with the same neighbours, adjacent or not) into one weighted
quotient vertex, then runs colour refinement with individualisation and
backtracking on the quotient.
"""

from __future__ import annotations

import math
import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .builder import build_bundle, directed_power_graph, enhanced_power_graph, power_graph
from .errors import ConstructionFailed, SearchBudgetExceeded, TooLarge
from .graph import DiGraph, SimpleGraph, iter_bits
from .group import FiniteGroup, factorize

ISO_CAP = 1024
AUT_CAP = 64
DEFAULT_BUDGET = 200_000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))

Graphish = SimpleGraph | DiGraph


@dataclass(frozen=True)
class IsoCertificate:
    mapping: tuple[int, ...] | None
    reason: str = ""

    @property
    def refuted(self) -> bool:
        return self.mapping is None

    def __bool__(self):
        return self.mapping is not None


@dataclass(frozen=True)
class AutGroupSummary:
    generators: tuple[tuple[int, ...], ...]
    order: int
    abelian: bool
    order_factorization: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "order": str(self.order),
            "abelian": self.abelian,
            "factorization": {str(p): k for p, k in sorted(self.order_factorization.items())},
            "generators": [list(g) for g in self.generators],
        }


# ---------------------------------------------------------------------------
# permutations

def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p after q."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            order = math.lcm(order, length)
    return order


def is_isomorphism(g1: Graphish, g2: Graphish, mapping: Sequence[int]) -> bool:
    """Edge- (or arc-) preserving in both directions."""
    n = g1.n
    if g2.n != n or len(mapping) != n or sorted(mapping) != list(range(n)):
        return False
    if g1.directed != g2.directed:
        return False
    for v in range(n):
        image = 0
        for u in iter_bits(g1.masks[v]):
            image |= 1 << mapping[u]
        if image != g2.masks[mapping[v]]:
            return False
    return True


def is_automorphism(g: Graphish, perm: Sequence[int]) -> bool:
    return is_isomorphism(g, g, perm)


# ---------------------------------------------------------------------------
# twin quotient

@dataclass
class _Quotient:
    classes: list[list[int]]
    colors: list[tuple]          # (kind, size) per class
    out: list[list[int]]
    inn: list[list[int]] | None
    masks: list[int]
    pred: list[int] | None

    @property
    def n(self) -> int:
        return len(self.classes)


def _twin_classes(g: Graphish) -> list[tuple[str, list[int]]]:
    n = g.n
    succ = g.masks
    pred = g.pred_masks if g.directed else g.masks
    closed: dict[tuple[int, int], list[int]] = {}
    for v in range(n):
        bit = 1 << v
        closed.setdefault((succ[v] | bit, pred[v] | bit), []).append(v)
    out: list[tuple[str, list[int]]] = []
    singles = []
    for members in closed.values():
        if len(members) > 1:
            out.append(("closed", members))
        else:
            singles.append(members[0])
    opened: dict[tuple[int, int], list[int]] = {}
    for v in singles:
        opened.setdefault((succ[v], pred[v]), []).append(v)
    for members in opened.values():
        out.append(("open" if len(members) > 1 else "single", members))
    out.sort(key=lambda kc: kc[1][0])
    return out


def _quotient(g: Graphish) -> _Quotient:
    kinds = _twin_classes(g)
    classes = [m for _, m in kinds]
    colors = [(k if len(m) > 1 else "single", len(m)) for k, m in kinds]
    where = {}
    for i, members in enumerate(classes):
        for v in members:
            where[v] = i
    q = len(classes)
    masks = [0] * q
    for i, members in enumerate(classes):
        for u in iter_bits(g.masks[members[0]]):
            j = where[u]
            if j != i:
                masks[i] |= 1 << j
    out = [list(iter_bits(m)) for m in masks]
    if g.directed:
        pred = [0] * q
        for i, m in enumerate(masks):
            for j in iter_bits(m):
                pred[j] |= 1 << i
        inn = [list(iter_bits(m)) for m in pred]
        return _Quotient(classes, colors, out, inn, masks, pred)
    return _Quotient(classes, colors, out, None, masks, None)


def _lift(qa: _Quotient, qb: _Quotient, qmap: Sequence[int], n: int) -> tuple[int, ...]:
    mapping = [0] * n
    for i, members in enumerate(qa.classes):
        for v, w in zip(members, qb.classes[qmap[i]]):
            mapping[v] = w
    return tuple(mapping)


# ---------------------------------------------------------------------------
# refinement and backtracking

class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} nodes")


def _signature(q: _Quotient, c: Sequence[int], v: int) -> tuple:
    outs = tuple(sorted(c[u] for u in q.out[v]))
    if q.inn is None:
        return (c[v], outs)
    return (c[v], outs, tuple(sorted(c[u] for u in q.inn[v])))


def _initial_colors(qa: _Quotient, qb: _Quotient):
    if Counter(qa.colors) != Counter(qb.colors):
        return None
    palette = {col: i for i, col in enumerate(sorted(set(qa.colors)))}
    return [palette[c] for c in qa.colors], [palette[c] for c in qb.colors]


def _refine(qa: _Quotient, qb: _Quotient, ca: list[int], cb: list[int]):
    """Joint colour refinement; None as soon as the colour histograms differ."""
    ncolors = len(set(ca))
    while True:
        sa = [_signature(qa, ca, v) for v in range(qa.n)]
        sb = [_signature(qb, cb, v) for v in range(qb.n)]
        if Counter(sa) != Counter(sb):
            return None
        palette = {s: i for i, s in enumerate(sorted(set(sa)))}
        ca = [palette[s] for s in sa]
        cb = [palette[s] for s in sb]
        if len(palette) == ncolors:
            return ca, cb
        ncolors = len(palette)


def _search(qa: _Quotient, qb: _Quotient, ca: list[int], cb: list[int], budget: _Budget):
    budget.tick()
    refined = _refine(qa, qb, ca, cb)
    if refined is None:
        return None
    ca, cb = refined
    k = max(ca) + 1 if ca else 0
    if k == qa.n:
        pos = {c: w for w, c in enumerate(cb)}
        qmap = [pos[c] for c in ca]
        if _quotient_map_ok(qa, qb, qmap):
            return qmap
        return None
    sizes = Counter(ca)
    target = min((s, c) for c, s in sizes.items() if s > 1)[1]
    v = ca.index(target)
    for w in [w for w, c in enumerate(cb) if c == target]:
        ca2 = list(ca)
        cb2 = list(cb)
        ca2[v] = k
        cb2[w] = k
        found = _search(qa, qb, ca2, cb2, budget)
        if found is not None:
            return found
    return None


def _quotient_map_ok(qa: _Quotient, qb: _Quotient, qmap: Sequence[int]) -> bool:
    for i in range(qa.n):
        if qa.colors[i] != qb.colors[qmap[i]]:
            return False
        image = 0
        for j in iter_bits(qa.masks[i]):
            image |= 1 << qmap[j]
        if image != qb.masks[qmap[i]]:
            return False
    return True


# ---------------------------------------------------------------------------
# public: isomorphism

def _degree_profile(g: Graphish):
    if g.directed:
        return sorted(zip((m.bit_count() for m in g.masks), (m.bit_count() for m in g.pred_masks)))
    return sorted(m.bit_count() for m in g.masks)


def _isomorphic(g1: Graphish, g2: Graphish, cap: int, budget: int) -> IsoCertificate:
    if g1.directed != g2.directed:
        raise TypeError("cannot compare a graph with a digraph")
    if max(g1.n, g2.n) > cap:
        raise TooLarge(f"isomorphism test capped at {cap} vertices")
    if g1.n != g2.n:
        return IsoCertificate(None, "vertex counts differ")
    if _degree_profile(g1) != _degree_profile(g2):
        return IsoCertificate(None, "degree sequences differ")
    qa, qb = _quotient(g1), _quotient(g2)
    init = _initial_colors(qa, qb)
    if init is None or qa.n != qb.n:
        return IsoCertificate(None, "neighbourhood-class sizes differ")
    qmap = _search(qa, qb, init[0], init[1], _Budget(budget))
    if qmap is None:
        return IsoCertificate(None, "exhaustive search found no isomorphism")
    mapping = _lift(qa, qb, qmap, g1.n)
    if not is_isomorphism(g1, g2, mapping):
        raise AssertionError("lifted mapping failed validation")
    return IsoCertificate(mapping)


def are_isomorphic(g1: SimpleGraph, g2: SimpleGraph, *, cap: int = ISO_CAP,
                   budget: int = DEFAULT_BUDGET) -> IsoCertificate:
    return _isomorphic(g1, g2, cap, budget)


def digraph_isomorphic(d1: DiGraph, d2: DiGraph, *, cap: int = ISO_CAP,
                       budget: int = DEFAULT_BUDGET) -> IsoCertificate:
    return _isomorphic(d1, d2, cap, budget)


# ---------------------------------------------------------------------------
# public: automorphism group

def _orbit(start: int, gens: list[Sequence[int]]) -> set[int]:
    orbit = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                todo.append(y)
    return orbit


def automorphism_summary(g: Graphish, *, cap: int = AUT_CAP,
                         budget: int = DEFAULT_BUDGET) -> AutGroupSummary:
    """Generators and exact order of Aut(g).

    Permutations inside a twin class form a normal subgroup (a product of
    symmetric groups); the rest is the weight-preserving automorphism group
    of the quotient, whose order comes from an orbit-stabiliser chain.
    """
    if g.n > cap:
        raise TooLarge(f"automorphism search capped at {cap} vertices")
    n = g.n
    q = _quotient(g)
    kernel_order = 1
    gens: list[tuple[int, ...]] = []
    for members in q.classes:
        kernel_order *= math.factorial(len(members))
        if len(members) > 1:
            swap = list(range(n))
            swap[members[0]], swap[members[1]] = members[1], members[0]
            gens.append(tuple(swap))
            if len(members) > 2:
                cyc = list(range(n))
                for a, b in zip(members, members[1:] + members[:1]):
                    cyc[a] = b
                gens.append(tuple(cyc))

    tracker = _Budget(budget)
    init = _initial_colors(q, q)
    colors = init[0] if init else []
    quotient_order = 1
    qgens: list[list[int]] = []
    while True:
        colors, _ = _refine(q, q, colors, colors)
        k = max(colors) + 1 if colors else 0
        if k == q.n:
            break
        sizes = Counter(colors)
        target = min((s, c) for c, s in sizes.items() if s > 1)[1]
        cell = [v for v, c in enumerate(colors) if c == target]
        base = cell[0]
        level: list[list[int]] = []
        orbit = {base}
        for w in cell[1:]:
            if w in orbit:
                continue
            ca = list(colors)
            cb = list(colors)
            ca[base] = k
            cb[w] = k
            found = _search(q, q, ca, cb, tracker)
            if found is not None:
                level.append(found)
                orbit = _orbit(base, level)
        quotient_order *= len(orbit)
        qgens.extend(level)
        colors = list(colors)
        colors[base] = k

    for qmap in qgens:
        gens.append(_lift(q, q, qmap, n))
    for p in gens:
        if not is_automorphism(g, p):
            raise AssertionError("generator failed validation")
    order = kernel_order * quotient_order
    assert math.factorial(n) % order == 0
    abelian = all(compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])
    return AutGroupSummary(tuple(gens), order, abelian, factorize(order) if order > 1 else {})


# ---------------------------------------------------------------------------
# group-side constructions

def epg_iso_to_directed_iso(G: FiniteGroup, H: FiniteGroup,
                            psi: IsoCertificate | Sequence[int]) -> IsoCertificate:
    """Turn an isomorphism of enhanced power graphs into one of directed power graphs.

    Each generator class (elements generating the same cyclic subgroup) of G
    goes to the class of H that sits in the image closed-neighbourhood class
    and has the same element order.
    """
    mapping = psi.mapping if isinstance(psi, IsoCertificate) else tuple(psi)
    if mapping is None:
        raise ValueError("psi must be an isomorphism, not a refutation")
    eg, eh = enhanced_power_graph(G), enhanced_power_graph(H)
    if not is_isomorphism(eg, eh, mapping):
        raise ValueError("psi is not an isomorphism of the enhanced power graphs")
    closed_h: dict[int, list[int]] = {}
    for y in range(H.n):
        closed_h.setdefault(eh.masks[y] | 1 << y, []).append(y)

    theta = [-1] * G.n
    done: set[int] = set()
    for x in range(G.n):
        if x in done:
            continue
        cls = sorted(G.generator_class(x))
        done.update(cls)
        o = G.orders[x]
        y = mapping[x]
        block = closed_h[eh.masks[y] | 1 << y]
        target = sorted(z for z in block if H.orders[z] == o)
        if len(target) != len(cls) or (target and H.generator_class(target[0]) != frozenset(target)):
            raise ConstructionFailed(f"no matching generator class of order {o} for element {x}")
        for a, b in zip(cls, target):
            theta[a] = b
    theta_t = tuple(theta)
    if sorted(theta_t) != list(range(H.n)):
        raise ConstructionFailed("constructed map is not a bijection")
    if not is_isomorphism(directed_power_graph(G), directed_power_graph(H), theta_t):
        raise ConstructionFailed("constructed map is not a digraph isomorphism")
    return IsoCertificate(theta_t)


def power_iso_preserves_enhanced(G: FiniteGroup, H: FiniteGroup,
                                 psi: IsoCertificate | Sequence[int]) -> bool:
    mapping = psi.mapping if isinstance(psi, IsoCertificate) else tuple(psi)
    if not is_isomorphism(power_graph(G), power_graph(H), mapping):
        raise ValueError("psi is not an isomorphism of the power graphs")
    return is_isomorphism(enhanced_power_graph(G), enhanced_power_graph(H), mapping)


def recover_directed_arc(pg: SimpleGraph, generator_class: Sequence[int], identity: int,
                         x: int, y: int) -> bool:
    """Decide x -> y in the directed power graph from the power graph.

    ``generator_class[v]`` labels the class of elements generating the same
    cyclic subgroup as v; only the class sizes and equality are used. The
    identity is supplied separately because it is the one vertex every other
    vertex points to.
    """
    if x == y:
        return False
    if y == identity:
        return True
    if x == identity:
        return False
    if generator_class[x] == generator_class[y]:
        return True
    if not pg.has_edge(x, y):
        return False
    size = Counter(generator_class)
    sx, sy = size[generator_class[x]], size[generator_class[y]]
    if sy < sx:
        return True
    if sy > sx:
        return False
    everything = (1 << pg.n) - 1
    for z in iter_bits(pg.masks[x]):
        if z != identity and size[generator_class[z]] == 1 and pg.masks[z] | 1 << z != everything:
            return True
    return False


# ---------------------------------------------------------------------------
# automorphisms of the group itself

def _generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {0}
    for x in sorted(range(G.n), key=lambda x: (-G.orders[x], x)):
        if x in span:
            continue
        gens.append(x)
        span = _closure(G, gens)
        if len(span) == G.n:
            break
    return gens


def _closure(G: FiniteGroup, gens: list[int]) -> set[int]:
    span = {0}
    todo = [0]
    while todo:
        a = todo.pop()
        for s in gens:
            b = G.mul(a, s)
            if b not in span:
                span.add(b)
                todo.append(b)
    return span


def group_automorphisms(G: FiniteGroup, *, cap: int = 24) -> list[tuple[int, ...]]:
    """All automorphisms of G by brute force over images of a generating set."""
    if G.n > cap:
        raise TooLarge(f"group automorphism enumeration capped at order {cap}")
    gens = _generating_set(G)
    by_order: dict[int, list[int]] = {}
    for x, o in enumerate(G.orders):
        by_order.setdefault(o, []).append(x)
    found = []

    def extend(images: list[int]):
        f = {0: 0}
        todo = [0]
        while todo:
            a = todo.pop()
            for s, t in zip(gens, images):
                b = G.mul(a, s)
                fb = G.mul(f[a], t)
                if b in f:
                    if f[b] != fb:
                        return None
                else:
                    f[b] = fb
                    todo.append(b)
        perm = tuple(f[x] for x in range(G.n))
        return perm if len(set(perm)) == G.n else None

    def rec(i: int, images: list[int]):
        if i == len(gens):
            perm = extend(images)
            if perm is not None:
                found.append(perm)
            return
        for t in by_order[G.orders[gens[i]]]:
            rec(i + 1, images + [t])

    rec(0, [])
    return found


@dataclass(frozen=True)
class AutChainReport:
    orders: dict[str, int]
    inclusions: dict[str, bool]

    @property
    def holds(self) -> bool:
        return all(self.inclusions.values())

    def strict(self, lower: str, upper: str) -> bool:
        return self.orders[lower] < self.orders[upper]

    def __bool__(self):
        return self.holds


def aut_inclusion_check(G: FiniteGroup, *, cap: int = 24) -> AutChainReport:
    """Aut(G) <= Aut(directed power graph) <= Aut(power graph) <= Aut(EPG).

    Each inclusion is checked on the generators of the smaller group, which
    suffices because the larger group is closed under composition.
    """
    if G.n > cap:
        raise TooLarge(f"automorphism chain capped at order {cap}")
    b = build_bundle(G)
    aut_g = group_automorphisms(G, cap=cap)
    dpg = automorphism_summary(b.directed_power)
    pg = automorphism_summary(b.power)
    epg = automorphism_summary(b.enhanced)
    inclusions = {
        "group<=dpg": all(is_automorphism(b.directed_power, p) for p in aut_g),
        "dpg<=pg": all(is_automorphism(b.power, p) for p in dpg.generators),
        "pg<=epg": all(is_automorphism(b.enhanced, p) for p in pg.generators),
    }
    orders = {"group": len(aut_g), "dpg": dpg.order, "pg": pg.order, "epg": epg.order}
    chain = ["group", "dpg", "pg", "epg"]
    for lo, hi in zip(chain, chain[1:]):
        assert orders[hi] % orders[lo] == 0
    return AutChainReport(orders, inclusions)
