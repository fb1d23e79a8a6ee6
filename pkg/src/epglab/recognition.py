"""Graph-side recognition: necessary conditions, p-components, nilpotency, abelian EPGs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .cliques import CliqueFamily, clique_family, prime_power_counts
from .errors import (BadParameter, ConditionsViolated, MarkingStuck, NotAbelianEPG,
                     NotTransitive, TooLarge)
from .graph import PRODUCT_CAP, SimpleGraph, induced_subgraph, strong_product
from .group import factorize, prime_power_part
from .semitree import PTuple, build_p_semitree, is_p_semitree


@dataclass(frozen=True)
class Condition:
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class ConditionReport:
    e1: Condition
    e2: Condition
    e3: Condition
    e4: Condition
    e5: Condition

    @property
    def all_hold(self) -> bool:
        return all((self.e1, self.e2, self.e3, self.e4, self.e5))

    def to_json(self) -> dict:
        out = {}
        for name in ("e1", "e2", "e3", "e4", "e5"):
            c = getattr(self, name)
            out[name] = {"holds": c.holds, "witness": _jsonable(c.witness)}
        return out


def _jsonable(w):
    if w is None:
        return None
    return [sorted(x) if isinstance(x, frozenset) else x for x in w]


def _sets_in_cliques(family: CliqueFamily) -> list[list[frozenset[int]]]:
    """For each maximal clique, the distinct intersections it contains."""
    return [[b for b in family.intersections if b <= c] for c in family.cliques]


def check_conditions(g: SimpleGraph, family: CliqueFamily | None = None) -> ConditionReport:
    family = family or clique_family(g)
    cl = family.cliques

    # E1: some vertex lies in every maximal clique
    if family.total_intersection:
        e1 = Condition(True)
    else:
        chosen = []
        common = None
        for i, c in enumerate(cl):
            nxt = c if common is None else common & c
            if nxt != common:
                chosen.append(i)
                common = nxt
            if not common:
                break
        e1 = Condition(False, tuple(chosen))

    # E2: clique sizes divide the vertex count
    bad = next((i for i, c in enumerate(cl) if g.n % len(c)), None)
    e2 = Condition(bad is None, None if bad is None else (bad, len(cl[bad])))

    inside = _sets_in_cliques(family)
    e3 = e5 = None
    for members in inside:
        for b1, b2 in combinations(members, 2):
            s1, s2 = len(b1), len(b2)
            if e3 is None and len(b1 & b2) != math.gcd(s1, s2):
                e3 = (b1, b2)
            if e5 is None:
                if s1 and s2 % s1 == 0 and not b1 <= b2:
                    e5 = (b1, b2)
                elif s2 and s1 % s2 == 0 and not b2 <= b1:
                    e5 = (b2, b1)
            if e3 is not None and e5 is not None:
                break

    e4 = None
    for b1, b2 in combinations(family.intersections, 2):   # sorted by size
        if b1 < b2 and (len(b1) == 0 or len(b2) % len(b1)):
            e4 = (b1, b2)
            break

    return ConditionReport(
        e1,
        e2,
        Condition(e3 is None, e3),
        Condition(e4 is None, e4),
        Condition(e5 is None, e5),
    )


# ---------------------------------------------------------------------------
# p-components

@dataclass(frozen=True)
class PComponent:
    p: int
    vertices: tuple[int, ...]
    graph: SimpleGraph
    index: dict[int, int] = field(repr=False)


def p_component(g: SimpleGraph, p: int, family: CliqueFamily | None = None) -> PComponent:
    """Mark |B|_[p] vertices in every clique intersection B, smallest sets first.

    Inside B the new marks go to the lowest-numbered vertices that lie in no
    strictly smaller intersection. The result is checked against the
    defining property before it is returned.
    """
    if p < 2 or g.n % p:
        raise BadParameter(f"{p} does not divide the vertex count {g.n}")
    family = family or clique_family(g)
    report = check_conditions(g, family)
    if not (report.e1 and report.e3):
        failed = [k for k in ("e1", "e3") if not getattr(report, k)]
        raise ConditionsViolated(f"p-component needs E1 and E3; failed: {', '.join(failed)}")

    sets = [sum(1 << v for v in b) for b in family.intersections]
    needs = [prime_power_part(len(b), p) for b in family.intersections]
    marked = 0
    for i, b in enumerate(sets):
        need = needs[i]
        have = (b & marked).bit_count()
        if have > need:
            raise MarkingStuck(family.intersections[i], need, have)
        below = 0
        for s in sets[:i]:
            if s & ~b == 0 and s != b:
                below |= s
        free = b & ~below & ~marked
        if free.bit_count() < need - have:
            raise MarkingStuck(family.intersections[i], need - have, free.bit_count())
        while have < need:
            low = free & -free
            marked |= low
            free ^= low
            have += 1

    for i, b in enumerate(sets):
        if (b & marked).bit_count() != needs[i]:
            raise MarkingStuck(family.intersections[i], needs[i], (b & marked).bit_count())
    vertices = tuple(v for v in range(g.n) if marked >> v & 1)
    sub, index = induced_subgraph(g, vertices)
    return PComponent(p, vertices, sub, index)


# ---------------------------------------------------------------------------
# nilpotency and abelian recognition

@dataclass(frozen=True)
class NilpotencyReport:
    nilpotent: bool
    per_prime: dict[int, int]      # graph-side count of p-power-order elements
    expected: dict[int, int]       # largest power of p dividing |V|

    def to_json(self) -> dict:
        return {
            "nilpotent": self.nilpotent,
            "per_prime": {str(p): c for p, c in self.per_prime.items()},
            "expected": {str(p): c for p, c in self.expected.items()},
        }


def nilpotency_from_graph(g: SimpleGraph, family: CliqueFamily | None = None) -> NilpotencyReport:
    """Nilpotent iff, for every prime p, exactly |V|_[p] elements have p-power order."""
    family = family or clique_family(g)
    per_prime, expected = {}, {}
    for p, k in sorted(factorize(g.n).items()) if g.n > 1 else []:
        per_prime[p] = prime_power_counts(family, p, k)[-1]
        expected[p] = p ** k
    return NilpotencyReport(per_prime == expected, per_prime, expected)


def recognize_abelian_epg(g: SimpleGraph, *, cap: int = PRODUCT_CAP) -> dict[int, PTuple] | None:
    """Tuples ā_p with g isomorphic to the strong product of the S_p(ā_p), or None."""
    from .iso import are_isomorphic

    if g.n > cap:
        raise TooLarge(f"abelian recognition capped at {cap} vertices")
    if g.n == 1:
        return {}
    try:
        family = clique_family(g)
        if not nilpotency_from_graph(g, family).nilpotent:
            return None
        tuples: dict[int, PTuple] = {}
        for p in sorted(factorize(g.n)):
            comp = p_component(g, p, family)
            t = is_p_semitree(comp.graph, p)
            if t is None:
                return None
            tuples[p] = t
    except (NotTransitive, NotAbelianEPG, ConditionsViolated, MarkingStuck):
        return None
    model = None
    for p, t in tuples.items():
        piece = build_p_semitree(p, t.a, cap=max(cap, g.n)).graph
        model = piece if model is None else strong_product(model, piece, size_cap=cap)
    if not are_isomorphic(g, model):
        return None
    return tuples
