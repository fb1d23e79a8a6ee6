"""Clique combinatorics read off a graph alone.

Nothing in this module looks at a group: the input is a ``SimpleGraph``
that is expected (but not required) to be an enhanced power graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import NotAbelianEPG, NotTransitive, TooManyCliques
from .graph import SimpleGraph, closed_twin_classes, maximal_cliques_generic
from .group import euler_phi, exact_log, factorize

INTERSECTION_CAP = 4096


@dataclass(frozen=True)
class CliqueFamily:
    """Maximal cliques and the distinct sets obtained by intersecting them.

    ``intersections`` is sorted by size, then members; it contains every
    clique and every non-empty-index intersection (the empty set too, when
    some cliques are disjoint).
    """

    n: int
    cliques: tuple[frozenset[int], ...]
    intersections: tuple[frozenset[int], ...]

    @cached_property
    def clique_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cliques)

    def containing(self, vertices) -> list[int]:
        """Indices of the cliques that contain every vertex in ``vertices``."""
        s = frozenset(vertices)
        return [i for i, c in enumerate(self.cliques) if s <= c]

    @cached_property
    def total_intersection(self) -> frozenset[int]:
        return frozenset.intersection(*self.cliques) if self.cliques else frozenset()


def clique_family(g: SimpleGraph, *, cap: int = INTERSECTION_CAP) -> CliqueFamily:
    cliques = maximal_cliques_generic(g)
    seen = set(cliques)
    frontier = list(cliques)
    while frontier:
        nxt = []
        for s in frontier:
            for c in cliques:
                t = s & c
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    if len(seen) > cap:
                        raise TooManyCliques(f"more than {cap} distinct clique intersections")
        frontier = nxt
    inters = sorted(seen, key=lambda s: (len(s), sorted(s)))
    return CliqueFamily(g.n, tuple(cliques), tuple(inters))


# ---------------------------------------------------------------------------
# closed-neighbourhood classes

@dataclass(frozen=True)
class EeqPartition:
    classes: tuple[tuple[int, ...], ...]
    patterns: tuple[frozenset[int], ...]   # clique indices containing each class
    class_of: tuple[int, ...]

    def leq(self, i: int, j: int) -> bool:
        """Class i lies below class j: every clique through j passes through i."""
        return self.patterns[j] <= self.patterns[i]

    def order_pairs(self) -> set[tuple[int, int]]:
        k = len(self.classes)
        return {(i, j) for i in range(k) for j in range(k) if self.leq(i, j)}


def eeq_partition(g: SimpleGraph, family: CliqueFamily | None = None) -> EeqPartition:
    """Partition vertices by which maximal cliques contain them.

    The result is checked against the partition by equal closed
    neighbourhoods; the two must coincide.
    """
    family = family or clique_family(g)
    pattern_of = [set() for _ in range(g.n)]
    for i, c in enumerate(family.cliques):
        for v in c:
            pattern_of[v].add(i)
    groups: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        groups.setdefault(frozenset(pattern_of[v]), []).append(v)
    classes = sorted(groups.values())
    by_nbhd = sorted(closed_twin_classes(g))
    if classes != by_nbhd:
        raise AssertionError("clique-membership classes differ from closed-neighbourhood classes")
    patterns = tuple(frozenset(pattern_of[c[0]]) for c in classes)
    class_of = [0] * g.n
    for i, c in enumerate(classes):
        for v in c:
            class_of[v] = i
    return EeqPartition(tuple(tuple(c) for c in classes), patterns, tuple(class_of))


def class_generated_set(family: CliqueFamily, cls) -> frozenset[int]:
    """Intersection of all maximal cliques that contain the whole class."""
    idx = family.containing(cls)
    if not idx:
        return frozenset()
    return frozenset.intersection(*(family.cliques[i] for i in idx))


# ---------------------------------------------------------------------------
# the relation "m divides |A & B|" and the two order counts

def approx_m_classes(family: CliqueFamily, m: int) -> list[list[int]]:
    """Classes of cliques of size divisible by m under "m divides |A & B|".

    Transitivity is verified; a failure raises ``NotTransitive`` with a
    witness triple of clique indices.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    cl = family.cliques
    d = [i for i, c in enumerate(cl) if len(c) % m == 0]
    related = {i: [j for j in d if j != i and len(cl[i] & cl[j]) % m == 0] for i in d}
    seen: set[int] = set()
    classes = []
    for i in d:
        if i in seen:
            continue
        comp = [i]
        seen.add(i)
        queue = deque([i])
        while queue:
            a = queue.popleft()
            for b in related[a]:
                if b not in seen:
                    seen.add(b)
                    comp.append(b)
                    queue.append(b)
        comp.sort()
        for a in comp:
            rel = set(related[a])
            for c in comp:
                if c != a and c not in rel:
                    raise NotTransitive(m, _witness_triple(related, a, c))
        classes.append(comp)
    return classes


def _witness_triple(related, a: int, c: int) -> tuple[int, int, int]:
    # a shortest path a = p0, p1, p2, ... to c has p0 unrelated to p2
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in related[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [c]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path[0], path[1], path[2]


def count_order_elements_by_classes(family: CliqueFamily, m: int) -> int:
    return euler_phi(m) * len(approx_m_classes(family, m))


def inclusion_exclusion_coefficients(family: CliqueFamily, *,
                                     cap: int = INTERSECTION_CAP) -> dict[frozenset[int], int]:
    """Signed multiplicity of each distinct intersection in the alternating sum.

    Entry S is the sum of (-1)^(|I|+1) over the non-empty index sets I with
    intersection S. Clique by clique, every existing term S spawns S & C with
    the opposite sign, and C itself enters with +1.
    """
    coef: dict[frozenset[int], int] = {}
    for c in family.cliques:
        updates: dict[frozenset[int], int] = {c: 1}
        for s, k in coef.items():
            t = s & c
            updates[t] = updates.get(t, 0) - k
        for t, k in updates.items():
            coef[t] = coef.get(t, 0) + k
        coef = {s: k for s, k in coef.items() if k}
        if len(coef) > cap:
            raise TooManyCliques(f"more than {cap} distinct intersections in the alternating sum")
    return coef


def count_order_elements_by_inclusion_exclusion(family: CliqueFamily, m: int, *,
                                                cap: int = INTERSECTION_CAP) -> int:
    phi = euler_phi(m)
    total = 0
    for s, k in inclusion_exclusion_coefficients(family, cap=cap).items():
        if len(s) % m == 0:
            total += k * phi
    return total


# ---------------------------------------------------------------------------
# abelian invariants

def prime_power_counts(family: CliqueFamily, p: int, top: int) -> list[int]:
    """Entry j is the graph-side count of elements of order dividing p^j, j = 0..top."""
    counts = []
    running = 0
    for j in range(top + 1):
        running += count_order_elements_by_classes(family, p ** j)
        counts.append(running)
    return counts


def abelian_invariants_from_graph(g: SimpleGraph,
                                  family: CliqueFamily | None = None) -> dict[int, list[int]]:
    """Read off the cyclic factors ``{p: [e1 >= e2 >= ...]}`` (factors C_{p^ei}).

    Correct whenever ``g`` is the EPG of an abelian group; a non-integral
    logarithm, a negative multiplicity or factor orders that do not multiply
    to the graph order raise ``NotAbelianEPG``.
    """
    family = family or clique_family(g)
    result: dict[int, list[int]] = {}
    for p, k in sorted(factorize(g.n).items()) if g.n > 1 else []:
        counts = prime_power_counts(family, p, k + 1)
        logs = []
        for j, c in enumerate(counts):
            lg = exact_log(c, p)
            if lg is None:
                raise NotAbelianEPG(f"{c} elements of order dividing {p}^{j} is not a power of {p}")
            logs.append(lg)
        exps: list[int] = []
        for j in range(1, k + 1):
            mult = 2 * logs[j] - logs[j - 1] - logs[j + 1]
            if mult < 0:
                raise NotAbelianEPG(f"negative multiplicity {mult} for factor {p}^{j}")
            exps.extend([j] * mult)
        if sum(exps) != k:
            raise NotAbelianEPG(f"{p}-factors multiply to {p}^{sum(exps)}, expected {p}^{k}")
        result[p] = sorted(exps, reverse=True)
    return result
