"""Simple graphs and digraphs on vertices ``0..n-1``.

Adjacency is stored as Python integer bitmasks (bit ``u`` of ``masks[v]``
set iff ``u ~ v``); the sorted neighbour sets are derived on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadParameter,
    ProductTooLarge,
    SearchBudgetExceeded,
    TooLargeForExactSearch,
    VertexOutOfRange,
)

PRODUCT_CAP = 2000
CHROMATIC_CAP = 64
HOLE_SEARCH_CAP = 200


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _check_cancel(cancel):
    if cancel is not None and cancel.is_set():
        raise SearchBudgetExceeded("search cancelled")


class SimpleGraph:
    """Irreflexive symmetric graph."""

    directed = False

    def __init__(self, n: int, masks: Sequence[int]):
        if len(masks) != n:
            raise BadParameter("need one adjacency mask per vertex")
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m >> v & 1:
                raise BadParameter(f"self-loop at {v}")
            if m & ~full:
                raise VertexOutOfRange(f"neighbour of {v} out of range")
        for v, m in enumerate(masks):
            for u in iter_bits(m):
                if not masks[u] >> v & 1:
                    raise BadParameter(f"edge {v}-{u} is not symmetric")
        self.n = n
        self.masks = tuple(masks)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise BadParameter(f"self-loop at {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, masks)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={self.edge_count})"

    def __eq__(self, other):
        return isinstance(other, SimpleGraph) and self.n == other.n and self.masks == other.masks

    def __hash__(self):
        return hash((self.n, self.masks))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(iter_bits(m)) for m in self.masks)

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def is_subgraph_of(self, other: "SimpleGraph") -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.masks, other.masks))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}


class DiGraph:
    """Irreflexive digraph; ``masks[v]`` holds the successors of ``v``."""

    directed = True

    def __init__(self, n: int, masks: Sequence[int]):
        if len(masks) != n:
            raise BadParameter("need one successor mask per vertex")
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m >> v & 1:
                raise BadParameter(f"loop at {v}")
            if m & ~full:
                raise VertexOutOfRange(f"successor of {v} out of range")
        self.n = n
        self.masks = tuple(masks)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "DiGraph":
        masks = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"arc ({u}, {v}) outside 0..{n - 1}")
            masks[u] |= 1 << v
        return cls(n, masks)

    def __repr__(self):
        return f"DiGraph(n={self.n}, arcs={sum(m.bit_count() for m in self.masks)})"

    def __eq__(self, other):
        return isinstance(other, DiGraph) and self.n == other.n and self.masks == other.masks

    def __hash__(self):
        return hash((self.n, self.masks, True))

    @cached_property
    def pred_masks(self) -> tuple[int, ...]:
        pred = [0] * self.n
        for v, m in enumerate(self.masks):
            for u in iter_bits(m):
                pred[u] |= 1 << v
        return tuple(pred)

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(iter_bits(m)) for m in self.masks)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.succ[u]]

    def underlying(self) -> SimpleGraph:
        return SimpleGraph(self.n, [a | b for a, b in zip(self.masks, self.pred_masks)])

    def to_json(self) -> dict:
        return {"n": self.n, "directed": True, "arcs": [list(a) for a in self.arcs()]}


def graph_from_json(data: Mapping) -> SimpleGraph | DiGraph:
    if data.get("directed"):
        return DiGraph.from_arcs(int(data["n"]), [tuple(a) for a in data["arcs"]])
    return SimpleGraph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])


def load_graph(path) -> SimpleGraph | DiGraph:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def to_dot(g: SimpleGraph | DiGraph, labels: Mapping[int, str] | None = None,
           name: str = "G") -> str:
    kind, arrow = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{kind} {json.dumps(name)} {{"]
    for v in range(g.n):
        if labels is not None and v in labels:
            lines.append(f"  {v} [label={json.dumps(str(labels[v]))}];")
        else:
            lines.append(f"  {v};")
    pairs = g.arcs() if g.directed else g.edges()
    for u, v in pairs:
        lines.append(f"  {u} {arrow} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural operations

def induced_subgraph(g: SimpleGraph, vertices: Iterable[int]) -> tuple[SimpleGraph, dict[int, int]]:
    """Subgraph induced by ``vertices``; also returns the old->new index map."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise VertexOutOfRange(f"vertex {v} not in graph of order {g.n}")
    index = {v: i for i, v in enumerate(vs)}
    masks = []
    for v in vs:
        m = 0
        for u in iter_bits(g.masks[v]):
            if u in index:
                m |= 1 << index[u]
        masks.append(m)
    return SimpleGraph(len(vs), masks), index


def complement(g: SimpleGraph) -> SimpleGraph:
    full = (1 << g.n) - 1
    return SimpleGraph(g.n, [full & ~m & ~(1 << v) for v, m in enumerate(g.masks)])


def closed_neighborhood(g: SimpleGraph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise VertexOutOfRange(v)
    return frozenset(iter_bits(g.masks[v] | 1 << v))


def strong_product(g: SimpleGraph, h: SimpleGraph, *, size_cap: int = PRODUCT_CAP) -> SimpleGraph:
    """Vertex (x, y) is ``x * h.n + y``; adjacency is "equal or adjacent" in both coordinates."""
    n = g.n * h.n
    if n > size_cap:
        raise ProductTooLarge(f"strong product of order {n} exceeds cap {size_cap}")
    m = h.n
    h_closed = [hm | 1 << y for y, hm in enumerate(h.masks)]
    masks = []
    for x in range(g.n):
        xs = list(iter_bits(g.masks[x] | 1 << x))
        for y in range(m):
            block = h_closed[y]
            mask = 0
            for x2 in xs:
                mask |= block << (x2 * m)
            masks.append(mask & ~(1 << (x * m + y)))
    return SimpleGraph(n, masks)


# ---------------------------------------------------------------------------
# cliques

def closed_twin_classes(g: SimpleGraph) -> list[list[int]]:
    """Partition by equal closed neighbourhoods, classes in order of first vertex."""
    groups: dict[int, list[int]] = {}
    for v, m in enumerate(g.masks):
        groups.setdefault(m | 1 << v, []).append(v)
    return list(groups.values())


def _bron_kerbosch(masks: Sequence[int], universe: int) -> list[int]:
    """All maximal cliques (as bitmasks) of the graph restricted to ``universe``."""
    out: list[int] = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            return
        pivot = max(iter_bits(p | x), key=lambda u: (p & masks[u]).bit_count())
        for v in iter_bits(p & ~masks[pivot]):
            bit = 1 << v
            expand(r | bit, p & masks[v], x & masks[v])
            p &= ~bit
            x |= bit

    if universe:
        expand(0, universe, 0)
    return out


def maximal_cliques_generic(g: SimpleGraph) -> list[frozenset[int]]:
    """Every inclusion-maximal clique, sorted by (size desc, members).

    Closed twins always lie in the same maximal cliques, so the search runs on
    one representative per twin class and the classes are expanded afterwards.
    """
    if g.n == 0:
        return []
    classes = closed_twin_classes(g)
    reps = [c[0] for c in classes]
    rep_index = {r: i for i, r in enumerate(reps)}
    qmasks = []
    for r in reps:
        m = 0
        for u in iter_bits(g.masks[r]):
            if u in rep_index:
                m |= 1 << rep_index[u]
        qmasks.append(m)
    found = _bron_kerbosch(qmasks, (1 << len(reps)) - 1)
    cliques = []
    for cm in found:
        members = []
        for i in iter_bits(cm):
            members.extend(classes[i])
        cliques.append(frozenset(members))
    cliques.sort(key=lambda c: (-len(c), sorted(c)))
    return cliques


def clique_number_generic(g: SimpleGraph) -> int:
    return max((len(c) for c in maximal_cliques_generic(g)), default=0)


# ---------------------------------------------------------------------------
# colouring

def _dsatur_greedy(masks: Sequence[int], n: int) -> list[int]:
    colors = [-1] * n
    for _ in range(n):
        best, best_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[u] for u in iter_bits(masks[v]) if colors[u] >= 0})
            key = (sat, masks[v].bit_count())
            if best_key is None or key > best_key:
                best, best_key = v, key
        used = {colors[u] for u in iter_bits(masks[best]) if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[best] = c
    return colors


def chromatic_number_exact(g: SimpleGraph, *, cap: int = CHROMATIC_CAP, force: bool = False,
                           cancel=None) -> int:
    """Exact chromatic number by DSATUR-ordered branch and bound."""
    n = g.n
    if n == 0:
        return 0
    if n > cap and not force:
        raise TooLargeForExactSearch(f"{n} vertices exceeds exact colouring cap {cap}")
    masks = g.masks
    lower = clique_number_generic(g)
    greedy = _dsatur_greedy(masks, n)
    best = max(greedy) + 1
    if best == lower:
        return best

    colors = [-1] * n

    def pick() -> int:
        chosen, chosen_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[u] for u in iter_bits(masks[v]) if colors[u] >= 0})
            key = (sat, masks[v].bit_count())
            if chosen_key is None or key > chosen_key:
                chosen, chosen_key = v, key
        return chosen

    def search(colored: int, used: int):
        nonlocal best
        _check_cancel(cancel)
        if used >= best:
            return
        if colored == n:
            best = used
            return
        v = pick()
        blocked = {colors[u] for u in iter_bits(masks[v]) if colors[u] >= 0}
        for c in range(used):
            if c not in blocked:
                colors[v] = c
                search(colored + 1, used)
                colors[v] = -1
                if best == lower:
                    return
        if used + 1 < best:
            colors[v] = used
            search(colored + 1, used + 1)
            colors[v] = -1

    search(0, 0)
    return best


def is_proper_coloring(g: SimpleGraph, colors: Sequence[int]) -> bool:
    return len(colors) == g.n and all(colors[u] != colors[v] for u, v in g.edges())


# ---------------------------------------------------------------------------
# odd holes and antiholes

@dataclass(frozen=True)
class HoleWitness:
    vertices: tuple[int, ...]
    in_complement: bool

    @property
    def length(self) -> int:
        return len(self.vertices)


def twin_free_core(masks: Sequence[int], universe: int) -> int:
    """Repeatedly drop vertices that have a (closed or open) twin.

    An odd hole or antihole of length >= 5 never contains two twins, and a
    twin can stand in for a dropped vertex, so the core has an odd hole or
    antihole iff the whole graph does.
    """
    keep = universe
    changed = True
    while changed:
        changed = False
        for closed in (True, False):
            seen: set[int] = set()
            for v in iter_bits(keep):
                key = masks[v] & keep
                if closed:
                    key |= 1 << v
                if key in seen:
                    keep &= ~(1 << v)
                    changed = True
                else:
                    seen.add(key)
    return keep


def _find_odd_hole(masks: Sequence[int], universe: int, max_len: int, cancel=None):
    """Induced odd cycle of length 5..max_len inside ``universe`` (as a vertex list).

    Grows induced paths s, v1, ..., vk from the smallest cycle vertex s; a
    path may only return to s at its closing vertex.
    """
    for s in iter_bits(universe):
        _check_cancel(cancel)
        allowed = universe & ~((1 << (s + 1)) - 1)
        ns = masks[s]
        for v1 in iter_bits(ns & allowed):
            # (path, bits of path, union of neighbourhoods of v1..v_{k-1})
            stack = [([s, v1], 1 << s | 1 << v1, 0)]
            while stack:
                path, on_path, interior_nb = stack.pop()
                k = len(path) - 1
                last = path[-1]
                cands = masks[last] & allowed & ~on_path & ~interior_nb
                for u in iter_bits(cands):
                    if ns >> u & 1:
                        length = k + 2
                        if k >= 2 and length % 2 == 1 and v1 < u:
                            return path + [u]
                        continue
                    if k + 2 < max_len:
                        stack.append((path + [u], on_path | 1 << u, interior_nb | masks[last]))
    return None


def find_induced_odd_hole_or_antihole(g: SimpleGraph, max_len: int = 11, *,
                                      cap: int = HOLE_SEARCH_CAP, force: bool = False,
                                      cancel=None) -> HoleWitness | None:
    """Bounded Berge check.

    A returned witness is always a genuine induced odd cycle of ``g`` (or of
    its complement, flagged). ``None`` only means no such cycle of length
    ``<= max_len`` exists.
    """
    if max_len < 5 or max_len % 2 == 0:
        raise BadParameter(f"max_len must be odd and >= 5, got {max_len}")
    if g.n > cap and not force:
        raise TooLargeForExactSearch(f"hole search on {g.n} vertices exceeds cap {cap}")
    universe = (1 << g.n) - 1
    core = twin_free_core(g.masks, universe)
    found = _find_odd_hole(g.masks, core, max_len, cancel)
    if found is not None:
        return HoleWitness(tuple(found), False)
    comp = complement(g).masks
    found = _find_odd_hole(comp, core, max_len, cancel)
    if found is not None:
        return HoleWitness(tuple(found), True)
    return None


def is_induced_cycle(g: SimpleGraph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(cycle[i], cycle[j]) != consecutive:
                return False
    return True
