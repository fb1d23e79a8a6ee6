"""Rooted p-trees and p-semitrees: the enhanced power graphs of abelian p-groups."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

from .cliques import abelian_invariants_from_graph
from .errors import BadParameter, NotAbelianEPG, NotTransitive, TooLarge, TupleOutOfRange
from .graph import SimpleGraph
from .group import euler_phi, exact_log, is_prime

SEMITREE_CAP = 4096


@dataclass(frozen=True)
class PTuple:
    p: int
    a: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise BadParameter(f"{self.p} is not prime")
        if any(x < 1 for x in self.a):
            raise BadParameter(f"tuple entries must be positive: {self.a}")

    @property
    def order(self) -> int:
        return self.p ** sum(self.a)

    def canonical(self) -> "PTuple":
        return PTuple(self.p, tuple(sorted(self.a, reverse=True)))

    def factor_orders(self) -> list[int]:
        return [self.p ** x for x in self.a]


def _check_in_range(b: Sequence[int], a: Sequence[int]):
    if len(b) != len(a) or any(not 0 <= x <= y for x, y in zip(b, a)):
        raise TupleOutOfRange(f"{tuple(b)} is not between 0 and {tuple(a)}")


def width(b: Sequence[int], a: Sequence[int]) -> int:
    _check_in_range(b, a)
    return sum(1 for x, y in zip(b, a) if x != y)


def height(b: Sequence[int], a: Sequence[int]) -> int:
    _check_in_range(b, a)
    return max((y - x for x, y in zip(b, a)), default=0)


def successors(b: Sequence[int], a: Sequence[int]) -> list[tuple[int, ...]]:
    """Coordinates below a_i drop by one; coordinates at a_i stay or drop by one."""
    _check_in_range(b, a)
    choices = []
    for x, y in zip(b, a):
        if x != y:
            if x == 0:
                return []
            choices.append((x - 1,))
        else:
            choices.append((y, y - 1))
    out: list[tuple[int, ...]] = [()]
    for opts in choices:
        out = [t + (c,) for t in out for c in opts]
    top = tuple(a)
    return sorted({t for t in out if t != top}, reverse=True)


@dataclass(frozen=True)
class TreeNode:
    label: tuple[int, ...]
    parent: int | None
    depth: int


@dataclass(frozen=True)
class RootedPTree:
    p: int
    a: tuple[int, ...]
    nodes: tuple[TreeNode, ...]

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.nodes]
        for i, node in enumerate(self.nodes):
            if node.parent is not None:
                kids[node.parent].append(i)
        return kids


def _child_plan(p: int, a: tuple[int, ...], label: tuple[int, ...]) -> list[tuple[tuple[int, ...], int]]:
    """(successor label, how many children carry it) for a node labelled ``label``."""
    if label == a:
        return [(d, (p - 1) ** (width(d, a) - 1)) for d in successors(label, a)]
    if 0 in label:
        return []
    wc = width(label, a)
    return [(d, p ** (wc - 1) * (p - 1) ** (width(d, a) - wc)) for d in successors(label, a)]


def _semitree_size(p: int, a: tuple[int, ...]) -> int:
    return p ** sum(a)


def build_rooted_p_tree(p: int, a: Sequence[int], *, cap: int = SEMITREE_CAP) -> RootedPTree:
    """Breadth-first construction; equal labels among siblings are separate nodes."""
    a = tuple(int(x) for x in a)
    PTuple(p, a)
    if _semitree_size(p, a) > cap:
        raise TooLarge(f"S_{p}{a} would have {_semitree_size(p, a)} vertices (cap {cap})")
    nodes = [TreeNode(a, None, 0)]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        node = nodes[i]
        for label, count in _child_plan(p, a, node.label):
            for _ in range(count):
                nodes.append(TreeNode(label, i, node.depth + 1))
                queue.append(len(nodes) - 1)
    tree = RootedPTree(p, a, tuple(nodes))
    _check_child_counts(tree)
    return tree


def _check_child_counts(tree: RootedPTree):
    p, a = tree.p, tree.a
    n = len(a)
    for i, kids in enumerate(tree.children()):
        label = tree.nodes[i].label
        got = Counter(tree.nodes[k].label for k in kids)
        if label == a:
            assert len(kids) == (p ** n - 1) // (p - 1)
            for d in successors(a, a):
                assert got[d] == (p - 1) ** (width(d, a) - 1)
        elif 0 in label:
            assert not kids
        else:
            assert len(kids) == p ** (n - 1)
            wc = width(label, a)
            for d in successors(label, a):
                assert got[d] == p ** (wc - 1) * (p - 1) ** (width(d, a) - wc)


@dataclass(frozen=True)
class PSemitree:
    tree: RootedPTree
    graph: SimpleGraph
    blocks: tuple[tuple[int, ...], ...]    # vertices replacing each tree node


def build_p_semitree(p: int, a: Sequence[int], *, cap: int = SEMITREE_CAP) -> PSemitree:
    """Blow each depth-k node up to a clique of size phi(p^k) and join comparable nodes."""
    tree = build_rooted_p_tree(p, a, cap=cap)
    blocks = []
    nxt = 0
    for node in tree.nodes:
        size = euler_phi(p ** node.depth)
        blocks.append(tuple(range(nxt, nxt + size)))
        nxt += size
    n = nxt
    assert n == _semitree_size(p, tree.a)
    block_mask = [((1 << len(b)) - 1) << b[0] for b in blocks]
    up = [0] * len(tree.nodes)
    for i, node in enumerate(tree.nodes):          # parents precede children
        if node.parent is not None:
            up[i] = up[node.parent] | block_mask[node.parent]
    down = [0] * len(tree.nodes)
    for i in range(len(tree.nodes) - 1, 0, -1):
        parent = tree.nodes[i].parent
        down[parent] |= down[i] | block_mask[i]
    masks = [0] * n
    for i, b in enumerate(blocks):
        around = block_mask[i] | up[i] | down[i]
        for v in b:
            masks[v] = around & ~(1 << v)
    return PSemitree(tree, SimpleGraph(n, masks), tuple(blocks))


def is_p_semitree(g: SimpleGraph, p: int) -> PTuple | None:
    """The tuple whose p-semitree is isomorphic to ``g``, or None."""
    from .iso import are_isomorphic

    if exact_log(g.n, p) is None:
        return None
    if g.n == 1:
        return PTuple(p, ())
    try:
        invariants = abelian_invariants_from_graph(g)
    except (NotAbelianEPG, NotTransitive):
        return None
    if set(invariants) != {p}:
        return None
    candidate = PTuple(p, tuple(invariants[p]))
    model = build_p_semitree(p, candidate.a, cap=max(SEMITREE_CAP, g.n))
    if are_isomorphic(g, model.graph):
        return candidate
    return None
