"""Finite groups given by Cayley table.

Elements are the integers ``0..n-1`` and the identity is always ``0``.
Everything else in the package reads algebraic facts from here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParameter,
    NoIdentityAtZero,
    NotAssociative,
    NotLatinSquare,
    NotNilpotent,
    ProductTooLarge,
)

DEFAULT_SIZE_CAP = 2000


# ---------------------------------------------------------------------------
# integer helpers

def factorize(m: int) -> dict[int, int]:
    """Prime factorization of ``m`` by trial division, as ``{p: k}``."""
    if m < 1:
        raise BadParameter(f"cannot factor {m}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == {p: 1}


def euler_phi(m: int) -> int:
    if m <= 0:
        raise BadParameter(f"euler_phi needs m >= 1, got {m}")
    result = 1
    for p, k in factorize(m).items():
        result *= p ** (k - 1) * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small) | {n // d for d in small})


def prime_power_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def exact_log(value: int, p: int) -> int | None:
    """Return k with p**k == value, or None when value is not a power of p."""
    if value < 1:
        return None
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k if value == 1 else None


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicSubgroup:
    generator: int
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)


@dataclass(frozen=True)
class SylowRecord:
    p: int
    k: int
    p_power_elements: int
    unique_sylow: bool


class FiniteGroup:
    """An immutable finite group on element ids ``0..n-1``.

    The constructor validates the table (Latin square, associativity,
    identity at 0). Pass ``check_associativity=False`` only for tables
    built from already validated groups.
    """

    def __init__(self, table, name: str = "G", *, check_associativity: bool = True,
                 size_cap: int = DEFAULT_SIZE_CAP):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotLatinSquare(f"table must be a non-empty square array, got shape {t.shape}")
        n = t.shape[0]
        if n > size_cap:
            raise ProductTooLarge(f"group of order {n} exceeds size cap {size_cap}")
        if t.min() < 0 or t.max() >= n:
            raise NotLatinSquare("table entries must lie in 0..n-1")
        ids = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(t[i]), ids):
                raise NotLatinSquare(f"row {i} is not a permutation")
            if not np.array_equal(np.sort(t[:, i]), ids):
                raise NotLatinSquare(f"column {i} is not a permutation")
        if check_associativity:
            for a in range(n):
                left = t[t[a]]        # left[b, c] = (a b) c
                right = t[a][t]       # right[b, c] = a (b c)
                if not np.array_equal(left, right):
                    b, c = np.argwhere(left != right)[0]
                    raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
        if not (np.array_equal(t[0], ids) and np.array_equal(t[:, 0], ids)):
            raise NoIdentityAtZero("element 0 is not the identity")
        t.setflags(write=False)
        self.table = t
        self.n = n
        self.name = name
        self._rows = t.tolist()
        inv = [0] * n
        for x in range(n):
            inv[x] = self._rows[x].index(0)
        assert all(self._rows[inv[x]][x] == 0 for x in range(n))
        self.inverses = tuple(inv)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, n={self.n})"

    def __len__(self):
        return self.n

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inverse(self, x: int) -> int:
        return self.inverses[x]

    def power(self, x: int, k: int) -> int:
        pw = self.powers(x)
        return pw[k % len(pw)]

    def powers(self, x: int) -> tuple[int, ...]:
        """``(x^0, x^1, ..., x^(o(x)-1))``."""
        return self._power_lists[x]

    @cached_property
    def _power_lists(self) -> tuple[tuple[int, ...], ...]:
        rows = self._rows
        out = []
        for x in range(self.n):
            seq = [0]
            y = x
            while y != 0:
                seq.append(y)
                y = rows[y][x]
            out.append(tuple(seq))
        return tuple(out)

    @cached_property
    def orders(self) -> tuple[int, ...]:
        orders = tuple(len(p) for p in self._power_lists)
        assert all(self.n % o == 0 for o in orders), "element order must divide n"
        return orders

    def element_order(self, x: int) -> int:
        self._check(x)
        return self.orders[x]

    def _check(self, x: int):
        if not 0 <= x < self.n:
            raise BadParameter(f"element {x} out of range for group of order {self.n}")

    # -- cyclic subgroups ---------------------------------------------------

    @cached_property
    def _cyclic_key(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(p) for p in self._power_lists)

    def cyclic_subgroup(self, x: int) -> CyclicSubgroup:
        self._check(x)
        return CyclicSubgroup(x, tuple(sorted(self._power_lists[x])))

    @cached_property
    def _cyclic_by_members(self) -> dict[frozenset[int], int]:
        """Distinct cyclic subgroups, each keyed to its smallest generator."""
        out: dict[frozenset[int], int] = {}
        for x, key in enumerate(self._cyclic_key):
            out.setdefault(key, x)
        return out

    def all_cyclic_subgroups(self) -> list[CyclicSubgroup]:
        return [CyclicSubgroup(g, tuple(sorted(m)))
                for m, g in self._cyclic_by_members.items()]

    @cached_property
    def _maximal_cyclic(self) -> tuple[CyclicSubgroup, ...]:
        keys = self._cyclic_key
        non_maximal: set[frozenset[int]] = set()
        for members in self._cyclic_by_members:
            for z in members:
                if keys[z] != members:
                    non_maximal.add(keys[z])
        found = [CyclicSubgroup(g, tuple(sorted(m)))
                 for m, g in self._cyclic_by_members.items() if m not in non_maximal]
        found.sort(key=lambda c: c.members)
        return tuple(found)

    def maximal_cyclic_subgroups(self) -> list[CyclicSubgroup]:
        return list(self._maximal_cyclic)

    def generator_class(self, x: int) -> frozenset[int]:
        """Elements y with <y> = <x>."""
        key = self._cyclic_key[x]
        o = self.orders[x]
        return frozenset(y for y in key if self.orders[y] == o)

    # -- global invariants --------------------------------------------------

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def sylow_info(self) -> list[SylowRecord]:
        records = []
        for p, k in sorted(factorize(self.n).items()):
            count = sum(1 for o in self.orders if exact_log(o, p) is not None)
            records.append(SylowRecord(p, k, count, count == p ** k))
        return records

    def is_nilpotent(self) -> bool:
        return all(r.unique_sylow for r in self.sylow_info())

    def p_elements(self, p: int) -> list[int]:
        """Elements whose order is a power of ``p`` (identity included)."""
        return [x for x, o in enumerate(self.orders) if exact_log(o, p) is not None]

    def non_cyclic_sylow_count(self) -> int:
        if not self.is_nilpotent():
            raise NotNilpotent(f"{self.name} is not nilpotent")
        count = 0
        for r in self.sylow_info():
            if r.p ** r.k not in self.orders:
                count += 1
        return count

    def subgroup(self, elements: Iterable[int], name: str | None = None) -> "FiniteGroup":
        """The subgroup on ``elements`` (must be closed), renumbered in sorted order."""
        elems = sorted(set(elements))
        if not elems or elems[0] != 0:
            raise BadParameter("a subgroup must contain the identity")
        index = {x: i for i, x in enumerate(elems)}
        rows = self._rows
        try:
            table = [[index[rows[a][b]] for b in elems] for a in elems]
        except KeyError:
            raise BadParameter("element set is not closed under multiplication") from None
        return FiniteGroup(table, name or f"{self.name}[sub]", check_associativity=False)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "table": self.table.ravel().tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        n = int(data["n"])
        flat = data["table"]
        if len(flat) != n * n:
            raise NotLatinSquare(f"expected {n * n} table entries, got {len(flat)}")
        return cls(np.asarray(flat).reshape(n, n), data.get("name", "G"))


def validate(table, name: str = "G") -> FiniteGroup:
    return FiniteGroup(table, name)


def element_order(G: FiniteGroup, x: int) -> int:
    return G.element_order(x)


def cyclic_subgroup(G: FiniteGroup, x: int) -> CyclicSubgroup:
    return G.cyclic_subgroup(x)


def all_cyclic_subgroups(G: FiniteGroup) -> list[CyclicSubgroup]:
    return G.all_cyclic_subgroups()


def maximal_cyclic_subgroups(G: FiniteGroup) -> list[CyclicSubgroup]:
    return G.maximal_cyclic_subgroups()


def exponent(G: FiniteGroup) -> int:
    return G.exponent


def sylow_info(G: FiniteGroup) -> list[SylowRecord]:
    return G.sylow_info()


def is_nilpotent(G: FiniteGroup) -> bool:
    return G.is_nilpotent()


def non_cyclic_sylow_count(G: FiniteGroup) -> int:
    return G.non_cyclic_sylow_count()


def load_groups(path) -> list[FiniteGroup]:
    """Read one group record or a catalog array from a JSON file."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, list):
        return [FiniteGroup.from_json(d) for d in data]
    return [FiniteGroup.from_json(data)]


# ---------------------------------------------------------------------------
# constructors

def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None, *,
                   size_cap: int = DEFAULT_SIZE_CAP) -> FiniteGroup:
    """G x H with element (g, h) stored at id ``g * |H| + h``."""
    n = G.n * H.n
    if n > size_cap:
        raise ProductTooLarge(f"|{G.name} x {H.name}| = {n} exceeds size cap {size_cap}")
    table = (G.table[:, None, :, None] * H.n + H.table[None, :, None, :]).reshape(n, n)
    return FiniteGroup(table, name or f"{G.name}x{H.name}",
                       check_associativity=False, size_cap=size_cap)


def product_of(groups: Sequence[FiniteGroup], name: str | None = None, *,
               size_cap: int = DEFAULT_SIZE_CAP) -> FiniteGroup:
    if not groups:
        return cyclic(1)
    out = groups[0]
    for H in groups[1:]:
        out = direct_product(out, H, size_cap=size_cap)
    if name is not None or len(groups) > 1:
        out.name = name or "x".join(g.name for g in groups)
    return out


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameter(f"cyclic group order must be positive, got {n}")
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, f"C{n}")


def abelian(factors: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups of the given (prime power) orders."""
    factors = [int(f) for f in factors]
    if not factors or any(f < 1 for f in factors):
        raise BadParameter(f"bad abelian type {factors}")
    for f in factors:
        if f > 1 and len(factorize(f)) != 1:
            raise BadParameter(f"{f} is not a prime power")
    parts = [cyclic(f) for f in factors]
    G = product_of(parts)
    G.name = "x".join(f"C{f}" for f in factors)
    return G


def _semidirect_table(m: int, twist, square) -> np.ndarray:
    """Table on a^i b^j (id i + m*j) with b a^k = a^(twist(k)) b and b^2 = a^square."""
    n = 2 * m
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = x % m, x // m
        for y in range(n):
            k, l = y % m, y // m
            e = i + (twist(k) if j else k)
            if j and l:
                e += square
            table[x, y] = (e % m) + m * ((j + l) % 2)
    return table


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order (2n)."""
    if order < 2 or order % 2:
        raise BadParameter(f"dihedral order must be even and >= 2, got {order}")
    m = order // 2
    return FiniteGroup(_semidirect_table(m, lambda k: -k, 0), f"D{order}")


def generalized_quaternion(order: int) -> FiniteGroup:
    """<a, b | a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1> of the given order 4n."""
    if order < 8 or order % 4:
        raise BadParameter(f"generalized quaternion order must be a multiple of 4, >= 8; got {order}")
    m = order // 2
    return FiniteGroup(_semidirect_table(m, lambda k: -k, m // 2), f"Q{order}")


def klein() -> FiniteGroup:
    G = abelian([2, 2])
    G.name = "Klein"
    return G


def m16() -> FiniteGroup:
    """<a, x | a^8 = x^2 = 1, x a x^-1 = a^5>."""
    return FiniteGroup(_semidirect_table(8, lambda k: 5 * k, 0), "M16")


def heisenberg27() -> FiniteGroup:
    """Unitriangular 3x3 matrices over Z/3: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""
    elems = [(a, b, c) for c in range(3) for b in range(3) for a in range(3)]
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3)]
              for (a2, b2, c2) in elems] for (a, b, c) in elems]
    return FiniteGroup(table, "Heis27")
