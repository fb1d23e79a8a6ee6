"""The catalog of small groups swept by the verification suite.

Groups are built from parameters on demand; nothing is shipped as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable

from .group import (FiniteGroup, abelian, cyclic, dihedral, direct_product, factorize,
                    generalized_quaternion, heisenberg27, klein, m16)

MAX_CATALOG_ORDER = 200


def partitions(k: int, largest: int | None = None):
    """Partitions of k as non-increasing tuples."""
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


@dataclass
class CatalogEntry:
    name: str
    order: int
    kind: str
    build: Callable[[], FiniteGroup] = field(repr=False)
    abelian_type: dict[int, tuple[int, ...]] | None = None   # p -> exponents, descending

    @cached_property
    def group(self) -> FiniteGroup:
        G = self.build()
        G.name = self.name
        assert G.n == self.order
        return G

    @property
    def is_abelian(self) -> bool:
        return self.abelian_type is not None


def _abelian_entries(n: int) -> list[CatalogEntry]:
    fac = sorted(factorize(n).items()) if n > 1 else []
    out = []
    for choice in product(*(list(partitions(k)) for _, k in fac)):
        atype = {p: part for (p, _), part in zip(fac, choice)}
        if all(len(part) == 1 for part in choice):
            continue                                   # cyclic, listed separately
        factors = [p ** e for p, part in atype.items() for e in part]
        if factors == [2, 2]:
            out.append(CatalogEntry("Klein", 4, "abelian", klein, atype))
            continue
        name = "x".join(f"C{f}" for f in factors)
        out.append(CatalogEntry(name, n, "abelian", lambda f=factors: abelian(f), atype))
    return out


# coprime products of a non-abelian group with a cyclic group: (left, right order)
_PRODUCTS = [
    ("D6", 5), ("D6", 7), ("D10", 3), ("Q8", 3), ("D8", 3), ("Q8", 5), ("D8", 5),
    ("Q8", 9), ("M16", 3), ("Heis27", 2), ("Heis27", 4), ("D6", 25),
]

_NAMED = {
    "M16": m16,
    "Heis27": heisenberg27,
}


def _named_builder(name: str) -> Callable[[], FiniteGroup]:
    if name in _NAMED:
        return _NAMED[name]
    order = int(name[1:])
    return (lambda: dihedral(order)) if name[0] == "D" else (lambda: generalized_quaternion(order))


def catalog(max_order: int = 64, *, min_order: int = 1) -> list[CatalogEntry]:
    """Cyclic and abelian groups, dihedral, generalized quaternion, M16,
    Heis27 and a fixed list of coprime products, sorted by order then name."""
    if max_order > MAX_CATALOG_ORDER:
        raise ValueError(f"catalog is capped at order {MAX_CATALOG_ORDER}")
    entries: list[CatalogEntry] = []
    for n in range(max(1, min_order), max_order + 1):
        atype = {p: (k,) for p, k in factorize(n).items()} if n > 1 else {}
        entries.append(CatalogEntry(f"C{n}", n, "cyclic", lambda n=n: cyclic(n), atype))
        entries.extend(_abelian_entries(n))
        if n >= 6 and n % 2 == 0:
            entries.append(CatalogEntry(f"D{n}", n, "dihedral", lambda n=n: dihedral(n)))
        if n >= 8 and n % 4 == 0:
            entries.append(CatalogEntry(f"Q{n}", n, "quaternion",
                                        lambda n=n: generalized_quaternion(n)))
    for name, n in (("M16", 16), ("Heis27", 27)):
        if min_order <= n <= max_order:
            entries.append(CatalogEntry(name, n, name.lower(), _NAMED[name]))
    for left, m in _PRODUCTS:
        base = _named_builder(left)
        order = base().n * m if left in _NAMED else int(left[1:]) * m
        if min_order <= order <= max_order:
            entries.append(CatalogEntry(
                f"{left}xC{m}", order, "product",
                lambda base=base, m=m: direct_product(base(), cyclic(m))))
    entries.sort(key=lambda e: (e.order, e.kind != "cyclic", e.name))
    return entries


def by_name(max_order: int = MAX_CATALOG_ORDER) -> dict[str, CatalogEntry]:
    return {e.name: e for e in catalog(max_order)}
