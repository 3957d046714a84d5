"""Finite groups given by multiplication tables."""
from __future__ import annotations

from itertools import permutations, product
from typing import Sequence

from .errors import InvalidInput


class FiniteGroup:
    """A finite group on ``0..order-1`` with identity ``0``.

    The table is validated on construction: closure, associativity, a two
    sided identity at index 0 and two sided inverses.
    """

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None, label: str = ""):
        table = tuple(tuple(row) for row in table)
        n = len(table)
        if n == 0:
            raise InvalidInput("a group needs at least one element")
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in table):
            raise InvalidInput("multiplication table must be square with entries in range")
        if any(table[0][x] != x or table[x][0] != x for x in range(n)):
            raise InvalidInput("element 0 must be a two-sided identity")
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidInput(f"table is not associative at {(a, b, c)}")
        inverse = []
        for a in range(n):
            inv = [b for b in range(n) if table[a][b] == 0]
            if len(inv) != 1 or table[inv[0]][a] != 0:
                raise InvalidInput(f"element {a} has no two-sided inverse")
            inverse.append(inv[0])
        self.table = table
        self.order = n
        self.identity = 0
        self.inverse_table = tuple(inverse)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        if len(set(self.names)) != n:
            raise InvalidInput("element names must be distinct")
        self._index = {name: i for i, name in enumerate(self.names)}
        self.label = label

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.table[r][x]
        return r

    def name(self, a: int) -> str:
        return self.names[a]

    def index(self, name) -> int:
        key = str(name)
        if key not in self._index:
            raise InvalidInput(f"{name!r} is not an element of {self.label or 'the group'}")
        return self._index[key]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(self.order))

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table and self.names == other.names

    def __hash__(self):
        return hash((self.table, self.names))

    def __repr__(self):
        return f"FiniteGroup({self.label or self.order})"


def trivial() -> FiniteGroup:
    return FiniteGroup([[0]], ["1"], label="1")


def cyclic(n: int) -> FiniteGroup:
    if n == 2:
        names = ["1", "-1"]
    else:
        names = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], names, label=f"Z{n}")


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # left-to-right composition, matching the convention for partial maps
    table = [[index[tuple(q[p[x]] for x in range(n))] for q in perms] for p in perms]
    names = ["".join(str(x + 1) for x in p) for p in perms]
    names[0] = "1"
    return FiniteGroup(table, names, label=f"S{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = list(product(range(g.order), range(h.order)))
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    names = [f"({g.name(a)},{h.name(b)})" for a, b in pairs]
    return FiniteGroup(table, names, label=f"{g.label}x{h.label}")


def by_name(label: str) -> FiniteGroup:
    """``"1"``/``"trivial"``, ``"Zn"`` or ``"Sn"``."""
    label = label.strip()
    if label in ("1", "trivial"):
        return trivial()
    if len(label) >= 2 and label[0] in "ZS" and label[1:].isdigit():
        n = int(label[1:])
        if n < 1:
            raise InvalidInput(f"bad group order in {label!r}")
        if n == 1:
            return trivial()
        return cyclic(n) if label[0] == "Z" else symmetric(n)
    raise InvalidInput(f"unknown group {label!r}; expected 1, Zn or Sn")
