"""Partial functions between finite sets ``{0..m-1} -> {0..k-1}``.

Functions act on the right and compose left to right: ``x(fg) = (xf)g``.
Python's ``f * g`` is that composition. The table stores ``UNDEF`` (-1) for
points outside the domain, so equality, hashing and the canonical sort order
are all plain tuple operations.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import DegreeViolation, InvalidInput
from .graphs import SimpleGraph

UNDEF = -1


class PartialFunction:
    __slots__ = ("table", "cod_size", "_hash")

    def __init__(self, table: Sequence[int], cod_size: int | None = None):
        table = tuple(UNDEF if x is None else int(x) for x in table)
        if cod_size is None:
            cod_size = len(table)
        for x in table:
            if x != UNDEF and not 0 <= x < cod_size:
                raise InvalidInput(f"image {x} outside codomain of size {cod_size}")
        self.table = table
        self.cod_size = cod_size
        self._hash = hash((table, cod_size))

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PartialFunction":
        return cls(range(n), n)

    @classmethod
    def empty(cls, n: int, cod_size: int | None = None) -> "PartialFunction":
        return cls((UNDEF,) * n, n if cod_size is None else cod_size)

    @classmethod
    def from_dict(cls, mapping: dict, dom_size: int, cod_size: int | None = None) -> "PartialFunction":
        table = [UNDEF] * dom_size
        for x, y in mapping.items():
            if not 0 <= x < dom_size:
                raise InvalidInput(f"point {x} outside domain of size {dom_size}")
            table[x] = y
        return cls(table, dom_size if cod_size is None else cod_size)

    @classmethod
    def parse(cls, text: str, n: int, one_based: bool = True, cod_size: int | None = None) -> "PartialFunction":
        """Parse ``"1>3,2>3"`` (or ``1↦3 2↦3``) into a map on ``n`` points."""
        shift = 1 if one_based else 0
        mapping = {}
        for token in text.replace(",", " ").split():
            sep = ">" if ">" in token else "↦"
            try:
                x, y = token.split(sep)
                mapping[int(x) - shift] = int(y) - shift
            except ValueError:
                raise InvalidInput(f"cannot parse map entry {token!r}") from None
        return cls.from_dict(mapping, n, cod_size)

    # -- basic protocol -----------------------------------------------------

    @property
    def dom_size(self) -> int:
        return len(self.table)

    def __call__(self, x: int):
        y = self.table[x]
        return None if y == UNDEF else y

    def __eq__(self, other):
        return (
            isinstance(other, PartialFunction)
            and self.table == other.table
            and self.cod_size == other.cod_size
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.table, self.cod_size) < (other.table, other.cod_size)

    def __mul__(self, other: "PartialFunction") -> "PartialFunction":
        return compose(self, other)

    def __repr__(self):
        return f"PartialFunction({list(self.table)}, cod_size={self.cod_size})"

    def pretty(self, one_based: bool = True) -> str:
        shift = 1 if one_based else 0
        parts = [f"{x + shift}↦{y + shift}" for x, y in enumerate(self.table) if y != UNDEF]
        return " ".join(parts) if parts else "∅"

    # -- structure ----------------------------------------------------------

    def domain(self) -> frozenset:
        return frozenset(x for x, y in enumerate(self.table) if y != UNDEF)

    def image(self) -> frozenset:
        return frozenset(y for y in self.table if y != UNDEF)

    @property
    def rank(self) -> int:
        return len(self.image())

    def preimage(self, ys: Iterable[int]) -> frozenset:
        ys = set(ys)
        return frozenset(x for x, y in enumerate(self.table) if y in ys)

    def is_empty(self) -> bool:
        return all(y == UNDEF for y in self.table)

    def is_injective(self) -> bool:
        img = [y for y in self.table if y != UNDEF]
        return len(img) == len(set(img))

    def is_total(self) -> bool:
        return UNDEF not in self.table

    def is_idempotent(self) -> bool:
        return self.dom_size == self.cod_size and compose(self, self) == self

    def inverse(self) -> "PartialFunction":
        """Inverse of a partial bijection, as a map ``cod -> dom``."""
        if not self.is_injective():
            raise InvalidInput("only injective partial functions have an inverse")
        table = [UNDEF] * self.cod_size
        for x, y in enumerate(self.table):
            if y != UNDEF:
                table[y] = x
        return PartialFunction(table, self.dom_size)

    def fibers(self) -> list:
        return fibers(self)

    def degree(self) -> int:
        return degree(self)


def compose(f: PartialFunction, g: PartialFunction) -> PartialFunction:
    """Left-to-right composite ``fg``: first ``f``, then ``g``."""
    if f.cod_size != g.dom_size:
        raise InvalidInput(f"cannot compose: codomain size {f.cod_size} != domain size {g.dom_size}")
    gt = g.table
    return PartialFunction(tuple(UNDEF if y == UNDEF else gt[y] for y in f.table), g.cod_size)


def fibers(f: PartialFunction) -> list:
    """Blocks of ``ker(f)``, each a sorted tuple, ordered by least element."""
    blocks = defaultdict(list)
    for x, y in enumerate(f.table):
        if y != UNDEF:
            blocks[y].append(x)
    return sorted(tuple(b) for b in blocks.values())


def degree(f: PartialFunction) -> int:
    counts = defaultdict(int)
    for y in f.table:
        if y != UNDEF:
            counts[y] += 1
    return max(counts.values(), default=0)


def ts_degree(fs: Iterable[PartialFunction]) -> int:
    return max((degree(f) for f in fs), default=0)


def restrict(f: PartialFunction, s: Iterable[int]) -> PartialFunction:
    keep = set(s)
    return PartialFunction(tuple(y if x in keep else UNDEF for x, y in enumerate(f.table)), f.cod_size)


def join(f: PartialFunction, g: PartialFunction) -> PartialFunction:
    """Union of the graphs of two partial functions with disjoint domains."""
    if f.dom_size != g.dom_size or f.cod_size != g.cod_size:
        raise InvalidInput("join needs functions between the same sets")
    table = []
    for x, (a, b) in enumerate(zip(f.table, g.table)):
        if a != UNDEF and b != UNDEF:
            raise InvalidInput(f"domains overlap at point {x}")
        table.append(a if a != UNDEF else b)
    return PartialFunction(table, f.cod_size)


@dataclass(frozen=True)
class SingInjDecomposition:
    sing: PartialFunction
    inj: PartialFunction
    original: PartialFunction
    #: fibers of size >= 3 (empty unless the degree-2 regime is broken)
    oversized: tuple = ()

    @property
    def degree_violation(self) -> bool:
        return bool(self.oversized)

    def raise_for_violation(self):
        if self.oversized:
            raise DegreeViolation(f"fiber {list(self.oversized[0])} has more than two points",
                                  self.oversized[0])


def sing_inj(f: PartialFunction) -> SingInjDecomposition:
    """Split ``f`` into its singular part (fibers of size >= 2) and injective part.

    A fiber of size three or more is recorded in ``oversized`` rather than
    raised, so callers can inspect the decomposition before deciding.
    """
    if f.dom_size != f.cod_size:
        raise InvalidInput("sing/inj decomposition needs an endomap")
    fibs = fibers(f)
    multi = set()
    oversized = []
    for b in fibs:
        if len(b) >= 2:
            multi.update(b)
        if len(b) >= 3:
            oversized.append(b)
    rest = f.domain() - multi
    return SingInjDecomposition(restrict(f, multi), restrict(f, rest), f, tuple(oversized))


def size2_fibers(fs: Iterable[PartialFunction]) -> set:
    """All fibers of size exactly two among ``fs``; raises on a larger one."""
    edges = set()
    for f in fs:
        for b in fibers(f):
            if len(b) > 2:
                raise DegreeViolation(f"fiber {list(b)} of {f.pretty()} has more than two points", b)
            if len(b) == 2:
                edges.add(b)
    return edges


def fiber_graph(fs: Iterable[PartialFunction], n: int) -> SimpleGraph:
    """Graph on ``n`` points whose edges are the two-point fibers of ``fs``."""
    fs = list(fs)
    for f in fs:
        if f.dom_size != n or f.cod_size != n:
            raise InvalidInput(f"expected maps on {n} points, got {f.dom_size} -> {f.cod_size}")
    return SimpleGraph(n, frozenset(size2_fibers(fs)))


def all_partial_maps(n: int, m: int | None = None):
    """Every partial map from ``n`` points to ``m`` points (``(m+1)**n`` of them)."""
    m = n if m is None else m
    for table in product(range(UNDEF, m), repeat=n):
        yield PartialFunction(table, m)


def partial_bijections(n: int) -> list:
    return [f for f in all_partial_maps(n) if f.is_injective()]
