"""Rees matrix semigroups ``M0(G, A, B, C)`` and their translational hulls.

Nonzero elements are triples ``(a, g, b)`` of indices into ``A``, ``G`` and
``B``; the zero is ``None``. The structure matrix ``C`` has rows indexed by
``B`` and columns by ``A``, with ``None`` for a zero entry.

A member of the translational hull is a pair of monomial matrices ``(X, Y)``
with ``XC = CY``: ``X`` is row-monomial over ``B`` (a partial map ``f`` with a
group label per point) and ``Y`` is column-monomial over ``A`` (a partial map
``f*`` acting on the left of ``A``, again with labels). Entrywise the
condition reads ``phi(b) C(f(b), a) = C(b, f*(a)) phi*(a)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from itertools import product
from typing import NamedTuple, Sequence

from .config import element_cap
from .errors import DegenerateInput, InvalidInput, ResourceLimit
from .graphs import SimpleGraph, incidence_matrices
from .groups import FiniteGroup, trivial
from .pfun import UNDEF, PartialFunction, all_partial_maps, compose
from .semigroup import TransformationSemigroup, WreathElement, closure, wreath_multiply

ZERO = None


@dataclass(frozen=True)
class ReesMatrixSemigroup:
    group: FiniteGroup
    A: tuple
    B: tuple
    C: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "C", tuple(tuple(row) for row in self.C))
        if len(self.C) != len(self.B):
            raise InvalidInput(f"C has {len(self.C)} rows but B has {len(self.B)} elements")
        for row in self.C:
            if len(row) != len(self.A):
                raise InvalidInput(f"C row of length {len(row)} but A has {len(self.A)} elements")
            for x in row:
                if x is not None and not 0 <= x < self.group.order:
                    raise InvalidInput(f"matrix entry {x} is not a group element")

    @classmethod
    def from_names(cls, group: FiniteGroup, rows: Sequence[Sequence[str]], A=None, B=None) -> "ReesMatrixSemigroup":
        """Build from entry names, ``"0"`` standing for the zero."""
        C = [[None if str(x) == "0" else group.index(x) for x in row] for row in rows]
        A = A if A is not None else [f"a{i + 1}" for i in range(len(C[0]) if C else 0)]
        B = B if B is not None else [f"b{i + 1}" for i in range(len(C))]
        return cls(group, A, B, C)

    def entry(self, b: int, a: int):
        return self.C[b][a]

    def is_regular(self) -> bool:
        rows_ok = all(any(x is not None for x in row) for row in self.C)
        cols_ok = all(any(row[a] is not None for row in self.C) for a in range(len(self.A)))
        return rows_ok and cols_ok

    def require_regular(self):
        if not self.is_regular():
            raise DegenerateInput("structure matrix has a zero row or column")

    def elements(self) -> list:
        return [ZERO] + list(product(range(len(self.A)), range(self.group.order), range(len(self.B))))

    def idempotents(self) -> list:
        G = self.group
        return [ZERO] + [
            (a, G.inv(self.C[b][a]), b)
            for a in range(len(self.A)) for b in range(len(self.B)) if self.C[b][a] is not None
        ]

    def entry_names(self) -> list:
        return [["0" if x is None else self.group.name(x) for x in row] for row in self.C]

    def __len__(self):
        return 1 + len(self.A) * self.group.order * len(self.B)


def rees_multiply(S: ReesMatrixSemigroup, x, y):
    """``(a,g,b)(a',g',b') = (a, g C(b,a') g', b')``, or zero when ``C(b,a') = 0``."""
    if x is ZERO or y is ZERO:
        return ZERO
    a, g, b = x
    a2, g2, b2 = y
    c = S.C[b][a2]
    if c is None:
        return ZERO
    G = S.group
    return (a, G.mul(G.mul(g, c), g2), b2)


def as_semigroup(S: ReesMatrixSemigroup, gens=None) -> TransformationSemigroup:
    """The elements of ``S`` (or the subsemigroup generated by ``gens``) under Rees multiplication."""
    gens = S.elements() if gens is None else list(gens)
    return closure(gens, partial(rees_multiply, S))


# ---------------------------------------------------------------------------
# group-mapping test and the two actions

def _normalize(vec, G: FiniteGroup, left: bool):
    first = next((x for x in vec if x is not None), None)
    if first is None:
        return tuple(vec)
    k = G.inv(first)
    if left:
        return tuple(None if x is None else G.mul(k, x) for x in vec)
    return tuple(None if x is None else G.mul(x, k) for x in vec)


def is_gm_matrix(S: ReesMatrixSemigroup) -> bool:
    """No two rows are left multiples and no two columns right multiples of each other."""
    S.require_regular()
    G = S.group
    rows = [_normalize(row, G, left=True) for row in S.C]
    cols = [_normalize([row[a] for row in S.C], G, left=False) for a in range(len(S.A))]
    return len(set(rows)) == len(rows) and len(set(cols)) == len(cols)


def gm_point(S: ReesMatrixSemigroup, g: int, b: int) -> int:
    """Index of ``(g, b)`` in ``G x B``."""
    return g * len(S.B) + b


def gm_element_action(S: ReesMatrixSemigroup, x) -> PartialFunction:
    """Right action of ``x`` on ``G x B``: ``(g,b)(a,h,b') = (g C(b,a) h, b')``."""
    nB = len(S.B)
    n = S.group.order * nB
    if x is ZERO:
        return PartialFunction.empty(n)
    a, h, b2 = x
    G = S.group
    table = []
    for g in range(G.order):
        for b in range(nB):
            c = S.C[b][a]
            table.append(UNDEF if c is None else gm_point(S, G.mul(G.mul(g, c), h), b2))
    return PartialFunction(table, n)


def rlm_element_action(S: ReesMatrixSemigroup, x) -> PartialFunction:
    """Action of ``x`` on ``B`` (the L-classes): ``b (a,h,b') = b'`` when ``C(b,a) != 0``."""
    nB = len(S.B)
    if x is ZERO:
        return PartialFunction.empty(nB)
    a, _h, b2 = x
    return PartialFunction([UNDEF if S.C[b][a] is None else b2 for b in range(nB)], nB)


def gm_action(S: ReesMatrixSemigroup, cap: int | None = None) -> TransformationSemigroup:
    """``(G x B, S)``: the closure of the actions of the nonzero elements."""
    S.require_regular()
    gens = sorted({gm_element_action(S, x) for x in S.elements() if x is not ZERO})
    return closure(gens, cap=cap)


def rlm(S: ReesMatrixSemigroup, cap: int | None = None) -> TransformationSemigroup:
    """``(B, RLM(S))``: faithful image of the action on L-classes."""
    S.require_regular()
    gens = sorted({rlm_element_action(S, x) for x in S.elements() if x is not ZERO})
    return closure(gens, cap=cap)


# ---------------------------------------------------------------------------
# translational hull

class LinkedPair(NamedTuple):
    """``row`` is ``(phi, f)`` on ``B``; ``col_fun``/``col_assign`` give ``f*`` and ``phi*`` on ``A``."""

    row: WreathElement
    col_fun: PartialFunction
    col_assign: tuple


def hull_multiply(G: FiniteGroup, x: LinkedPair, y: LinkedPair) -> LinkedPair:
    """Product ``(X1 X2, Y1 Y2)`` of monomial matrix pairs."""
    row = wreath_multiply(G, x.row, y.row)
    col_fun = compose(y.col_fun, x.col_fun)  # f* acts on the left, so (f1 f2)* = f1* o f2*
    assign = []
    for a, a1 in enumerate(y.col_fun.table):
        if a1 == UNDEF or x.col_fun.table[a1] == UNDEF:
            assign.append(None)
        else:
            assign.append(G.mul(x.col_assign[a1], y.col_assign[a]))
    return LinkedPair(row, col_fun, tuple(assign))


def is_linked(S: ReesMatrixSemigroup, pair: LinkedPair) -> bool:
    G = S.group
    f, phi = pair.row.fun.table, pair.row.assign
    fs, phis = pair.col_fun.table, pair.col_assign
    for b in range(len(S.B)):
        for a in range(len(S.A)):
            lhs = None
            if f[b] != UNDEF and S.C[f[b]][a] is not None:
                lhs = G.mul(phi[b], S.C[f[b]][a])
            rhs = None
            if fs[a] != UNDEF and S.C[b][fs[a]] is not None:
                rhs = G.mul(S.C[b][fs[a]], phis[a])
            if lhs != rhs:
                return False
    return True


def _column_candidates(S: ReesMatrixSemigroup, need: tuple) -> list:
    """All ``(a', g)`` with ``C(., a') g == need``, plus ``(UNDEF, None)`` when ``need`` is zero."""
    G = S.group
    out = []
    if all(x is None for x in need):
        out.append((UNDEF, None))
    for a2 in range(len(S.A)):
        col = [row[a2] for row in S.C]
        if any((c is None) != (v is None) for c, v in zip(col, need)):
            continue
        for g in range(G.order):
            if all(c is None or G.mul(c, g) == v for c, v in zip(col, need)):
                out.append((a2, g))
    return out


def _row_labellings(G: FiniteGroup, f: PartialFunction):
    dom = sorted(f.domain())
    for labels in product(range(G.order), repeat=len(dom)):
        assign = [None] * f.dom_size
        for q, g in zip(dom, labels):
            assign[q] = g
        yield WreathElement(tuple(assign), f)


def translational_hull(S: ReesMatrixSemigroup, cap: int | None = None) -> list:
    """Every linked pair, ordered by row map, then row labels, then column data.

    The linked equations decouple over the columns ``a``: once the row part
    is fixed, each ``(f*(a), phi*(a))`` is found independently by matching
    the required column vector against the columns of ``C``.
    """
    G = S.group
    nA, nB = len(S.A), len(S.B)
    cap = element_cap(cap)
    budget = (G.order + 1) ** nB
    if budget > cap:
        raise ResourceLimit(f"hull search over {budget} row candidates exceeds the cap {cap}")
    out = []
    for f in all_partial_maps(nB):
        for row in _row_labellings(G, f):
            per_column = []
            for a in range(nA):
                need = tuple(
                    None if f.table[b] == UNDEF or S.C[f.table[b]][a] is None
                    else G.mul(row.assign[b], S.C[f.table[b]][a])
                    for b in range(nB)
                )
                cands = _column_candidates(S, need)
                if not cands:
                    break
                per_column.append(cands)
            else:
                for choice in product(*per_column):
                    col_fun = PartialFunction([c[0] for c in choice], nA)
                    out.append(LinkedPair(row, col_fun, tuple(c[1] for c in choice)))
                    if len(out) > cap:
                        raise ResourceLimit(f"hull exceeds the element cap {cap}")
    return out


def hull_semigroup(S: ReesMatrixSemigroup, pairs=None) -> TransformationSemigroup:
    pairs = translational_hull(S) if pairs is None else pairs
    return closure(pairs, partial(hull_multiply, S.group))


def inner_pair(S: ReesMatrixSemigroup, x) -> LinkedPair:
    """The pair of inner translations ``(right by x, left by x)`` of an element of ``S``."""
    G = S.group
    nA, nB = len(S.A), len(S.B)
    if x is ZERO:
        return LinkedPair(WreathElement((None,) * nB, PartialFunction.empty(nB)),
                          PartialFunction.empty(nA), (None,) * nA)
    a0, g0, b0 = x
    row_fun, row_assign = [], []
    for b in range(nB):
        c = S.C[b][a0]
        row_fun.append(UNDEF if c is None else b0)
        row_assign.append(None if c is None else G.mul(c, g0))
    col_fun, col_assign = [], []
    for a in range(nA):
        c = S.C[b0][a]
        col_fun.append(UNDEF if c is None else a0)
        col_assign.append(None if c is None else G.mul(g0, c))
    return LinkedPair(WreathElement(tuple(row_assign), PartialFunction(row_fun, nB)),
                      PartialFunction(col_fun, nA), tuple(col_assign))


# ---------------------------------------------------------------------------
# graphs as Rees matrix semigroups over the trivial group

def graph_rees(graph: SimpleGraph, strict: bool = False) -> ReesMatrixSemigroup:
    """``M0(1, E, V, S)`` when ``strict`` else ``M0(1, E+V, V, C)``; columns list edges first."""
    S_mat, C_mat = incidence_matrices(graph, strict=strict)
    mat = S_mat if strict else C_mat
    A = [f"e{u}{v}" for u, v in graph.edge_list] + ([] if strict else [f"v{v}" for v in range(graph.n)])
    B = [f"v{v}" for v in range(graph.n)]
    return ReesMatrixSemigroup(trivial(), A, B, [[0 if x else None for x in row] for row in mat])


def _blocks(graph: SimpleGraph, strict: bool) -> list:
    blocks = [frozenset(e) for e in graph.edge_list]
    if not strict:
        blocks += [frozenset([v]) for v in range(graph.n)]
    return blocks


def canonical_pair(f: PartialFunction, graph: SimpleGraph, strict: bool = False):
    """``f`` acting on ``B = V`` together with its adjoint on blocks, or ``None`` if no adjoint exists."""
    blocks = _blocks(graph, strict)
    where = {blk: i for i, blk in enumerate(blocks)}
    col = []
    for blk in blocks:
        pre = f.preimage(blk)
        if not pre:
            col.append(UNDEF)
        elif pre in where:
            col.append(where[pre])
        else:
            return None
    nA = len(blocks)
    row = WreathElement(tuple(None if y == UNDEF else 0 for y in f.table), f)
    return LinkedPair(row, PartialFunction(col, nA), tuple(None if c == UNDEF else 0 for c in col))


def hull_iso_check(graph: SimpleGraph, strict: bool = False) -> bool:
    """Check that ``f -> (f, f*)`` is a multiplicative bijection from ``M(G)`` (or ``SM(G)``) onto the hull."""
    from .continuity import enumerate_continuous, enumerate_strict

    S = graph_rees(graph, strict)
    maps = enumerate_strict(graph) if strict else enumerate_continuous(graph)
    image = {}
    for f in maps:
        pair = canonical_pair(f, graph, strict)
        if pair is None or not is_linked(S, pair):
            return False
        image[f] = pair
    if len(set(image.values())) != len(maps):
        return False
    if set(image.values()) != set(translational_hull(S)):
        return False
    G = S.group
    return all(
        image[compose(f, g)] == hull_multiply(G, image[f], image[g])
        for f in maps for g in maps
    )
