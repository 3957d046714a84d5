"""Finite semigroups generated inside a concrete element type.

:func:`closure` is the usual orbit algorithm: starting from the generators it
multiplies every element found so far on the right by every generator until
nothing new appears, recording the right Cayley graph as it goes. Green's
relations are then strongly connected components of the Cayley graphs.

Elements may be of any hashable type; the product defaults to composition of
:class:`~degree2.pfun.PartialFunction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, NamedTuple, Sequence

from .config import element_cap
from .errors import InvalidInput, ResourceLimit
from .groups import FiniteGroup
from .pfun import UNDEF, PartialFunction, compose


@dataclass
class TransformationSemigroup:
    elements: list
    gens: tuple
    right_cayley: list
    left_cayley: list
    is_monoid: bool
    product: Callable = field(default=compose, repr=False, compare=False)

    def __post_init__(self):
        self._index = {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def index(self, x) -> int:
        return self._index[x]

    def mul(self, i: int, j: int) -> int:
        """Index of the product of elements ``i`` and ``j``."""
        return self._index[self.product(self.elements[i], self.elements[j])]

    def idempotents(self) -> list:
        return [i for i, x in enumerate(self.elements) if self.product(x, x) == x]

    def as_set(self) -> frozenset:
        return frozenset(self.elements)


def closure(gens: Sequence[Hashable], product: Callable = compose, cap: int | None = None) -> TransformationSemigroup:
    """Least product-closed set containing ``gens``, in breadth-first order."""
    if not gens:
        raise InvalidInput("closure needs at least one generator")
    cap = element_cap(cap)
    elements, index = [], {}
    for g in gens:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
    if len(elements) > cap:
        raise ResourceLimit(f"{len(elements)} generators exceed the element cap of {cap}")
    gen_idx = tuple(index[g] for g in gens)
    gen_elems = [elements[i] for i in gen_idx]
    right = []
    i = 0
    while i < len(elements):
        x = elements[i]
        row = []
        for g in gen_elems:
            y = product(x, g)
            j = index.get(y)
            if j is None:
                if len(elements) >= cap:
                    raise ResourceLimit(f"closure exceeds the element cap of {cap}")
                j = index[y] = len(elements)
                elements.append(y)
            row.append(j)
        right.append(tuple(row))
        i += 1
    left = [tuple(index[product(g, x)] for g in gen_elems) for x in elements]
    is_monoid = any(
        all(product(e, g) == g and product(g, e) == g for g in gen_elems) for e in elements
    )
    return TransformationSemigroup(elements, gen_idx, right, left, is_monoid, product)


def with_identity(gens: Sequence[PartialFunction]) -> list:
    """Generators with the identity map adjoined (for partial-function semigroups)."""
    n = gens[0].dom_size
    ident = PartialFunction.identity(n)
    return list(gens) + ([ident] if ident not in gens else [])


# ---------------------------------------------------------------------------
# Green's relations

def _scc(n: int, succ: Callable[[int], Sequence[int]]) -> list:
    """Component id per vertex (iterative Tarjan); ids are arbitrary."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack, counter, ncomp = [], 0, 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _partition(labels: Sequence) -> tuple:
    """Canonical partition (classes ordered by least member) and class id per element."""
    groups = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    classes = sorted(tuple(g) for g in groups.values())
    of = [0] * len(labels)
    for c, members in enumerate(classes):
        for i in members:
            of[i] = c
    return tuple(classes), tuple(of)


@dataclass(frozen=True)
class GreenData:
    R: tuple
    L: tuple
    J: tuple
    H: tuple
    r_of: tuple
    l_of: tuple
    j_of: tuple
    h_of: tuple
    regular_J: tuple
    #: below[c] = ids of J-classes d with J_d <= J_c (c included)
    below: tuple

    def j_leq(self, c: int, d: int) -> bool:
        return c in self.below[d]


def green(S: TransformationSemigroup) -> GreenData:
    n = len(S)
    right, left = S.right_cayley, S.left_cayley
    R, r_of = _partition(_scc(n, lambda i: right[i]))
    L, l_of = _partition(_scc(n, lambda i: left[i]))
    J, j_of = _partition(_scc(n, lambda i: right[i] + left[i]))
    H, h_of = _partition(list(zip(r_of, l_of)))
    idem = set(S.idempotents())
    regular = tuple(any(i in idem for i in cls) for cls in J)

    # reachability between J-classes on the condensed graph
    succ = [set() for _ in J]
    for i in range(n):
        for j in right[i] + left[i]:
            if j_of[j] != j_of[i]:
                succ[j_of[i]].add(j_of[j])
    below = [None] * len(J)

    def reach(c):
        if below[c] is None:
            acc = {c}
            for d in succ[c]:
                acc |= reach(d)
            below[c] = frozenset(acc)
        return below[c]

    for c in range(len(J)):
        reach(c)
    return GreenData(R, L, J, H, r_of, l_of, j_of, h_of, regular, tuple(below))


def green_by_ideals(S: TransformationSemigroup) -> GreenData:
    """Green's relations from principal ideals; quadratic, used as a check on :func:`green`."""
    n = len(S)
    table = [[S.mul(i, j) for j in range(n)] for i in range(n)]
    right_ideal = [frozenset([i]) | frozenset(table[i]) for i in range(n)]
    left_ideal = [frozenset([i]) | frozenset(table[j][i] for j in range(n)) for i in range(n)]
    two_sided = [right_ideal[i] | frozenset(table[j][k] for k in right_ideal[i] for j in range(n)) for i in range(n)]
    R, r_of = _partition(right_ideal)
    L, l_of = _partition(left_ideal)
    J, j_of = _partition(two_sided)
    H, h_of = _partition(list(zip(r_of, l_of)))
    idem = set(S.idempotents())
    regular = tuple(any(i in idem for i in cls) for cls in J)
    below = tuple(frozenset(j_of[k] for k in two_sided[cls[0]]) for cls in J)
    return GreenData(R, L, J, H, r_of, l_of, j_of, h_of, regular, below)


def delta_by_j(S: TransformationSemigroup, gd: GreenData | None = None) -> int:
    """Number of classes in a longest chain of regular J-classes."""
    gd = green(S) if gd is None else gd
    memo = {}

    def chain(c):
        if c not in memo:
            memo[c] = 1 + max((chain(d) for d in gd.below[c] if d != c and gd.regular_J[d]), default=0)
        return memo[c]

    return max((chain(c) for c in range(len(gd.J)) if gd.regular_J[c]), default=0)


def delta_by_idempotents(S: TransformationSemigroup) -> int:
    """Number of elements in a longest chain of idempotents under ``e <= f iff e = ef = fe``."""
    idem = [S.elements[i] for i in S.idempotents()]
    p = S.product
    lower = {
        f: [e for e in idem if e != f and p(e, f) == e and p(f, e) == e]
        for f in idem
    }
    memo = {}

    def chain(f):
        if f not in memo:
            memo[f] = 1 + max((chain(e) for e in lower[f]), default=0)
        return memo[f]

    return max((chain(f) for f in idem), default=0)


def delta(S: TransformationSemigroup, gd: GreenData | None = None) -> int:
    """Depth of ``S``; computed from J-classes and from idempotents, which must agree."""
    a = delta_by_j(S, gd)
    b = delta_by_idempotents(S)
    if a != b:
        raise RuntimeError(f"depth mismatch: {a} from J-classes, {b} from idempotent chains")
    return a


def is_aperiodic(S: TransformationSemigroup, gd: GreenData | None = None) -> bool:
    """True iff every H-class containing an idempotent is trivial."""
    gd = green(S) if gd is None else gd
    return all(len(gd.H[gd.h_of[i]]) == 1 for i in S.idempotents())


def is_aperiodic_by_powers(S: TransformationSemigroup) -> bool:
    """Aperiodicity as ``s^k = s^(k+1)`` with ``k = |S|``."""
    p = S.product
    k = len(S)
    for x in S.elements:
        acc, base, e = None, x, k
        while e:
            if e & 1:
                acc = base if acc is None else p(acc, base)
            base = p(base, base)
            e >>= 1
        if p(acc, x) != acc:
            return False
    return True


# ---------------------------------------------------------------------------
# wreath products with a group

class WreathElement(NamedTuple):
    """``(assign, fun)``: a partial map with a group label on each point of its domain."""

    assign: tuple
    fun: PartialFunction

    @classmethod
    def make(cls, assign, fun: PartialFunction) -> "WreathElement":
        assign = tuple(assign)
        for q, y in enumerate(fun.table):
            if (y == UNDEF) != (assign[q] is None):
                raise InvalidInput("assignment must be defined exactly on the domain")
        return cls(assign, fun)


def wreath_multiply(G: FiniteGroup, x: WreathElement, y: WreathElement) -> WreathElement:
    ft = x.fun.table
    assign = tuple(
        None if ft[q] == UNDEF or y.assign[ft[q]] is None else G.mul(x.assign[q], y.assign[ft[q]])
        for q in range(len(ft))
    )
    return WreathElement(assign, compose(x.fun, y.fun))


def wreath_point(G: FiniteGroup, n: int, g: int, q: int) -> int:
    """Index of the point ``(g, q)`` of ``G x Q``."""
    return g * n + q


def wreath_action(G: FiniteGroup, x: WreathElement) -> PartialFunction:
    """``(g, q) -> (g * q.assign, q.fun)`` as a partial map on ``G x Q``."""
    n = x.fun.dom_size
    m = x.fun.cod_size
    table = []
    for g in range(G.order):
        for q in range(n):
            y = x.fun.table[q]
            table.append(UNDEF if y == UNDEF else G.mul(g, x.assign[q]) * m + y)
    return PartialFunction(table, G.order * m)


def wreath_constant(G: FiniteGroup, s: PartialFunction, value: int = 0) -> WreathElement:
    return WreathElement(tuple(None if y == UNDEF else value for y in s.table), s)


def _assignments(G: FiniteGroup, s: PartialFunction):
    dom = sorted(s.domain())
    total = G.order ** len(dom)
    for k in range(total):
        assign = [None] * s.dom_size
        for q in dom:
            k, r = divmod(k, G.order)
            assign[q] = r
        yield WreathElement(tuple(assign), s)


def wreath(G: FiniteGroup, X: TransformationSemigroup, cap: int | None = None) -> TransformationSemigroup:
    """``G wr X`` acting on ``G x Q``, generated by every labelling of every generator of ``X``."""
    gens = []
    for i in X.gens:
        s = X.elements[i]
        gens.extend(wreath_action(G, w) for w in _assignments(G, s))
    return closure(gens, cap=cap)


# ---------------------------------------------------------------------------
# symmetric inverse monoid acting on the subset semilattice

class SemidirectElement(NamedTuple):
    """``(s, X)`` with ``s`` a partial bijection and ``X`` a subset bitmask."""

    s: PartialFunction
    X: int


def image_of_subset(s: PartialFunction, mask: int) -> int:
    out = 0
    for q, y in enumerate(s.table):
        if mask >> q & 1 and y != UNDEF:
            out |= 1 << y
    return out


def semidirect_multiply(x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    """``(s, X)(t, Y) = (st, Xt | Y)``."""
    return SemidirectElement(compose(x.s, y.s), image_of_subset(y.s, x.X) | y.X)


def semidirect_act(mask: int, x: SemidirectElement) -> int:
    """Right action on subsets: ``A (s, Y) = As | Y``."""
    return image_of_subset(x.s, mask) | x.X


def _sis_generators(n: int) -> list:
    gens = [PartialFunction.identity(n)]
    if n >= 2:
        gens.append(PartialFunction([1, 0] + list(range(2, n)), n))
        gens.append(PartialFunction([(q + 1) % n for q in range(n)], n))
    if n >= 1:
        gens.append(PartialFunction([UNDEF] + list(range(1, n)), n))
    return gens


def semidirect_inv_2V(n: int, cap: int | None = None) -> TransformationSemigroup:
    """The monoid ``SIS(V) x| 2^V`` on ``|V| = n`` points (all ``|SIS(n)| * 2**n`` pairs)."""
    gens = [SemidirectElement(s, 0) for s in _sis_generators(n)]
    gens += [SemidirectElement(PartialFunction.identity(n), 1 << v) for v in range(n)]
    return closure(gens, semidirect_multiply, cap=cap)
