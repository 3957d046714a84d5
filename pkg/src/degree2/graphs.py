"""Finite simple graphs and oriented multigraphs.

Vertices are the integers ``0..n-1``. A :class:`SimpleGraph` stores its edges
as sorted pairs, so two graphs compare equal exactly when they have the same
vertex count and edge set. The combinatorial quantities used elsewhere
(matching number, independence number, automorphisms) are computed by
exhaustive search over vertex bitmasks; every graph in this toolkit is small.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

from .errors import DegenerateInput, InvalidInput


def _canon_edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInput(f"vertex count must be non-negative, got {self.n}")
        canon = set()
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge {[u, v]} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InvalidInput(f"loop at vertex {u} is not allowed in a simple graph")
            canon.add(_canon_edge(u, v))
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "SimpleGraph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = _canon_edge(u, v)
            if key in seen:
                raise InvalidInput(f"duplicate edge {[u, v]}")
            seen.add(key)
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def edge_list(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple:
        """Neighbourhood of each vertex as a bitmask."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def has_edge(self, u: int, v: int) -> bool:
        return _canon_edge(u, v) in self.edges

    def neighbors(self, v: int) -> list:
        a = self.adjacency[v]
        return [w for w in range(self.n) if a >> w & 1]

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    def isolated_vertices(self) -> list:
        return [v for v in range(self.n) if not self.adjacency[v]]

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        """Induced subgraph on ``vertices``, relabelled in increasing order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return SimpleGraph(len(vs), frozenset(es))

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={list(self.edge_list)})"


class Edge(NamedTuple):
    id: int
    tail: int
    head: int

    def reversed(self) -> "Edge":
        return Edge(self.id, self.head, self.tail)


@dataclass(frozen=True)
class Multigraph:
    """Oriented multigraph; loops and parallel edges are allowed.

    Each edge carries a fixed positive orientation ``tail -> head``.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        es = tuple(Edge(*e) for e in self.edges)
        ids = set()
        for e in es:
            if e.id in ids:
                raise InvalidInput(f"duplicate edge id {e.id}")
            ids.add(e.id)
            if not (0 <= e.tail < self.n and 0 <= e.head < self.n):
                raise InvalidInput(f"edge {e.id} has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_simple(cls, g: SimpleGraph) -> "Multigraph":
        return cls(g.n, tuple(Edge(i, u, v) for i, (u, v) in enumerate(g.edge_list)))

    @cached_property
    def by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    def edge(self, eid: int) -> Edge:
        return self.by_id[eid]


class GraphInvariants(NamedTuple):
    nu: int
    alpha: int
    components: tuple


# ---------------------------------------------------------------------------
# constructors

def edgeless(n: int) -> SimpleGraph:
    return SimpleGraph(n)


def complete(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset(combinations(range(n), 2)))


def path(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise InvalidInput("a simple cycle needs at least 3 vertices")
    return SimpleGraph(n, frozenset(_canon_edge(i, (i + 1) % n) for i in range(n)))


def complete_bipartite(m: int, k: int) -> SimpleGraph:
    return SimpleGraph(m + k, frozenset((i, m + j) for i in range(m) for j in range(k)))


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.n
    return SimpleGraph(offset, frozenset(edges))


def random_graph(n: int, p: float, rng: random.Random, connected: bool = False) -> SimpleGraph:
    while True:
        g = SimpleGraph(n, frozenset(e for e in combinations(range(n), 2) if rng.random() < p))
        if not connected or g.is_connected():
            return g


# ---------------------------------------------------------------------------
# predicates and invariants

def is_matching(g: SimpleGraph, m: Iterable) -> bool:
    used = 0
    for u, v in m:
        if not g.has_edge(u, v):
            raise InvalidInput(f"{[u, v]} is not an edge of the graph")
        bits = (1 << u) | (1 << v)
        if used & bits:
            return False
        used |= bits
    return True


def is_anticlique(g: SimpleGraph, s: Iterable[int]) -> bool:
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise InvalidInput(f"vertex {v} outside 0..{g.n - 1}")
        mask |= 1 << v
    return all(not (g.adjacency[v] & mask) for v in range(g.n) if mask >> v & 1)


def matching_number(g: SimpleGraph) -> int:
    adj = g.adjacency
    memo = {}

    def best(free: int) -> int:
        # free: vertices not yet decided; branch on the lowest one
        if not free:
            return 0
        if free in memo:
            return memo[free]
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        result = best(rest)
        cand = adj[v] & rest
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            result = max(result, 1 + best(rest & ~(1 << w)))
        memo[free] = result
        return result

    return best((1 << g.n) - 1)


def independence_number(g: SimpleGraph) -> int:
    adj = g.adjacency
    memo = {}

    def best(free: int) -> int:
        if not free:
            return 0
        if free in memo:
            return memo[free]
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        result = max(best(rest), 1 + best(rest & ~adj[v]))
        memo[free] = result
        return result

    return best((1 << g.n) - 1)


def components(g: SimpleGraph) -> tuple:
    seen, parts = set(), []
    for s in range(g.n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        parts.append(tuple(sorted(comp)))
    return tuple(parts)


def graph_invariants(g: SimpleGraph) -> GraphInvariants:
    return GraphInvariants(matching_number(g), independence_number(g), components(g))


def anticliques(g: SimpleGraph) -> list:
    """All anti-cliques (including the empty set) as bitmasks, in increasing order."""
    adj = g.adjacency
    out = []
    for mask in range(1 << g.n):
        if all(not (adj[v] & mask) for v in range(g.n) if mask >> v & 1):
            out.append(mask)
    return out


def matchings(g: SimpleGraph) -> list:
    """All matchings (including the empty one) as sorted tuples of edges."""
    edges = g.edge_list
    out = []

    def grow(start, used, chosen):
        out.append(tuple(chosen))
        for i in range(start, len(edges)):
            u, v = edges[i]
            bits = (1 << u) | (1 << v)
            if not used & bits:
                chosen.append(edges[i])
                grow(i + 1, used | bits, chosen)
                chosen.pop()

    grow(0, 0, [])
    return out


# ---------------------------------------------------------------------------
# isomorphism and automorphisms

def _iso_search(g1: SimpleGraph, g2: SimpleGraph) -> Iterator[tuple]:
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return
    n = g1.n
    deg1 = [g1.degree(v) for v in range(n)]
    deg2 = [g2.degree(v) for v in range(n)]
    if sorted(deg1) != sorted(deg2):
        return
    # visit vertices so that each one (after the first of its component) has an assigned neighbour
    order, seen = [], set()
    for comp in sorted(components(g1), key=lambda c: -len(c)):
        root = max(comp, key=lambda v: deg1[v])
        queue = [root]
        seen.add(root)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(g1.neighbors(v), key=lambda w: -deg1[w]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    adj1, adj2 = g1.adjacency, g2.adjacency
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            yield tuple(image)
            return
        v = order[i]
        for w in range(n):
            if used[w] or deg2[w] != deg1[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if bool(adj1[v] >> u & 1) != bool(adj2[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                yield from extend(i + 1)
                used[w] = False
                image[v] = -1

    yield from extend(0)


def find_isomorphism(g1: SimpleGraph, g2: SimpleGraph):
    """A vertex bijection ``g1 -> g2`` preserving adjacency, or ``None``."""
    return next(_iso_search(g1, g2), None)


def is_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    return find_isomorphism(g1, g2) is not None


def automorphisms(g: SimpleGraph) -> list:
    """Every automorphism of ``g`` as an image tuple, sorted lexicographically."""
    return sorted(_iso_search(g, g))


# ---------------------------------------------------------------------------
# derived graphs and matrices

def line_graph(g: SimpleGraph) -> SimpleGraph:
    """Vertices are the edges of ``g`` in ``g.edge_list`` order."""
    es = g.edge_list
    adj = [(i, j) for i, j in combinations(range(len(es)), 2) if set(es[i]) & set(es[j])]
    return SimpleGraph(len(es), frozenset(adj))


def simplify(m) -> SimpleGraph:
    """Drop loops and collapse parallel edges; accepts simple graphs unchanged."""
    if isinstance(m, SimpleGraph):
        return m
    return SimpleGraph(m.n, frozenset(_canon_edge(e.tail, e.head) for e in m.edges if e.tail != e.head))


def incidence_matrices(g: SimpleGraph, strict: bool = False):
    """Vertex-edge incidence matrix ``S`` and simplicial matrix ``C = [S | I]``.

    Rows are vertices; columns of ``S`` follow ``g.edge_list``. With
    ``strict=True`` a graph with an isolated vertex is rejected, since ``S``
    then has a zero row.
    """
    if strict and g.isolated_vertices():
        raise DegenerateInput(f"isolated vertices {g.isolated_vertices()} give zero rows in S")
    es = g.edge_list
    S = tuple(tuple(1 if v in e else 0 for e in es) for v in range(g.n))
    C = tuple(S[v] + tuple(1 if v == w else 0 for w in range(g.n)) for v in range(g.n))
    return S, C
