"""Continuous and strict continuous partial maps on graphs.

A partial map ``f: V -> V'`` is continuous when the preimage of every vertex
and every edge of the target is empty, a single vertex, or an edge of the
source. It is strict when the preimage of every target edge is empty or an
edge of the source.

Two enumerations of ``M(G)`` are provided. :func:`enumerate_continuous`
walks the ``(n+1)**n`` candidate tables depth first, abandoning a branch as
soon as some preimage is already too large; :func:`enumerate_structured`
builds each map as a join ``g v h`` of a singular part and an injective part.
They share no code beyond the graph type and serve as each other's check.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable

from .config import ENUMERATION_BOUND
from .errors import DegenerateInput, InvalidInput, ResourceLimit
from .graphs import SimpleGraph, anticliques, automorphisms, matchings
from .pfun import UNDEF, PartialFunction, fiber_graph, fibers, join, ts_degree


@dataclass(frozen=True)
class ContinuityReport:
    continuous: bool
    strict: bool
    #: (target simplex, its preimage) refuting continuity
    witness: tuple | None = None
    #: (target edge, its preimage) refuting strictness
    strict_witness: tuple | None = None


class ContinuityHypothesisError(InvalidInput):
    """A hypothesis of the join construction failed; ``kind`` names which one."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


def _is_simplex(g: SimpleGraph, pre) -> bool:
    return len(pre) <= 1 or (len(pre) == 2 and g.has_edge(*pre))


def check_continuity(f: PartialFunction, src: SimpleGraph, dst: SimpleGraph | None = None) -> ContinuityReport:
    dst = src if dst is None else dst
    if f.dom_size != src.n or f.cod_size != dst.n:
        raise InvalidInput(
            f"map is {f.dom_size} -> {f.cod_size} points but graphs have {src.n} and {dst.n} vertices")
    pre = [[] for _ in range(dst.n)]
    for x, y in enumerate(f.table):
        if y != UNDEF:
            pre[y].append(x)

    # edges first: a bad edge preimage is the more informative witness
    witness = strict_witness = None
    for u, v in dst.edge_list:
        both = tuple(sorted(pre[u] + pre[v]))
        if witness is None and not _is_simplex(src, both):
            witness = ((u, v), both)
        if strict_witness is None and not (len(both) == 0 or (len(both) == 2 and src.has_edge(*both))):
            strict_witness = ((u, v), both)
    if witness is None:
        for v in range(dst.n):
            if not _is_simplex(src, pre[v]):
                witness = ((v,), tuple(pre[v]))
                break
    return ContinuityReport(witness is None, strict_witness is None, witness, strict_witness)


def is_continuous(f: PartialFunction, g: SimpleGraph) -> bool:
    return check_continuity(f, g).continuous


def is_strict(f: PartialFunction, g: SimpleGraph) -> bool:
    return check_continuity(f, g).strict


def _check_bound(g: SimpleGraph, bound: int | None):
    bound = ENUMERATION_BOUND if bound is None else bound
    if g.n > bound:
        raise ResourceLimit(f"{g.n} vertices exceeds the enumeration bound {bound}")


def _search(g: SimpleGraph, strict: bool) -> list:
    n = g.n
    adj = [g.neighbors(v) for v in range(n)]
    pre = [[] for _ in range(n)]
    table = [UNDEF] * n
    out = []

    def ok_after(y):
        p = pre[y]
        if not strict and not _is_simplex(g, p):
            return False
        for w in adj[y]:
            both = p + pre[w]
            if len(both) > 2 or (len(both) == 2 and not g.has_edge(*both)):
                return False
        return True

    def strict_complete():
        return all(len(pre[u]) + len(pre[v]) != 1 for u, v in g.edge_list)

    def place(x):
        if x == n:
            if not strict or strict_complete():
                out.append(PartialFunction(table, n))
            return
        place(x + 1)  # x left undefined
        for y in range(n):
            pre[y].append(x)
            if ok_after(y):
                table[x] = y
                place(x + 1)
                table[x] = UNDEF
            pre[y].pop()

    place(0)
    return out


def enumerate_continuous(g: SimpleGraph, bound: int | None = None) -> list:
    """``M(G)`` in lexicographic order of tables."""
    _check_bound(g, bound)
    return _search(g, strict=False)


def enumerate_strict(g: SimpleGraph, bound: int | None = None) -> list:
    """``SM(G)`` in lexicographic order of tables; needs a graph without isolated vertices."""
    if g.isolated_vertices():
        raise DegenerateInput(f"strict continuity needs no isolated vertices; found {g.isolated_vertices()}")
    _check_bound(g, bound)
    return _search(g, strict=True)


# ---------------------------------------------------------------------------
# construction from singular and injective parts

def _validate_parts(g_sing: PartialFunction, h_inj: PartialFunction, graph: SimpleGraph):
    n = graph.n
    for f in (g_sing, h_inj):
        if f.dom_size != n or f.cod_size != n:
            raise InvalidInput(f"parts must be maps on the {n} vertices of the graph")
    used = set()
    for b in fibers(g_sing):
        if len(b) != 2 or not graph.has_edge(*b):
            raise ContinuityHypothesisError("matching-violation", f"fiber {list(b)} of g is not an edge")
        if used & set(b):
            raise ContinuityHypothesisError("matching-violation", f"fiber {list(b)} meets another fiber")
        used |= set(b)
    img_g = g_sing.image()
    for u, v in combinations(sorted(img_g), 2):
        if graph.has_edge(u, v):
            raise ContinuityHypothesisError("anticlique-violation", f"image of g contains edge {[u, v]}")
    if not h_inj.is_injective():
        raise ContinuityHypothesisError("morphism-violation", "h is not injective")
    hinv = h_inj.inverse()
    for u, v in combinations(sorted(h_inj.image()), 2):
        if graph.has_edge(u, v) and not graph.has_edge(hinv(u), hinv(v)):
            raise ContinuityHypothesisError(
                "morphism-violation", f"edge {[u, v]} in the image of h pulls back to a non-edge")
    if g_sing.domain() & h_inj.domain():
        raise ContinuityHypothesisError("overlap-violation", "domains of g and h intersect")
    if img_g & h_inj.image():
        raise ContinuityHypothesisError("overlap-violation", "images of g and h intersect")
    for u in img_g:
        for v in h_inj.image():
            if graph.has_edge(u, v):
                raise ContinuityHypothesisError("adjacency-violation", f"edge {[u, v]} joins Im(g) to Im(h)")


def build_from_parts(g_sing: PartialFunction, h_inj: PartialFunction, graph: SimpleGraph) -> PartialFunction:
    """The continuous join ``g v h``; raises naming the first failed hypothesis."""
    _validate_parts(g_sing, h_inj, graph)
    return join(g_sing, h_inj)


def _injective_parts(graph: SimpleGraph, dom_pool: list, img_pool: list) -> list:
    """Partial bijections ``h`` from ``dom_pool`` into ``img_pool`` whose inverse is a graph morphism."""
    n = graph.n
    out = []
    table = [UNDEF] * n
    placed = []  # (x, y) pairs already assigned

    def extend(i, free_imgs):
        if i == len(dom_pool):
            out.append(PartialFunction(table, n))
            return
        x = dom_pool[i]
        extend(i + 1, free_imgs)
        for y in free_imgs:
            if all(not graph.has_edge(y, y2) or graph.has_edge(x, x2) for x2, y2 in placed):
                table[x] = y
                placed.append((x, y))
                extend(i + 1, [z for z in free_imgs if z != y])
                placed.pop()
                table[x] = UNDEF

    extend(0, list(img_pool))
    return out


def enumerate_structured(g: SimpleGraph, bound: int | None = None) -> list:
    """``M(G)`` assembled from (matching, anti-clique, bijection, injective part) data."""
    _check_bound(g, bound)
    n = g.n
    acs = anticliques(g)
    by_size = {}
    for mask in acs:
        by_size.setdefault(bin(mask).count("1"), []).append([v for v in range(n) if mask >> v & 1])
    result = set()
    for m in matchings(g):
        k = len(m)
        for targets in by_size.get(k, []):
            for perm in permutations(targets):
                table = [UNDEF] * n
                for (u, v), t in zip(m, perm):
                    table[u] = table[v] = t
                gs = PartialFunction(table, n)
                blocked = set(perm)
                for t in perm:
                    blocked.update(g.neighbors(t))
                dom_pool = [v for v in range(n) if table[v] == UNDEF]
                img_pool = [v for v in range(n) if v not in blocked]
                for h in _injective_parts(g, dom_pool, img_pool):
                    result.add(join(gs, h))
    return sorted(result)


def verify_embedding(fs: Iterable[PartialFunction], n: int) -> bool:
    """Check that the semigroup generated by ``fs`` consists of continuous maps on its fiber graph."""
    from .semigroup import closure

    S = closure(list(fs))
    if ts_degree(S.elements) > 2:
        # fiber_graph raises DegreeViolation with the offending fiber
        fiber_graph(S.elements, n)
    gamma = fiber_graph(S.elements, n)
    return all(check_continuity(f, gamma).continuous for f in S.elements)


def singular_maps(g: SimpleGraph) -> list:
    """Continuous maps in which every fiber has exactly two points (the empty map excluded)."""
    return [f for f in enumerate_continuous(g) if not f.is_empty() and all(len(b) == 2 for b in fibers(f))]


def automorphism_maps(g: SimpleGraph) -> list:
    return [PartialFunction(p, g.n) for p in automorphisms(g)]
