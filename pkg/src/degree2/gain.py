"""Gain graphs, their derived graphs, and regular covers from GM semigroups.

A gain graph labels each positively oriented edge of a multigraph with a
group element; traversing the edge backwards reads the inverse. The derived
graph has vertices ``G x V`` and edges ``G x E``, the edge ``(g, e)`` running
from ``(g, tail)`` to ``(g * label, head)``. Derived vertex ``(g, v)`` has
index ``g * n + v`` and derived edge ``(g, e_i)`` sits at position
``g * m + i``.

Quotients go the other way: given a free group action on a graph, the orbit
graph with suitably chosen labels has a derived graph isomorphic to the
original as a G-graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DegreeViolation, InvalidInput
from .graphs import Edge, Multigraph, SimpleGraph, simplify
from .groups import FiniteGroup
from .pfun import fibers, ts_degree
from .rees import ReesMatrixSemigroup, as_semigroup, gm_action, is_gm_matrix, rlm
from .semigroup import is_aperiodic


@dataclass(frozen=True)
class GainGraph:
    base: Multigraph
    group: FiniteGroup
    #: label of each edge of ``base.edges`` (same order), in its positive orientation
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != len(self.base.edges):
            raise InvalidInput(f"{len(self.labels)} labels for {len(self.base.edges)} edges")
        for x in self.labels:
            if not 0 <= x < self.group.order:
                raise InvalidInput(f"label {x} is not a group element")

    def label(self, i: int, forward: bool = True) -> int:
        """Label of the edge at position ``i``; the inverse when read against its orientation."""
        x = self.labels[i]
        return x if forward else self.group.inv(x)

    @classmethod
    def trivial_labels(cls, base: Multigraph, group: FiniteGroup) -> "GainGraph":
        return cls(base, group, (group.identity,) * len(base.edges))


@dataclass(frozen=True)
class FreeAction:
    """Left action of ``group``: ``vertex_action[g][v]`` and ``edge_action[g][i]`` (edge positions)."""

    group: FiniteGroup
    vertex_action: tuple
    edge_action: tuple

    def validate(self, graph: Multigraph):
        G = self.group
        n, m = graph.n, len(graph.edges)
        va, ea = self.vertex_action, self.edge_action
        if len(va) != G.order or len(ea) != G.order:
            raise InvalidInput("need one vertex and one edge permutation per group element")
        for g in range(G.order):
            if sorted(va[g]) != list(range(n)) or sorted(ea[g]) != list(range(m)):
                raise InvalidInput(f"action of {G.name(g)} is not a permutation")
            for i, e in enumerate(graph.edges):
                e2 = graph.edges[ea[g][i]]
                if sorted((va[g][e.tail], va[g][e.head])) != sorted((e2.tail, e2.head)):
                    raise InvalidInput(f"action of {G.name(g)} does not respect the ends of edge {e.id}")
            for h in range(G.order):
                gh = G.mul(g, h)
                if any(va[g][va[h][v]] != va[gh][v] for v in range(n)):
                    raise InvalidInput("vertex action is not a homomorphism")
                if any(ea[g][ea[h][i]] != ea[gh][i] for i in range(m)):
                    raise InvalidInput("edge action is not a homomorphism")
            if g != G.identity:
                if any(va[g][v] == v for v in range(n)) or any(ea[g][i] == i for i in range(m)):
                    raise InvalidInput(f"{G.name(g)} fixes a vertex or an edge; the action is not free")


def action_from_vertex_perms(graph: Multigraph, group: FiniteGroup, perms: Sequence[Sequence[int]]) -> FreeAction:
    """Extend a vertex action to edges of a graph without parallel edges."""
    where = {}
    for i, e in enumerate(graph.edges):
        key = frozenset((e.tail, e.head))
        if key in where:
            raise InvalidInput("parallel edges: give the edge action explicitly")
        where[key] = i
    ea = []
    for p in perms:
        try:
            ea.append(tuple(where[frozenset((p[e.tail], p[e.head]))] for e in graph.edges))
        except KeyError:
            raise InvalidInput("vertex permutation does not map edges to edges") from None
    return FreeAction(group, tuple(tuple(p) for p in perms), tuple(ea))


def _as_multigraph(graph) -> Multigraph:
    return Multigraph.from_simple(graph) if isinstance(graph, SimpleGraph) else graph


# ---------------------------------------------------------------------------
# derived graphs and quotients

def derived_graph(gg: GainGraph, simple: bool = False):
    """The derived cover and its free left action ``h (g, x) = (hg, x)``."""
    G, base = gg.group, gg.base
    n, m = base.n, len(base.edges)
    edges = []
    for g in range(G.order):
        for i, e in enumerate(base.edges):
            edges.append(Edge(g * m + i, g * n + e.tail, G.mul(g, gg.labels[i]) * n + e.head))
    cover = Multigraph(G.order * n, tuple(edges))
    va = tuple(tuple(G.mul(h, g) * n + v for g in range(G.order) for v in range(n)) for h in range(G.order))
    ea = tuple(tuple(G.mul(h, g) * m + i for g in range(G.order) for i in range(m)) for h in range(G.order))
    action = FreeAction(G, va, ea)
    return (simplify(cover) if simple else cover), action


def _quotient_data(graph, action: FreeAction):
    graph = _as_multigraph(graph)
    action.validate(graph)
    G = action.group
    va, ea = action.vertex_action, action.edge_action
    # vertex orbits, represented by their least vertex
    orbit_of, reps, shift = {}, [], {}
    for v in range(graph.n):
        if v in orbit_of:
            continue
        k = len(reps)
        reps.append(v)
        for g in range(G.order):
            orbit_of[va[g][v]] = k
            shift[va[g][v]] = g  # va[g][rep] == vertex
    edges, labels, edge_reps, seen = [], [], [], set()
    for i, e in enumerate(graph.edges):
        if i in seen:
            continue
        seen.update(ea[g][i] for g in range(G.order))
        gx, gy = shift[e.tail], shift[e.head]
        # translate the representative so that its tail is the orbit representative
        j = ea[G.inv(gx)][i]
        edge_reps.append(j)
        edges.append(Edge(len(edges), orbit_of[e.tail], orbit_of[e.head]))
        labels.append(G.mul(G.inv(gx), gy))
    gg = GainGraph(Multigraph(len(reps), tuple(edges)), G, tuple(labels))
    return gg, reps, edge_reps


def quotient(graph, action: FreeAction) -> GainGraph:
    """Orbit multigraph of a free action, labelled so its derived graph recovers ``graph``."""
    return _quotient_data(graph, action)[0]


def cover_isomorphism(graph, action: FreeAction):
    """Explicit G-equivariant isomorphism from ``derived_graph(quotient(graph))`` onto ``graph``.

    Returns ``(vertex_map, edge_map)`` indexed like the derived graph, after
    checking that incidences match; raises if they do not.
    """
    graph = _as_multigraph(graph)
    gg, reps, edge_reps = _quotient_data(graph, action)
    G = action.group
    va, ea = action.vertex_action, action.edge_action
    cover, _ = derived_graph(gg)
    vmap = [va[g][reps[v]] for g in range(G.order) for v in range(gg.base.n)]
    emap = [ea[g][edge_reps[i]] for g in range(G.order) for i in range(len(gg.base.edges))]
    if sorted(vmap) != list(range(graph.n)) or sorted(emap) != list(range(len(graph.edges))):
        raise RuntimeError("quotient round trip is not a bijection")
    for k, e in enumerate(cover.edges):
        target = graph.edges[emap[k]]
        if sorted((vmap[e.tail], vmap[e.head])) != sorted((target.tail, target.head)):
            raise RuntimeError(f"derived edge {e.id} does not map onto an edge with matching ends")
    return vmap, emap


# ---------------------------------------------------------------------------
# switching

def switch(gg: GainGraph, d: Sequence[int]) -> GainGraph:
    """Relabel by ``l'(e) = d(tail) l(e) d(head)^-1``."""
    G = gg.group
    if len(d) != gg.base.n:
        raise InvalidInput("switching function needs one value per vertex")
    labels = tuple(G.prod(d[e.tail], gg.labels[i], G.inv(d[e.head])) for i, e in enumerate(gg.base.edges))
    return GainGraph(gg.base, G, labels)


def _spanning_forest(base: Multigraph):
    """BFS order per component rooted at its least vertex: (root, [(edge position, from, to, forward)])."""
    incident = [[] for _ in range(base.n)]
    for i, e in enumerate(base.edges):
        incident[e.tail].append((i, e.head, True))
        incident[e.head].append((i, e.tail, False))
    seen = [False] * base.n
    forest = []
    for root in range(base.n):
        if seen[root]:
            continue
        seen[root] = True
        steps, queue = [], deque([root])
        while queue:
            v = queue.popleft()
            for i, w, forward in incident[v]:
                if not seen[w]:
                    seen[w] = True
                    steps.append((i, v, w, forward))
                    queue.append(w)
        forest.append((root, steps))
    return forest


def find_switching(gg1: GainGraph, gg2: GainGraph):
    """A switching function ``d`` taking ``gg1`` to ``gg2``, or ``None``."""
    if gg1.base != gg2.base or gg1.group != gg2.group:
        raise InvalidInput("switching compares gain graphs on the same base graph and group")
    G, base = gg1.group, gg1.base
    d = [None] * base.n
    for root, steps in _spanning_forest(base):
        comp = [root] + [w for _, _, w, _ in steps]
        comp_set = set(comp)
        found = False
        for start in range(G.order):
            d[root] = start
            for i, v, w, forward in steps:
                l1, l2 = gg1.labels[i], gg2.labels[i]
                if forward:  # l2 = d(v) l1 d(w)^-1
                    d[w] = G.prod(G.inv(l2), d[v], l1)
                else:        # edge runs w -> v: l2 = d(w) l1 d(v)^-1
                    d[w] = G.prod(l2, d[v], G.inv(l1))
            if all(
                gg2.labels[i] == G.prod(d[e.tail], gg1.labels[i], G.inv(d[e.head]))
                for i, e in enumerate(base.edges) if e.tail in comp_set
            ):
                found = True
                break
        if not found:
            return None
    return tuple(d)


def is_cohomologous(gg1: GainGraph, gg2: GainGraph) -> bool:
    return find_switching(gg1, gg2) is not None


def is_g_acyclic(gg: GainGraph) -> bool:
    """Every closed walk has identity label (checked against spanning-tree potentials)."""
    G = gg.group
    pot = [None] * gg.base.n
    for root, steps in _spanning_forest(gg.base):
        pot[root] = G.identity
        for i, v, w, forward in steps:
            pot[w] = G.mul(pot[v], gg.label(i, forward))
    return all(G.mul(pot[e.tail], gg.labels[i]) == pot[e.head] for i, e in enumerate(gg.base.edges))


def cycle_label(gg: GainGraph, walk: Sequence[tuple]) -> int:
    """Product of labels along ``walk``, a sequence of ``(edge position, forward)``."""
    G = gg.group
    r = G.identity
    for i, forward in walk:
        r = G.mul(r, gg.label(i, forward))
    return r


# ---------------------------------------------------------------------------
# gain graphs attached to Rees matrix semigroups

def graham_houghton(S: ReesMatrixSemigroup) -> GainGraph:
    """Bipartite gain graph on ``B`` (vertices ``0..|B|-1``) and ``A`` (after them).

    One edge ``b -> a`` per nonzero entry, labelled ``C(b, a)``, in row-major order.
    """
    S.require_regular()
    nB = len(S.B)
    edges, labels = [], []
    for b, row in enumerate(S.C):
        for a, c in enumerate(row):
            if c is not None:
                edges.append(Edge(len(edges), b, nB + a))
                labels.append(c)
    return GainGraph(Multigraph(nB + len(S.A), tuple(edges)), S.group, tuple(labels))


def _require_degree2(S: ReesMatrixSemigroup):
    X = gm_action(S)
    for f in X.elements:
        for blk in fibers(f):
            if len(blk) > 2:
                raise DegreeViolation(f"fiber of size {len(blk)} in the action on G x B", blk)
    return X


def rlm_fiber_graph(S: ReesMatrixSemigroup) -> SimpleGraph:
    R = rlm(S)
    if ts_degree(R.elements) > 2:
        raise DegreeViolation("RLM action has degree above 2")
    return SimpleGraph(len(S.B), frozenset(b for f in R.elements for b in fibers(f) if len(b) == 2))


def gm_fiber_graph(S: ReesMatrixSemigroup) -> SimpleGraph:
    """Fiber graph of ``(G x B, S)`` from RLM fibers: ``(g',b') ~ (g,b)`` iff ``g' C(b',a) C(b,a)^-1 = g``."""
    _require_degree2(S)
    G = S.group
    nB = len(S.B)
    rlm_edges = rlm_fiber_graph(S).edge_list
    edges = set()
    for b1, b2 in rlm_edges:
        for a in range(len(S.A)):
            c1, c2 = S.C[b1][a], S.C[b2][a]
            if c1 is None or c2 is None:
                continue
            for g1 in range(G.order):
                g2 = G.prod(g1, c1, G.inv(c2))
                edges.add((g1 * nB + b1, g2 * nB + b2))
    return SimpleGraph(G.order * nB, frozenset(edges))


def fiber_cover_gain_graph(S: ReesMatrixSemigroup) -> GainGraph:
    """Gain multigraph on ``B``: one edge ``b' -> b`` labelled ``C(b',a) C(b,a)^-1`` per column
    ``a`` whose support is the RLM fiber ``{b', b}``. Parallel edges are kept."""
    _require_degree2(S)
    G = S.group
    edges, labels = [], []
    for b1, b2 in rlm_fiber_graph(S).edge_list:
        for a in range(len(S.A)):
            c1, c2 = S.C[b1][a], S.C[b2][a]
            if c1 is not None and c2 is not None:
                edges.append(Edge(len(edges), b1, b2))
                labels.append(G.mul(c1, G.inv(c2)))
    return GainGraph(Multigraph(len(S.B), tuple(edges)), G, tuple(labels))


def gm_group_action(S: ReesMatrixSemigroup, graph: SimpleGraph) -> FreeAction:
    """``h (g, b) = (hg, b)`` on a graph with vertex set ``G x B``."""
    G, nB = S.group, len(S.B)
    perms = [[G.mul(h, g) * nB + b for g in range(G.order) for b in range(nB)] for h in range(G.order)]
    return action_from_vertex_perms(Multigraph.from_simple(graph), G, perms)


def normalize_matrix(S: ReesMatrixSemigroup):
    """An isomorphic Rees matrix semigroup with entries in ``{0, 1}``, or ``None`` if there is none."""
    gh = graham_houghton(S)
    G = S.group
    d = find_switching(gh, GainGraph.trivial_labels(gh.base, G))
    if d is None:
        return None
    nB = len(S.B)
    C = [[None if c is None else G.prod(d[b], c, G.inv(d[nB + a])) for a, c in enumerate(row)]
         for b, row in enumerate(S.C)]
    return ReesMatrixSemigroup(G, S.A, S.B, C)


@dataclass(frozen=True)
class TrivcovReport:
    trivial_cover: bool
    normalizable: bool
    idempotents_aperiodic: bool

    @property
    def agree(self) -> bool:
        return self.trivial_cover == self.normalizable == self.idempotents_aperiodic

    def as_tuple(self) -> tuple:
        return (self.trivial_cover, self.normalizable, self.idempotents_aperiodic)


def trivcov_report(S: ReesMatrixSemigroup) -> TrivcovReport:
    """Evaluate the three equivalent conditions for a degree-2 GM instance.

    1. the fiber graph on ``G x B`` is the trivial cover of the RLM fiber graph,
       tested as G-acyclicity of the quotient labelling of the actual fiber graph;
    2. switching the Graham-Houghton graph brings every entry of ``C`` into ``{0, 1}``;
    3. the subsemigroup generated by the idempotents of ``S`` is aperiodic.
    """
    if not is_gm_matrix(S):
        raise InvalidInput("structure matrix has proportional rows or columns (not group mapping)")
    fg = gm_fiber_graph(S)
    q = quotient(fg, gm_group_action(S, fg))
    cond1 = is_g_acyclic(q)
    norm = normalize_matrix(S)
    cond2 = norm is not None and all(c is None or c == S.group.identity for row in norm.C for c in row)
    E = as_semigroup(S, S.idempotents())
    cond3 = is_aperiodic(E)
    return TrivcovReport(cond1, cond2, cond3)


def random_degree2_gm(rng, group: FiniteGroup, max_b: int = 4, tries: int = 1000) -> ReesMatrixSemigroup:
    """A random regular GM matrix over ``group`` whose columns have at most two nonzero entries.

    Column supports of size at most two keep every fiber of the actions on
    ``B`` and ``G x B`` within size two.
    """
    for _ in range(tries):
        nB = rng.randint(2, max_b)
        nA = rng.randint(2, max_b)
        C = [[None] * nA for _ in range(nB)]
        for a in range(nA):
            for b in rng.sample(range(nB), rng.choice((1, 2))):
                C[b][a] = rng.randrange(group.order)
        S = ReesMatrixSemigroup(group, [f"a{i + 1}" for i in range(nA)], [f"b{i + 1}" for i in range(nB)], C)
        if S.is_regular() and is_gm_matrix(S):
            return S
    raise RuntimeError("no regular GM matrix found")
