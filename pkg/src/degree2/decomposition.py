"""Relational morphisms of transformation semigroups and the degree-2 certificate.

For a graph ``G`` the source is ``(V, S)`` with ``S`` a semigroup of
continuous maps (``M(G)`` by default). The target acts on the set ``P`` of
anti-cliques of ``G``: each ``f`` in ``S`` is covered by the pair
``(Inj(f), Im(Sing(f)))`` of the semidirect product of the symmetric inverse
monoid with the subset semilattice, acting by ``A (s, Y) = As | Y``. The
relation sends a vertex to every anti-clique containing it.

A certificate bundles the validated relational morphism with an exhaustive
scan showing that every element of the derived transformation semigroup is a
partial injection. It serialises to JSON together with the tables needed to
re-check it without enumerating ``M(G)`` again (see :func:`check_certificate`).
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .continuity import enumerate_continuous, is_continuous
from .errors import InvalidInput
from .graphs import SimpleGraph, anticliques
from .pfun import UNDEF, PartialFunction, fibers, sing_inj
from .semigroup import SemidirectElement, TransformationSemigroup, closure, semidirect_act

CERTIFICATE_SCHEMA = "degree2.certificate/1"


@dataclass
class RelationalMorphismTS:
    source: TransformationSemigroup
    target_points: int
    target: TransformationSemigroup
    #: rel[q] = set of target points related to source point q
    rel: tuple
    #: cover[i] = element of the target covering source element i
    cover: list


@dataclass(frozen=True)
class RMValidation:
    valid: bool
    #: (q, source element index, p) where condition (2) fails, or (q,) for an empty relation
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def validate_rm(rm: RelationalMorphismTS) -> RMValidation:
    """Check that the relation is fully defined and that each cover really covers."""
    for q, ps in enumerate(rm.rel):
        if not ps:
            return RMValidation(False, (q,), f"point {q} is related to nothing")
    for i, t in enumerate(rm.cover):
        if t not in rm.target:
            return RMValidation(False, (None, i, None), f"cover of element {i} is not in the target")
    for i, s in enumerate(rm.source.elements):
        t = rm.cover[i]
        for q, qs in enumerate(s.table):
            if qs == UNDEF:
                continue
            allowed = rm.rel[qs]
            for p in rm.rel[q]:
                pt = t.table[p]
                if pt == UNDEF or pt not in allowed:
                    return RMValidation(False, (q, i, p), f"cover of element {i} fails at point {q}, target point {p}")
    return RMValidation(True)


def covers(rm: RelationalMorphismTS, s: PartialFunction, t: PartialFunction) -> bool:
    for q, qs in enumerate(s.table):
        if qs == UNDEF:
            continue
        for p in rm.rel[q]:
            if t.table[p] == UNDEF or t.table[p] not in rm.rel[qs]:
                return False
    return True


def companion_relation(rm: RelationalMorphismTS, i: int) -> list:
    """All target elements covering source element ``i``."""
    s = rm.source.elements[i]
    return [t for t in rm.target.elements if covers(rm, s, t)]


# ---------------------------------------------------------------------------
# derived transformation semigroup

@dataclass
class DerivedTS:
    states: list
    #: (target point p, source element index) for each letter, with p*cover nonempty
    letters: list
    letter_maps: list
    semigroup: TransformationSemigroup | None


def derived_ts(rm: RelationalMorphismTS, cap: int | None = None) -> DerivedTS:
    """Derived automaton of the relational morphism parametrised by its cover map.

    State ``(q, p)`` with ``p`` related to ``q``; letter ``(p, (s, t))`` moves
    ``(q, p)`` to ``(qs, pt)`` when ``qs`` is defined. Letters acting as the
    empty map stay in ``letters`` but do not generate the semigroup.
    """
    states = [(q, p) for q in range(len(rm.rel)) for p in sorted(rm.rel[q])]
    where = {st: k for k, st in enumerate(states)}
    by_p = {}
    for q, p in states:
        by_p.setdefault(p, []).append(q)
    letters, maps = [], []
    for p in range(rm.target_points):
        for i, s in enumerate(rm.source.elements):
            t = rm.cover[i]
            pt = t.table[p]
            if pt == UNDEF:
                continue
            table = [UNDEF] * len(states)
            for q in by_p.get(p, []):
                qs = s.table[q]
                if qs != UNDEF:
                    table[where[(q, p)]] = where[(qs, pt)]
            letters.append((p, i))
            maps.append(PartialFunction(table, len(states)))
    gens = sorted({m for m in maps if not m.is_empty()})
    sg = closure(gens, cap=cap) if gens else None
    return DerivedTS(states, letters, maps, sg)


# ---------------------------------------------------------------------------
# the anti-clique target

@dataclass
class AnticliqueTarget:
    points: list            # anti-cliques as bitmasks
    pairs: list             # (Inj(f), Im(Sing(f))) per source element
    covers: list            # action of each pair on the points
    semigroup: TransformationSemigroup


def semidirect_cover(f: PartialFunction) -> SemidirectElement:
    d = sing_inj(f)
    mask = 0
    for y in d.sing.image():
        mask |= 1 << y
    return SemidirectElement(d.inj, mask)


def anticlique_target(g: SimpleGraph, source: Sequence[PartialFunction] | None = None,
                      cap: int | None = None) -> AnticliqueTarget:
    """``(P, T)`` with ``P`` the anti-cliques of ``g`` and ``T`` generated by the covers of ``source``."""
    source = enumerate_continuous(g) if source is None else list(source)
    points = anticliques(g)
    where = {m: k for k, m in enumerate(points)}
    pairs, acts = [], []
    for f in source:
        x = semidirect_cover(f)
        table = []
        for A in points:
            B = semidirect_act(A, x)
            if B not in where:
                raise RuntimeError(f"{f.pretty()} sends anti-clique {A:b} to a set with an edge")
            table.append(where[B])
        pairs.append(x)
        acts.append(PartialFunction(table, len(points)))
    T = closure(sorted(set(acts)), cap=cap)
    return AnticliqueTarget(points, pairs, acts, T)


def action_counterexample(g: SimpleGraph, maps: Sequence[PartialFunction] | None = None):
    """First ``(Y, f)`` for which ``Y Inj(f) | Im(Sing(f))`` is not an anti-clique, or ``None``."""
    maps = enumerate_continuous(g) if maps is None else maps
    acs = set(anticliques(g))
    for f in maps:
        x = semidirect_cover(f)
        for Y in acs:
            if semidirect_act(Y, x) not in acs:
                return Y, f
    return None


def anticlique_rm(g: SimpleGraph, source: Sequence[PartialFunction] | None = None,
                  cap: int | None = None) -> tuple:
    """The relational morphism ``v -> {A : v in A}`` into the anti-clique target."""
    S = closure(list(source), cap=cap) if source is not None else closure(enumerate_continuous(g), cap=cap)
    target = anticlique_target(g, S.elements, cap=cap)
    rel = tuple(frozenset(k for k, A in enumerate(target.points) if A >> v & 1) for v in range(g.n))
    rm = RelationalMorphismTS(S, len(target.points), target.semigroup, rel, list(target.covers))
    return rm, target


def is_right_zero(T: TransformationSemigroup) -> bool:
    return all(T.product(x, y) == y for x in T.elements for y in T.elements)


def is_singular(f: PartialFunction) -> bool:
    return all(len(b) == 2 for b in fibers(f))


# ---------------------------------------------------------------------------
# certificate

@dataclass
class Certificate:
    n: int
    edges: list
    source_size: int
    anticliques: list
    target_size: int
    rm_valid: bool
    rm_witness: list | None
    derived_states: int
    derived_size: int
    injective_count: int
    all_injective: bool
    singular_only: bool
    target_right_zero: bool
    bound: int
    #: tables for independent re-checking
    source_tables: list = field(repr=False, default_factory=list)
    cover_tables: list = field(repr=False, default_factory=list)
    schema: str = CERTIFICATE_SCHEMA

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), sort_keys=True, **kw)


def degree2_certificate(g: SimpleGraph, gens: Sequence[PartialFunction] | None = None,
                        singular_only: bool = False, cap: int | None = None) -> Certificate:
    """Build and scan the relational morphism bounding the complexity of ``(V, S)`` by 2.

    ``S`` is the semigroup generated by ``gens`` (every map must be continuous
    on ``g``), the singular continuous maps of ``g`` when ``singular_only``,
    or all of ``M(g)``. When ``S`` is singular the target is checked to be a
    right-zero semigroup and the bound drops to 1.
    """
    if gens is None:
        gens = enumerate_continuous(g)
        if singular_only:
            gens = [f for f in gens if is_singular(f)]
    gens = list(gens)
    for f in gens:
        if f.dom_size != g.n or not is_continuous(f, g):
            raise InvalidInput(f"{f.pretty()} is not a continuous map on the graph")
    rm, target = anticlique_rm(g, gens, cap=cap)
    singular = all(is_singular(f) for f in rm.source.elements)
    if singular_only and not singular:
        raise InvalidInput("generators produce a non-singular map")
    check = validate_rm(rm)
    D = derived_ts(rm, cap=cap)
    elements = D.semigroup.elements if D.semigroup is not None else []
    injective = sum(1 for x in elements if x.is_injective())
    right_zero = is_right_zero(target.semigroup)
    all_inj = injective == len(elements)
    bound = 1 if (singular and right_zero and all_inj and check.valid) else 2
    return Certificate(
        n=g.n,
        edges=[list(e) for e in g.edge_list],
        source_size=len(rm.source),
        anticliques=[[v for v in range(g.n) if A >> v & 1] for A in target.points],
        target_size=len(target.semigroup),
        rm_valid=check.valid,
        rm_witness=None if check.witness is None else list(check.witness),
        derived_states=len(D.states),
        derived_size=len(elements),
        injective_count=injective,
        all_injective=all_inj,
        singular_only=singular,
        target_right_zero=right_zero,
        bound=bound,
        source_tables=[list(f.table) for f in rm.source.elements],
        cover_tables=[list(t.table) for t in rm.cover],
    )


def check_certificate(data: dict) -> bool:
    """Re-verify a serialised certificate from its embedded tables alone.

    Checks that the listed sets are exactly the anti-cliques, that each cover
    satisfies the relational-morphism condition, and that each derived letter
    is injective (so every product of letters is too).
    """
    n = data["n"]
    g = SimpleGraph(n, frozenset(tuple(e) for e in data["edges"]))
    acs = [sum(1 << v for v in A) for A in data["anticliques"]]
    if sorted(acs) != anticliques(g):
        return False
    rel = [[k for k, A in enumerate(acs) if A >> v & 1] for v in range(n)]
    for s, t in zip(data["source_tables"], data["cover_tables"], strict=True):
        for q, qs in enumerate(s):
            if qs == UNDEF:
                continue
            for p in rel[q]:
                if t[p] == UNDEF or t[p] not in rel[qs]:
                    return False
        # letter (p, (s, t)) restricted to states (q, p) is q -> qs on the anti-clique p
        for A in acs:
            imgs = [s[q] for q in range(n) if A >> q & 1 and s[q] != UNDEF]
            if len(imgs) != len(set(imgs)):
                return False
    return True
