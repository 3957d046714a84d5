import random

import pytest

from degree2.continuity import (
    ContinuityHypothesisError,
    automorphism_maps,
    build_from_parts,
    check_continuity,
    enumerate_continuous,
    enumerate_strict,
    enumerate_structured,
    is_continuous,
    singular_maps,
    verify_embedding,
)
from degree2.errors import DegenerateInput, InvalidInput, ResourceLimit
from degree2.graphs import (
    anticliques,
    automorphisms,
    complete,
    complete_bipartite,
    cycle,
    edgeless,
    is_anticlique,
    is_matching,
    path,
    random_graph,
)
from degree2.pfun import PartialFunction, all_partial_maps, compose, fibers, partial_bijections, restrict, sing_inj
from degree2.semigroup import closure

from conftest import SMALL_GRAPHS


def brute(g, strict=False):
    keep = []
    for f in all_partial_maps(g.n):
        r = check_continuity(f, g)
        if r.strict if strict else r.continuous:
            keep.append(f)
    return keep


def test_cross_graph_example_is_not_continuous():
    f = PartialFunction.parse("1>1,2>2,3>1", 3, cod_size=2)
    r = check_continuity(f, path(3), complete(2))
    assert not r.continuous
    simplex, pre = r.witness
    assert tuple(simplex) == (0, 1) and set(pre) == {0, 1, 2}


def test_collapse_on_path_is_continuous_not_strict():
    r = check_continuity(PartialFunction.parse("1>1,2>1,3>3", 3), path(3))
    assert r.continuous and not r.strict
    assert r.witness is None and r.strict_witness is not None


def test_partial_identity_on_complete_graph():
    r = check_continuity(PartialFunction.parse("1>1", 3), complete(3))
    assert r.continuous and not r.strict


def test_size_mismatch_is_invalid():
    with pytest.raises(InvalidInput):
        check_continuity(PartialFunction.identity(2), complete(3))


@pytest.mark.parametrize(
    "g, count",
    [(edgeless(3), 34), (complete(2), 9), (complete(3), 43), (path(3), 36), (cycle(4), 169)],
)
def test_continuous_counts_match_brute_force(g, count):
    maps = enumerate_continuous(g)
    assert len(maps) == count
    assert maps == sorted(brute(g))


def test_empty_graph_gives_symmetric_inverse_monoid():
    assert set(enumerate_continuous(edgeless(3))) == set(partial_bijections(3))


def test_complete_graph_structure():
    g = complete(3)
    extra = {PartialFunction.from_dict({u: v, w: v}, 3) for u, w in g.edge_list for v in range(3)}
    assert set(enumerate_continuous(g)) == set(partial_bijections(3)) | extra


@pytest.mark.parametrize("g, count", [(complete_bipartite(2, 2), 33), (complete(3), 16), (cycle(5), 86)])
def test_strict_counts_match_brute_force(g, count):
    maps = enumerate_strict(g)
    assert len(maps) == count
    assert maps == sorted(brute(g, strict=True))


def test_strict_rejects_isolated_vertices():
    with pytest.raises(DegenerateInput):
        enumerate_strict(edgeless(2))


def test_bound_is_enforced():
    with pytest.raises(ResourceLimit):
        enumerate_continuous(edgeless(4), bound=3)


def test_structured_enumeration_agrees_on_random_graphs():
    rng = random.Random(11)
    for _ in range(20):
        g = random_graph(rng.randint(1, 5), rng.random(), rng)
        assert enumerate_structured(g) == enumerate_continuous(g), g


def test_monoids_are_closed_and_contain_identity(small_graph):
    maps = enumerate_continuous(small_graph)
    assert PartialFunction.identity(small_graph.n) in maps
    assert len(closure(maps)) == len(maps)
    if not small_graph.isolated_vertices():
        strict = enumerate_strict(small_graph)
        assert PartialFunction.identity(small_graph.n) in strict
        assert set(strict) <= set(maps)
        assert len(closure(strict)) == len(strict)


def test_structural_lemmas_hold_on_every_continuous_map(small_graph):
    g = small_graph
    for f in enumerate_continuous(g):
        assert all(len(b) <= 2 for b in fibers(f))
        assert all(g.has_edge(*b) for b in fibers(f) if len(b) == 2)
        d = sing_inj(f)
        assert is_matching(g, [b for b in fibers(d.sing)])
        assert is_anticlique(g, d.sing.image())
        if not g.isolated_vertices():
            assert check_continuity(d.sing, g).strict
        for keep in ([], [0], list(range(g.n))[::2]):
            assert is_continuous(restrict(f, keep), g)


@pytest.mark.parametrize("name", ["C4", "K22", "P3", "K3"])
def test_strict_maps_on_connected_graphs(name):
    g = SMALL_GRAPHS[name]
    sm = set(enumerate_strict(g))
    auts = set(automorphism_maps(g))
    empty = {PartialFunction.empty(g.n)}
    assert sm == empty | auts | set(singular_maps(g))
    for f in sm:
        if not f.is_empty() and any(len(b) == 1 for b in fibers(f)):
            assert f in auts


def test_build_from_parts_reproduces_small2_generator():
    g = cycle(4)
    # vertices 1..4 of the 4-cycle are 0..3 here; 12 -> 3 and 34 -> 1
    sing = PartialFunction.from_dict({0: 2, 1: 2, 2: 0, 3: 0}, 4)
    f = build_from_parts(sing, PartialFunction.empty(4), g)
    assert f == sing and is_continuous(f, g)


def test_build_from_parts_with_automorphism():
    g = cycle(4)
    for p in automorphisms(g):
        h = PartialFunction(p, 4)
        assert build_from_parts(PartialFunction.empty(4), h, g) == h


@pytest.mark.parametrize(
    "sing, inj, kind",
    [
        ({0: 1, 2: 1}, {}, "matching-violation"),
        ({0: 0, 1: 0, 2: 1, 3: 1}, {}, "anticlique-violation"),
        ({0: 2, 1: 2}, {2: 1}, "adjacency-violation"),
        ({0: 2, 1: 2}, {0: 0}, "overlap-violation"),
        ({}, {0: 0, 2: 1}, "morphism-violation"),
        ({}, {0: 0, 1: 0}, "morphism-violation"),
    ],
)
def test_build_from_parts_names_the_failed_hypothesis(sing, inj, kind):
    g = cycle(4)
    with pytest.raises(ContinuityHypothesisError) as info:
        build_from_parts(PartialFunction.from_dict(sing, 4), PartialFunction.from_dict(inj, 4), g)
    assert info.value.kind == kind


def test_verify_embedding():
    gens = [f for f in singular_maps(cycle(4)) if f.rank == 2] + [PartialFunction([1, 0, 3, 2], 4)]
    assert verify_embedding(gens, 4)
    assert verify_embedding([PartialFunction([1, 2, 0], 3)], 3)


def test_verify_embedding_on_random_degree2_closures():
    rng = random.Random(5)
    for _ in range(50):
        g = random_graph(rng.randint(2, 5), 0.5, rng)
        maps = enumerate_continuous(g)
        gens = rng.sample(maps, min(3, len(maps)))
        assert verify_embedding(gens, g.n)


def test_composition_closure_on_random_pairs():
    rng = random.Random(2)
    g = cycle(5)
    maps = enumerate_continuous(g)
    for _ in range(200):
        f, h = rng.choice(maps), rng.choice(maps)
        assert is_continuous(compose(f, h), g)


def test_anticlique_count_sanity():
    assert len(anticliques(cycle(4))) == 7
