import json
import random

import pytest

from degree2.claims import small2_generators
from degree2.continuity import enumerate_continuous, singular_maps
from degree2.decomposition import (
    RelationalMorphismTS,
    action_counterexample,
    anticlique_rm,
    anticlique_target,
    check_certificate,
    companion_relation,
    degree2_certificate,
    derived_ts,
    is_right_zero,
    semidirect_cover,
    validate_rm,
)
from degree2.errors import InvalidInput
from degree2.graphs import anticliques, complete, cycle, edgeless, path, random_graph
from degree2.pfun import PartialFunction, compose, partial_bijections
from degree2.semigroup import closure, semidirect_act

from conftest import SMALL_GRAPHS


def identity_rm(S):
    n = S.elements[0].dom_size
    return RelationalMorphismTS(S, n, S, tuple(frozenset([q]) for q in range(n)), list(S.elements))


def test_identity_relation_validates_and_derives_the_generators():
    S = closure(enumerate_continuous(path(3)))
    rm = identity_rm(S)
    assert validate_rm(rm)
    D = derived_ts(rm)
    assert D.states == [(q, q) for q in range(3)]
    for i, s in enumerate(S.elements):
        table = [-1] * 3
        for (p, j), letter in zip(D.letters, D.letter_maps):
            if j == i:
                for k, y in enumerate(letter.table):
                    if y != -1:
                        table[k] = y
        assert table == list(s.table)


def test_anticlique_relation_on_k3_is_valid():
    rm, target = anticlique_rm(complete(3))
    assert validate_rm(rm)
    assert len(target.points) == 4


def test_broken_cover_is_rejected_with_witness():
    rm, _ = anticlique_rm(complete(3))
    i = next(k for k, s in enumerate(rm.source.elements) if s.rank == 3 and s != PartialFunction.identity(3))
    bad = list(rm.cover)
    bad[i] = PartialFunction.identity(rm.target_points)
    assert bad[i] in rm.target
    rm2 = RelationalMorphismTS(rm.source, rm.target_points, rm.target, rm.rel, bad)
    result = validate_rm(rm2)
    assert not result
    q, j, p = result.witness
    assert j == i and p in rm.rel[q]


def test_empty_relation_is_rejected():
    rm, _ = anticlique_rm(path(3))
    rel = (frozenset(),) + rm.rel[1:]
    result = validate_rm(RelationalMorphismTS(rm.source, rm.target_points, rm.target, rel, rm.cover))
    assert not result and result.witness == (0,)


def test_swapping_in_another_valid_cover_keeps_validity():
    rm, _ = anticlique_rm(path(3))
    rng = random.Random(1)
    for _ in range(10):
        i = rng.randrange(len(rm.source))
        alternatives = companion_relation(rm, i)
        assert rm.cover[i] in alternatives
        cover = list(rm.cover)
        cover[i] = rng.choice(alternatives)
        assert validate_rm(RelationalMorphismTS(rm.source, rm.target_points, rm.target, rm.rel, cover))


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_every_derived_element_is_injective(name):
    rm, _ = anticlique_rm(SMALL_GRAPHS[name])
    D = derived_ts(rm)
    assert D.semigroup is not None
    assert all(x.is_injective() for x in D.semigroup.elements)
    # letters with empty action stay in the automaton but do not generate
    assert all(not m.is_empty() for m in D.semigroup.elements[: len(D.semigroup.gens)])


def test_anticlique_action_is_closed_on_small_graphs():
    for g in (cycle(5), path(5), complete(4), edgeless(4)):
        assert action_counterexample(g) is None
    rng = random.Random(200)
    for _ in range(200):
        g = random_graph(rng.randint(1, 5), rng.random(), rng)
        Y = rng.choice(anticliques(g))
        f = rng.choice(enumerate_continuous(g))
        assert semidirect_act(Y, semidirect_cover(f)) in anticliques(g)


def test_edgeless_target_acts_by_partial_bijection_images():
    g = edgeless(3)
    T = anticlique_target(g)
    assert T.points == list(range(8))
    for f, t in zip(enumerate_continuous(g), T.covers):
        assert f in partial_bijections(3)
        for k, A in enumerate(T.points):
            img = sum(1 << f.table[v] for v in range(3) if A >> v & 1 and f.table[v] != -1)
            assert T.points[t.table[k]] == img


def test_singular_generators_give_right_zero_target():
    gens = small2_generators()[:-1]
    T = anticlique_target(cycle(4), closure(gens).elements)
    assert is_right_zero(T.semigroup)
    full = anticlique_target(cycle(4))
    assert not is_right_zero(full.semigroup)


@pytest.mark.parametrize("name", ["C4", "K3", "P3"])
def test_certificate_roundtrip(name):
    c = degree2_certificate(SMALL_GRAPHS[name])
    assert c.rm_valid and c.all_injective and c.bound == 2
    data = json.loads(c.to_json())
    assert data["schema"] == "degree2.certificate/1"
    assert check_certificate(data)


def test_tampered_certificate_is_rejected():
    data = json.loads(degree2_certificate(cycle(4)).to_json())
    k = next(i for i, s in enumerate(data["source_tables"]) if s == [1, 0, 3, 2])
    data["cover_tables"][k] = list(range(len(data["anticliques"])))
    assert not check_certificate(data)
    data = json.loads(degree2_certificate(cycle(4)).to_json())
    data["anticliques"] = data["anticliques"][:-1]
    assert not check_certificate(data)


def test_singular_certificate_gives_bound_one():
    c = degree2_certificate(cycle(4), gens=small2_generators()[:-1], singular_only=True)
    assert c.target_right_zero and c.all_injective and c.bound == 1
    c_all = degree2_certificate(cycle(4), singular_only=True)
    assert c_all.bound == 1
    assert c_all.source_size >= len(singular_maps(cycle(4)))


def test_certificate_rejects_non_continuous_generators():
    with pytest.raises(InvalidInput):
        degree2_certificate(path(3), gens=[PartialFunction([1, -1, 1], 3)])
    with pytest.raises(InvalidInput):
        degree2_certificate(cycle(4), gens=small2_generators(), singular_only=True)


def test_certificate_is_deterministic():
    assert degree2_certificate(complete(3)).to_json() == degree2_certificate(complete(3)).to_json()


def test_right_zero_check():
    S = closure([PartialFunction([0, 0], 2), PartialFunction([1, 1], 2)])
    assert is_right_zero(S)
    assert not is_right_zero(closure([PartialFunction([1, 0], 2)]))


def test_singular_products_stay_singular():
    maps = singular_maps(cycle(4))
    for f in maps:
        for g in maps:
            h = compose(f, g)
            assert h.is_empty() or all(h.table.count(y) == 2 for y in h.image())
