import random

import pytest

from degree2.claims import cyclic_ones, z2_square
from degree2.errors import DegreeViolation, InvalidInput
from degree2.gain import (
    FreeAction,
    GainGraph,
    action_from_vertex_perms,
    cover_isomorphism,
    cycle_label,
    derived_graph,
    find_switching,
    gm_fiber_graph,
    gm_group_action,
    graham_houghton,
    is_cohomologous,
    is_g_acyclic,
    quotient,
    random_degree2_gm,
    rlm_fiber_graph,
    switch,
    trivcov_report,
)
from degree2.graphs import Multigraph, complete, cycle, disjoint_union, is_isomorphic, path, simplify
from degree2.groups import cyclic, symmetric, trivial
from degree2.pfun import fiber_graph
from degree2.rees import ReesMatrixSemigroup, gm_action, is_gm_matrix

Z2 = cyclic(2)


def c4_gain(labels, group=Z2):
    return GainGraph(Multigraph.from_simple(cycle(4)), group, labels)


def test_derived_graph_of_balanced_four_cycle_is_two_copies():
    cover, action = derived_graph(c4_gain((0, 0, 0, 0)), simple=True)
    assert is_isomorphic(cover, disjoint_union(cycle(4), cycle(4)))
    assert action.group == Z2


def test_derived_graph_of_twisted_four_cycle_is_eight_cycle():
    cover, _ = derived_graph(c4_gain((0, 0, 0, 1)), simple=True)
    assert is_isomorphic(cover, cycle(8))


def test_derived_graph_over_trivial_group_is_base():
    base = Multigraph.from_simple(path(4))
    cover, _ = derived_graph(GainGraph.trivial_labels(base, trivial()), simple=True)
    assert cover == path(4)


def test_derived_action_is_free_and_valid():
    gg = GainGraph(Multigraph.from_simple(complete(3)), symmetric(3), (1, 2, 3))
    cover, action = derived_graph(gg)
    action.validate(cover)
    assert cover.n == 18 and len(cover.edges) == 18


def test_quotient_of_two_four_cycles_is_balanced():
    two = disjoint_union(cycle(4), cycle(4))
    action = action_from_vertex_perms(Multigraph.from_simple(two), Z2, [list(range(8)), [4, 5, 6, 7, 0, 1, 2, 3]])
    q = quotient(two, action)
    assert simplify(q.base) == cycle(4)
    assert is_g_acyclic(q)
    assert is_cohomologous(q, GainGraph.trivial_labels(q.base, Z2))


def test_quotient_of_eight_cycle_under_antipodal_map():
    c8 = cycle(8)
    action = action_from_vertex_perms(Multigraph.from_simple(c8), Z2, [list(range(8)), [(v + 4) % 8 for v in range(8)]])
    q = quotient(c8, action)
    assert simplify(q.base) == cycle(4)
    assert not is_g_acyclic(q)
    walk = [(0, True), (2, True), (3, False), (1, False)]  # 0-1-2-3-0 in base edge positions
    ends = [(e.tail, e.head) for e in q.base.edges]
    assert sorted(ends) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    cover, _ = derived_graph(q, simple=True)
    assert is_isomorphic(cover, c8)
    cover_isomorphism(c8, action)
    assert cycle_label(c4_gain((0, 0, 0, 1)), walk) == 1


def test_non_free_action_rejected():
    g = Multigraph.from_simple(path(3))
    with pytest.raises(InvalidInput):
        action_from_vertex_perms(g, Z2, [[0, 1, 2], [2, 1, 0]]).validate(g)


def test_quotient_of_derived_graph_is_cohomologous_to_original():
    rng = random.Random(3)
    for _ in range(20):
        G = rng.choice([cyclic(2), cyclic(3), symmetric(3)])
        base = Multigraph.from_simple(rng.choice([cycle(4), complete(3), path(3), cycle(5)]))
        gg = GainGraph(base, G, tuple(rng.randrange(G.order) for _ in base.edges))
        cover, action = derived_graph(gg)
        q = quotient(cover, action)
        assert q.base == base
        assert is_cohomologous(q, gg)
        vmap, emap = cover_isomorphism(cover, action)
        assert sorted(vmap) == list(range(cover.n))


def test_switching():
    gg = c4_gain((0, 1, 1, 0))
    assert switch(gg, (1, 1, 1, 1)) == gg  # abelian: constant switch is trivial
    balanced = c4_gain((0, 0, 0, 0))
    assert is_cohomologous(balanced, gg) == is_g_acyclic(gg)
    assert not is_cohomologous(balanced, c4_gain((0, 0, 0, 1)))
    # labels 1,1,-1,-1 arranged to cancel around the cycle
    cancel = c4_gain((0, 1, 0, 1))
    d = find_switching(balanced, cancel)
    assert d is not None and switch(balanced, d) == cancel


def test_switching_preserves_cover_and_acyclicity():
    rng = random.Random(6)
    G = symmetric(3)
    base = Multigraph.from_simple(cycle(4))
    for _ in range(15):
        gg = GainGraph(base, G, tuple(rng.randrange(6) for _ in range(4)))
        d = tuple(rng.randrange(6) for _ in range(4))
        sw = switch(gg, d)
        assert is_g_acyclic(sw) == is_g_acyclic(gg)
        assert find_switching(gg, sw) is not None
        assert is_isomorphic(derived_graph(gg, simple=True)[0], derived_graph(sw, simple=True)[0])


def test_switching_rejects_different_bases():
    with pytest.raises(InvalidInput):
        find_switching(c4_gain((0, 0, 0, 0)), GainGraph.trivial_labels(Multigraph.from_simple(path(4)), Z2))


def test_tree_is_g_acyclic():
    gg = GainGraph(Multigraph.from_simple(path(5)), cyclic(3), (1, 2, 1, 2))
    assert is_g_acyclic(gg)


def test_graham_houghton_graphs():
    gh = graham_houghton(z2_square())
    assert simplify(gh.base) == simplify(Multigraph(4, ((0, 0, 2), (1, 0, 3), (2, 1, 2), (3, 1, 3))))
    assert gh.labels == (0, 0, 0, 1)
    assert is_g_acyclic(graham_houghton(cyclic_ones()))
    twisted = graham_houghton(cyclic_ones(True))
    assert is_isomorphic(simplify(twisted.base), cycle(8))
    assert sum(1 for x in twisted.labels if x) == 1
    assert not is_g_acyclic(twisted)
    S = ReesMatrixSemigroup.from_names(trivial(), [["1", "1"], ["1", "0"]])
    assert is_g_acyclic(graham_houghton(S))


def test_fiber_graphs_of_worked_examples():
    assert sorted(gm_fiber_graph(z2_square()).edge_list) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert is_isomorphic(gm_fiber_graph(cyclic_ones()), disjoint_union(cycle(4), cycle(4)))
    assert is_isomorphic(gm_fiber_graph(cyclic_ones(True)), cycle(8))
    assert is_isomorphic(rlm_fiber_graph(cyclic_ones()), cycle(4))
    assert rlm_fiber_graph(z2_square()) == complete(2)


def test_fiber_graph_matches_direct_enumeration_on_random_matrices():
    rng = random.Random(12)
    for _ in range(30):
        S = random_degree2_gm(rng, Z2)
        X = gm_action(S)
        assert gm_fiber_graph(S) == fiber_graph(X.elements, X.elements[0].dom_size)


def test_degree_violation_reported():
    S3 = ReesMatrixSemigroup.from_names(Z2, [["1", "1"], ["1", "-1"], ["-1", "0"]])
    assert is_gm_matrix(S3)
    with pytest.raises(DegreeViolation) as info:
        gm_fiber_graph(S3)
    assert len(info.value.fiber) == 3


def test_trivcov_on_worked_examples():
    assert trivcov_report(cyclic_ones()).as_tuple() == (True, True, True)
    assert trivcov_report(cyclic_ones(True)).as_tuple() == (False, False, False)
    assert trivcov_report(z2_square()).as_tuple() == (False, False, False)


def test_trivcov_rejects_non_gm():
    S = ReesMatrixSemigroup.from_names(Z2, [["1", "1"], ["1", "1"]])
    with pytest.raises(InvalidInput):
        trivcov_report(S)


@pytest.mark.parametrize("order", [2, 3])
def test_trivcov_conditions_agree_on_random_instances(order):
    rng = random.Random(100 + order)
    seen = set()
    for _ in range(25):
        r = trivcov_report(random_degree2_gm(rng, cyclic(order)))
        assert r.agree, r
        seen.add(r.trivial_cover)
    assert seen == {True, False}


@pytest.mark.parametrize("S", [z2_square(), cyclic_ones(), cyclic_ones(True)], ids=["z2", "ones", "twist"])
def test_gross_tucker_round_trip_on_fiber_covers(S):
    fg = gm_fiber_graph(S)
    action = gm_group_action(S, fg)
    assert isinstance(action, FreeAction)
    q = quotient(fg, action)
    assert is_isomorphic(derived_graph(q, simple=True)[0], fg)
    cover_isomorphism(fg, action)
