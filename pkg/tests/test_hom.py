from itertools import product as cartesian

import pytest
from hypothesis import given, settings

from homdual.lib.arcgraph import arc_graph
from homdual.lib.config import Settings
from homdual.lib.errors import BudgetExceeded, OutOfRange, VocabularyMismatch
from homdual.lib.families import (
    complete_graph,
    directed_cycle,
    directed_path,
    loop_vertex,
    transitive_tournament,
)
from homdual.lib.hom import (
    ExponentialArcs,
    Homomorphism,
    compose,
    core,
    exponential,
    find_hom,
    hom_equivalent,
    is_core,
    is_hom,
    is_retraction,
    isomorphic,
    iter_homs,
)
from homdual.lib.structures import RelationalStructure, digraph, disjoint_union, product

from .strategies import TERNARY, digraphs, ternary_structures


def brute_force_exists(G, H):
    return any(is_hom(G, H, m) for m in cartesian(range(H.size), repeat=G.size))


def test_path_obstructs_tournament(t4, p4):
    assert find_hom(p4, t4) is None
    f = find_hom(directed_path(3), t4)
    assert f.mapping == (0, 1, 2, 3)


def test_homs_come_in_lexicographic_order():
    homs = [h.mapping for h in iter_homs(directed_path(1), transitive_tournament(3))]
    assert homs == [(0, 1), (0, 2), (1, 2)]


def test_fixed_and_allowed_values():
    T3 = transitive_tournament(3)
    assert find_hom(directed_path(1), T3, fixed={1: 2}).mapping == (0, 2)
    assert find_hom(directed_path(1), T3, allowed={0: [1]}).mapping == (1, 2)
    assert find_hom(directed_path(1), T3, fixed={0: 2}) is None
    with pytest.raises(OutOfRange):
        find_hom(directed_path(1), T3, fixed={0: 3})


def test_injective_search():
    two = digraph(2)
    one = digraph(1)
    assert find_hom(two, one) is not None
    assert find_hom(two, one, injective=True) is None
    f = find_hom(directed_path(1), complete_graph(3), injective=True)
    assert len(set(f.mapping)) == 2


def test_vocabularies_must_agree():
    with pytest.raises(VocabularyMismatch):
        find_hom(directed_path(1), RelationalStructure(TERNARY, 1))


def test_empty_target():
    assert find_hom(directed_path(1), digraph(0)) is None
    assert find_hom(digraph(0), digraph(0)).mapping == ()


@settings(deadline=None)
@given(digraphs(max_size=3), digraphs(max_size=3))
def test_search_agrees_with_brute_force(G, H):
    f = find_hom(G, H)
    assert (f is not None) == brute_force_exists(G, H)
    if f is not None:
        assert is_hom(G, H, f.mapping)


@settings(deadline=None)
@given(ternary_structures(), ternary_structures())
def test_search_on_ternary_structures(A, B):
    assert (find_hom(A, B) is not None) == brute_force_exists(A, B)


def test_compose():
    f = Homomorphism(directed_path(1), directed_path(2), (0, 1))
    g = Homomorphism(directed_path(2), transitive_tournament(3), (0, 1, 2))
    h = compose(f, g)
    assert h.mapping == (0, 1)
    assert h.target == transitive_tournament(3)
    with pytest.raises(OutOfRange):
        Homomorphism(directed_path(1), directed_path(2), (0,))


def test_isomorphic():
    P2 = directed_path(2)
    assert isomorphic(P2, digraph(3, [(2, 0), (1, 2)]))
    assert not isomorphic(P2, digraph(3, [(0, 1), (2, 1)]))
    assert not isomorphic(P2, directed_path(3))


def test_core_of_disjoint_cycles():
    union = disjoint_union([directed_cycle(3), directed_cycle(6)]).structure
    result = core(union)
    assert result.structure.size == 3
    assert isomorphic(result.structure, directed_cycle(3))
    assert is_retraction(result.retraction, result.retraction.embedding)
    assert hom_equivalent(union, directed_cycle(3))


def test_core_of_symmetric_path_is_an_edge():
    path = digraph(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
    result = core(path)
    assert isomorphic(result.structure, complete_graph(2))
    assert result.retraction.embedding == (0, 1)


def test_cores():
    assert is_core(transitive_tournament(4))
    assert is_core(directed_cycle(5))
    assert is_core(loop_vertex())
    assert not is_core(digraph(2, [(0, 0), (0, 1)]))
    T4 = transitive_tournament(4)
    assert core(T4).structure == T4


def test_core_is_lexicographically_first_retract():
    # both loops are retracts; the first one is kept
    G = digraph(2, [(0, 0), (1, 1)])
    result = core(G)
    assert result.retraction.embedding == (0,)
    assert result.retraction.mapping == (0, 0)


def test_exponential_of_an_arc():
    P1 = directed_path(1)
    square = product(P1, P1)
    exp = exponential(P1, square)
    assert exp.digraph.size == 16
    assert exp.projections == (3, 5)
    # f -> g iff f(0) = 0 and g(3) = 1
    assert len(exp.digraph.arcs) == 64
    for i, j in exp.digraph.arcs:
        assert exp.functions[i][0] == 0
        assert exp.functions[j][3] == 1


def test_exponential_successors_respect_arcs():
    H = transitive_tournament(3)
    G = directed_path(2)
    expansion = ExponentialArcs(H, G)
    for f in cartesian(range(3), repeat=3):
        for g in expansion.successors(f):
            assert all((f[u], g[v]) in H.tuple_set('E') for u, v in G.arcs)


def test_exponential_budget():
    with pytest.raises(BudgetExceeded):
        exponential(transitive_tournament(3), directed_path(3), Settings(exponential_budget=10))


@settings(deadline=None)
@given(digraphs(max_size=4))
def test_core_is_idempotent(G):
    C = core(G).structure
    assert is_core(C)
    assert isomorphic(core(C).structure, C)
    assert hom_equivalent(G, C)


@settings(deadline=None)
@given(digraphs(max_size=3), digraphs(max_size=3), digraphs(max_size=3))
def test_found_homomorphisms_compose(G, H, K):
    f = find_hom(G, H)
    g = find_hom(H, K)
    if f is None or g is None:
        return
    h = compose(f, g)
    assert h.source == G
    assert h.target == K
    assert is_hom(G, K, h.mapping)


@settings(deadline=None)
@given(digraphs(max_size=4), digraphs(max_size=3))
def test_homomorphisms_lift_to_arc_graphs(G, H):
    f = find_hom(G, H)
    if f is None:
        return
    delta_G, arcs_G = arc_graph(G)
    delta_H, arcs_H = arc_graph(H)
    lifted = [arcs_H.index((f.mapping[x], f.mapping[y])) for x, y in arcs_G]
    assert is_hom(delta_G, delta_H, lifted)
