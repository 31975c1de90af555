import pytest

from homdual.lib.arcgraph import arc_graph
from homdual.lib.canonical import oriented_tree_code
from homdual.lib.errors import InvalidSproinkSpec, NotATree
from homdual.lib.families import directed_cycle, directed_path, transitive_tournament
from homdual.lib.hom import find_hom, isomorphic
from homdual.lib.sproink import (
    Replacement,
    SproinkSpec,
    assemble_sproink,
    enumerate_sproinks,
    fence,
    sproink_family,
    thunderbolt,
    thunderbolts,
    union_family,
)
from homdual.lib.structures import digraph, tree_analysis


def path_spec(n, middle):
    """Sproink spec on P_n: single-vertex ends, ``middle(u)`` = (tree, sides, entering, leaving)."""
    T = directed_path(n)
    replacements = [Replacement.vertex(1, {(0, 1): 0})]
    for u in range(1, n):
        tree, sides, lower, upper = middle(u)
        replacements.append(Replacement.build(tree, sides, {(u - 1, u): lower, (u, u + 1): upper}))
    replacements.append(Replacement.vertex(0, {(n - 1, n): 0}))
    return SproinkSpec(T, tuple(replacements))


def test_sproink_of_an_arc_is_a_vertex():
    spec = SproinkSpec(
        directed_path(1),
        (Replacement.vertex(1, {(0, 1): 0}), Replacement.vertex(0, {(0, 1): 0})),
    )
    S = assemble_sproink(spec)
    assert S.size == 1
    assert S.arcs == ()


def test_single_arc_middle_gives_an_arc():
    S = assemble_sproink(path_spec(2, lambda u: (directed_path(1), (0, 1), 0, 1)))
    assert isomorphic(S, directed_path(1))


def test_fences_on_p4():
    tree, sides = fence(3)
    assert sides == (0, 1, 0)
    S = assemble_sproink(path_spec(4, lambda u: (tree, sides, 0, 1)))
    assert S.size == 7
    analysis = tree_analysis(S)
    assert analysis.is_tree
    assert analysis.height == 3


def test_attachment_sides_are_checked():
    spec = SproinkSpec(
        directed_path(1),
        (Replacement.vertex(0, {(0, 1): 0}), Replacement.vertex(0, {(0, 1): 0})),
    )
    with pytest.raises(InvalidSproinkSpec):
        assemble_sproink(spec)
    missing = SproinkSpec(directed_path(1), (Replacement.vertex(1), Replacement.vertex(0, {(0, 1): 0})))
    with pytest.raises(InvalidSproinkSpec):
        assemble_sproink(missing)
    tall = path_spec(2, lambda u: (directed_path(2), (0, 1, 0), 0, 1))
    with pytest.raises(InvalidSproinkSpec):
        assemble_sproink(tall)


def test_base_must_be_a_tree():
    with pytest.raises(NotATree):
        assemble_sproink(SproinkSpec(directed_cycle(3), ()))
    with pytest.raises(NotATree):
        list(enumerate_sproinks(directed_cycle(3), 5))


def test_sproinks_of_an_arc():
    found = list(enumerate_sproinks(directed_path(1), 2))
    assert len(found) == 1
    assert found[0].size == 1


def test_sproinks_of_p2():
    found = list(enumerate_sproinks(directed_path(2), 4))
    assert [S.size for S in found] == [2, 3, 3, 4]
    assert isomorphic(found[0], directed_path(1))
    in_fork = digraph(3, [(0, 1), (2, 1)])
    out_fork = digraph(3, [(1, 0), (1, 2)])
    assert any(isomorphic(S, in_fork) for S in found)
    assert any(isomorphic(S, out_fork) for S in found)
    assert tree_analysis(found[3]).height == 1


def test_sproinks_of_p4_are_sound_and_distinct(t4, p4):
    delta = arc_graph(t4).structure
    found = list(enumerate_sproinks(p4, 10))
    assert found
    codes = {oriented_tree_code(S) for S in found}
    assert len(codes) == len(found)
    for S in found:
        analysis = tree_analysis(S)
        assert analysis.is_tree
        assert analysis.height <= 3
        assert S.size <= 10
        assert find_hom(S, delta) is None


def test_all_trees_contains_the_fence_sproinks():
    fences = {oriented_tree_code(S) for S in enumerate_sproinks(directed_path(2), 5)}
    trees = {oriented_tree_code(S) for S in enumerate_sproinks(directed_path(2), 5, paths_only=False)}
    assert fences <= trees
    assert len(trees) > len(fences)


def test_thunderbolts():
    assert thunderbolt(0).size == 6
    assert [T.size for T in thunderbolts(3)] == [6, 8, 10, 12]
    P2 = directed_path(2)
    for T in thunderbolts(4):
        assert tree_analysis(T).height == 3
        assert find_hom(T, P2) is None
        assert find_hom(T, directed_path(3)) is not None
    with pytest.raises(ValueError):
        thunderbolt(-1)


def test_union_family_removes_isomorphic_members():
    P2 = directed_path(2)
    relabelled = digraph(3, [(2, 0), (1, 2)])
    family = list(union_family([P2, transitive_tournament(3)], [relabelled, directed_path(3)]))
    assert len(family) == 3


def test_sproink_family_of_repeated_trees():
    P2 = directed_path(2)
    assert len(list(sproink_family([P2, digraph(3, [(2, 0), (1, 2)])], 4))) == 4
