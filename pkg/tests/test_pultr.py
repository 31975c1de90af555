from itertools import product as cartesian

import pytest
from hypothesis import given, settings

from homdual.lib.arcgraph import arc_graph, arc_graph_inverse
from homdual.lib.duality import has_tree_duality
from homdual.lib.errors import InvalidPattern, NotATree, VocabularyMismatch
from homdual.lib.families import directed_cycle, directed_path, transitive_tournament
from homdual.lib.hom import find_hom, is_hom, isomorphic
from homdual.lib.models import Verdict
from homdual.lib.oracle import check_duality_pair
from homdual.lib.pultr import (
    Pattern,
    arc_graph_pattern,
    blue_red_pattern,
    blue_red_quotients,
    blue_red_sproinks,
    builtin_patterns,
    identity_pattern,
    psi,
    psi_inverse,
)
from homdual.lib.structures import DIGRAPH, RelationalStructure, digraph, product

from .strategies import TERNARY, digraphs, oriented_trees


@settings(deadline=None)
@given(digraphs(max_size=4))
def test_arc_graph_pattern_is_the_arc_graph(G):
    image, labels = psi(arc_graph_pattern(), G)
    delta, arcs = arc_graph(G)
    assert image == delta
    assert labels == arcs
    assert isomorphic(psi_inverse(arc_graph_pattern(), G), arc_graph_inverse(G))


@given(digraphs(max_size=4))
def test_identity_pattern(G):
    assert psi(identity_pattern(), G).structure == G
    assert isomorphic(psi_inverse(identity_pattern(), G), G)


def test_blue_red_image_of_a_path():
    # arcs a, b are related iff a walk a, x, b of three arcs exists
    image, labels = psi(blue_red_pattern(), directed_path(3))
    assert labels == ((0, 1), (1, 2), (2, 3))
    assert image.arcs == ((0, 2),)


@settings(deadline=None, max_examples=60)
@given(digraphs(max_size=4), digraphs(max_size=3))
def test_blue_red_adjunction(B, A):
    pat = blue_red_pattern()
    left = find_hom(B, psi(pat, A).structure) is not None
    right = find_hom(psi_inverse(pat, B), A) is not None
    assert left == right


def test_vertex_disjoint_images():
    assert not arc_graph_pattern().vertex_disjoint
    assert blue_red_pattern().vertex_disjoint
    assert set(builtin_patterns()) == {'arc_graph', 'blue_red'}


def test_invalid_patterns():
    P = digraph(2, [(0, 1)])
    Q = digraph(3, [(0, 1), (1, 2)])
    with pytest.raises(InvalidPattern):
        Pattern.build('bad', DIGRAPH, DIGRAPH, P, {'E': (Q, [(0, 1), (2, 1)])})
    with pytest.raises(InvalidPattern):
        Pattern.build('short', DIGRAPH, DIGRAPH, P, {'E': (Q, [(0, 1)])})
    with pytest.raises(InvalidPattern):
        Pattern.build('missing', DIGRAPH, DIGRAPH, P, {})


def test_vocabulary_is_checked():
    with pytest.raises(VocabularyMismatch):
        psi(arc_graph_pattern(), RelationalStructure(TERNARY, 1))
    with pytest.raises(VocabularyMismatch):
        psi_inverse(arc_graph_pattern(), RelationalStructure(TERNARY, 1))


@pytest.mark.parametrize('name', ['arc_graph', 'blue_red'])
def test_image_of_a_product_is_the_product_of_images(name):
    pat = builtin_patterns()[name]
    T3 = transitive_tournament(3)
    left = psi(pat, product(T3, T3)).structure
    image = psi(pat, T3).structure
    assert isomorphic(left, product(image, image))


@pytest.mark.parametrize('name', ['arc_graph', 'blue_red'])
def test_tree_duality_transfers(name, t4):
    assert has_tree_duality(t4)
    assert has_tree_duality(psi(builtin_patterns()[name], t4).structure)


def test_blue_red_quotients():
    blue, red = blue_red_quotients(directed_path(2))
    assert isomorphic(blue, directed_path(1))
    assert isomorphic(red, directed_path(1))
    blue, red = blue_red_quotients(directed_path(3))
    assert isomorphic(blue, directed_path(1))
    assert isomorphic(red, directed_path(2))
    with pytest.raises(NotATree):
        blue_red_quotients(directed_cycle(3))


def test_blue_red_sproinks_are_deduplicated():
    family = list(blue_red_sproinks([directed_path(2), directed_path(3)]))
    assert len(family) == 2


@pytest.mark.parametrize('A', [directed_path(3), transitive_tournament(4)], ids=['P3', 'T4'])
def test_blue_red_image_matches_exhaustive_extension(A):
    pat = blue_red_pattern()
    rel = pat.relation('E')
    image, labels = psi(pat, A)
    assert labels == A.arcs
    expected = set()
    for g in cartesian(range(A.size), repeat=rel.Q.size):
        if is_hom(rel.Q, A, g):
            expected.add(tuple(labels.index(tuple(g[u] for u in q)) for q in rel.maps))
    assert set(image.arcs) == expected


@settings(deadline=None)
@given(oriented_trees())
def test_trees_map_into_the_left_adjoint_of_their_quotients(T):
    pat = blue_red_pattern()
    for quotient in blue_red_quotients(T):
        assert find_hom(T, psi_inverse(pat, quotient)) is not None


def test_blue_red_obstructions_transfer(t4, p4):
    image = psi(blue_red_pattern(), t4).structure
    report = check_duality_pair(image, blue_red_sproinks([p4]), g_max=3)
    assert report.verdict == Verdict.VERIFIED
