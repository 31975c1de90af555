import numpy as np
import pytest

from homdual.lib.arcgraph import arc_graph
from homdual.lib.config import Settings
from homdual.lib.duality import (
    NufCandidate,
    combine_nuf_product,
    lift_nuf_arc_graph,
    lift_nuf_pultr,
    median_nuf,
    nuf_from_function,
    order_statistic_nuf,
    restrict_nuf_core,
    search_nuf,
    verify_nuf,
)
from homdual.lib.duality.nuf import near_unanimous_values
from homdual.lib.errors import BudgetExceeded, NotARetraction, NufVerificationError, OutOfRange
from homdual.lib.families import complete_graph, directed_cycle, directed_path, transitive_tournament
from homdual.lib.hom import Retraction, core, isomorphic
from homdual.lib.pultr import arc_graph_pattern, blue_red_pattern, psi
from homdual.lib.structures import induced_substructure, power, product


def test_median_on_tournament(t4):
    f = median_nuf(t4)
    assert f(0, 3, 1) == 1
    assert verify_nuf(f)


def test_order_statistics(t4):
    assert verify_nuf(order_statistic_nuf(t4, 4, 1))
    # the minimum is not near-unanimous
    assert not verify_nuf(order_statistic_nuf(t4, 3, 0))


def test_projection_is_rejected(t4):
    assert not verify_nuf(nuf_from_function(t4, 3, lambda x, y, z: x))


def test_candidate_shape():
    P1 = directed_path(1)
    with pytest.raises(OutOfRange):
        NufCandidate(P1, 2, np.zeros((2, 2)))
    with pytest.raises(OutOfRange):
        NufCandidate(P1, 3, np.zeros((2, 2)))
    with pytest.raises(BudgetExceeded):
        nuf_from_function(P1, 3, lambda *xs: 0, Settings(nuf_table_budget=4))


def test_arc_graph_lift(t4):
    f = median_nuf(t4)
    g = lift_nuf_arc_graph(f)
    assert g.structure == arc_graph(t4).structure
    assert verify_nuf(g)
    assert verify_nuf(lift_nuf_arc_graph(g))


def test_power_of_arc_graph_is_arc_graph_of_power():
    T3 = transitive_tournament(3)
    assert isomorphic(power(arc_graph(T3).structure, 2), arc_graph(power(T3, 2)).structure)


def test_pultr_lift_along_arc_graph_is_the_arc_graph_lift(t4):
    f = median_nuf(t4)
    direct = lift_nuf_arc_graph(f)
    pointwise = lift_nuf_pultr(arc_graph_pattern(), f)
    assert pointwise.structure == direct.structure
    assert np.array_equal(pointwise.table, direct.table)


def test_pultr_lift_along_blue_red(t4):
    g = lift_nuf_pultr(blue_red_pattern(), median_nuf(t4))
    assert g.structure == psi(blue_red_pattern(), t4).structure
    assert verify_nuf(g)


def test_lifts_need_a_verified_input(t4):
    projection = nuf_from_function(t4, 3, lambda x, y, z: x)
    with pytest.raises(NufVerificationError):
        lift_nuf_arc_graph(projection)
    with pytest.raises(NufVerificationError):
        lift_nuf_pultr(blue_red_pattern(), projection)


def test_product_of_nufs(t4):
    P1 = directed_path(1)
    combined = combine_nuf_product([median_nuf(t4), median_nuf(P1)])
    assert combined.structure == product(t4, P1)
    assert combined.k == 3
    assert verify_nuf(combined)
    mixed = combine_nuf_product([order_statistic_nuf(t4, 4, 1), median_nuf(P1)])
    assert mixed.k == 4
    assert verify_nuf(mixed)
    with pytest.raises(ValueError):
        combine_nuf_product([])


def test_restriction_to_the_core(t4):
    g = lift_nuf_arc_graph(median_nuf(t4))
    result = core(g.structure)
    restricted = restrict_nuf_core(g, result.retraction)
    assert restricted.structure == result.structure
    assert verify_nuf(restricted)


def test_restriction_to_the_diagonal(t4):
    square = combine_nuf_product([median_nuf(t4), median_nuf(t4)])
    diagonal = (0, 5, 10, 15)
    target = induced_substructure(square.structure, diagonal)
    retraction = Retraction(square.structure, target, tuple(x // 4 for x in range(16)), embedding=diagonal)
    restricted = restrict_nuf_core(square, retraction)
    assert verify_nuf(restricted)
    assert np.array_equal(restricted.table, median_nuf(t4).table)
    wrong = Retraction(square.structure, target, tuple(x % 4 for x in range(16)), embedding=(0, 1, 2, 3))
    with pytest.raises(NotARetraction):
        restrict_nuf_core(square, wrong)


def test_near_unanimous_entries():
    forced = near_unanimous_values(2, 3)
    assert len(forced) == 8
    assert forced[(0, 1, 0)] == 0
    assert len(near_unanimous_values(3, 3)) == 21


def test_search_finds_a_majority_on_a_cycle():
    f = search_nuf(directed_cycle(3))
    assert f is not None
    assert verify_nuf(f)


def test_search_on_a_triangle():
    assert search_nuf(complete_graph(3)) is None


def test_search_budget(t4):
    with pytest.raises(BudgetExceeded):
        search_nuf(t4)
