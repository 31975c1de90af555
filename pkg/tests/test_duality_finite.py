import pytest

from homdual.lib.arcgraph import arc_graph
from homdual.lib.config import Settings
from homdual.lib.duality import dismantle_to, finite_duality_witness, has_finite_duality, is_dominated, replays
from homdual.lib.errors import OutOfRange
from homdual.lib.families import directed_path, loop_vertex
from homdual.lib.pultr import blue_red_pattern, psi
from homdual.lib.structures import digraph, product


def test_domination():
    G = digraph(2, [(0, 0), (0, 1)])
    assert is_dominated(G, 1, 0)
    assert not is_dominated(G, 0, 1)
    with pytest.raises(OutOfRange):
        is_dominated(G, 0, 2)


def test_tournament_has_finite_duality(t4):
    result = finite_duality_witness(t4)
    assert result.success
    assert result.target == [0, 5, 10, 15]
    assert len(result.sequence) == 12
    assert replays(product(t4, t4), result.sequence)


def test_replay_rejects_bad_orders(t4):
    square = product(t4, t4)
    assert not replays(square, [1, 1])
    assert replays(square, [])


@pytest.mark.parametrize(
    'A, expected',
    [
        (loop_vertex(), True),
        (directed_path(1), True),
        (directed_path(2), False),
    ],
)
def test_finite_duality(A, expected):
    assert has_finite_duality(A) is expected


def test_arc_graph_of_tournament_has_no_finite_duality(t4):
    assert not has_finite_duality(arc_graph(t4).structure)


def test_blue_red_image_keeps_finite_duality(t4):
    assert has_finite_duality(psi(blue_red_pattern(), t4).structure)


def test_stalled_dismantling_is_abandoned():
    P2 = directed_path(2)
    result = dismantle_to(product(P2, P2), [0, 4, 8], Settings(dismantle_exhaustive_limit=0))
    assert not result.success
    assert result.method == 'abandoned'
    exhaustive = dismantle_to(product(P2, P2), [0, 4, 8])
    assert not exhaustive.success
    assert exhaustive.method == 'exhaustive'


def test_exhaustive_search_can_resume_from_the_greedy_leftover():
    P2 = directed_path(2)
    # greedy removes the isolated pairs (0, 2) and (2, 0), then stalls on four elements
    result = dismantle_to(product(P2, P2), [0, 4, 8], Settings(dismantle_exhaustive_limit=4))
    assert not result.success
    assert result.method == 'greedy+exhaustive'
    assert sorted(result.sequence) == [2, 6]


def test_dismantle_target_range():
    with pytest.raises(OutOfRange):
        dismantle_to(directed_path(1), [2])
