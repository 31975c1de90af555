import json

import pytest

from homdual.lib.config import Settings
from homdual.lib.errors import BudgetExceeded
from homdual.lib.families import directed_path, loop_vertex, single_vertex, transitive_tournament
from homdual.lib.hom import isomorphic
from homdual.lib.models import Verdict
from homdual.lib.oracle import (
    check_adjunction,
    check_duality_pair,
    count_digraphs,
    enumerate_digraphs,
    sample_pairs,
)
from homdual.lib.structures import DIGRAPH


def test_counts():
    assert count_digraphs(1) == 2
    assert count_digraphs(2) == 18
    assert count_digraphs(2, loops=False) == 5
    assert len(list(enumerate_digraphs(2, loops=False))) == 5
    assert count_digraphs(2, unique=True) == 12
    assert len(list(enumerate_digraphs(2, unique=True))) == 12


def test_enumeration_order():
    names = [G.name for G in enumerate_digraphs(1)]
    assert names == ['D1.0', 'D1.1']
    last = list(enumerate_digraphs(2))[-1]
    assert last.arcs == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_digraphs(3, settings=Settings(enumeration_max_vertices=2)))


def test_path_is_the_dual_of_the_tournament(t4, p4):
    report = check_duality_pair(t4, [p4], g_max=3)
    assert report.verdict == Verdict.VERIFIED
    assert report.witnesses == []
    assert report.parameters['family_members'] == 1
    assert report.parameters['unique'] is False
    assert report.checked_count == count_digraphs(3) + 1


def test_isomorph_rejection_is_opt_in(t4, p4):
    report = check_duality_pair(t4, [p4], g_max=3, unique=True)
    assert report.verdict == Verdict.VERIFIED
    assert report.checked_count == count_digraphs(3, unique=True) + 1


def test_loop_needs_no_obstructions():
    report = check_duality_pair(loop_vertex(), [], g_max=2)
    assert report.verdict == Verdict.VERIFIED


def test_missing_obstructions_are_inconclusive():
    report = check_duality_pair(directed_path(2), [], g_max=2)
    assert report.verdict == Verdict.INCONCLUSIVE
    assert report.witnesses


def test_unsound_family_member():
    report = check_duality_pair(transitive_tournament(3), [directed_path(2)], g_max=1)
    assert report.verdict == Verdict.COUNTEREXAMPLE
    assert isomorphic(report.witnesses[0].load(), directed_path(2))


def test_large_members_can_be_ignored(t4, p4):
    report = check_duality_pair(t4, [p4], g_max=1, family_size_max=4)
    assert report.parameters['family_members'] == 0
    # the loop is left uncovered
    assert report.verdict == Verdict.INCONCLUSIVE
    assert len(report.witnesses) == 1


def test_parallel_workers_give_the_same_report(t4, p4):
    serial = check_duality_pair(t4, [p4], g_max=2)
    parallel = check_duality_pair(t4, [p4], g_max=2, settings=Settings(workers=3))
    assert serial == parallel


def test_adjunction_without_samples():
    report = check_adjunction(lambda A: A, lambda B: B, [])
    assert report.verdict == Verdict.VERIFIED
    assert report.checked_count == 0


def test_adjunction_disagreement():
    samples = [(single_vertex(), directed_path(1)), (directed_path(1), loop_vertex())]
    report = check_adjunction(lambda A: A, lambda B: loop_vertex(), samples, campaign='broken')
    assert report.verdict == Verdict.COUNTEREXAMPLE
    assert [w.index for w in report.witnesses] == [0]
    witness = report.witnesses[0]
    assert witness.load() == single_vertex()
    assert witness.load_partner() == directed_path(1)
    records = [json.loads(line) for line in report.records()]
    assert records[0]['campaign'] == 'broken'
    assert records[0]['verdict'] == 'counterexample'
    text = report.render_text()
    assert text.startswith('counterexample\ncampaign: broken\nchecked: 2\n')
    assert '# witness 0: sample 0' in text


def test_sampling_is_seeded():
    first = sample_pairs(DIGRAPH, DIGRAPH, 6, 4, seed=3)
    second = sample_pairs(DIGRAPH, DIGRAPH, 6, 4, seed=3)
    assert first == second
    assert [(B.name, A.name) for B, A in first][:2] == [('B0', 'A0'), ('B1', 'A1')]
    for B, A in first:
        assert 1 <= B.size <= 4
        assert 1 <= A.size <= 4
