import numpy as np
import pytest

from homdual.lib.duality import median_nuf
from homdual.lib.errors import InvalidPattern, ParseError
from homdual.lib.families import directed_path
from homdual.lib.pultr import builtin_patterns
from homdual.lib.schema import (
    parse_nuf_table,
    parse_pattern,
    parse_structure,
    parse_structures,
    serialize_nuf_table,
    serialize_pattern,
    serialize_structure,
    serialize_structures,
)
from homdual.lib.structures import RelationalStructure

from .strategies import TERNARY

P1_DOCUMENT = """\
# a single arc
digraph P1
vertices 2
arcs
0 1   # the arc
end
"""


def test_parse_digraph():
    A = parse_structure(P1_DOCUMENT)
    assert A == directed_path(1)
    assert A.name == 'P1'


def test_serialized_tournament(t4):
    text = serialize_structure(t4)
    lines = text.splitlines()
    assert lines[:3] == ['digraph T4', 'vertices 4', 'arcs']
    assert lines[-1] == 'end'
    assert len(lines) == 3 + 6 + 1
    assert parse_structure(text) == t4


def test_general_structure():
    text = """\
structure S
vocab R 3 U 1
universe 2
rel R
0 1 1
rel U
0
end
"""
    A = parse_structure(text)
    assert A.vocab == TERNARY
    assert A.tuples('R') == ((0, 1, 1),)
    assert A.tuples('U') == ((0,),)
    assert serialize_structure(A) == text


def test_several_documents(t4, p4):
    text = ''.join(serialize_structures([t4, p4]))
    assert parse_structures(text) == [t4, p4]
    with pytest.raises(ParseError):
        parse_structure(text)
    assert parse_structures('# nothing here\n') == []


def test_element_outside_universe():
    text = 'digraph bad\nvertices 4\narcs\n0 5\nend\n'
    with pytest.raises(ParseError) as info:
        parse_structure(text)
    assert info.value.line == 4
    assert info.value.column == 3
    assert str(info.value) == '4:3: element 5 outside universe of size 4'


@pytest.mark.parametrize(
    'text, line',
    [
        ('graph G\n', 1),
        ('digraph G\nvertices 2\narcs\n0 1\n', 5),
        ('digraph G\nvertices two\nend\n', 2),
        ('digraph G\nvertices 2\narcs\n0 1 1\nend\n', 4),
        ('digraph G\nvertices 2\nrel F\nend\n', 3),
        ('structure S\nuniverse 1\nend\n', 1),
        ('structure S\nvocab R 0\nuniverse 1\nend\n', 2),
        ('digraph G\narcs\n0 1\nvertices 2\nend\n', 3),
    ],
)
def test_malformed_documents(text, line):
    with pytest.raises(ParseError) as info:
        parse_structure(text)
    assert info.value.line == line


def test_error_names_its_source():
    err = ParseError('unexpected end of input', 3, 1, source='g.dg')
    assert str(err) == 'g.dg:3:1: unexpected end of input'


@pytest.mark.parametrize('name', ['arc_graph', 'blue_red'])
def test_builtin_patterns_as_documents(name):
    pat = builtin_patterns()[name]
    assert parse_pattern(serialize_pattern(pat)) == pat


def test_arc_graph_pattern_document():
    text = serialize_pattern(builtin_patterns()['arc_graph'])
    assert 'q E 1: 0 1\n' in text
    assert 'q E 2: 1 2\n' in text


PATTERN_HEAD = 'pattern p\nsigma E 2\ntau E 2\nP\nvertices 2\narcs\n0 1\nend\nQ E\nvertices 3\narcs\n0 1\n1 2\nend\n'


def test_pattern_errors():
    with pytest.raises(ParseError):
        parse_pattern(PATTERN_HEAD + 'q E 1: 0 1\n')
    with pytest.raises(ParseError):
        parse_pattern(PATTERN_HEAD + 'q E 1: 0 1\nq E 2: 1\n')
    with pytest.raises(ParseError) as info:
        parse_pattern(PATTERN_HEAD + 'q E 0: 0 1\nq E 2: 1 2\n')
    assert info.value.line == 15
    with pytest.raises(ParseError):
        parse_pattern(PATTERN_HEAD + 'q E 1 0 1\n')
    with pytest.raises(InvalidPattern):
        parse_pattern(PATTERN_HEAD + 'q E 1: 0 1\nq E 2: 2 1\n')
    pattern = parse_pattern(PATTERN_HEAD + 'q E 1: 0 1\nq E 2: 1 2\n')
    assert pattern.name == 'p'
    assert pattern.P == builtin_patterns()['arc_graph'].P
    assert pattern.relations == builtin_patterns()['arc_graph'].relations


def test_nuf_table(t4):
    f = median_nuf(t4)
    text = serialize_nuf_table(f)
    assert text.startswith('nuf 3 4\n0\n0\n0\n0\n0\n1\n1\n1\n')
    g = parse_nuf_table(text, t4)
    assert np.array_equal(g.table, f.table)


@pytest.mark.parametrize(
    'text',
    [
        'nuf 2 2\n' + '0\n' * 4,
        'nuf 3 3\n' + '0\n' * 27,
        'nuf 3 2\n' + '0\n' * 7,
        'nuf 3 2\n' + '0\n' * 7 + '2\n',
        'table 3 2\n',
    ],
)
def test_malformed_nuf_tables(text):
    with pytest.raises(ParseError):
        parse_nuf_table(text, directed_path(1))


def test_values_may_share_lines():
    text = 'nuf 3 2\n0 0 0 1\n0 1 1 1\n'
    f = parse_nuf_table(text, directed_path(1))
    assert f(0, 1, 1) == 1
    assert f.structure == RelationalStructure(directed_path(1).vocab, 2, [[(0, 1)]])
