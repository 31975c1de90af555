"""Hypothesis strategies for small structures."""

from hypothesis import strategies as st

from homdual.lib.structures import RelationalStructure, Vocabulary, digraph

TERNARY = Vocabulary((('R', 3), ('U', 1)))


@st.composite
def digraphs(draw, min_size=1, max_size=4, loops=True):
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    pairs = [(x, y) for x in range(n) for y in range(n) if loops or x != y]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return digraph(n, arcs)


@st.composite
def oriented_trees(draw, max_size=7):
    """Each new vertex hangs off an earlier one, in a random direction."""
    n = draw(st.integers(min_value=1, max_value=max_size))
    arcs = []
    for v in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=v - 1))
        arcs.append((parent, v) if draw(st.booleans()) else (v, parent))
    return digraph(n, arcs)


@st.composite
def ternary_structures(draw, max_size=3):
    n = draw(st.integers(min_value=1, max_value=max_size))
    element = st.integers(min_value=0, max_value=n - 1)
    triples = draw(st.lists(st.tuples(element, element, element), max_size=6))
    unary = draw(st.lists(st.tuples(element), max_size=n))
    return RelationalStructure(TERNARY, n, {'R': triples, 'U': unary})
