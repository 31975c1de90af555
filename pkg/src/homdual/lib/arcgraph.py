"""The arc graph functor and its left adjoint."""

from .structures import (
    Digraph,
    Labelled,
    digraph,
    equivalence_closure,
    quotient,
)


def arc_graph(G: Digraph) -> Labelled:
    """Builds ``delta G``.

    The vertices are the arcs of ``G`` in canonical order; there is an arc
    ``(u, v) -> (v, w)`` for every pair of consecutive arcs. A loop is
    consecutive with itself and so becomes a loop.

    Args:
        G (Digraph): Any digraph.

    Returns:
        Labelled: The arc graph, labelled by the arcs of ``G``.
    """
    arcs = G.arcs
    starting_at: dict[int, list[int]] = {}
    for i, (u, _) in enumerate(arcs):
        starting_at.setdefault(u, []).append(i)
    pairs = [(i, j) for i, (_, v) in enumerate(arcs) for j in starting_at.get(v, ())]
    name = f'delta({G.name})' if G.name else ''
    return Labelled(digraph(len(arcs), pairs, name=name), arcs)


def arc_graph_inverse(B: Digraph) -> Digraph:
    """Builds ``delta^-1 B``.

    Every vertex ``u`` of ``B`` becomes an arc ``o_u -> t_u`` (elements ``2u``
    and ``2u + 1``), and ``t_u`` is glued to ``o_v`` for every arc ``(u, v)``.
    """
    pre_arcs = [(2 * u, 2 * u + 1) for u in range(B.size)]
    glue = [(2 * u + 1, 2 * v) for u, v in B.arcs]
    unglued = digraph(2 * B.size, pre_arcs)
    name = f'delta^-1({B.name})' if B.name else ''
    return quotient(unglued, equivalence_closure(unglued.size, glue), name=name)
