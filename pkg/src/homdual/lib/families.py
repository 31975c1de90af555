"""Named digraphs used throughout: directed paths and cycles, tournaments, loops."""

from .errors import OutOfRange
from .structures import Digraph, digraph


def directed_path(n: int) -> Digraph:
    """P_n: the directed path with ``n`` arcs (``n + 1`` vertices)."""
    if n < 0:
        raise OutOfRange(f'path length {n} < 0')
    return digraph(n + 1, [(i, i + 1) for i in range(n)], name=f'P{n}')


def directed_cycle(n: int) -> Digraph:
    if n < 1:
        raise OutOfRange(f'cycle length {n} < 1')
    return digraph(n, [(i, (i + 1) % n) for i in range(n)], name=f'C{n}')


def transitive_tournament(n: int) -> Digraph:
    """T_n: vertices ``0..n-1`` with an arc ``i -> j`` whenever ``i < j``."""
    return digraph(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=f'T{n}'
    )


def complete_graph(n: int) -> Digraph:
    """Symmetric loopless complete graph K_n."""
    return digraph(
        n, [(i, j) for i in range(n) for j in range(n) if i != j], name=f'K{n}'
    )


def loop_vertex() -> Digraph:
    return digraph(1, [(0, 0)], name='loop')


def single_vertex() -> Digraph:
    return digraph(1, name='K1')
