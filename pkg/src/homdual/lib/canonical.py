"""Canonical forms for isomorph rejection.

Small digraphs are keyed by their smallest adjacency encoding over all vertex
orders. Oriented trees get a polynomial center-rooted code instead, which is
what sproink enumeration needs at 15+ vertices.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .errors import BudgetExceeded, NotATree
from .structures import Digraph, tree_analysis

MAX_CANONICAL_VERTICES = 7
_TABLE_VERTICES = 5


class AdjacencyCanonicalizer:
    """Maps an ``n*n``-bit adjacency mask to the least mask of any relabelling.

    Bit ``x*n + y`` stands for the arc ``(x, y)``. For every permutation the
    image of each row is precomputed, so one relabelling costs ``n`` lookups.
    """

    def __init__(self, n: int):
        self.n = n
        self._row_mask = (1 << n) - 1
        self._tables = []
        for perm in permutations(range(n)):
            rows = []
            for r in range(n):
                row = []
                for bits in range(1 << n):
                    code = 0
                    for c in range(n):
                        if bits >> c & 1:
                            code |= 1 << (perm[r] * n + perm[c])
                    row.append(code)
                rows.append(row)
            self._tables.append(rows)

    def __call__(self, mask: int) -> int:
        n = self.n
        rows = [(mask >> (r * n)) & self._row_mask for r in range(n)]
        best = None
        for tables in self._tables:
            code = 0
            for table, bits in zip(tables, rows):
                code |= table[bits]
            if best is None or code < best:
                best = code
        return best if best is not None else 0


@lru_cache(maxsize=None)
def canonicalizer(n: int) -> AdjacencyCanonicalizer:
    return AdjacencyCanonicalizer(n)


def adjacency_mask(G: Digraph) -> int:
    n = G.size
    mask = 0
    for x, y in G.arcs:
        mask |= 1 << (x * n + y)
    return mask


def digraph_canonical_key(G: Digraph) -> tuple[int, int]:
    """Isomorphism invariant ``(size, least adjacency mask)``."""
    n = G.size
    if n > MAX_CANONICAL_VERTICES:
        raise BudgetExceeded('canonical form (vertices)', n, MAX_CANONICAL_VERTICES)
    if n <= _TABLE_VERTICES:
        return n, canonicalizer(n)(adjacency_mask(G))
    arcs = G.arcs
    best = None
    for perm in permutations(range(n)):
        code = 0
        for x, y in arcs:
            code |= 1 << (perm[x] * n + perm[y])
        if best is None or code < best:
            best = code
    return n, best


def tree_code(size: int, arcs) -> str:
    """Canonical string of an oriented tree given by its arc list.

    The tree is rooted at its center (or the better of its two centers). Each
    child subtree is written as ``>`` (arc away from the parent) or ``<`` (arc
    towards it) followed by its bracketed code, siblings sorted. The input is
    assumed to be a tree; use :func:`oriented_tree_code` to have it checked.
    """
    adjacent: list[list[tuple[int, str]]] = [[] for _ in range(size)]
    for x, y in arcs:
        adjacent[x].append((y, '>'))
        adjacent[y].append((x, '<'))
    degree = [len(a) for a in adjacent]
    layer = [v for v in range(size) if degree[v] <= 1]
    remaining = size
    while remaining > 2:
        remaining -= len(layer)
        peeled = []
        for v in layer:
            for w, _ in adjacent[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    peeled.append(w)
        layer = peeled

    def encode(v, parent):
        children = sorted(d + encode(w, v) for w, d in adjacent[v] if w != parent)
        return '(' + ''.join(children) + ')'

    return min(encode(c, None) for c in layer)


def oriented_tree_code(T: Digraph) -> str:
    """Canonical string of an oriented tree.

    Raises:
        NotATree: If ``T`` is not an oriented tree.
    """
    if not tree_analysis(T).is_tree:
        raise NotATree(f'{T!r} is not an oriented tree')
    return tree_code(T.size, T.arcs)
