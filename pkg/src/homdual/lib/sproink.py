"""Sproinks: obstructions for arc graphs built from tree obstructions.

A sproink of an oriented tree ``T`` replaces every vertex ``u`` by a tree
``F(u)`` of height at most one and glues, for every arc ``e = (u, u')`` of
``T``, an upper vertex of ``F(u)`` to a lower vertex of ``F(u')``. If ``T``
does not map to ``H`` then no sproink of ``T`` maps to ``delta H``, and the
sproinks of a complete tree obstruction set for ``H`` form one for
``delta H``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from itertools import product as cartesian

import networkx as nx

from .canonical import digraph_canonical_key, tree_code
from .errors import BudgetExceeded, InvalidSproinkSpec, NotATree
from .structures import Digraph, digraph, equivalence_closure, tree_analysis

logger = logging.getLogger(__name__)

Arc = tuple[int, int]


@dataclass(frozen=True)
class Replacement:
    """A height-at-most-one tree with its lower (0) and upper (1) sides.

    ``attachments`` pairs every arc of the base tree incident to the replaced
    vertex with the vertex of ``tree`` it is glued through.
    """

    tree: Digraph
    sides: tuple[int, ...]
    attachments: tuple[tuple[Arc, int], ...]

    @classmethod
    def build(cls, tree: Digraph, sides: Iterable[int], attachments: Mapping[Arc, int]) -> Replacement:
        return cls(tree, tuple(sides), tuple(sorted(attachments.items())))

    @classmethod
    def vertex(cls, side: int, attachments: Mapping[Arc, int] | None = None) -> Replacement:
        """Single-vertex replacement; every incident arc attaches to vertex 0."""
        return cls.build(digraph(1), (side,), attachments or {})

    def attachment(self, arc: Arc) -> int:
        return dict(self.attachments)[arc]


@dataclass(frozen=True)
class SproinkSpec:
    base: Digraph
    replacements: tuple[Replacement, ...]


def fence(m: int, start_side: int = 0) -> tuple[Digraph, tuple[int, ...]]:
    """Oriented path of height at most one on ``m`` vertices.

    Vertex ``i`` lies on side ``(start_side + i) % 2`` and every arc goes from
    the side-0 vertex to the side-1 vertex.
    """
    sides = tuple((start_side + i) % 2 for i in range(m))
    arcs = [(i, i + 1) if sides[i] == 0 else (i + 1, i) for i in range(m - 1)]
    return digraph(m, arcs), sides


def _incident(T: Digraph) -> tuple[list[list[Arc]], list[list[Arc]]]:
    """Arcs entering and leaving each vertex of ``T``."""
    entering: list[list[Arc]] = [[] for _ in range(T.size)]
    leaving: list[list[Arc]] = [[] for _ in range(T.size)]
    for u, w in T.arcs:
        leaving[u].append((u, w))
        entering[w].append((u, w))
    return entering, leaving


def _glue(base_arcs, sizes, part_arcs, attach) -> tuple[int, list[Arc]]:
    """Disjoint union of the parts, glued along ``attach[u][e]``; returns (size, arcs)."""
    offsets = []
    total = 0
    for size in sizes:
        offsets.append(total)
        total += size
    pairs = [
        (offsets[u] + attach[u][(u, w)], offsets[w] + attach[w][(u, w)])
        for u, w in base_arcs
    ]
    partition = equivalence_closure(total, pairs)
    cls = partition.class_of
    arcs = {
        (cls[offsets[u] + x], cls[offsets[u] + y])
        for u, part in enumerate(part_arcs)
        for x, y in part
    }
    return partition.count, sorted(arcs)


def _check_replacement(T: Digraph, u: int, r: Replacement, entering, leaving) -> None:
    analysis = tree_analysis(r.tree)
    if not analysis.is_tree or analysis.height > 1:
        raise InvalidSproinkSpec(f'replacement of {u} is not a tree of height at most one')
    if len(r.sides) != r.tree.size or any(s not in (0, 1) for s in r.sides):
        raise InvalidSproinkSpec(f'replacement of {u} has malformed sides {r.sides}')
    for x, y in r.tree.arcs:
        if r.sides[x] != 0 or r.sides[y] != 1:
            raise InvalidSproinkSpec(
                f'arc ({x}, {y}) of the replacement of {u} does not go from side 0 to side 1'
            )
    attached = dict(r.attachments)
    if set(attached) != set(entering[u]) | set(leaving[u]):
        raise InvalidSproinkSpec(
            f'replacement of {u} attaches {sorted(attached)}, expected {sorted(entering[u] + leaving[u])}'
        )
    for arc, v in attached.items():
        if not 0 <= v < r.tree.size:
            raise InvalidSproinkSpec(f'attachment {v} outside the replacement of {u}')
        wanted = 1 if arc[0] == u else 0
        if r.sides[v] != wanted:
            raise InvalidSproinkSpec(
                f'arc {arc} leaves {u} through side {r.sides[v]}, needs side {wanted}'
            )


def assemble_sproink(spec: SproinkSpec) -> Digraph:
    """Glues the replacement trees of ``spec`` into a sproink.

    Args:
        spec (SproinkSpec): Base tree, one replacement per base vertex.

    Returns:
        Digraph: The assembled sproink; it is checked to be a tree.

    Raises:
        NotATree: If the base is not an oriented tree.
        InvalidSproinkSpec: If a replacement or attachment breaks the side rules.
    """
    T = spec.base
    if not tree_analysis(T).is_tree:
        raise NotATree(f'{T!r} is not an oriented tree')
    if len(spec.replacements) != T.size:
        raise InvalidSproinkSpec(
            f'{len(spec.replacements)} replacements for a base of {T.size} vertices'
        )
    entering, leaving = _incident(T)
    for u, r in enumerate(spec.replacements):
        _check_replacement(T, u, r, entering, leaving)
    size, arcs = _glue(
        T.arcs,
        [r.tree.size for r in spec.replacements],
        [r.tree.arcs for r in spec.replacements],
        [dict(r.attachments) for r in spec.replacements],
    )
    result = digraph(size, arcs, name=f'sproink({T.name})' if T.name else '')
    if not tree_analysis(result).is_tree:
        raise InvalidSproinkSpec('gluing did not produce a tree')
    return result


@dataclass(frozen=True)
class _Option:
    """One candidate replacement for a base vertex during enumeration."""

    size: int
    arcs: tuple[Arc, ...]
    attach: Mapping[Arc, int]


def _attachment_choices(sides, entering, leaving) -> Iterator[dict[Arc, int]]:
    lower = [i for i, s in enumerate(sides) if s == 0]
    upper = [i for i, s in enumerate(sides) if s == 1]
    arcs = entering + leaving
    pools = [lower] * len(entering) + [upper] * len(leaving)
    for choice in cartesian(*pools):
        yield dict(zip(arcs, choice))


def _fence_options(m: int, entering, leaving) -> Iterator[_Option]:
    arcs = entering + leaving
    for start in (0, 1):
        tree, sides = fence(m, start)
        reversed_start = sides[-1]
        for attach in _attachment_choices(sides, entering, leaving):
            key = (start, tuple(attach[e] for e in arcs))
            mirrored = (reversed_start, tuple(m - 1 - attach[e] for e in arcs))
            if mirrored < key:
                continue
            yield _Option(m, tree.arcs, attach)


def _tree_options(m: int, entering, leaving) -> Iterator[_Option]:
    if m == 1:
        shapes = [nx.empty_graph(1)]
    else:
        shapes = list(nx.nonisomorphic_trees(m))
    for shape in shapes:
        color = nx.bipartite.color(shape)
        for flip in (0, 1):
            sides = tuple(color[v] ^ flip for v in range(m))
            arcs = tuple(
                sorted((x, y) if sides[x] == 0 else (y, x) for x, y in shape.edges())
            )
            for attach in _attachment_choices(sides, entering, leaving):
                yield _Option(m, arcs, attach)


def _vertex_options(T, paths_only, max_part) -> list[dict[int, list[_Option]]]:
    entering, leaving = _incident(T)
    options = []
    for u in range(T.size):
        by_size: dict[int, list[_Option]] = {}
        if paths_only and len(entering[u]) + len(leaving[u]) == 1:
            # leaves are single vertices glued into their neighbour
            by_size[1] = [_Option(1, (), {e: 0 for e in entering[u] + leaving[u]})]
        else:
            generate = _fence_options if paths_only else _tree_options
            for m in range(1, max_part + 1):
                found = list(generate(m, entering[u], leaving[u]))
                if found:
                    by_size[m] = found
        options.append(by_size)
    return options


def enumerate_sproinks(
    T: Digraph, max_vertices: int, paths_only: bool = True
) -> Iterator[Digraph]:
    """Streams the pairwise non-isomorphic sproinks of ``T`` up to a size bound.

    With ``paths_only`` every inner vertex is replaced by a fence (an oriented
    path of height at most one) with any admissible attachment vertices, and
    every leaf by a single vertex; this already yields a complete obstruction
    set. Without it, every vertex ranges over all trees of height at most one.
    Smaller sproinks come first.

    Args:
        T (Digraph): An oriented tree.
        max_vertices (int): Largest sproink to produce.
        paths_only (bool): Restrict replacements to fences.

    Yields:
        Digraph: Sproinks in order of increasing size.

    Raises:
        NotATree: If ``T`` is not an oriented tree.
    """
    if not tree_analysis(T).is_tree:
        raise NotATree(f'{T!r} is not an oriented tree')
    arc_count = len(T.arcs)
    # every vertex contributes at least one vertex
    max_part = max_vertices + arc_count - (T.size - 1)
    if max_part < 1:
        return
    options = _vertex_options(T, paths_only, max_part)
    if any(not o for o in options):
        return
    smallest = [min(o) for o in options]
    rest_minimum = [sum(smallest[u:]) for u in range(T.size + 1)]

    def combinations(u, budget):
        if u == T.size:
            if budget == 0:
                yield ()
            return
        for m, opts in options[u].items():
            if m + rest_minimum[u + 1] > budget:
                continue
            for option in opts:
                for rest in combinations(u + 1, budget - m):
                    yield (option, *rest)

    seen: set[str] = set()
    produced = 0
    for total in range(rest_minimum[0], max_vertices + arc_count + 1):
        for chosen in combinations(0, total):
            size, arcs = _glue(
                T.arcs,
                [o.size for o in chosen],
                [o.arcs for o in chosen],
                [o.attach for o in chosen],
            )
            code = tree_code(size, arcs)
            if code in seen:
                continue
            seen.add(code)
            produced += 1
            yield digraph(size, arcs, name=f'sproink{produced}')
    logger.debug(f'{produced} sproinks of {T!r} with at most {max_vertices} vertices')


def thunderbolt(j: int) -> Digraph:
    """Oriented path: two forward arcs, ``2j + 1`` alternating arcs starting and
    ending backward, then two forward arcs.
    """
    if j < 0:
        raise ValueError(f'thunderbolt index {j} < 0')
    directions = 'FF' + ''.join('B' if i % 2 == 0 else 'F' for i in range(2 * j + 1)) + 'FF'
    arcs = [(i, i + 1) if d == 'F' else (i + 1, i) for i, d in enumerate(directions)]
    return digraph(len(directions) + 1, arcs, name=f'thunderbolt{j}')


def thunderbolts(j_max: int) -> list[Digraph]:
    return [thunderbolt(j) for j in range(j_max + 1)]


def family_key(G: Digraph):
    """Isomorphism key used to deduplicate obstruction families."""
    analysis = tree_analysis(G)
    if analysis.is_tree:
        return ('tree', tree_code(G.size, G.arcs))
    try:
        return ('digraph', digraph_canonical_key(G))
    except BudgetExceeded:
        return ('exact', G.size, G.arcs)


def union_family(*families: Iterable[Digraph]) -> Iterator[Digraph]:
    """Union of obstruction families with isomorphic members removed."""
    seen = set()
    for family in families:
        for member in family:
            key = family_key(member)
            if key not in seen:
                seen.add(key)
                yield member


def sproink_family(
    trees: Iterable[Digraph], max_vertices: int, paths_only: bool = True
) -> Iterator[Digraph]:
    """Sproinks of every tree in a (tree obstruction) family, deduplicated."""
    return union_family(
        *(enumerate_sproinks(T, max_vertices, paths_only) for T in trees)
    )
