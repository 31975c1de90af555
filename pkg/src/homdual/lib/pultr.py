"""Pultr functors: right adjoints defined by patterns, and their left adjoints.

A pattern consists of a sigma-structure ``P`` and, for every symbol ``R`` of
tau, a sigma-structure ``Q_R`` with homomorphisms ``q_{R,1..r}: P -> Q_R``.
``psi`` sends a sigma-structure ``A`` to the tau-structure whose elements are
the homomorphisms ``P -> A``; ``psi_inverse`` glues copies of ``P`` and the
``Q_R`` along a tau-structure. ``psi_inverse(B) -> A`` iff ``B -> psi(A)``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidPattern, NotATree, VocabularyMismatch
from .hom import find_hom, is_hom, iter_homs
from .sproink import union_family
from .structures import (
    DIGRAPH,
    Digraph,
    Labelled,
    RelationalStructure,
    Vocabulary,
    digraph,
    disjoint_union,
    equivalence_closure,
    quotient,
    remove_loops,
    tree_analysis,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PatternRelation:
    """``Q_R`` and the image vectors of ``q_{R,1}, ..., q_{R,r}``."""

    Q: RelationalStructure
    maps: tuple[tuple[int, ...], ...]

    @cached_property
    def covered(self) -> bool:
        """True when the images of the maps cover ``Q_R``, so no extension search is needed."""
        images = {x for q in self.maps for x in q}
        return len(images) == self.Q.size


@dataclass(frozen=True)
class Pattern:
    """Data of a Pultr functor from sigma-structures to tau-structures."""

    name: str
    sigma: Vocabulary
    tau: Vocabulary
    P: RelationalStructure
    relations: tuple[tuple[str, PatternRelation], ...]

    def __post_init__(self):
        if self.P.vocab != self.sigma:
            raise InvalidPattern(f'P is over {self.P.vocab}, not {self.sigma}')
        symbols = tuple(symbol for symbol, _ in self.relations)
        if symbols != self.tau.names:
            raise InvalidPattern(f'pattern defines {symbols}, tau is {self.tau.names}')
        for symbol, rel in self.relations:
            if rel.Q.vocab != self.sigma:
                raise InvalidPattern(f'Q_{symbol} is over {rel.Q.vocab}, not {self.sigma}')
            if len(rel.maps) != self.tau.arity(symbol):
                raise InvalidPattern(
                    f'{symbol} has arity {self.tau.arity(symbol)} but {len(rel.maps)} maps'
                )
            for i, q in enumerate(rel.maps, start=1):
                if not is_hom(self.P, rel.Q, q):
                    raise InvalidPattern(f'q_{symbol},{i} = {list(q)} is not a homomorphism P -> Q_{symbol}')

    @classmethod
    def build(
        cls,
        name: str,
        sigma: Vocabulary,
        tau: Vocabulary,
        P: RelationalStructure,
        queries: Mapping[str, tuple[RelationalStructure, Sequence[Sequence[int]]]],
    ) -> Pattern:
        missing = set(tau.names) - set(queries)
        if missing:
            raise InvalidPattern(f'no Q given for {sorted(missing)}')
        relations = tuple(
            (
                symbol,
                PatternRelation(queries[symbol][0], tuple(tuple(q) for q in queries[symbol][1])),
            )
            for symbol in tau.names
        )
        return cls(name, sigma, tau, P, relations)

    def relation(self, symbol: str) -> PatternRelation:
        return dict(self.relations)[symbol]

    @cached_property
    def vertex_disjoint(self) -> bool:
        """Whether the images ``q_{R,i}(P)`` are pairwise disjoint for every ``R``."""
        for _, rel in self.relations:
            images = [set(q) for q in rel.maps]
            for i in range(len(images)):
                for j in range(i + 1, len(images)):
                    if images[i] & images[j]:
                        return False
        return True


def arc_graph_pattern() -> Pattern:
    P = digraph(2, [(0, 1)], name='P')
    Q = digraph(3, [(0, 1), (1, 2)], name='Q_E')
    return Pattern.build('arc_graph', DIGRAPH, DIGRAPH, P, {'E': (Q, [(0, 1), (1, 2)])})


def blue_red_pattern() -> Pattern:
    P = digraph(2, [(0, 1)], name='P')
    Q = digraph(4, [(0, 1), (1, 2), (2, 3)], name='Q_E')
    return Pattern.build('blue_red', DIGRAPH, DIGRAPH, P, {'E': (Q, [(0, 1), (2, 3)])})


def identity_pattern() -> Pattern:
    """P a single vertex and Q_E an arc: psi is naturally the identity on digraphs."""
    P = digraph(1, name='P')
    Q = digraph(2, [(0, 1)], name='Q_E')
    return Pattern.build('identity', DIGRAPH, DIGRAPH, P, {'E': (Q, [(0,), (1,)])})


def builtin_patterns() -> dict[str, Pattern]:
    return {'arc_graph': arc_graph_pattern(), 'blue_red': blue_red_pattern()}


def _related_tuples(
    rel: PatternRelation, A: RelationalStructure, universe: Sequence[tuple[int, ...]]
) -> Iterator[tuple[int, ...]]:
    """Tuples ``(f_1..f_r)`` of homs ``P -> A`` with some ``g: Q -> A`` satisfying ``g . q_i = f_i``.

    ``g`` is assigned coordinate by coordinate on the images of the ``q_i``;
    an overlap with a different value prunes the branch. Complete assignments
    are checked directly when the images cover ``Q``, otherwise extended by a
    pre-assigned homomorphism search.
    """
    Q, maps = rel.Q, rel.maps
    r = len(maps)
    g: dict[int, int] = {}

    def extend(i, chosen):
        if i == r:
            if rel.covered:
                if is_hom(Q, A, [g[x] for x in range(Q.size)]):
                    yield chosen
            elif find_hom(Q, A, fixed=dict(g)) is not None:
                yield chosen
            return
        q = maps[i]
        for index, f in enumerate(universe):
            added = []
            consistent = True
            for u, x in enumerate(q):
                current = g.get(x)
                if current is None:
                    g[x] = f[u]
                    added.append(x)
                elif current != f[u]:
                    consistent = False
                    break
            if consistent:
                yield from extend(i + 1, (*chosen, index))
            for x in added:
                del g[x]

    yield from extend(0, ())


def psi(pat: Pattern, A: RelationalStructure) -> Labelled:
    """Applies the right adjoint defined by ``pat``.

    Args:
        pat (Pattern): The pattern.
        A (RelationalStructure): A structure over ``pat.sigma``.

    Returns:
        Labelled: ``psi A``, labelled by the homomorphisms ``P -> A`` (value
        vectors) in lexicographic order.
    """
    if A.vocab != pat.sigma:
        raise VocabularyMismatch(f'{pat.name} expects {pat.sigma}, got {A.vocab}')
    universe = sorted(h.mapping for h in iter_homs(pat.P, A))
    relations = {
        symbol: list(_related_tuples(rel, A, universe)) for symbol, rel in pat.relations
    }
    name = f'psi_{pat.name}({A.name})' if A.name else ''
    return Labelled(
        RelationalStructure(pat.tau, len(universe), relations, name=name), tuple(universe)
    )


def psi_inverse(pat: Pattern, B: RelationalStructure) -> RelationalStructure:
    """Applies the left adjoint of ``psi``.

    One copy of ``P`` per element of ``B`` and one copy of ``Q_R`` per tuple of
    ``R(B)`` are glued by identifying ``u`` in the copy of the ``i``-th
    coordinate with ``q_{R,i}(u)`` in the copy of the tuple.
    """
    if B.vocab != pat.tau:
        raise VocabularyMismatch(f'{pat.name} expects {pat.tau}, got {B.vocab}')
    parts = [pat.P] * B.size
    owners = []
    for symbol, rel in pat.relations:
        for t in B.tuples(symbol):
            owners.append((rel, t))
            parts.append(rel.Q)
    name = f'psi^-1_{pat.name}({B.name})' if B.name else ''
    if not parts:
        return RelationalStructure(pat.sigma, 0, name=name)
    union, offsets = disjoint_union(parts)
    pairs = []
    for k, (rel, t) in enumerate(owners, start=B.size):
        for x, q in zip(t, rel.maps):
            pairs.extend((offsets[x] + u, offsets[k] + q[u]) for u in range(pat.P.size))
    return quotient(union, equivalence_closure(union.size, pairs), name=name)


def blue_red_quotients(T: Digraph) -> tuple[Digraph, Digraph]:
    """The two blue/red sproinks of an oriented tree.

    An arc leaving an even level is blue, one leaving an odd level is red.
    Contracting all blue arcs, respectively all red arcs, and dropping the
    loops this creates gives the two quotients.

    Raises:
        NotATree: If ``T`` is not an oriented tree.
    """
    analysis = tree_analysis(T)
    if not analysis.is_tree:
        raise NotATree(f'{T!r} is not an oriented tree')
    level = analysis.level
    blue = [(x, y) for x, y in T.arcs if level[x] % 2 == 0]
    red = [(x, y) for x, y in T.arcs if level[x] % 2 == 1]
    by_blue = remove_loops(quotient(T, equivalence_closure(T.size, blue)))
    by_red = remove_loops(quotient(T, equivalence_closure(T.size, red)))
    return by_blue.renamed(f'{T.name}/b' if T.name else ''), by_red.renamed(
        f'{T.name}/r' if T.name else ''
    )


def blue_red_sproinks(trees: Iterable[Digraph]) -> Iterator[Digraph]:
    """Both blue/red quotients of every tree, with isomorphic copies removed."""

    def quotients():
        for T in trees:
            yield from blue_red_quotients(T)

    return union_family(quotients())
