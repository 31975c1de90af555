"""Finite relational structures and digraphs.

Universes are always ``0..size-1``. Relations are stored as sorted,
duplicate-free tuples so that two structures built from the same data compare
equal. A digraph is a structure over the vocabulary with the single binary
symbol ``E``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import NamedTuple

import networkx as nx
from networkx.utils import UnionFind

from .errors import (
    InvalidVocabulary,
    OutOfRange,
    PartitionMismatch,
    VocabularyMismatch,
)

logger = logging.getLogger(__name__)

EDGE = 'E'


@dataclass(frozen=True)
class Vocabulary:
    """Ordered relation symbols with their arities."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        names = [name for name, _ in symbols]
        if len(set(names)) != len(names):
            raise InvalidVocabulary(f'duplicate relation symbols in {names}')
        for name, arity in symbols:
            if not name.isidentifier():
                raise InvalidVocabulary(f'{name!r} is not an identifier')
            if arity < 1:
                raise InvalidVocabulary(f'symbol {name} has arity {arity}')
        object.__setattr__(self, 'symbols', symbols)

    @classmethod
    def digraph(cls) -> Vocabulary:
        return cls(((EDGE, 2),))

    @cached_property
    def _arities(self) -> dict[str, int]:
        return dict(self.symbols)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise VocabularyMismatch(f'unknown relation symbol {name!r}') from None

    def __contains__(self, name) -> bool:
        return name in self._arities

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return ' '.join(f'{name}/{arity}' for name, arity in self.symbols)


DIGRAPH = Vocabulary.digraph()


@dataclass(frozen=True, repr=False)
class RelationalStructure:
    """A finite structure ``<0..size-1; R_1, ..., R_m>``.

    ``relations`` may be given as a mapping from symbol to tuples or as a
    sequence aligned with ``vocab.symbols``; it is normalised to sorted tuples.
    """

    vocab: Vocabulary
    size: int
    relations: tuple[tuple[tuple[int, ...], ...], ...] = ()
    name: str = field(default='', compare=False)

    def __post_init__(self):
        size = int(self.size)
        if size < 0:
            raise OutOfRange(f'negative universe size {size}')
        raw = self.relations
        if isinstance(raw, Mapping):
            unknown = set(raw) - set(self.vocab.names)
            if unknown:
                raise VocabularyMismatch(f'unknown relation symbols {sorted(unknown)}')
            raw = [raw.get(name, ()) for name in self.vocab.names]
        else:
            raw = list(raw) or [()] * len(self.vocab)
            if len(raw) != len(self.vocab):
                raise VocabularyMismatch(
                    f'{len(raw)} relations given for vocabulary {self.vocab}'
                )
        canonical = []
        for (symbol, arity), tuples in zip(self.vocab.symbols, raw):
            seen = set()
            for t in tuples:
                t = tuple(int(x) for x in t)
                if len(t) != arity:
                    raise VocabularyMismatch(
                        f'tuple {t} has length {len(t)} but {symbol} has arity {arity}'
                    )
                for x in t:
                    if not 0 <= x < size:
                        raise OutOfRange(
                            f'element {x} of {symbol}{t} outside universe of size {size}'
                        )
                seen.add(t)
            canonical.append(tuple(sorted(seen)))
        object.__setattr__(self, 'size', size)
        object.__setattr__(self, 'relations', tuple(canonical))

    def __repr__(self) -> str:
        counts = ', '.join(
            f'{name}:{len(t)}' for name, t in zip(self.vocab.names, self.relations)
        )
        label = f'{self.name!r}, ' if self.name else ''
        return f'RelationalStructure({label}size={self.size}, {counts})'

    @cached_property
    def _tuple_sets(self) -> dict[str, frozenset[tuple[int, ...]]]:
        return {
            name: frozenset(t) for name, t in zip(self.vocab.names, self.relations)
        }

    def tuples(self, symbol: str) -> tuple[tuple[int, ...], ...]:
        """Returns the sorted tuples of ``symbol``."""
        self._check_symbol(symbol)
        return self.relations[self.vocab.names.index(symbol)]

    def tuple_set(self, symbol: str) -> frozenset[tuple[int, ...]]:
        self._check_symbol(symbol)
        return self._tuple_sets[symbol]

    def has(self, symbol: str, t: Sequence[int]) -> bool:
        return tuple(t) in self.tuple_set(symbol)

    def items(self):
        """Yields ``(symbol, tuples)`` in vocabulary order."""
        return zip(self.vocab.names, self.relations)

    @property
    def tuple_count(self) -> int:
        return sum(len(t) for t in self.relations)

    @property
    def is_digraph(self) -> bool:
        return self.vocab == DIGRAPH

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        if not self.is_digraph:
            raise VocabularyMismatch(f'{self!r} is not a digraph')
        return self.relations[0]

    def renamed(self, name: str) -> RelationalStructure:
        return replace(self, name=name)

    def _check_symbol(self, symbol):
        if symbol not in self.vocab:
            raise VocabularyMismatch(f'unknown relation symbol {symbol!r}')


Digraph = RelationalStructure


def digraph(size: int, arcs: Iterable[tuple[int, int]] = (), name: str = '') -> Digraph:
    """Builds a digraph on ``0..size-1``."""
    return RelationalStructure(DIGRAPH, size, (tuple(arcs),), name=name)


class Labelled(NamedTuple):
    """A structure together with what each of its elements stands for."""

    structure: RelationalStructure
    labels: tuple


class DisjointUnion(NamedTuple):
    structure: RelationalStructure
    offsets: tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """An equivalence partition, class ids renumbered by smallest member."""

    class_of: tuple[int, ...]

    def __post_init__(self):
        renumber: dict[int, int] = {}
        canonical = []
        for label in self.class_of:
            if label not in renumber:
                renumber[label] = len(renumber)
            canonical.append(renumber[label])
        object.__setattr__(self, 'class_of', tuple(canonical))

    @classmethod
    def discrete(cls, size: int) -> Partition:
        return cls(tuple(range(size)))

    @property
    def size(self) -> int:
        return len(self.class_of)

    @property
    def count(self) -> int:
        return max(self.class_of, default=-1) + 1

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        members: list[list[int]] = [[] for _ in range(self.count)]
        for x, c in enumerate(self.class_of):
            members[c].append(x)
        return tuple(tuple(m) for m in members)

    def compose(self, other: Partition) -> Partition:
        """Partition of the original universe obtained by merging this one's classes by ``other``."""
        if other.size != self.count:
            raise PartitionMismatch(
                f'partition of {other.size} elements applied to {self.count} classes'
            )
        return Partition(tuple(other.class_of[c] for c in self.class_of))


@dataclass(frozen=True)
class TreeAnalysis:
    """Result of :func:`tree_analysis`; height and level are None for non-trees."""

    is_tree: bool
    height: int | None = None
    level: tuple[int, ...] | None = None


def check_same_vocabulary(*structures: RelationalStructure) -> Vocabulary:
    vocab = structures[0].vocab
    for other in structures[1:]:
        if other.vocab != vocab:
            raise VocabularyMismatch(f'vocabularies differ: {vocab} vs {other.vocab}')
    return vocab


def _check_elements(size: int, elements: Iterable[int]) -> None:
    for x in elements:
        if not 0 <= x < size:
            raise OutOfRange(f'element {x} outside universe of size {size}')


def product(A: RelationalStructure, B: RelationalStructure, name: str = '') -> RelationalStructure:
    """Categorical product; the pair ``(a, b)`` has index ``a * size(B) + b``.

    Args:
        A (RelationalStructure): Left factor.
        B (RelationalStructure): Right factor, same vocabulary.
        name (str, optional): Name of the result.

    Returns:
        RelationalStructure: ``A x B``.
    """
    vocab = check_same_vocabulary(A, B)
    m = B.size
    relations = []
    for ta, tb in zip(A.relations, B.relations):
        relations.append(
            [tuple(x * m + y for x, y in zip(s, t)) for s in ta for t in tb]
        )
    return RelationalStructure(vocab, A.size * m, relations, name=name)


def power(A: RelationalStructure, k: int) -> RelationalStructure:
    """k-fold product; element index is the row-major encoding of the coordinates."""
    if k < 1:
        raise OutOfRange(f'power exponent {k} < 1')
    result = A
    for _ in range(k - 1):
        result = product(result, A)
    return result.renamed(f'{A.name}^{k}' if A.name else '')


def disjoint_union(parts: Sequence[RelationalStructure], name: str = '') -> DisjointUnion:
    if not parts:
        raise ValueError('disjoint union of an empty list')
    vocab = check_same_vocabulary(*parts)
    offsets = []
    relations: list[list[tuple[int, ...]]] = [[] for _ in vocab.symbols]
    offset = 0
    for part in parts:
        offsets.append(offset)
        for i, tuples in enumerate(part.relations):
            relations[i].extend(tuple(x + offset for x in t) for t in tuples)
        offset += part.size
    return DisjointUnion(
        RelationalStructure(vocab, offset, relations, name=name), tuple(offsets)
    )


def equivalence_closure(size: int, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Finest partition of ``0..size-1`` merging every given pair."""
    classes = UnionFind(range(size))
    for a, b in pairs:
        _check_elements(size, (a, b))
        classes.union(a, b)
    return Partition(tuple(classes[x] for x in range(size)))


def quotient(A: RelationalStructure, p: Partition, name: str = '') -> RelationalStructure:
    """``A/p``; loops created by collapsed tuples are kept."""
    if p.size != A.size:
        raise PartitionMismatch(
            f'partition of {p.size} elements applied to universe of size {A.size}'
        )
    cls = p.class_of
    relations = [[tuple(cls[x] for x in t) for t in tuples] for tuples in A.relations]
    return RelationalStructure(A.vocab, p.count, relations, name=name)


def induced_substructure(
    A: RelationalStructure, elements: Iterable[int], name: str = ''
) -> RelationalStructure:
    """Substructure on ``elements``, renumbered in ascending original order."""
    kept = sorted(set(elements))
    _check_elements(A.size, kept)
    index = {x: i for i, x in enumerate(kept)}
    relations = [
        [tuple(index[x] for x in t) for t in tuples if all(x in index for x in t)]
        for tuples in A.relations
    ]
    return RelationalStructure(A.vocab, len(kept), relations, name=name)


def remove_loops(G: Digraph) -> Digraph:
    return digraph(G.size, [(x, y) for x, y in G.arcs if x != y], name=G.name)


def underlying_graph(G: Digraph) -> nx.MultiGraph:
    """Undirected multigraph of ``G``; antiparallel arcs and loops survive as edges."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(G.size))
    graph.add_edges_from(G.arcs)
    return graph


def tree_analysis(G: Digraph) -> TreeAnalysis:
    """Recognises oriented trees and computes their levels.

    The level of a vertex is its net arc distance from a lowest vertex, so the
    level map is a homomorphism onto the shortest directed path the tree maps
    to, and the height is its number of arcs.

    Args:
        G (Digraph): Any digraph.

    Returns:
        TreeAnalysis: ``is_tree`` false (with no height) for non-trees.
    """
    if G.size == 0:
        return TreeAnalysis(False)
    graph = underlying_graph(G)
    if not nx.is_tree(graph):
        return TreeAnalysis(False)
    arcs = G.tuple_set(EDGE)
    raw = {0: 0}
    for parent, child in nx.bfs_edges(graph, 0):
        raw[child] = raw[parent] + (1 if (parent, child) in arcs else -1)
    low = min(raw.values())
    level = tuple(raw[v] - low for v in range(G.size))
    return TreeAnalysis(True, max(level), level)
