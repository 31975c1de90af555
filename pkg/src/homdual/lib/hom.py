"""Homomorphism search, cores, isomorphism and exponential digraphs.

The search is a constraint satisfaction solver in the usual AC-3 shape:
variables are the elements of the source, domains are bitmasks over the
target, and every source tuple is a constraint whose supports are the target
tuples with the same equality pattern. Generalised arc consistency is run to a
fixpoint first and again after every branching decision (MAC). Branching takes
the lowest-index undecided variable and tries its values in increasing order,
so the first solution is the lexicographically least homomorphism.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations
from itertools import product as cartesian
from typing import NamedTuple

from .config import Settings, resolve
from .errors import BudgetExceeded, HomdualError, OutOfRange
from .structures import (
    Digraph,
    RelationalStructure,
    check_same_vocabulary,
    digraph,
    induced_substructure,
    product,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, repr=False)
class Homomorphism:
    """A relation-preserving map ``source -> target``."""

    source: RelationalStructure
    target: RelationalStructure
    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        if len(mapping) != self.source.size:
            raise OutOfRange(
                f'map of length {len(mapping)} on a universe of size {self.source.size}'
            )
        object.__setattr__(self, 'mapping', mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def __repr__(self) -> str:
        return f'Homomorphism({self.source.name or self.source.size} -> {self.target.name or self.target.size}: {list(self.mapping)})'

    def then(self, other: Homomorphism) -> Homomorphism:
        """Composite ``other . self``."""
        return Homomorphism(
            self.source, other.target, tuple(other.mapping[y] for y in self.mapping)
        )


@dataclass(frozen=True, repr=False)
class Retraction(Homomorphism):
    """Homomorphism onto an induced substructure, identity on it.

    ``embedding[c]`` is the element of the source that the target's element
    ``c`` stands for.
    """

    embedding: tuple[int, ...] = ()


class Core(NamedTuple):
    structure: RelationalStructure
    retraction: Retraction


def compose(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    """``g . f``: first ``f``, then ``g``."""
    return f.then(g)


def is_hom(G: RelationalStructure, H: RelationalStructure, mapping: Sequence[int] | Mapping[int, int]) -> bool:
    """Checks that ``mapping`` sends every tuple of ``G`` to a tuple of ``H``."""
    if G.vocab != H.vocab:
        return False
    if isinstance(mapping, Mapping):
        if set(mapping) != set(range(G.size)):
            return False
        mapping = [mapping[x] for x in range(G.size)]
    if len(mapping) != G.size or any(not 0 <= y < H.size for y in mapping):
        return False
    for symbol, tuples in G.items():
        target = H.tuple_set(symbol)
        for t in tuples:
            if tuple(mapping[x] for x in t) not in target:
                return False
    return True


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _equality_pattern(scope: tuple[int, ...]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    return tuple(first.setdefault(x, i) for i, x in enumerate(scope))


class HomSearch:
    """Backtracking search for homomorphisms ``G -> H`` with arc consistency.

    Args:
        G (RelationalStructure): Source.
        H (RelationalStructure): Target, same vocabulary.
        fixed (Mapping[int, int], optional): Pre-assigned values.
        allowed (Mapping[int, Iterable[int]], optional): Per-element domains.
        injective (bool): Only look for injective maps.
    """

    def __init__(self, G, H, fixed=None, allowed=None, injective=False):
        check_same_vocabulary(G, H)
        self.G = G
        self.H = H
        self.injective = injective
        self.nodes = 0
        full = (1 << H.size) - 1
        domains = [full] * G.size
        for x, values in (allowed or {}).items():
            if not 0 <= x < G.size:
                raise OutOfRange(f'element {x} outside source of size {G.size}')
            mask = 0
            for v in values:
                mask |= 1 << v
            domains[x] &= mask
        for x, v in (fixed or {}).items():
            if not 0 <= x < G.size or not 0 <= v < H.size:
                raise OutOfRange(f'pre-assignment {x} -> {v} out of range')
            domains[x] &= 1 << v
        self._initial = domains

        self._constraints: list[tuple[tuple[int, ...], list[tuple[int, ...]]]] = []
        self._watch: list[list[int]] = [[] for _ in range(G.size)]
        supports: dict[tuple[str, tuple[int, ...]], list[tuple[int, ...]]] = {}
        for symbol, tuples in G.items():
            target = H.tuples(symbol)
            for scope in tuples:
                pattern = _equality_pattern(scope)
                key = (symbol, pattern)
                if key not in supports:
                    supports[key] = [
                        t for t in target if all(t[i] == t[j] for i, j in enumerate(pattern))
                    ]
                index = len(self._constraints)
                self._constraints.append((scope, supports[key]))
                for x in set(scope):
                    self._watch[x].append(index)

    def _propagate(self, domains: list[int], seeds) -> bool:
        """Generalised arc consistency to a fixpoint; False on a wipe-out."""
        queue = deque(seeds)
        queued = set(queue)
        constraints = self._constraints
        watch = self._watch
        while queue:
            c = queue.popleft()
            queued.discard(c)
            scope, tuples = constraints[c]
            supported = [0] * len(scope)
            for t in tuples:
                for x, v in zip(scope, t):
                    if not domains[x] >> v & 1:
                        break
                else:
                    for j, v in enumerate(t):
                        supported[j] |= 1 << v
            for x, mask in zip(scope, supported):
                narrowed = domains[x] & mask
                if narrowed != domains[x]:
                    if not narrowed:
                        return False
                    domains[x] = narrowed
                    for other in watch[x]:
                        if other != c and other not in queued:
                            queue.append(other)
                            queued.add(other)
        if self.injective:
            decided = [d for d in domains if not d & (d - 1)]
            if len(set(decided)) != len(decided):
                return False
        return True

    @staticmethod
    def _branch_variable(domains: list[int]) -> int | None:
        for x, d in enumerate(domains):
            if d & (d - 1):
                return x
        return None

    def solutions(self) -> Iterator[tuple[int, ...]]:
        """Yields every homomorphism as a value vector, in lexicographic order."""
        root = list(self._initial)
        if any(d == 0 for d in root):
            return
        if self.injective and self.G.size > self.H.size:
            return
        if not self._propagate(root, range(len(self._constraints))):
            return
        stack: list[tuple[list[int], int, int]] = []
        domains = root
        while True:
            x = self._branch_variable(domains)
            if x is None:
                yield tuple(d.bit_length() - 1 for d in domains)
            else:
                stack.append((domains, x, domains[x]))
            while stack:
                saved, x, remaining = stack.pop()
                if not remaining:
                    continue
                low = remaining & -remaining
                stack.append((saved, x, remaining ^ low))
                trial = list(saved)
                trial[x] = low
                seeds = self._watch[x]
                if self.injective:
                    changed = []
                    for y, d in enumerate(trial):
                        if y != x and d & low:
                            trial[y] = d & ~low
                            changed.append(y)
                    if any(trial[y] == 0 for y in changed):
                        continue
                    seeds = {c for y in [x, *changed] for c in self._watch[y]}
                self.nodes += 1
                if self._propagate(trial, seeds):
                    domains = trial
                    break
            else:
                return


def iter_homs(
    G: RelationalStructure,
    H: RelationalStructure,
    fixed: Mapping[int, int] | None = None,
) -> Iterator[Homomorphism]:
    """Streams all homomorphisms ``G -> H`` in lexicographic order of their values."""
    for mapping in HomSearch(G, H, fixed=fixed).solutions():
        yield Homomorphism(G, H, mapping)


def find_hom(
    G: RelationalStructure,
    H: RelationalStructure,
    fixed: Mapping[int, int] | None = None,
    allowed: Mapping[int, Sequence[int]] | None = None,
    injective: bool = False,
) -> Homomorphism | None:
    """Finds the lexicographically least homomorphism ``G -> H``.

    Args:
        G (RelationalStructure): Source.
        H (RelationalStructure): Target over the same vocabulary.
        fixed (Mapping[int, int], optional): Values the map must take.
        allowed (Mapping[int, Sequence[int]], optional): Restricts the images of some elements.
        injective (bool): Search for injective homomorphisms only.

    Returns:
        Homomorphism or None: A verified homomorphism, or None if there is none.
    """
    search = HomSearch(G, H, fixed=fixed, allowed=allowed, injective=injective)
    for mapping in search.solutions():
        if not is_hom(G, H, mapping):
            raise HomdualError(f'search produced a non-homomorphism {mapping}')
        return Homomorphism(G, H, mapping)
    return None


def hom_equivalent(G: RelationalStructure, H: RelationalStructure) -> bool:
    return find_hom(G, H) is not None and find_hom(H, G) is not None


def isomorphic(A: RelationalStructure, B: RelationalStructure) -> bool:
    """Isomorphism test: equal sizes and tuple counts plus a bijective homomorphism.

    With equal finite tuple counts an injective homomorphism between equal-size
    universes maps every relation onto the other one.
    """
    if A.vocab != B.vocab or A.size != B.size:
        return False
    if [len(t) for t in A.relations] != [len(t) for t in B.relations]:
        return False
    return find_hom(A, B, injective=True) is not None


def _shrink(H: RelationalStructure) -> list[int]:
    """Elements of some retract of minimum size, found by folding endomorphisms."""
    kept = list(range(H.size))
    current = H
    shrinking = True
    while shrinking:
        shrinking = False
        for i in range(len(kept)):
            rest = [j for j in range(len(kept)) if j != i]
            h = find_hom(current, induced_substructure(current, rest))
            if h is None:
                continue
            image = sorted({rest[y] for y in h.mapping})
            kept = [kept[j] for j in image]
            current = induced_substructure(H, kept)
            shrinking = True
            break
    return kept


def core(H: RelationalStructure) -> Core:
    """Computes the core of ``H`` and a retraction onto it.

    The core size comes from repeatedly folding ``H`` into proper
    substructures; the returned core is then the lexicographically first
    induced substructure of that size that ``H`` retracts onto.

    Args:
        H (RelationalStructure): Any finite structure.

    Returns:
        Core: The induced core and the retraction ``H -> core``.
    """
    kept = _shrink(H)
    size = len(kept)
    name = f'core({H.name})' if H.name else ''
    if size == H.size:
        identity = tuple(range(H.size))
        return Core(H.renamed(name), Retraction(H, H, identity, embedding=identity))
    counts = [len(t) for t in induced_substructure(H, kept).relations]
    logger.debug(f'core of {H!r} has {size} elements; scanning retract candidates')
    for subset in combinations(range(H.size), size):
        sub = induced_substructure(H, subset, name=name)
        if [len(t) for t in sub.relations] != counts:
            continue
        h = find_hom(H, sub, fixed={x: i for i, x in enumerate(subset)})
        if h is not None:
            return Core(sub, Retraction(H, sub, h.mapping, embedding=subset))
    raise HomdualError(f'no retraction onto a {size}-element substructure of {H!r}')


def is_core(H: RelationalStructure) -> bool:
    return len(_shrink(H)) == H.size


def is_retraction(r: Homomorphism, embedding: Sequence[int]) -> bool:
    """Checks that ``r`` maps onto the substructure induced on ``embedding`` and fixes it."""
    H, C = r.source, r.target
    if len(embedding) != C.size:
        return False
    if induced_substructure(H, embedding) != C or list(embedding) != sorted(set(embedding)):
        return False
    if any(r.mapping[e] != c for c, e in enumerate(embedding)):
        return False
    return is_hom(H, C, r.mapping)


class ExponentialArcs:
    """Successor expansion in ``H^G``: ``f -> g`` iff ``(f(u), g(v))`` is an arc of ``H`` for every arc ``(u, v)`` of ``G``."""

    def __init__(self, H: Digraph, G: Digraph):
        self.H = H
        self.G = G
        self._out = [0] * H.size
        for x, y in H.arcs:
            self._out[x] |= 1 << y
        self._full = (1 << H.size) - 1

    def successors(self, f: Sequence[int]) -> Iterator[tuple[int, ...]]:
        allowed = [self._full] * self.G.size
        for u, v in self.G.arcs:
            allowed[v] &= self._out[f[u]]
        if any(a == 0 for a in allowed):
            return
        yield from cartesian(*(list(_bits(a)) for a in allowed))


class Exponential(NamedTuple):
    digraph: Digraph
    functions: tuple[tuple[int, ...], ...]
    projections: tuple[int, int] | None


def function_index(f: Sequence[int], base: int) -> int:
    """Position of ``f`` among all functions in lexicographic order."""
    index = 0
    for value in f:
        index = index * base + value
    return index


def exponential(H: Digraph, G: Digraph, settings: Settings | None = None) -> Exponential:
    """Builds the exponential digraph ``H^G``.

    Vertices are all maps ``V(G) -> V(H)`` in lexicographic order. When ``G``
    is ``H x H`` the indices of the two projections are reported too.

    Raises:
        BudgetExceeded: If ``size(H) ** size(G)`` exceeds ``exponential_budget``.
    """
    settings = resolve(settings)
    n, m = H.size, G.size
    count = n**m
    if count > settings.exponential_budget:
        raise BudgetExceeded('exponential digraph (vertices)', count, settings.exponential_budget)
    functions = tuple(cartesian(range(n), repeat=m))
    expansion = ExponentialArcs(H, G)
    arcs = [
        (i, function_index(g, n))
        for i, f in enumerate(functions)
        for g in expansion.successors(f)
    ]
    projections = None
    if m == n * n and G == product(H, H):
        first = [x // n for x in range(m)]
        second = [x % n for x in range(m)]
        projections = (function_index(first, n), function_index(second, n))
    result = digraph(count, arcs, name=f'{H.name}^{G.name}' if H.name and G.name else '')
    return Exponential(result, functions, projections)

