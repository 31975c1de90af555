"""Finite duality through dismantling.

A structure has finite duality iff its core ``C`` has a square that
dismantles to its diagonal, removing one dominated element at a time.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

from ..config import Settings, resolve
from ..errors import OutOfRange
from ..hom import core
from ..models import DismantleResult
from ..structures import RelationalStructure, product

logger = logging.getLogger(__name__)


def is_dominated(B: RelationalStructure, a: int, b: int) -> bool:
    """Whether ``a`` is dominated by ``b``.

    Replacing ``a`` by ``b`` in any single position of any tuple must give a
    tuple of the same relation.
    """
    for x in (a, b):
        if not 0 <= x < B.size:
            raise OutOfRange(f'element {x} outside universe of size {B.size}')
    for symbol, tuples in B.items():
        present = B.tuple_set(symbol)
        for t in tuples:
            for i, x in enumerate(t):
                if x == a and (*t[:i], b, *t[i + 1 :]) not in present:
                    return False
    return True


class Dismantler:
    """Domination tests inside induced substructures of ``B``."""

    def __init__(self, B: RelationalStructure):
        self.B = B
        self._present = [B.tuple_set(symbol) for symbol in B.vocab.names]
        self._through: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(B.size)]
        for r, tuples in enumerate(B.relations):
            for t in tuples:
                for x in set(t):
                    self._through[x].append((r, t))

    def dominated(self, alive: set[int], a: int, b: int) -> bool:
        for r, t in self._through[a]:
            if any(x not in alive for x in t):
                continue
            for i, x in enumerate(t):
                if x == a and (*t[:i], b, *t[i + 1 :]) not in self._present[r]:
                    return False
        return True

    def dominator(self, alive: set[int], a: int) -> int | None:
        """Lowest other live element dominating ``a``, if any."""
        for b in sorted(alive):
            if b != a and self.dominated(alive, a, b):
                return b
        return None


def replays(B: RelationalStructure, sequence: Sequence[int]) -> bool:
    """Checks that every removed element is dominated when it is removed."""
    dismantler = Dismantler(B)
    alive = set(range(B.size))
    for x in sequence:
        if x not in alive or dismantler.dominator(alive, x) is None:
            return False
        alive.discard(x)
    return True


def dismantle_to(
    B: RelationalStructure, target: Iterable[int], settings: Settings | None = None
) -> DismantleResult:
    """Tries to dismantle ``B`` down to the substructure induced on ``target``.

    A greedy pass removes the lowest dominated element outside ``target``
    until none is left. If that stalls, removal orders are searched
    exhaustively (with memoised dead ends), from the start when ``B`` has at
    most ``dismantle_exhaustive_limit`` extra elements and otherwise from the
    greedy leftover when that one is small enough (method ``greedy+exhaustive``).

    Args:
        B (RelationalStructure): Structure to dismantle.
        target (Iterable[int]): Elements that must survive.
        settings (Settings, optional): Supplies the exhaustive limit.

    Returns:
        DismantleResult: Success flag and the removal sequence.
    """
    settings = resolve(settings)
    target = set(target)
    for x in target:
        if not 0 <= x < B.size:
            raise OutOfRange(f'element {x} outside universe of size {B.size}')
    dismantler = Dismantler(B)
    alive = set(range(B.size))
    sequence: list[int] = []
    progress = True
    while progress:
        progress = False
        for x in sorted(alive - target):
            if dismantler.dominator(alive, x) is not None:
                alive.discard(x)
                sequence.append(x)
                progress = True
                break
    if alive == target:
        return DismantleResult(success=True, sequence=sequence, target=sorted(target))

    limit = settings.dismantle_exhaustive_limit
    if B.size - len(target) <= limit:
        start, prefix, method = set(range(B.size)), [], 'exhaustive'
    elif len(alive - target) <= limit:
        start, prefix, method = alive, sequence, 'greedy+exhaustive'
    else:
        logger.warning(
            f'greedy dismantling stalled with {len(alive - target)} extra elements; '
            f'exhaustive search limited to {limit}'
        )
        return DismantleResult(
            success=False, sequence=sequence, target=sorted(target), method='abandoned'
        )

    dead_ends: set[frozenset[int]] = set()

    def search(current: set[int], removed: list[int]) -> list[int] | None:
        if current == target:
            return removed
        key = frozenset(current)
        if key in dead_ends:
            return None
        for x in sorted(current - target):
            if dismantler.dominator(current, x) is not None:
                found = search(current - {x}, [*removed, x])
                if found is not None:
                    return found
        dead_ends.add(key)
        return None

    found = search(start, list(prefix))
    logger.debug(f'exhaustive dismantling visited {len(dead_ends)} dead ends')
    if found is None:
        return DismantleResult(
            success=False, sequence=sequence, target=sorted(target), method=method
        )
    return DismantleResult(success=True, sequence=found, target=sorted(target), method=method)


def finite_duality_witness(A: RelationalStructure, settings: Settings | None = None) -> DismantleResult:
    """Dismantles the square of the core of ``A`` towards its diagonal."""
    C = core(A).structure
    n = C.size
    square = product(C, C)
    return dismantle_to(square, [c * n + c for c in range(n)], settings)


def has_finite_duality(A: RelationalStructure, settings: Settings | None = None) -> bool:
    result = finite_duality_witness(A, settings)
    logger.info(f'finite duality of {A!r}: {result.success} ({result.method})')
    return result.success
