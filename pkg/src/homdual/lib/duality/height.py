"""Bounded-height tree duality.

For a core ``H`` with tree duality the following are equivalent: ``H`` has a
complete set of tree obstructions of bounded height; some crushed cylinder
``H*_n`` maps to ``H``; there is a directed path from the first to the
second projection in the exponential digraph ``H^(H x H)``.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Literal

from ..config import Settings, resolve
from ..errors import BudgetExceeded, OutOfRange, PreconditionViolation, VocabularyMismatch
from ..hom import ExponentialArcs, find_hom, is_core
from ..models import HeightDecision
from ..structures import (
    Digraph,
    digraph,
    equivalence_closure,
    induced_substructure,
    product,
    quotient,
)
from .tree import has_tree_duality

logger = logging.getLogger(__name__)


def looped_path(n: int) -> Digraph:
    """Directed path ``0 -> ... -> n`` with loops at both ends."""
    arcs = [(0, 0), *((i, i + 1) for i in range(n)), (n, n)]
    return digraph(n + 1, arcs, name=f'P{n}*')


def _crushed_cylinder(H: Digraph, n: int) -> tuple[Digraph, tuple[int, ...]]:
    if n < 1:
        raise OutOfRange(f'crushed cylinder index {n} < 1')
    m = H.size
    width = n + 1
    cylinder = product(product(H, H), looped_path(n))

    def index(u, v, i):
        return (u * m + v) * width + i

    pairs = [(index(u, v, 0), index(u, 0, 0)) for u in range(m) for v in range(m)]
    pairs += [(index(u, v, n), index(0, v, n)) for u in range(m) for v in range(m)]
    partition = equivalence_closure(cylinder.size, pairs)
    level = [0] * partition.count
    for x, c in enumerate(partition.class_of):
        level[c] = x % width
    name = f'{H.name}*{n}' if H.name else ''
    return quotient(cylinder, partition, name=name), tuple(level)


def crushed_cylinder(H: Digraph, n: int) -> Digraph:
    """``H*_n``: ``H x H x P_n`` with level 0 crushed by the first and level ``n`` by the second coordinate.

    It has ``|H|^2 (n - 1) + 2|H|`` vertices.
    """
    return _crushed_cylinder(H, n)[0]


def crushed_cylinder_ends(H: Digraph, n: int) -> tuple[Digraph, Digraph]:
    """``H*_n`` without its level-0 classes, and without its level-``n`` classes."""
    cylinder, level = _crushed_cylinder(H, n)
    upper = induced_substructure(cylinder, [x for x, i in enumerate(level) if i != 0])
    lower = induced_substructure(cylinder, [x for x, i in enumerate(level) if i != n])
    return upper, lower


def projection_distance(H: Digraph, settings: Settings | None = None) -> int | None:
    """Length of a shortest directed path from the first projection to the second in ``H^(H x H)``.

    The exponential digraph is explored lazily by breadth-first search and
    never materialised.

    Returns:
        int or None: The distance, or None when the second projection is unreachable.
    """
    settings = resolve(settings)
    m = H.size
    count = m ** (m * m)
    if count > settings.exponential_budget:
        raise BudgetExceeded('exponential digraph (vertices)', count, settings.exponential_budget)
    expansion = ExponentialArcs(H, product(H, H))
    first = tuple(x // m for x in range(m * m))
    second = tuple(x % m for x in range(m * m))
    if first == second:
        return 0
    distance = {first: 0}
    queue = deque([first])
    while queue:
        f = queue.popleft()
        for g in expansion.successors(f):
            if g in distance:
                continue
            distance[g] = distance[f] + 1
            if g == second:
                logger.debug(f'projections joined at distance {distance[g]} after {len(distance)} functions')
                return distance[g]
            queue.append(g)
    logger.debug(f'second projection unreachable; {len(distance)} functions explored')
    return None


def has_bounded_height_tree_duality(
    H: Digraph,
    n_max: int | None = None,
    method: Literal['auto', 'exponential', 'crushed-cylinder'] = 'auto',
    assume_core_with_tree_duality: bool = False,
    settings: Settings | None = None,
) -> HeightDecision:
    """Decides bounded-height tree duality of a core with tree duality.

    When the exponential digraph fits the budget the answer is exact:
    reachability between the projections, with witness ``n`` the path
    length (at least 1). Otherwise crushed cylinders ``H*_1 .. H*_n_max`` are
    tried; a homomorphism proves the property and exhaustion is
    inconclusive.

    A tree-duality check refused by its budget is recorded in
    ``assumptions`` instead of failing the decision.

    Args:
        H (Digraph): The template.
        n_max (int, optional): Largest cylinder tried; defaults to ``crushed_cylinder_max_n``.
        method (str): ``auto`` picks by budget; the others force a condition.
        assume_core_with_tree_duality (bool): Skip the precondition checks and record the assumption.
        settings (Settings, optional): Budgets.

    Returns:
        HeightDecision: Verdict, the condition that produced it, and the witness.

    Raises:
        PreconditionViolation: If ``H`` is checked and is not a core with tree duality.
    """
    settings = resolve(settings)
    if not H.is_digraph:
        raise VocabularyMismatch(f'{H!r} is not a digraph')
    assumptions = []
    if assume_core_with_tree_duality:
        assumptions.append('H is a core with tree duality (asserted by caller)')
    else:
        if not is_core(H):
            raise PreconditionViolation(f'{H!r} is not a core')
        try:
            holds = has_tree_duality(H, settings)
        except BudgetExceeded as err:
            logger.warning(f'tree duality of {H!r} not checked: {err}; assuming it holds')
            assumptions.append(f'H has tree duality (check exceeded budget: {err.what})')
            holds = True
        if not holds:
            raise PreconditionViolation(f'{H!r} does not have tree duality')
    m = H.size
    if method == 'auto':
        fits = m ** (m * m) <= settings.exponential_budget
        method = 'exponential' if fits else 'crushed-cylinder'
    if method == 'exponential':
        distance = projection_distance(H, settings)
        if distance is None:
            return HeightDecision(
                verdict='no', condition='exponential-reachability', assumptions=assumptions
            )
        return HeightDecision(
            verdict='yes',
            condition='exponential-reachability',
            witness_n=max(1, distance),
            path_length=distance,
            assumptions=assumptions,
        )
    n_max = n_max or settings.crushed_cylinder_max_n
    for n in range(1, n_max + 1):
        if find_hom(crushed_cylinder(H, n), H) is not None:
            return HeightDecision(
                verdict='yes', condition='crushed-cylinder', witness_n=n, assumptions=assumptions
            )
    logger.warning(f'no crushed cylinder up to n={n_max} maps to {H!r}')
    return HeightDecision(
        verdict='inconclusive', condition='crushed-cylinder', n_max=n_max, assumptions=assumptions
    )
