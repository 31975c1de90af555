"""Tree duality through the power-set construction.

``A`` has tree duality iff the structure of non-empty subsets of ``A``
maps to ``A``.
"""

from __future__ import annotations

import logging

from ..config import Settings, resolve
from ..errors import BudgetExceeded
from ..hom import HomSearch, is_hom
from ..models import TreeDualityCheck
from ..structures import RelationalStructure

logger = logging.getLogger(__name__)


def power_set_structure(A: RelationalStructure, settings: Settings | None = None) -> RelationalStructure:
    """Builds the power-set structure of ``A``.

    Element ``i`` is the subset with bitmask ``i + 1``. A tuple of subsets
    ``(X_1..X_r)`` is in ``R`` iff every ``x`` in every ``X_j`` lies in some
    tuple of ``R(A)`` whose other coordinates are drawn from their ``X_k``,
    i.e. iff each ``X_j`` is the ``j``-th projection of the tuples of ``R(A)``
    inside the box ``X_1 x ... x X_r``. Candidate boxes are generated one
    coordinate at a time, each ``X_j`` ranging over the subsets of what the
    surviving tuples allow there.

    Args:
        A (RelationalStructure): Structure with at most ``power_set_max_elements`` elements.
        settings (Settings, optional): Budgets.

    Returns:
        RelationalStructure: The power-set structure.

    Raises:
        BudgetExceeded: On too many elements or too many candidate tuples.
    """
    settings = resolve(settings)
    n = A.size
    if n > settings.power_set_max_elements:
        raise BudgetExceeded('power-set structure (elements)', n, settings.power_set_max_elements)
    budget = settings.power_set_tuple_budget
    examined = 0
    relations = {}
    for symbol, tuples in A.items():
        arity = A.vocab.arity(symbol)
        found = []

        def choose(j, box, inside):
            nonlocal examined
            if j == arity:
                for k, mask in enumerate(box):
                    projection = 0
                    for t in inside:
                        projection |= 1 << t[k]
                    if projection != mask:
                        return
                found.append(tuple(mask - 1 for mask in box))
                return
            available = 0
            for t in inside:
                available |= 1 << t[j]
            subset = available
            while subset:
                examined += 1
                if examined > budget:
                    raise BudgetExceeded('power-set structure (candidate tuples)', examined, budget)
                choose(j + 1, (*box, subset), [t for t in inside if subset >> t[j] & 1])
                subset = (subset - 1) & available

        choose(0, (), list(tuples))
        relations[symbol] = found
    name = f'U({A.name})' if A.name else ''
    return RelationalStructure(A.vocab, (1 << n) - 1, relations, name=name)


def singleton_embedding(A: RelationalStructure) -> tuple[int, ...]:
    """Index of ``{a}`` in the power-set structure, for every ``a``."""
    return tuple((1 << a) - 1 for a in range(A.size))


def check_tree_duality(A: RelationalStructure, settings: Settings | None = None) -> TreeDualityCheck:
    """Runs the power-set test and reports its size and search effort."""
    U = power_set_structure(A, settings)
    search = HomSearch(U, A)
    solution = next(search.solutions(), None)
    if solution is not None and not is_hom(U, A, solution):
        raise AssertionError('power-set search returned a non-homomorphism')
    holds = solution is not None
    logger.info(
        f'tree duality of {A!r}: {holds} ({U.size} subsets, {U.tuple_count} tuples, {search.nodes} nodes)'
    )
    return TreeDualityCheck(
        holds=holds,
        power_set_size=U.size,
        power_set_tuples=U.tuple_count,
        search_nodes=search.nodes,
    )


def has_tree_duality(A: RelationalStructure, settings: Settings | None = None) -> bool:
    return check_tree_duality(A, settings).holds
