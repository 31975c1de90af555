"""Near-unanimity functions as dense numpy tables.

A candidate of arity ``k`` on ``H`` is an integer array of shape
``(|H|,) * k``; entry ``table[x_1, ..., x_k]`` is the value on that tuple, so
flattening in C order gives the mixed-radix order used by NUF table files.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np

from ..arcgraph import arc_graph
from ..config import Settings, resolve
from ..errors import BudgetExceeded, NotARetraction, NufVerificationError, OutOfRange
from ..hom import Retraction, find_hom, is_retraction
from ..pultr import Pattern, psi
from ..structures import RelationalStructure, power, product

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NufCandidate:
    """A total map ``H^k -> H`` given by its table."""

    structure: RelationalStructure
    k: int
    table: np.ndarray

    def __post_init__(self):
        if self.k < 3:
            raise OutOfRange(f'near-unanimity arity {self.k} < 3')
        table = np.array(self.table, dtype=np.int64)
        n = self.structure.size
        if table.shape != (n,) * self.k:
            raise OutOfRange(f'table of shape {table.shape} for {n} elements and arity {self.k}')
        table.setflags(write=False)
        object.__setattr__(self, 'table', table)

    def __call__(self, *xs: int) -> int:
        return int(self.table[xs])

    @property
    def n(self) -> int:
        return self.structure.size


def _check_table_budget(n: int, k: int, settings: Settings) -> None:
    entries = n**k
    if entries > settings.nuf_table_budget:
        raise BudgetExceeded('NUF table (entries)', entries, settings.nuf_table_budget)
    if k > settings.nuf_max_arity:
        raise BudgetExceeded('NUF arity', k, settings.nuf_max_arity)


def nuf_from_function(
    H: RelationalStructure, k: int, fn: Callable[..., int], settings: Settings | None = None
) -> NufCandidate:
    """Tabulates ``fn`` on every ``k``-tuple of elements of ``H``."""
    _check_table_budget(H.size, k, resolve(settings))
    values = [fn(*xs) for xs in cartesian(range(H.size), repeat=k)]
    return NufCandidate(H, k, np.array(values, dtype=np.int64).reshape((H.size,) * k))


def order_statistic_nuf(H: RelationalStructure, k: int, rank: int, order: Sequence[int] | None = None) -> NufCandidate:
    """The ``rank``-th smallest argument with respect to ``order`` (default: element order)."""
    order = list(range(H.size)) if order is None else list(order)
    position = {x: i for i, x in enumerate(order)}
    return nuf_from_function(H, k, lambda *xs: sorted(xs, key=position.__getitem__)[rank])


def median_nuf(H: RelationalStructure, order: Sequence[int] | None = None) -> NufCandidate:
    """Median of three with respect to a linear order of the elements."""
    return order_statistic_nuf(H, 3, 1, order)


def _tuples_array(tuples, arity: int) -> np.ndarray:
    return np.array(tuples, dtype=np.int64).reshape(len(tuples), arity)


def verify_nuf(c: NufCandidate, settings: Settings | None = None) -> bool:
    """Checks the near-unanimity identities and that the table is a homomorphism ``H^k -> H``.

    Args:
        c (NufCandidate): The candidate.
        settings (Settings, optional): ``nuf_table_budget`` also bounds the
            number of ``k``-tuples of tuples examined per relation.

    Returns:
        bool: True iff ``c`` is a near-unanimity function.
    """
    settings = resolve(settings)
    H, k, table = c.structure, c.k, c.table
    n = H.size
    if n == 0:
        return True
    if table.min() < 0 or table.max() >= n:
        return False
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    x, y = x.ravel(), y.ravel()
    if not np.array_equal(table[(np.arange(n),) * k], np.arange(n)):
        return False
    for i in range(k):
        args = tuple(y if j == i else x for j in range(k))
        if not np.array_equal(table[args], x):
            return False
    for symbol, tuples in H.items():
        m = len(tuples)
        if m == 0:
            continue
        checks = m**k
        if checks > settings.nuf_table_budget:
            raise BudgetExceeded(f'NUF verification of {symbol} (tuple combinations)', checks, settings.nuf_table_budget)
        arity = H.vocab.arity(symbol)
        T = _tuples_array(tuples, arity)
        choice = np.indices((m,) * k).reshape(k, -1)
        weights = n ** np.arange(arity - 1, -1, -1, dtype=np.int64)
        images = np.stack([table[tuple(T[choice[j], p] for j in range(k))] for p in range(arity)], axis=1)
        codes = images @ weights
        if not np.isin(codes, T @ weights).all():
            return False
    return True


def _require_verified(c: NufCandidate, settings: Settings) -> None:
    if not verify_nuf(c, settings):
        raise NufVerificationError(f'candidate of arity {c.k} on {c.structure!r} is not a near-unanimity function')


def combine_nuf_product(candidates: Sequence[NufCandidate], settings: Settings | None = None) -> NufCandidate:
    """Coordinate-wise NUF on the product of the structures.

    Every factor is padded to the largest arity ``k`` by ignoring the extra
    arguments, ``g_i(x_1..x_k) = f_i(x_1..x_{k_i})``.
    """
    settings = resolve(settings)
    if not candidates:
        raise ValueError('no candidates to combine')
    for c in candidates:
        _require_verified(c, settings)
    if len(candidates) == 1:
        return candidates[0]
    k = max(c.k for c in candidates)
    structure = candidates[0].structure
    for c in candidates[1:]:
        structure = product(structure, c.structure)
    dims = tuple(c.n for c in candidates)
    size = structure.size
    _check_table_budget(size, k, settings)
    grid = np.indices((size,) * k)
    coordinates = np.unravel_index(grid, dims)
    values = []
    for factor, c in zip(coordinates, candidates):
        padded = c.table.reshape(c.table.shape + (1,) * (k - c.k))
        padded = np.broadcast_to(padded, (c.n,) * k)
        values.append(padded[tuple(factor[j] for j in range(k))])
    table = np.ravel_multi_index(tuple(values), dims)
    return NufCandidate(structure, k, table)


def lift_nuf_arc_graph(f: NufCandidate, settings: Settings | None = None) -> NufCandidate:
    """NUF on ``delta H`` acting on tails and heads separately.

    ``g((u_1, v_1), ..., (u_k, v_k)) = (f(u_1..u_k), f(v_1..v_k))``, which is an
    arc of ``H`` because ``f`` is a homomorphism.
    """
    settings = resolve(settings)
    _require_verified(f, settings)
    H, k = f.structure, f.k
    delta, arcs = arc_graph(H)
    n, a = H.size, delta.size
    _check_table_budget(a, k, settings)
    if a == 0:
        return NufCandidate(delta, k, np.zeros((0,) * k, dtype=np.int64))
    A = _tuples_array(arcs, 2)
    lookup = np.full(n * n, -1, dtype=np.int64)
    lookup[A[:, 0] * n + A[:, 1]] = np.arange(a)
    choice = np.indices((a,) * k)
    tails = f.table[tuple(A[choice[j], 0] for j in range(k))]
    heads = f.table[tuple(A[choice[j], 1] for j in range(k))]
    table = lookup[tails * n + heads]
    if (table < 0).any():
        raise NufVerificationError('lifted values are not arcs; the input is not a homomorphism')
    return NufCandidate(delta, k, table)


def restrict_nuf_core(
    f: NufCandidate, retraction: Retraction, settings: Settings | None = None
) -> NufCandidate:
    """``rho . f`` restricted to the retract, a NUF on the core."""
    settings = resolve(settings)
    _require_verified(f, settings)
    if retraction.source != f.structure or not is_retraction(retraction, retraction.embedding):
        raise NotARetraction(f'{retraction!r} is not a retraction of {f.structure!r}')
    if retraction.target.size == 0:
        return NufCandidate(retraction.target, f.k, np.zeros((0,) * f.k, dtype=np.int64))
    embedding = np.array(retraction.embedding, dtype=np.int64)
    rho = np.array(retraction.mapping, dtype=np.int64)
    restricted = f.table[np.ix_(*([embedding] * f.k))]
    return NufCandidate(retraction.target, f.k, rho[restricted])


def lift_nuf_pultr(pat: Pattern, f: NufCandidate, settings: Settings | None = None) -> NufCandidate:
    """NUF on ``psi A`` applied pointwise: ``g(h_1..h_k)(p) = f(h_1(p), ..., h_k(p))``.

    Raises:
        NufVerificationError: If ``f`` is not a NUF, if a pointwise value is
            not a homomorphism ``P -> A``, or if the result fails verification.
    """
    settings = resolve(settings)
    _require_verified(f, settings)
    A, k = f.structure, f.k
    target, labels = psi(pat, A)
    N, n, width = target.size, A.size, pat.P.size
    _check_table_budget(N, k, settings)
    if N == 0:
        return NufCandidate(target, k, np.zeros((0,) * k, dtype=np.int64))
    L = np.array(labels, dtype=np.int64).reshape(N, width)
    weights = n ** np.arange(width - 1, -1, -1, dtype=np.int64)
    codes = L @ weights
    choice = np.indices((N,) * k)
    pointwise = [f.table[tuple(L[choice[j], p] for j in range(k))] for p in range(width)]
    values = np.zeros((N,) * k, dtype=np.int64)
    for v, w in zip(pointwise, weights):
        values += v * w
    position = np.searchsorted(codes, values)
    position = np.clip(position, 0, N - 1)
    if not (codes[position] == values).all():
        raise NufVerificationError(f'pointwise values leave the universe of psi_{pat.name}')
    lifted = NufCandidate(target, k, position)
    if not verify_nuf(lifted, settings):
        raise NufVerificationError(f'pointwise lift along {pat.name} is not a near-unanimity function')
    return lifted


def near_unanimous_values(n: int, k: int) -> dict[tuple[int, ...], int]:
    """Every ``k``-tuple with at most one entry off the majority, mapped to the majority."""
    forced = {}
    for x in range(n):
        forced[(x,) * k] = x
        for i in range(k):
            for y in range(n):
                forced[(x,) * i + (y,) + (x,) * (k - i - 1)] = x
    return forced


def search_nuf(H: RelationalStructure, k: int = 3, settings: Settings | None = None) -> NufCandidate | None:
    """Searches for a NUF of arity ``k`` on ``H``.

    The near-unanimous entries are pre-assigned and the rest is a homomorphism
    search ``H^k -> H``.

    Raises:
        BudgetExceeded: When ``|H|`` to the number of free entries exceeds ``nuf_search_budget``.
    """
    settings = resolve(settings)
    n = H.size
    _check_table_budget(n, k, settings)
    forced = near_unanimous_values(n, k)
    free = n**k - len(forced)
    if n > 1 and n**free > settings.nuf_search_budget:
        raise BudgetExceeded('NUF search (candidate tables)', n**free, settings.nuf_search_budget)
    if n == 0:
        return NufCandidate(H, k, np.zeros((0,) * k, dtype=np.int64))
    fixed = {int(np.ravel_multi_index(xs, (n,) * k)): v for xs, v in forced.items()}
    h = find_hom(power(H, k), H, fixed=fixed)
    if h is None:
        logger.info(f'no near-unanimity function of arity {k} on {H!r}')
        return None
    return NufCandidate(H, k, np.array(h.mapping, dtype=np.int64).reshape((n,) * k))
