"""Brute-force ground truth for duality claims at desk scale.

Two kinds of campaigns are provided. :func:`check_duality_pair` confronts a
template with a candidate obstruction family over every small digraph;
:func:`check_adjunction` compares both sides of an adjunction on sampled
pairs of structures. Both return a :class:`~homdual.lib.models.Report`.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import product as cartesian

import numpy as np
from tqdm import tqdm

from .canonical import canonicalizer
from .config import Settings, resolve
from .errors import BudgetExceeded
from .hom import find_hom
from .models import Report, Verdict, Witness
from .schema.structure_file import serialize_structure
from .structures import Digraph, RelationalStructure, Vocabulary, digraph

logger = logging.getLogger(__name__)

Transform = Callable[[RelationalStructure], RelationalStructure]


def _ordered_pairs(n: int, loops: bool) -> list[tuple[int, int]]:
    return [(x, y) for x in range(n) for y in range(n) if loops or x != y]


@lru_cache(maxsize=None)
def _canonical_masks(n: int, loops: bool) -> tuple[int, ...]:
    """Enumeration masks whose digraph has the least adjacency mask in its class."""
    pairs = _ordered_pairs(n, loops)
    canon = canonicalizer(n)
    kept = []
    for mask in range(1 << len(pairs)):
        adjacency = 0
        for i, (x, y) in enumerate(pairs):
            if mask >> i & 1:
                adjacency |= 1 << (x * n + y)
        if canon(adjacency) == adjacency:
            kept.append(mask)
    return tuple(kept)


def enumerate_digraphs(
    max_vertices: int, loops: bool = True, unique: bool = False, settings: Settings | None = None
) -> Iterator[Digraph]:
    """All digraphs on ``1..max_vertices`` vertices.

    For each size the arc sets are the subsets of the ordered pairs
    ``(x, y)`` (row-major, loops included when ``loops``), taken in increasing
    bitmask order. With ``unique`` only the member of each isomorphism class
    with the least adjacency encoding is kept.

    Raises:
        BudgetExceeded: If ``max_vertices`` exceeds ``enumeration_max_vertices``.
    """
    settings = resolve(settings)
    if max_vertices > settings.enumeration_max_vertices:
        raise BudgetExceeded('digraph enumeration (vertices)', max_vertices, settings.enumeration_max_vertices)
    for n in range(1, max_vertices + 1):
        pairs = _ordered_pairs(n, loops)
        masks = _canonical_masks(n, loops) if unique else range(1 << len(pairs))
        for mask in masks:
            arcs = [pair for i, pair in enumerate(pairs) if mask >> i & 1]
            yield digraph(n, arcs, name=f'D{n}.{mask}')


def count_digraphs(max_vertices: int, loops: bool = True, unique: bool = False) -> int:
    if unique:
        return sum(len(_canonical_masks(n, loops)) for n in range(1, max_vertices + 1))
    return sum(1 << len(_ordered_pairs(n, loops)) for n in range(1, max_vertices + 1))


def _ordered_map(fn, items: Iterable, settings: Settings, desc: str, total: int | None = None) -> Iterator:
    """``map`` with results in input order, on a thread pool when ``workers > 1``."""
    with tqdm(total=total, desc=desc, unit='item', leave=False, disable=not settings.progress) as pbar:
        if settings.workers > 1:
            with ThreadPoolExecutor(max_workers=settings.workers) as pool:
                for result in pool.map(fn, items):
                    pbar.update(1)
                    yield result
        else:
            for item in items:
                result = fn(item)
                pbar.update(1)
                yield result


def check_duality_pair(
    H: Digraph,
    family: Iterable[Digraph],
    g_max: int,
    family_size_max: int | None = None,
    unique: bool = False,
    settings: Settings | None = None,
) -> Report:
    """Tests whether ``family`` is a complete set of obstructions for ``H``.

    Soundness: no family member maps to ``H``. Completeness: every digraph
    ``G`` on at most ``g_max`` vertices with ``G -/-> H`` admits a homomorphism
    from some family member. For ``G -> H`` the members with at most
    ``recheck_family_vertices`` vertices are checked not to map to ``G``.

    Args:
        H (Digraph): The template.
        family (Iterable[Digraph]): Candidate obstructions; consumed once.
        g_max (int): Largest enumerated digraph.
        family_size_max (int, optional): Ignore members larger than this.
        unique (bool): Enumerate one digraph per isomorphism class instead of
            every labelled digraph; faster at ``g_max = 5``.
        settings (Settings, optional): Budgets, workers and progress.

    Returns:
        Report: ``counterexample`` when soundness (or the recheck) fails,
        ``inconclusive`` when some ``G`` is not covered, ``verified`` otherwise.
    """
    settings = resolve(settings)
    members = [F for F in family if family_size_max is None or F.size <= family_size_max]
    members.sort(key=lambda F: F.size)
    recheck = [F for F in members if F.size <= settings.recheck_family_vertices]
    witnesses: list[Witness] = []

    def soundness(F):
        return find_hom(F, H) is not None

    for i, maps in enumerate(_ordered_map(soundness, members, settings, 'soundness', len(members))):
        if maps:
            F = members[i]
            witnesses.append(
                Witness(
                    index=len(witnesses),
                    reason=f'family member {F.name or i} maps to {H.name or "H"}',
                    structure=serialize_structure(F),
                )
            )
    unsound = len(witnesses)

    def classify(G):
        if find_hom(G, H) is not None:
            for F in recheck:
                if find_hom(F, G) is not None:
                    return 'obstructed', F
            return 'maps', None
        for F in members:
            if find_hom(F, G) is not None:
                return 'covered', F
        return 'uncovered', None

    graphs = list(enumerate_digraphs(g_max, loops=True, unique=unique, settings=settings))
    uncovered = obstructed = 0
    checked = 0
    for G, (status, F) in zip(graphs, _ordered_map(classify, graphs, settings, 'completeness', len(graphs))):
        checked += 1
        if status == 'obstructed':
            obstructed += 1
            witnesses.append(
                Witness(
                    index=len(witnesses),
                    reason=f'{G.name} maps to {H.name or "H"} but family member {F.name} maps to it',
                    structure=serialize_structure(G),
                    partner=serialize_structure(F),
                )
            )
        elif status == 'uncovered':
            uncovered += 1
            witnesses.append(
                Witness(
                    index=len(witnesses),
                    reason=f'{G.name} does not map to {H.name or "H"} and no family member maps to it',
                    structure=serialize_structure(G),
                )
            )

    if unsound or obstructed:
        verdict = Verdict.COUNTEREXAMPLE
    elif uncovered:
        verdict = Verdict.INCONCLUSIVE
        logger.warning(f'{uncovered} digraphs not covered by {len(members)} family members')
    else:
        verdict = Verdict.VERIFIED
    logger.info(f'duality pair for {H!r}: {verdict.value} ({checked} digraphs, {len(members)} members)')
    return Report(
        campaign='duality-pair',
        verdict=verdict,
        checked_count=checked + len(members),
        witnesses=witnesses,
        parameters={
            'template': H.name,
            'g_max': g_max,
            'family_members': len(members),
            'family_size_max': family_size_max,
            'unique': unique,
            'recheck_family_vertices': settings.recheck_family_vertices,
        },
    )


def check_adjunction(
    forward: Transform,
    backward: Transform,
    samples: Sequence[tuple[RelationalStructure, RelationalStructure]],
    campaign: str = 'adjunction',
    parameters: dict | None = None,
    settings: Settings | None = None,
) -> Report:
    """Checks ``B -> forward(A)`` iff ``backward(B) -> A`` on every sample ``(B, A)``.

    Every disagreement becomes a counterexample witness holding ``B`` and,
    as partner, ``A``.
    """
    settings = resolve(settings)

    def compare(sample):
        B, A = sample
        left = find_hom(B, forward(A)) is not None
        right = find_hom(backward(B), A) is not None
        return left, right

    witnesses = []
    for i, (left, right) in enumerate(_ordered_map(compare, samples, settings, campaign, len(samples))):
        if left != right:
            B, A = samples[i]
            witnesses.append(
                Witness(
                    index=i,
                    reason=f'sample {i}: B -> forward(A) is {left}, backward(B) -> A is {right}',
                    structure=serialize_structure(B),
                    partner=serialize_structure(A),
                )
            )
    verdict = Verdict.COUNTEREXAMPLE if witnesses else Verdict.VERIFIED
    logger.info(f'{campaign}: {verdict.value} on {len(samples)} samples')
    return Report(
        campaign=campaign,
        verdict=verdict,
        checked_count=len(samples),
        witnesses=witnesses,
        parameters={'samples': len(samples), **(parameters or {})},
    )


def random_structure(
    vocab: Vocabulary, size: int, density: float, rng: np.random.Generator, name: str = ''
) -> RelationalStructure:
    """Each possible tuple of each relation is present independently with probability ``density``."""
    relations = {}
    for symbol, arity in vocab:
        candidates = list(cartesian(range(size), repeat=arity))
        keep = rng.random(len(candidates)) < density
        relations[symbol] = [t for t, k in zip(candidates, keep) if k]
    return RelationalStructure(vocab, size, relations, name=name)


def sample_pairs(
    b_vocab: Vocabulary,
    a_vocab: Vocabulary,
    count: int,
    max_size: int,
    seed: int = 0,
    min_density: float = 0.15,
    max_density: float = 0.6,
) -> list[tuple[RelationalStructure, RelationalStructure]]:
    """Seeded pairs ``(B, A)`` with sizes in ``1..max_size`` and a density drawn per structure."""
    rng = np.random.default_rng(seed)
    pairs = []
    for i in range(count):
        structures = []
        for vocab, label in ((b_vocab, 'B'), (a_vocab, 'A')):
            size = int(rng.integers(1, max_size + 1))
            density = float(rng.uniform(min_density, max_density))
            structures.append(random_structure(vocab, size, density, rng, name=f'{label}{i}'))
        pairs.append((structures[0], structures[1]))
    return pairs
