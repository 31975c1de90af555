from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class DismantleResult(BaseModel):
    success: bool
    sequence: list[int] = Field(default_factory=list)
    target: list[int] = Field(default_factory=list)
    method: Literal['greedy', 'exhaustive', 'greedy+exhaustive', 'abandoned'] = 'greedy'


class HeightDecision(BaseModel):
    """Outcome of the bounded-height tree duality decision.

    ``condition`` names what produced the verdict: reachability between the
    projections in the exponential digraph, or a homomorphism from a crushed
    cylinder.
    """

    verdict: Literal['yes', 'no', 'inconclusive']
    condition: Literal['exponential-reachability', 'crushed-cylinder']
    witness_n: int | None = None
    path_length: int | None = None
    n_max: int | None = None
    assumptions: list[str] = Field(default_factory=list)


class TreeDualityCheck(BaseModel):
    holds: bool
    power_set_size: int
    power_set_tuples: int
    search_nodes: int
