from __future__ import annotations

import json
from enum import Enum
from typing import Any

from pydantic import BaseModel, Field

from ..structures import RelationalStructure


class Verdict(str, Enum):
    VERIFIED = 'verified'
    COUNTEREXAMPLE = 'counterexample'
    INCONCLUSIVE = 'inconclusive'


class Witness(BaseModel):
    """A structure (or a pair of them) backing a verdict, stored as StructureFile text."""

    index: int
    reason: str
    structure: str
    partner: str | None = None

    def load(self) -> RelationalStructure:
        from ..schema.structure_file import parse_structure

        return parse_structure(self.structure)

    def load_partner(self) -> RelationalStructure | None:
        from ..schema.structure_file import parse_structure

        return None if self.partner is None else parse_structure(self.partner)


class Report(BaseModel):
    campaign: str
    verdict: Verdict
    checked_count: int = 0
    witnesses: list[Witness] = Field(default_factory=list)
    parameters: dict[str, Any] = Field(default_factory=dict)

    def render_text(self) -> str:
        lines = [self.verdict.value, f'campaign: {self.campaign}', f'checked: {self.checked_count}']
        if self.parameters:
            rendered = ' '.join(f'{key}={value}' for key, value in self.parameters.items())
            lines.append(f'parameters: {rendered}')
        for witness in self.witnesses:
            lines.append(f'# witness {witness.index}: {witness.reason}')
            lines.append(witness.structure.rstrip('\n'))
            if witness.partner is not None:
                lines.append(witness.partner.rstrip('\n'))
        return '\n'.join(lines) + '\n'

    def records(self) -> list[str]:
        """One JSON line per witness, each carrying the campaign and verdict."""
        return [
            json.dumps(
                {'campaign': self.campaign, 'verdict': self.verdict.value, **witness.model_dump()},
                sort_keys=True,
            )
            for witness in self.witnesses
        ]
