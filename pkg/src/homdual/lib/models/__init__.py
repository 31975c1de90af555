from .decisions import DismantleResult, HeightDecision, TreeDualityCheck
from .report import Report, Verdict, Witness

__all__ = [
    'DismantleResult',
    'HeightDecision',
    'Report',
    'TreeDualityCheck',
    'Verdict',
    'Witness',
]
