"""Models package initialization for the LSAT semantics toolkit"""

from lsatsem.models.specification import (
    Deterministic,
    Normal,
    Triangular,
    Pert,
    SecondOrder,
    ThirdOrder,
    Movement,
    Unmovable,
    Movable,
    Peripheral,
    ClaimNode,
    ReleaseNode,
    ActionNode,
    Activity,
    Specification,
)
from lsatsem.models.events import (
    ActivityInstance,
    Claim,
    Release,
    Do,
    EventLabel,
    claim,
    release,
    do,
    decode_event,
    event_sort_key,
)
from lsatsem.models.diagnostics import SourceSpan, Diagnostic

# Define publicly available imports
__all__ = [
    # Specification model
    'Deterministic',
    'Normal',
    'Triangular',
    'Pert',
    'SecondOrder',
    'ThirdOrder',
    'Movement',
    'Unmovable',
    'Movable',
    'Peripheral',
    'ClaimNode',
    'ReleaseNode',
    'ActionNode',
    'Activity',
    'Specification',

    # Events
    'ActivityInstance',
    'Claim',
    'Release',
    'Do',
    'EventLabel',
    'claim',
    'release',
    'do',
    'decode_event',
    'event_sort_key',

    # Diagnostics
    'SourceSpan',
    'Diagnostic',
]
