"""System package initialization for the LSAT semantics toolkit"""

from lsatsem.system.dispatch_fsa import DispatchFSA
from lsatsem.system.product import (
    DispatchCursor,
    SystemState,
    SystemAutomaton,
    SequenceSystem,
    UnionSystem,
)
from lsatsem.system.builders import (
    build_mseq,
    build_mSeq,
    build_mseq_explicit,
    component_automata,
    build_component,
)
from lsatsem.system.completeness import CompletenessReport, check_complete, suggest_complete_set

# Define publicly available imports
__all__ = [
    'DispatchFSA',

    # Full-system automata
    'DispatchCursor',
    'SystemState',
    'SystemAutomaton',
    'SequenceSystem',
    'UnionSystem',
    'build_mseq',
    'build_mSeq',
    'build_mseq_explicit',
    'component_automata',
    'build_component',

    # Completeness
    'CompletenessReport',
    'check_complete',
    'suggest_complete_set',
]
