"""LSAT semantics toolkit: specifications compiled into their automata semantics"""

# Import key components from subpackages for easy access
from lsatsem.dsl import parse, parse_file, pretty_print
from lsatsem.services import validate_spec, used_sets, movement_duration, timing_mean, spec_statistics
from lsatsem.automata import (
    sync_compose,
    bounded_explore,
    accepts_trace,
    bounded_language_equal,
    export_dot,
)
from lsatsem.builders import build_availability, build_claiming, build_activity_automaton, build_peripheral
from lsatsem.system import DispatchFSA, build_mseq, build_mSeq, check_complete, suggest_complete_set
from lsatsem.utils.logging_utils import setup_logging, get_logger

__version__ = '0.1.0'

# Initialize logging for the package
logger = get_logger(__name__)

# Define publicly available imports
__all__ = [
    # DSL
    'parse',
    'parse_file',
    'pretty_print',

    # Core model services
    'validate_spec',
    'used_sets',
    'movement_duration',
    'timing_mean',
    'spec_statistics',

    # Automata
    'sync_compose',
    'bounded_explore',
    'accepts_trace',
    'bounded_language_equal',
    'export_dot',

    # Component and system automata
    'build_availability',
    'build_claiming',
    'build_activity_automaton',
    'build_peripheral',
    'DispatchFSA',
    'build_mseq',
    'build_mSeq',
    'check_complete',
    'suggest_complete_set',

    'setup_logging',
]
