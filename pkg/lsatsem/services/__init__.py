"""Services package initialization for the LSAT semantics toolkit"""

from lsatsem.services.validation_service import UsedSets, validate_spec, require_valid, used_sets
from lsatsem.services.timing_service import movement_duration, timing_mean, action_duration
from lsatsem.services.stats_service import StatsService, spec_statistics

# Define publicly available imports
__all__ = [
    # Validation
    'UsedSets',
    'validate_spec',
    'require_valid',
    'used_sets',

    # Timing
    'movement_duration',
    'timing_mean',
    'action_duration',

    # Statistics
    'StatsService',
    'spec_statistics',
]
