"""Utilities package initialization for the LSAT semantics toolkit"""

from lsatsem.utils.logging_utils import get_logger, setup_logging
from lsatsem.utils.errors import (
    LsatError,
    UnknownReferenceError,
    UnsupportedProfileError,
    NegativePowerError,
    SequenceIndexError,
    BudgetExceededError,
    TooLargeError,
    EmptyFSAError,
    InvalidSpecError,
)

# Define publicly available imports
__all__ = [
    # Logging utilities
    'get_logger',
    'setup_logging',

    # Errors
    'LsatError',
    'UnknownReferenceError',
    'UnsupportedProfileError',
    'NegativePowerError',
    'SequenceIndexError',
    'BudgetExceededError',
    'TooLargeError',
    'EmptyFSAError',
    'InvalidSpecError',
]
