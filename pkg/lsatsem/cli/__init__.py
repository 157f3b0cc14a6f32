"""Command-line package for the LSAT semantics toolkit"""

from lsatsem.cli.commands import (
    COMMANDS,
    ExitStatus,
    parse_pins,
    cmd_validate,
    cmd_explore,
    cmd_trace,
    cmd_dot,
    cmd_complete_check,
    cmd_stats,
)

# Define publicly available imports
__all__ = [
    'COMMANDS',
    'ExitStatus',
    'parse_pins',
    'cmd_validate',
    'cmd_explore',
    'cmd_trace',
    'cmd_dot',
    'cmd_complete_check',
    'cmd_stats',
]
