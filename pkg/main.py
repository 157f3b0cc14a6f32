"""Application entry point for the LSAT semantics toolkit"""

import sys
import argparse
import traceback

from config import settings
from lsatsem.cli.commands import COMMANDS, ExitStatus
from lsatsem.utils.logging_utils import setup_logging, get_logger


def _add_exploration_flags(parser):
    parser.add_argument('--depth', type=int, default=settings.EXPLORE_DEPTH, help='Maximum number of events from an initial state')
    parser.add_argument('--max-states', type=int, default=settings.EXPLORE_MAX_STATES, help='State budget')
    parser.add_argument('--strict', action='store_true', help='Fail with exit 3 instead of truncating')
    parser.add_argument('--component', default='system',
                        help='system, availability:R, claiming:R, activity:Act#j or peripheral:p')
    parser.add_argument('--initial', action='append', default=[], metavar='P=STATE',
                        help='Pin the initial state of a peripheral (repeatable)')


def parse_args(argv=None):
    """Parse command line arguments"""
    parser = argparse.ArgumentParser(prog='lsatsem', description="LSAT specification semantics toolkit")
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging on standard error')
    parser.add_argument('--seed', type=int, default=None, help='Reserved; no command is randomized')

    # Create subparsers for different commands
    subparsers = parser.add_subparsers(dest='command', required=True, help='Command to run')

    validate_parser = subparsers.add_parser('validate', help='Check a specification file')
    validate_parser.add_argument('file')

    explore_parser = subparsers.add_parser('explore', help='Bounded exploration summary')
    explore_parser.add_argument('file')
    _add_exploration_flags(explore_parser)
    explore_parser.add_argument('--dot', default=None, metavar='OUT', help='Also write the explored graph as DOT')
    explore_parser.add_argument('--json', action='store_true', help='Print the summary as JSON')

    trace_parser = subparsers.add_parser('trace', help='Check a trace file against a specification')
    trace_parser.add_argument('file')
    trace_parser.add_argument('tracefile')
    trace_parser.add_argument('--component', default='system')
    trace_parser.add_argument('--initial', action='append', default=[], metavar='P=STATE')

    dot_parser = subparsers.add_parser('dot', help='Print the explored graph as DOT')
    dot_parser.add_argument('file')
    _add_exploration_flags(dot_parser)

    complete_parser = subparsers.add_parser('complete-check', help='Check dispatching sequences against the dispatch FSA')
    complete_parser.add_argument('file')
    complete_parser.add_argument('--candidate', action='append', default=[], metavar='SEQ',
                                 help="Candidate sequence such as 'A ; (B ; C)^w' (repeatable)")
    complete_parser.add_argument('--max-len', type=int, default=4, help='Lasso length bound of suggested candidates')
    complete_parser.add_argument('--depth', type=int, default=8, help='Word length bound of the check')
    complete_parser.add_argument('--json', action='store_true', help='Print the report as JSON')

    stats_parser = subparsers.add_parser('stats', help='Per-activity statistics')
    stats_parser.add_argument('file')
    stats_parser.add_argument('--json', action='store_true', help='Print records as JSON')

    return parser.parse_args(argv)


def main(argv=None):
    """
    Main function to run the application

    Returns:
        ExitStatus of the command
    """
    try:
        args = parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors and 0 on --help
        return int(e.code or 0)

    # Initialize logging
    setup_logging('DEBUG' if args.verbose else None)
    logger = get_logger(__name__)
    logger.debug(f"Running command '{args.command}'")

    try:
        return int(COMMANDS[args.command](args))
    except Exception as e:
        logger.error(f"Error in command '{args.command}': {str(e)}")
        logger.error(traceback.format_exc())
        print(f"Error: {str(e)}", file=sys.stderr)
        return int(ExitStatus.USAGE)


if __name__ == "__main__":
    sys.exit(main())
