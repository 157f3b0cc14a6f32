"""Command handlers of the lsatsem command-line interface"""

import json
import sys
from enum import IntEnum

from lsatsem.automata.dot import export_dot
from lsatsem.automata.explore import bounded_explore
from lsatsem.automata.traces import first_rejection, parse_trace_text
from lsatsem.dsl.parser import parse_file
from lsatsem.sequence.algebra import parse_dispatching_sequence
from lsatsem.services.stats_service import spec_statistics
from lsatsem.services.validation_service import validate_spec
from lsatsem.system.builders import build_component
from lsatsem.system.completeness import check_complete, suggest_complete_set
from lsatsem.system.dispatch_fsa import DispatchFSA
from lsatsem.utils.errors import BudgetExceededError, InvalidSpecError, LsatError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


class ExitStatus(IntEnum):
    """Process exit codes"""
    OK = 0
    FINDINGS = 1
    USAGE = 2
    BUDGET = 3


def _out(line=''):
    print(line, file=sys.stdout)


def _err(line):
    print(line, file=sys.stderr)


def _report(diagnostics, file_name):
    for diagnostic in diagnostics:
        _err(diagnostic.format(file_name))


def _load(file_name, validate=True):
    """
    Parse (and validate) a specification file

    Returns:
        (Specification or None, ExitStatus)
    """
    try:
        result = parse_file(file_name)
    except OSError as e:
        logger.error(f"Cannot read '{file_name}': {e}")
        _err(f"error: cannot read '{file_name}': {e.strerror or e}")
        return None, ExitStatus.USAGE

    if result.diagnostics:
        _report(result.diagnostics, file_name)
        return None, ExitStatus.FINDINGS

    if validate:
        diagnostics = validate_spec(result.spec)
        if diagnostics:
            _report(diagnostics, file_name)
            return None, ExitStatus.FINDINGS
    return result.spec, ExitStatus.OK


def parse_pins(values):
    """
    Read `p=state` pinning flags

    Args:
        values: Iterable of `peripheral=state` strings (repeatable per peripheral)

    Returns:
        Map peripheral id -> set of allowed initial states

    Raises:
        ValueError: On a malformed flag
    """
    pins = {}
    for value in values or ():
        peripheral, sep, state = value.partition('=')
        if not sep or not peripheral.strip() or not state.strip():
            raise ValueError(f"Expected --initial p=state, got '{value}'")
        pins.setdefault(peripheral.strip(), set()).add(state.strip())
    return pins


def _component(spec, args):
    """Build the automaton selected by --component, honoring --initial pins"""
    pins = parse_pins(getattr(args, 'initial', None))
    return build_component(spec, getattr(args, 'component', 'system') or 'system', pins)


def _failure_status(error):
    """Exit status of an operation error raised while building or exploring"""
    if isinstance(error, BudgetExceededError):
        return ExitStatus.BUDGET
    if isinstance(error, InvalidSpecError):
        return ExitStatus.FINDINGS
    return ExitStatus.USAGE


def cmd_validate(args):
    """
    Check a specification file

    Prints one `code:file:line:col: message` line per diagnostic on standard
    error; exits 0 iff there are none.
    """
    spec, status = _load(args.file)
    if spec is not None:
        logger.info(f"'{args.file}' is valid")
    return status


def cmd_explore(args):
    """
    Explore an automaton of a specification up to a depth

    Prints the summary line (or JSON with --json) and optionally writes DOT.
    """
    spec, status = _load(args.file)
    if spec is None:
        return status

    try:
        automaton = _component(spec, args)
        graph = bounded_explore(automaton, depth=args.depth, max_states=args.max_states, strict=args.strict)
    except (LsatError, ValueError) as e:
        logger.error(f"Exploration failed: {e}")
        _err(f"error: {e}")
        return _failure_status(e)

    if args.dot:
        try:
            with open(args.dot, 'w', encoding='utf-8') as f:
                f.write(export_dot(graph))
        except OSError as e:
            logger.error(f"Cannot write '{args.dot}': {e}")
            _err(f"error: cannot write '{args.dot}': {e.strerror or e}")
            return ExitStatus.USAGE

    if args.json:
        _out(json.dumps(graph.to_dict(), sort_keys=True))
    else:
        _out(graph.summary())
    return ExitStatus.OK


def cmd_dot(args):
    """Explore like `explore` and print the DOT digraph"""
    spec, status = _load(args.file)
    if spec is None:
        return status

    try:
        automaton = _component(spec, args)
        graph = bounded_explore(automaton, depth=args.depth, max_states=args.max_states, strict=args.strict)
    except (LsatError, ValueError) as e:
        logger.error(f"DOT export failed: {e}")
        _err(f"error: {e}")
        return _failure_status(e)

    sys.stdout.write(export_dot(graph))
    return ExitStatus.OK


def cmd_trace(args):
    """
    Check whether a trace file is a trace of a specification's automaton

    Prints `accept`, or `reject at line N` with the trace-file line of the
    first event that cannot be taken.
    """
    spec, status = _load(args.file)
    if spec is None:
        return status

    try:
        with open(args.tracefile, encoding='utf-8') as f:
            events = parse_trace_text(f.read())
    except OSError as e:
        logger.error(f"Cannot read '{args.tracefile}': {e}")
        _err(f"error: cannot read '{args.tracefile}': {e.strerror or e}")
        return ExitStatus.USAGE
    except (UnicodeDecodeError, ValueError) as e:
        logger.error(f"Malformed trace file '{args.tracefile}': {e}")
        _err(f"error: {args.tracefile}: {e}")
        return ExitStatus.USAGE

    try:
        automaton = _component(spec, args)
        position = first_rejection(automaton, [event for _, event in events])
    except (LsatError, ValueError) as e:
        logger.error(f"Trace check failed: {e}")
        _err(f"error: {e}")
        return _failure_status(e)

    if position is None:
        _out('accept')
        return ExitStatus.OK
    line_no = events[position][0] if position < len(events) else 0
    _out(f"reject at line {line_no}")
    return ExitStatus.FINDINGS


def cmd_complete_check(args):
    """
    Bounded completeness check of dispatching sequences against the dispatch FSA

    Candidates come from --candidate flags; without any, a suggested set is
    computed from the FSA and printed first.
    """
    spec, status = _load(args.file)
    if spec is None:
        return status

    fsa = spec.dispatch
    if not isinstance(fsa, DispatchFSA):
        _err("error: complete-check needs a 'dispatch fsa' section")
        return ExitStatus.USAGE

    try:
        if args.candidate:
            candidates = [parse_dispatching_sequence(text) for text in args.candidate]
        else:
            candidates = sorted(suggest_complete_set(fsa, args.max_len), key=lambda s: s.render())
            for seq in candidates:
                _out(f"candidate: {seq.render()}")
        report = check_complete(fsa, candidates, args.depth)
    except (LsatError, ValueError) as e:
        logger.error(f"Completeness check failed: {e}")
        _err(f"error: {e}")
        return _failure_status(e)

    if args.json:
        _out(json.dumps(report.to_dict(), sort_keys=True))
    else:
        for line in report.lines():
            _out(line)
    return ExitStatus.OK if report.passed else ExitStatus.FINDINGS


def cmd_stats(args):
    """Print the per-activity statistics table (or JSON records with --json)"""
    spec, status = _load(args.file)
    if spec is None:
        return status

    df = spec_statistics(spec)
    if args.json:
        _out(df.to_json(orient='records'))
    elif df.empty:
        _out('no activities')
    else:
        _out(df.to_string(index=False))
    return ExitStatus.OK


COMMANDS = {
    'validate': cmd_validate,
    'explore': cmd_explore,
    'trace': cmd_trace,
    'dot': cmd_dot,
    'complete-check': cmd_complete_check,
    'stats': cmd_stats,
}
