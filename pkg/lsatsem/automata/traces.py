"""Trace membership, bounded languages and language comparison"""

import re
from collections import deque

from config import settings
from lsatsem.models.events import decode_event, event_sort_key
from lsatsem.utils.errors import BudgetExceededError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)

# '#' opens a comment at line start or after whitespace; inside `Act#1` it does not
_COMMENT = re.compile(r'(^|\s)#.*$')


def parse_trace_text(text):
    """
    Read a trace file: one event per line, comments and blank lines ignored

    Args:
        text: Trace file contents

    Returns:
        List of (line number, EventLabel)

    Raises:
        ValueError: On a malformed event, with the line number in the message
    """
    events = []
    for line_no, raw in enumerate(text.split('\n'), start=1):
        line = _COMMENT.sub('', raw).strip()
        if not line:
            continue
        try:
            events.append((line_no, decode_event(line)))
        except ValueError as e:
            raise ValueError(f"line {line_no}: {e}") from e
    return events


def _advance(automaton, states, event):
    by_key = {}
    for state in states:
        for target in automaton.step(state, event):
            by_key.setdefault(automaton.state_key(target), target)
    return set(by_key.values())


def first_rejection(automaton, trace):
    """
    Index of the first event no current state can take

    Runs all nondeterministic branches at once (set-of-states simulation).

    Args:
        automaton: Automaton
        trace: Sequence of EventLabel

    Returns:
        0-based index of the rejected event, or None if the trace is accepted
    """
    states = set(automaton.initial_states())
    if not states:
        return 0
    for position, event in enumerate(trace):
        states = _advance(automaton, states, event)
        if not states:
            return position
    return None


def accepts_trace(automaton, trace):
    """True iff some initial state executes the whole trace"""
    if not set(automaton.initial_states()):
        return False
    return first_rejection(automaton, trace) is None


def _macro_successors(automaton, states):
    """Map event -> states reachable from the macro-state `states` by that event"""
    moves = {}
    for state in states:
        for event, target in automaton.successors(state):
            moves.setdefault(event, {})[automaton.state_key(target)] = target
    return {event: frozenset(targets.values()) for event, targets in moves.items()}


def bounded_language(automaton, depth, max_traces=None):
    """
    All traces of length <= depth

    Returns:
        frozenset of tuples of EventLabel (the empty trace included when
        there are initial states)

    Raises:
        BudgetExceededError: If more than max_traces traces are found
    """
    max_traces = getattr(settings, 'LANGUAGE_MAX_PAIRS', 200000) if max_traces is None else max_traces
    initial = frozenset(automaton.initial_states())
    if not initial:
        return frozenset()

    language = {()}
    level = {(): initial}
    for _ in range(depth):
        following = {}
        for trace, states in level.items():
            for event, targets in _macro_successors(automaton, states).items():
                following[trace + (event,)] = targets
        if not following:
            break
        language.update(following)
        if len(language) > max_traces:
            logger.error(f"Language of '{automaton.name}' exceeds {max_traces} traces")
            raise BudgetExceededError(f"Language exceeds {max_traces} traces", max_traces=max_traces)
        level = following
    return frozenset(language)


def _macro_key(automaton, states):
    return frozenset(automaton.state_key(state) for state in states)


def bounded_language_equal(a, b, depth, max_pairs=None):
    """
    Compare the sets of traces of length <= depth of two automata

    Explores pairs of macro-states breadth first, so the first mismatch gives
    a shortest distinguishing trace.

    Returns:
        (True, None) when equal, otherwise (False, counterexample trace)

    Raises:
        BudgetExceededError: If more than max_pairs macro-state pairs are visited
    """
    max_pairs = getattr(settings, 'LANGUAGE_MAX_PAIRS', 200000) if max_pairs is None else max_pairs
    initial_a = frozenset(a.initial_states())
    initial_b = frozenset(b.initial_states())
    if bool(initial_a) != bool(initial_b):
        return False, []
    if not initial_a:
        return True, None

    start = (_macro_key(a, initial_a), _macro_key(b, initial_b))
    seen = {start}
    queue = deque([(initial_a, initial_b, ())])

    while queue:
        states_a, states_b, trace = queue.popleft()
        if len(trace) >= depth:
            continue

        moves_a = _macro_successors(a, states_a)
        moves_b = _macro_successors(b, states_b)
        difference = set(moves_a) ^ set(moves_b)
        if difference:
            witness = min(difference, key=event_sort_key)
            logger.debug(f"Languages differ after {len(trace)} events at {witness}")
            return False, list(trace) + [witness]

        for event in sorted(moves_a, key=event_sort_key):
            next_a, next_b = moves_a[event], moves_b[event]
            key = (_macro_key(a, next_a), _macro_key(b, next_b))
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > max_pairs:
                logger.error(f"Language comparison exceeded {max_pairs} state pairs")
                raise BudgetExceededError(f"Language comparison exceeded {max_pairs} state pairs", max_pairs=max_pairs)
            queue.append((next_a, next_b, trace + (event,)))

    return True, None
