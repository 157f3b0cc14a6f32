"""Automata package initialization for the LSAT semantics toolkit"""

from lsatsem.automata.base import Alphabet, Automaton, ExplicitAutomaton
from lsatsem.automata.compose import ComposedAutomaton, sync_compose
from lsatsem.automata.explore import ExploredGraph, bounded_explore
from lsatsem.automata.traces import (
    parse_trace_text,
    first_rejection,
    accepts_trace,
    bounded_language,
    bounded_language_equal,
)
from lsatsem.automata.dot import export_dot

# Define publicly available imports
__all__ = [
    # Automaton contract
    'Alphabet',
    'Automaton',
    'ExplicitAutomaton',

    # Composition and exploration
    'ComposedAutomaton',
    'sync_compose',
    'ExploredGraph',
    'bounded_explore',

    # Traces and languages
    'parse_trace_text',
    'first_rejection',
    'accepts_trace',
    'bounded_language',
    'bounded_language_equal',

    # Export
    'export_dot',
]
