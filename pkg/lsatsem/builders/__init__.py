"""Builders package initialization for the LSAT semantics toolkit"""

from lsatsem.builders.universe import InstanceUniverse
from lsatsem.builders.availability import AvailabilityState, AvailabilityAutomaton, build_availability
from lsatsem.builders.claiming import ClaimingAutomaton, build_claiming
from lsatsem.builders.activity import (
    postset_key,
    node_event,
    enumerate_postsets,
    build_activity_automaton,
)
from lsatsem.builders.peripheral import PeripheralAutomaton, build_peripheral, used_actions

# Define publicly available imports
__all__ = [
    'InstanceUniverse',

    # Availability automata
    'AvailabilityState',
    'AvailabilityAutomaton',
    'build_availability',

    # Claiming automata
    'ClaimingAutomaton',
    'build_claiming',

    # Activity automata
    'postset_key',
    'node_event',
    'enumerate_postsets',
    'build_activity_automaton',

    # Peripheral automata
    'PeripheralAutomaton',
    'build_peripheral',
    'used_actions',
]
