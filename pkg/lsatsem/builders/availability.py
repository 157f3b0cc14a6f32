"""Availability automata: claim/release alternation of one resource"""

from enum import Enum

from lsatsem.automata.base import Alphabet, Automaton
from lsatsem.models.events import Claim, EventLabel, Release
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


class AvailabilityState(str, Enum):
    RELEASED = 'released'
    CLAIMED = 'claimed'


class AvailabilityAutomaton(Automaton):
    """Two-state automaton: released -claim-> claimed -release-> released"""

    def __init__(self, resource, universe):
        self.resource = resource
        self.universe = universe
        self.name = f"availability:{resource}"
        self._users = frozenset(universe.activities_using(resource))

        core = []
        for activity in sorted(self._users):
            for instance in universe.instances(activity):
                core.append(EventLabel(instance, Claim(resource)))
                core.append(EventLabel(instance, Release(resource)))
        self._alphabet = Alphabet(self._contains, core, finite=universe.is_finite)

    def _contains(self, event):
        return (
            (event.is_claim or event.is_release)
            and event.resource == self.resource
            and event.instance.activity in self._users
            and event.instance in self.universe
        )

    def alphabet(self):
        return self._alphabet

    def initial_states(self):
        return [AvailabilityState.RELEASED]

    def successors(self, state):
        wanted = Claim if state == AvailabilityState.RELEASED else Release
        target = AvailabilityState.CLAIMED if wanted is Claim else AvailabilityState.RELEASED
        return [(event, target) for event in self._alphabet.core if isinstance(event.payload, wanted)]

    def step(self, state, event):
        if event not in self._alphabet:
            return []
        if state == AvailabilityState.RELEASED and event.is_claim:
            return [AvailabilityState.CLAIMED]
        if state == AvailabilityState.CLAIMED and event.is_release:
            return [AvailabilityState.RELEASED]
        return []

    def state_key(self, state):
        return state.value


def build_availability(resource, universe):
    """
    Availability automaton of a resource

    Args:
        resource: Resource id
        universe: InstanceUniverse of the dispatch

    Returns:
        AvailabilityAutomaton, initially released
    """
    automaton = AvailabilityAutomaton(resource, universe)
    logger.debug(f"Built {automaton.name} over {universe!r}")
    return automaton
