"""Claiming automata: FIFO claim order of one resource"""

from lsatsem.automata.base import Alphabet, Automaton
from lsatsem.builders.universe import InstanceUniverse
from lsatsem.models.events import Claim, EventLabel
from lsatsem.sequence.algebra import EPSILON, reduce_dispatching, seq_item
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


class ClaimingAutomaton(Automaton):
    """
    Single-path automaton whose state is the number of claims performed

    Count k stands for the length-k prefix of the reduced sequence; its only
    transition claims the resource for the (k+1)-th item.
    """

    def __init__(self, resource, seq, spec, universe):
        self.resource = resource
        self.reduced = reduce_dispatching(seq, resource, spec)
        self.name = f"claiming:{resource}"
        self.universe = universe
        self._users = frozenset(universe.activities_using(resource))

        core = [
            EventLabel(instance, Claim(resource))
            for activity in sorted(self._users)
            for instance in universe.instances(activity)
        ]
        self._alphabet = Alphabet(self._contains, core, finite=universe.is_finite)

    def _contains(self, event):
        return (
            event.is_claim
            and event.resource == self.resource
            and event.instance.activity in self._users
            and event.instance in self.universe
        )

    def next_claim(self, count):
        """Instance making claim number count+1, or None when the sequence is exhausted"""
        return seq_item(self.reduced, count + 1)

    def alphabet(self):
        return self._alphabet

    def initial_states(self):
        return [0]

    def successors(self, state):
        instance = self.next_claim(state)
        if instance is None:
            return []
        return [(EventLabel(instance, Claim(self.resource)), state + 1)]

    def step(self, state, event):
        instance = self.next_claim(state)
        if instance is not None and event == EventLabel(instance, Claim(self.resource)):
            return [state + 1]
        return []

    def state_key(self, state):
        if state == 0:
            return EPSILON
        return ' ; '.join(str(seq_item(self.reduced, k)) for k in range(1, state + 1))


def build_claiming(resource, seq, spec, universe=None):
    """
    Claiming automaton of a resource for a dispatching sequence

    Args:
        resource: Resource id
        seq: DispatchingSequence
        spec: Specification
        universe: Optional InstanceUniverse (derived from seq when omitted)

    Returns:
        ClaimingAutomaton starting at count 0
    """
    if universe is None:
        from lsatsem.services.validation_service import used_sets
        universe = InstanceUniverse.from_used_sets(spec, used_sets(spec, seq))
    automaton = ClaimingAutomaton(resource, seq, spec, universe)
    logger.debug(f"Built {automaton.name} for '{seq}' (reduced '{automaton.reduced}')")
    return automaton
