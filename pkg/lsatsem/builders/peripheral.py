"""Peripheral automata: last executed action or current position"""

from lsatsem.automata.base import Alphabet, Automaton
from lsatsem.models.events import Do, EventLabel
from lsatsem.models.specification import ActionNode, Movable
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


def used_actions(peripheral_id, universe):
    """Map activity id -> actions of `peripheral_id` its nodes perform (used activities only)"""
    used = {}
    for activity_id in sorted(universe.activities):
        activity = universe.spec.activities[activity_id]
        for kind in activity.nodes.values():
            if isinstance(kind, ActionNode) and kind.peripheral == peripheral_id:
                used.setdefault(activity_id, set()).add(kind.action)
    return {act: frozenset(actions) for act, actions in used.items()}


class PeripheralAutomaton(Automaton):
    """
    Automaton of one peripheral; every state is initial

    An unmovable peripheral's state is the last action it executed and every
    action is possible from every state. A movable peripheral's state is its
    position and a movement is only possible from its source position.

    Args:
        peripheral: Peripheral
        universe: InstanceUniverse of the dispatch
        initial: Optional subset of states to start from (pinning)
    """

    def __init__(self, peripheral, universe, initial=None):
        self.peripheral = peripheral
        self.universe = universe
        self.name = f"peripheral:{peripheral.id}"
        self._used = used_actions(peripheral.id, universe)
        self._actions = frozenset().union(*self._used.values()) if self._used else frozenset()

        if isinstance(peripheral.kind, Movable):
            moves = peripheral.kind.moves
            self._moves = {a: moves[a] for a in self._actions if a in moves}
            self.states = frozenset(m.source for m in self._moves.values()) | frozenset(m.target for m in self._moves.values())
        else:
            self._moves = None
            self.states = self._actions

        if initial is not None:
            unknown = set(initial) - self.states
            if unknown:
                raise ValueError(f"Unknown states {sorted(unknown)} for peripheral '{peripheral.id}'")
            self._initial = frozenset(initial)
        else:
            self._initial = self.states

        core = [
            EventLabel(instance, Do(action, peripheral.id))
            for activity_id, actions in sorted(self._used.items())
            for instance in universe.instances(activity_id)
            for action in sorted(actions)
        ]
        self._alphabet = Alphabet(self._contains, core, finite=universe.is_finite)

    @property
    def is_movable(self):
        return self._moves is not None

    def _contains(self, event):
        return (
            event.is_action
            and event.payload.peripheral == self.peripheral.id
            and event.payload.action in self._used.get(event.instance.activity, ())
            and event.instance in self.universe
        )

    def target(self, state, action):
        """State after `action` from `state`, or None if impossible"""
        if state not in self.states or action not in self._actions:
            return None
        if self._moves is None:
            return action
        movement = self._moves.get(action)
        if movement is None or movement.source != state:
            return None
        return movement.target

    def alphabet(self):
        return self._alphabet

    def initial_states(self):
        return sorted(self._initial)

    def successors(self, state):
        result = []
        for event in self._alphabet.core:
            following = self.target(state, event.payload.action)
            if following is not None:
                result.append((event, following))
        return result

    def step(self, state, event):
        if event not in self._alphabet:
            return []
        following = self.target(state, event.payload.action)
        return [] if following is None else [following]


def build_peripheral(peripheral, universe, initial=None):
    """
    Peripheral automaton restricted to the actions used by the dispatch

    Returns:
        PeripheralAutomaton
    """
    automaton = PeripheralAutomaton(peripheral, universe, initial)
    logger.debug(f"Built {automaton.name}: {len(automaton.states)} states")
    return automaton
