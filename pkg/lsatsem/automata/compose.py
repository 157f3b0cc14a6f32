"""Synchronous composition of automata"""

import itertools

from lsatsem.automata.base import Alphabet, Automaton
from lsatsem.models.events import event_sort_key
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


class ComposedAutomaton(Automaton):
    """
    Lock-step product of automata

    A composite state is the tuple of part states. An event is enabled when
    every part whose alphabet contains it can take it; those parts move
    together and the others stay put.
    """

    def __init__(self, parts, name='product'):
        if not parts:
            raise ValueError("Synchronous composition needs at least one automaton")
        self.parts = tuple(parts)
        self.name = name
        self._alphabets = tuple(part.alphabet() for part in self.parts)

        core = set()
        for alphabet in self._alphabets:
            core.update(alphabet.core)
        self._alphabet = Alphabet(
            lambda event: any(event in alphabet for alphabet in self._alphabets),
            core,
            finite=all(alphabet.finite for alphabet in self._alphabets),
        )

    def alphabet(self):
        return self._alphabet

    def initial_states(self):
        return itertools.product(*(part.ordered_initial_states() for part in self.parts))

    def _moves(self, state, event):
        """Per-part next-state options for `event`, or None if some part blocks it"""
        options = []
        for part, alphabet, local in zip(self.parts, self._alphabets, state):
            if event in alphabet:
                targets = part.step(local, event)
                if not targets:
                    return None
                options.append(targets)
            else:
                options.append([local])
        return options

    def successors(self, state):
        candidates = set()
        for part, local in zip(self.parts, state):
            candidates.update(event for event, _ in part.successors(local))

        result = []
        for event in sorted(candidates, key=event_sort_key):
            options = self._moves(state, event)
            if options is None:
                continue
            result.extend((event, target) for target in itertools.product(*options))
        return result

    def step(self, state, event):
        if event not in self._alphabet:
            return []
        options = self._moves(state, event)
        if options is None:
            return []
        return list(itertools.product(*options))

    def state_key(self, state):
        return '(' + ', '.join(part.state_key(local) for part, local in zip(self.parts, state)) + ')'


def sync_compose(parts, name='product'):
    """
    Synchronous composition of a nonempty list of automata

    Args:
        parts: Automata to compose
        name: Display name of the product

    Returns:
        ComposedAutomaton
    """
    logger.debug(f"Composing {len(parts)} automata into '{name}'")
    return ComposedAutomaton(parts, name=name)
