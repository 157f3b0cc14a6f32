"""Automaton contract for possibly infinite-state labeled transition systems"""

from abc import ABC, abstractmethod

from lsatsem.models.events import event_sort_key


class Alphabet:
    """
    Event alphabet given by a membership predicate and an enumerable core

    For finite alphabets the core is the whole alphabet. Infinite alphabets
    (events of unboundedly many activity instances) list only a bounded
    window of instances in the core; membership stays exact.
    """

    def __init__(self, contains, core=(), finite=True):
        self._contains = contains
        self.core = tuple(sorted(set(core), key=event_sort_key))
        self.finite = finite

    @classmethod
    def of(cls, events):
        events = frozenset(events)
        return cls(events.__contains__, events, finite=True)

    def __contains__(self, event):
        return self._contains(event)

    def __iter__(self):
        return iter(self.core)

    def __repr__(self):
        suffix = '' if self.finite else ', ...'
        return f"Alphabet({', '.join(str(e) for e in self.core)}{suffix})"


class Automaton(ABC):
    """
    A labeled transition system (states, alphabet, transitions, initial states)

    States are opaque hashable values. Any single state has finitely many
    successors even when the state set is infinite.
    """

    name = 'automaton'

    @abstractmethod
    def alphabet(self):
        """The Alphabet of this automaton"""

    @abstractmethod
    def initial_states(self):
        """Iterable of initial states"""

    @abstractmethod
    def successors(self, state):
        """Iterable of (EventLabel, state) pairs leaving `state`"""

    def step(self, state, event):
        """States reachable from `state` by exactly `event`"""
        return [target for label, target in self.successors(state) if label == event]

    def state_key(self, state):
        """Canonical printable key of a state"""
        return str(state)

    def ordered_initial_states(self):
        return sorted(set(self.initial_states()), key=self.state_key)

    def ordered_successors(self, state):
        """Successors without duplicates, sorted by event then target key"""
        unique = {}
        for event, target in self.successors(state):
            unique[(event, self.state_key(target))] = (event, target)
        return [unique[k] for k in sorted(unique, key=lambda k: (event_sort_key(k[0]), k[1]))]


class ExplicitAutomaton(Automaton):
    """
    Finite automaton given by explicit state, transition and initial sets

    Args:
        states: Iterable of states
        transitions: Iterable of (source, event, target)
        initial: Iterable of initial states
        alphabet: Optional Alphabet (defaults to the transition labels)
        name: Display name
        key: Optional function rendering state keys
    """

    def __init__(self, states, transitions, initial, alphabet=None, name='automaton', key=None):
        self.states = frozenset(states)
        self.transitions = frozenset(transitions)
        self.initial = frozenset(initial)
        self.name = name
        self._key = key or str
        self._alphabet = alphabet or Alphabet.of(event for _, event, _ in self.transitions)

        self._outgoing = {}
        for source, event, target in self.transitions:
            self._outgoing.setdefault(source, []).append((event, target))

    def alphabet(self):
        return self._alphabet

    def initial_states(self):
        return self.initial

    def successors(self, state):
        return self._outgoing.get(state, [])

    def step(self, state, event):
        return [target for label, target in self._outgoing.get(state, []) if label == event]

    def state_key(self, state):
        return self._key(state)
