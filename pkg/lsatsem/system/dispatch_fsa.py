"""Dispatch FSAs: finite automata over activity names"""

from dataclasses import dataclass

import networkx as nx


@dataclass(frozen=True)
class DispatchFSA:
    """
    Finite automaton whose words are allowed dispatch orders

    Every state accepts, so the language is prefix-closed.
    """
    states: frozenset = frozenset()
    transitions: frozenset = frozenset()
    initial: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'states', frozenset(self.states))
        object.__setattr__(self, 'transitions', frozenset(tuple(t) for t in self.transitions))
        object.__setattr__(self, 'initial', frozenset(self.initial))

    @property
    def labels(self):
        return frozenset(label for _, label, _ in self.transitions)

    def outgoing(self, state):
        """Sorted (label, target) pairs leaving `state`"""
        return sorted((label, target) for source, label, target in self.transitions if source == state)

    def words(self, depth):
        """
        Words of length <= depth

        Returns:
            dict mapping each word (tuple of activity ids) to the frozenset of
            states it can end in
        """
        if not self.initial:
            return {}
        words = {(): self.initial}
        level = {(): self.initial}
        for _ in range(depth):
            following = {}
            for word, states in level.items():
                for state in states:
                    for label, target in self.outgoing(state):
                        following.setdefault(word + (label,), set()).add(target)
            if not following:
                break
            level = {word: frozenset(states) for word, states in following.items()}
            words.update(level)
        return words

    def graph(self):
        """
        State graph as a networkx DiGraph; edge attribute `labels` holds the
        set of activities between two states
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(self.states | self.initial))
        for source, label, target in sorted(self.transitions):
            if graph.has_edge(source, target):
                graph[source][target]['labels'].add(label)
            else:
                graph.add_edge(source, target, labels={label})
        return graph

    def render(self):
        """Text form used by the DSL: `states {..} initial .. edge s -A-> t`"""
        parts = ['states { ' + ', '.join(sorted(self.states)) + ' }'] if self.states else ['states { }']
        if self.initial:
            parts.append('initial ' + ', '.join(sorted(self.initial)))
        for source, label, target in sorted(self.transitions):
            parts.append(f"edge {source} -{label}-> {target}")
        return parts
