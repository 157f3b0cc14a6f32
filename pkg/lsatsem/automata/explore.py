"""Bounded breadth-first exploration of automata"""

from collections import deque
from dataclasses import dataclass, field

from config import settings
from lsatsem.utils.errors import BudgetExceededError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


@dataclass
class ExploredGraph:
    """
    Finite window onto an automaton

    `states` holds state keys in discovery order; transitions are
    (source index, EventLabel, target index). Frontier states have successors
    that were not expanded.
    """
    states: list = field(default_factory=list)
    transitions: list = field(default_factory=list)
    initial: frozenset = frozenset()
    frontier: frozenset = frozenset()
    truncated: bool = False
    depth: int = 0
    name: str = 'automaton'
    objects: list = field(default_factory=list, repr=False, compare=False)

    def terminal_states(self):
        """Indices of states with no outgoing transition that are not on the frontier"""
        sources = {source for source, _, _ in self.transitions}
        return sorted(i for i in range(len(self.states)) if i not in sources and i not in self.frontier)

    def summary(self):
        return (
            f"states={len(self.states)} transitions={len(self.transitions)} "
            f"frontier={len(self.frontier)} depth={self.depth}"
        )

    def to_dict(self):
        return {
            'states': len(self.states),
            'transitions': len(self.transitions),
            'frontier': len(self.frontier),
            'depth': self.depth,
            'truncated': self.truncated,
        }


def bounded_explore(automaton, depth=None, max_states=None, strict=False):
    """
    Breadth-first closure of the initial states up to a transition depth

    States at the depth limit are not expanded and count as frontier when
    they have successors. If adding a state's successors would exceed
    `max_states`, that state and every queued state become frontier and the
    graph is marked truncated.

    Args:
        automaton: Automaton to explore
        depth: Maximum number of transitions from an initial state
        max_states: State budget
        strict: Raise instead of truncating when the budget is exceeded

    Returns:
        ExploredGraph

    Raises:
        BudgetExceededError: If strict and the budget is exceeded
    """
    depth = getattr(settings, 'EXPLORE_DEPTH', 10) if depth is None else depth
    max_states = getattr(settings, 'EXPLORE_MAX_STATES', 100000) if max_states is None else max_states
    if depth < 0:
        raise ValueError(f"Exploration depth must be >= 0, got {depth}")

    graph = ExploredGraph(depth=depth, name=getattr(automaton, 'name', 'automaton'))
    index = {}
    frontier = set()
    queue = deque()

    def add_state(state):
        key = automaton.state_key(state)
        if key not in index:
            index[key] = len(graph.states)
            graph.states.append(key)
            graph.objects.append(state)
            return index[key], True
        return index[key], False

    initial = automaton.ordered_initial_states()
    if len(initial) > max_states:
        if strict:
            logger.error(f"{len(initial)} initial states exceed the budget of {max_states}")
            raise BudgetExceededError(f"{len(initial)} initial states exceed the budget of {max_states}")
        initial = initial[:max_states]
        graph.truncated = True

    initial_indices = set()
    for state in initial:
        i, created = add_state(state)
        initial_indices.add(i)
        if created:
            queue.append((i, 0))
    graph.initial = frozenset(initial_indices)

    while queue:
        i, level = queue.popleft()
        state = graph.objects[i]
        successors = automaton.ordered_successors(state)

        if level >= depth:
            if successors:
                frontier.add(i)
            continue

        fresh = {automaton.state_key(target) for _, target in successors} - index.keys()
        if len(graph.states) + len(fresh) > max_states:
            if strict:
                logger.error(f"Exploration of '{graph.name}' exceeded the budget of {max_states} states")
                raise BudgetExceededError(f"Exploration exceeded {max_states} states", max_states=max_states)
            frontier.add(i)
            frontier.update(j for j, _ in queue)
            graph.truncated = True
            break

        for event, target in successors:
            j, created = add_state(target)
            graph.transitions.append((i, event, j))
            if created:
                queue.append((j, level + 1))

    if graph.truncated:
        logger.warning(f"Exploration of '{graph.name}' truncated at {len(graph.states)} states")
    graph.frontier = frozenset(frontier)
    logger.info(f"Explored '{graph.name}': {graph.summary()}")
    return graph
