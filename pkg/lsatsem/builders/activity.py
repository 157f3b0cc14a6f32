"""Postset enumeration and activity-instance automata"""

from collections import deque

from config import settings
from lsatsem.automata.base import Alphabet, ExplicitAutomaton
from lsatsem.models.events import Claim, Do, EventLabel, Release
from lsatsem.models.specification import ActionNode, ClaimNode, ReleaseNode
from lsatsem.utils.errors import TooLargeError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


def postset_key(postset):
    """Render a postset as `{n1,n2}`"""
    return '{' + ','.join(sorted(postset)) + '}'


def node_event(instance, kind):
    """Event produced when an instance executes a node of the given kind"""
    if isinstance(kind, ClaimNode):
        return EventLabel(instance, Claim(kind.resource))
    if isinstance(kind, ReleaseNode):
        return EventLabel(instance, Release(kind.resource))
    if isinstance(kind, ActionNode):
        return EventLabel(instance, Do(kind.action, kind.peripheral))
    raise TypeError(f"Unknown node kind {kind!r}")


def enumerate_postsets(activity, cap=None):
    """
    All postsets of an activity's nodes

    A postset is a set of remaining nodes such that every removed node has
    all of its predecessors removed. Both the full node set and the empty set
    are postsets.

    Args:
        activity: Activity
        cap: Maximum number of postsets (settings.POSTSET_CAP by default)

    Returns:
        frozenset of frozensets of node ids

    Raises:
        TooLargeError: If there are more than `cap` postsets
    """
    cap = getattr(settings, 'POSTSET_CAP', 1000000) if cap is None else cap
    start = frozenset(activity.nodes)
    seen = {start}
    queue = deque([start])

    while queue:
        remaining = queue.popleft()
        for node in activity.enabled_nodes(remaining):
            following = remaining - {node}
            if following in seen:
                continue
            seen.add(following)
            if len(seen) > cap:
                logger.error(f"Activity '{activity.id}' has more than {cap} postsets")
                raise TooLargeError(f"Activity '{activity.id}' has more than {cap} postsets", cap=cap)
            queue.append(following)

    return frozenset(seen)


def build_activity_automaton(instance, activity, cap=None):
    """
    Automaton tracking the progress of one activity instance

    States are postsets, starting from the full node set; each transition
    removes one enabled node and is labeled with that node's event.

    Args:
        instance: ActivityInstance
        activity: Activity
        cap: Postset cap

    Returns:
        ExplicitAutomaton

    Raises:
        TooLargeError: If the postset count exceeds the cap
    """
    postsets = enumerate_postsets(activity, cap)

    transitions = []
    for remaining in postsets:
        for node in activity.enabled_nodes(remaining):
            transitions.append((remaining, node_event(instance, activity.nodes[node]), remaining - {node}))

    events = [node_event(instance, kind) for kind in activity.nodes.values()]
    automaton = ExplicitAutomaton(
        postsets,
        transitions,
        [frozenset(activity.nodes)],
        alphabet=Alphabet.of(events),
        name=f"activity:{instance}",
        key=postset_key,
    )
    logger.debug(f"Built {automaton.name}: {len(postsets)} states, {len(transitions)} transitions")
    return automaton
