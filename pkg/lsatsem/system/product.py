"""Lazy full-system automata for a dispatching sequence or a dispatch FSA"""

import itertools
from collections import deque
from dataclasses import dataclass, replace
from typing import Optional

from config import settings
from lsatsem.automata.base import Alphabet, Automaton
from lsatsem.builders.activity import node_event
from lsatsem.builders.availability import AvailabilityState
from lsatsem.builders.peripheral import build_peripheral
from lsatsem.models.events import ActivityInstance, Claim, EventLabel, event_sort_key
from lsatsem.models.specification import ActionNode, ReleaseNode
from lsatsem.sequence.algebra import reduce_dispatching, seq_item
from lsatsem.utils.errors import UnknownReferenceError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


def _update(pairs, changes):
    merged = dict(pairs)
    merged.update(changes)
    return tuple(sorted(merged.items(), key=lambda item: item[0]))


def _render_pairs(pairs):
    return ','.join(f"{k}={getattr(v, 'value', v)}" for k, v in pairs)


@dataclass(frozen=True)
class DispatchCursor:
    """Position in a dispatch FSA plus the instances dispatched but not yet claiming"""
    fsa_state: str
    dispatched: tuple = ()
    queues: tuple = ()

    def render(self):
        queues = ','.join(f"{r}:{'|'.join(str(i) for i in q) or '-'}" for r, q in self.queues)
        return f"D[{self.fsa_state};{_render_pairs(self.dispatched)};{queues}]"


@dataclass(frozen=True)
class SystemState:
    """
    Canonical state of the full-system product

    Every field is a tuple of (id, value) pairs sorted by id. Instances not in
    `in_flight` have either not started (index above the completed count) or
    finished (index at or below it).
    """
    dispatch: Optional[DispatchCursor]
    claims: tuple
    availability: tuple
    in_flight: tuple
    completed: tuple
    peripherals: tuple

    def key(self):
        parts = []
        if self.dispatch is not None:
            parts.append(self.dispatch.render())
        parts.append(f"C[{_render_pairs(self.claims)}]")
        parts.append(f"A[{_render_pairs(self.availability)}]")
        active = ','.join(f"{i}={{{','.join(sorted(p))}}}" for i, p in self.in_flight)
        parts.append(f"B[{active}]")
        parts.append(f"done[{_render_pairs(self.completed)}]")
        parts.append(f"Q[{_render_pairs(self.peripherals)}]")
        return ' '.join(parts)


class SystemAutomaton(Automaton):
    """
    Lazy synchronous product of availability, claiming, activity-instance and
    peripheral automata

    Subclasses decide which instance claims a resource next.

    Args:
        spec: Validated Specification
        universe: InstanceUniverse of the used instances
        pins: Optional map peripheral id -> allowed initial states
        name: Display name
    """

    def __init__(self, spec, universe, pins=None, name='system'):
        self.spec = spec
        self.universe = universe
        self.name = name

        activities = [spec.activities[a] for a in sorted(universe.activities)]
        self.resources = tuple(sorted(frozenset().union(*(a.resources for a in activities))))
        used_peripherals = sorted(frozenset().union(*(a.peripherals for a in activities)))

        pins = dict(pins or {})
        for peripheral_id in sorted(pins):
            if peripheral_id not in spec.peripherals:
                logger.error(f"Pinned peripheral '{peripheral_id}' is not defined")
                raise UnknownReferenceError(f"Undefined peripheral '{peripheral_id}'", entity=peripheral_id)
            if peripheral_id not in used_peripherals:
                logger.warning(f"Ignoring pin of unused peripheral '{peripheral_id}'")
        self.peripheral_automata = {
            p: build_peripheral(spec.peripherals[p], universe, pins.get(p))
            for p in used_peripherals
        }

        # Alphabet: events of the nodes of every used instance
        probe = ActivityInstance('_', 1)
        self._payloads = {
            a.id: frozenset(node_event(probe, kind).payload for kind in a.nodes.values())
            for a in activities
        }
        core = [
            EventLabel(instance, payload)
            for instance in universe.all_instances()
            for payload in self._payloads[instance.activity]
        ]
        self._alphabet = Alphabet(self._contains, core, finite=universe.is_finite)

    def _contains(self, event):
        return (
            event.instance in self.universe
            and event.payload in self._payloads.get(event.instance.activity, ())
        )

    # Hooks for the claim order
    def initial_cursors(self):
        return [None]

    def next_claimant(self, state, resource):
        raise NotImplementedError

    def after_claim(self, state, resource):
        return state.dispatch

    def alphabet(self):
        return self._alphabet

    def state_key(self, state):
        return state.key()

    def initial_states(self):
        peripheral_ids = sorted(self.peripheral_automata)
        choices = [self.peripheral_automata[p].initial_states() for p in peripheral_ids]
        states = []
        for cursor in self.initial_cursors():
            for combination in itertools.product(*choices):
                states.append(SystemState(
                    dispatch=cursor,
                    claims=tuple((r, 0) for r in self.resources),
                    availability=tuple((r, AvailabilityState.RELEASED) for r in self.resources),
                    in_flight=(),
                    completed=tuple((a, 0) for a in sorted(self.universe.activities)),
                    peripherals=tuple(zip(peripheral_ids, combination)),
                ))
        return states

    def _postset(self, state, instance):
        in_flight = dict(state.in_flight)
        if instance in in_flight:
            return in_flight[instance]
        if instance.index <= dict(state.completed).get(instance.activity, 0):
            return frozenset()
        return frozenset(self.spec.activities[instance.activity].nodes)

    def _advance(self, state, instance, remaining, **changes):
        """State after `instance` moves to postset `remaining`"""
        in_flight = dict(state.in_flight)
        completed = dict(state.completed)
        in_flight[instance] = remaining

        # Finished instances leave in dispatch order
        activity = instance.activity
        while True:
            following = ActivityInstance(activity, completed[activity] + 1)
            if following in in_flight and not in_flight[following]:
                del in_flight[following]
                completed[activity] += 1
            else:
                break

        return replace(
            state,
            in_flight=tuple(sorted(in_flight.items(), key=lambda item: item[0])),
            completed=tuple(sorted(completed.items())),
            **changes,
        )

    def observable_successors(self, state):
        """Claim, release and action moves from `state`"""
        availability = dict(state.availability)
        peripherals = dict(state.peripherals)
        claims = dict(state.claims)
        moves = []

        # Only the next claimant of a released resource may claim it
        for resource in self.resources:
            if availability[resource] != AvailabilityState.RELEASED:
                continue
            instance = self.next_claimant(state, resource)
            if instance is None:
                continue
            activity = self.spec.activities[instance.activity]
            node = activity.claim_node(resource)
            remaining = self._postset(state, instance)
            if node is None or node not in activity.enabled_nodes(remaining):
                continue
            target = self._advance(
                state, instance, remaining - {node},
                claims=_update(state.claims, {resource: claims[resource] + 1}),
                availability=_update(state.availability, {resource: AvailabilityState.CLAIMED}),
                dispatch=self.after_claim(state, resource),
            )
            moves.append((EventLabel(instance, Claim(resource)), target))

        for instance, remaining in state.in_flight:
            activity = self.spec.activities[instance.activity]
            for node in activity.enabled_nodes(remaining):
                kind = activity.nodes[node]
                if isinstance(kind, ReleaseNode):
                    target = self._advance(
                        state, instance, remaining - {node},
                        availability=_update(state.availability, {kind.resource: AvailabilityState.RELEASED}),
                    )
                elif isinstance(kind, ActionNode):
                    automaton = self.peripheral_automata[kind.peripheral]
                    position = automaton.target(peripherals[kind.peripheral], kind.action)
                    if position is None:
                        continue
                    target = self._advance(
                        state, instance, remaining - {node},
                        peripherals=_update(state.peripherals, {kind.peripheral: position}),
                    )
                else:
                    continue
                moves.append((node_event(instance, kind), target))

        moves.sort(key=lambda move: (event_sort_key(move[0]), move[1].key()))
        return moves

    def successors(self, state):
        return self.observable_successors(state)


class SequenceSystem(SystemAutomaton):
    """Full system for one dispatching sequence; claim order follows each reduced sequence"""

    def __init__(self, spec, seq, universe, pins=None):
        super().__init__(spec, universe, pins, name=f"system:{seq}")
        self.seq = seq
        self._reduced = {r: reduce_dispatching(seq, r, spec) for r in self.resources}

    def next_claimant(self, state, resource):
        return seq_item(self._reduced[resource], dict(state.claims)[resource] + 1)


class UnionSystem(SystemAutomaton):
    """
    Union of the full systems over all dispatch orders of a dispatch FSA

    Dispatching an activity is a silent step: it takes an FSA transition and
    queues the new instance on each of its resources. Dispatches happen on
    demand: a chain of at most `internal_cap` silent steps is only followed by
    the claim of the instance it dispatched last.
    """

    def __init__(self, spec, fsa, universe, pins=None, internal_cap=None):
        super().__init__(spec, universe, pins, name='system:fsa')
        self.fsa = fsa
        factor = getattr(settings, 'INTERNAL_STEP_FACTOR', 4)
        self.internal_cap = factor * max(1, len(fsa.states)) if internal_cap is None else internal_cap

    def initial_cursors(self):
        labels = sorted(self.fsa.labels)
        return [
            DispatchCursor(
                fsa_state=s,
                dispatched=tuple((a, 0) for a in labels),
                queues=tuple((r, ()) for r in self.resources),
            )
            for s in sorted(self.fsa.initial)
        ]

    def next_claimant(self, state, resource):
        queue = dict(state.dispatch.queues)[resource]
        return queue[0] if queue else None

    def after_claim(self, state, resource):
        cursor = state.dispatch
        return replace(cursor, queues=_update(cursor.queues, {resource: dict(cursor.queues)[resource][1:]}))

    def dispatch_moves(self, state):
        """(state, dispatched instance) pairs after one silent dispatch step"""
        cursor = state.dispatch
        dispatched = dict(cursor.dispatched)
        queues = dict(cursor.queues)
        result = []
        for label, target in self.fsa.outgoing(cursor.fsa_state):
            instance = ActivityInstance(label, dispatched[label] + 1)
            changed = {
                r: queues[r] + (instance,)
                for r in sorted(self.spec.activities[label].resources)
            }
            following = DispatchCursor(
                fsa_state=target,
                dispatched=_update(cursor.dispatched, {label: instance.index}),
                queues=_update(cursor.queues, changed),
            )
            result.append((replace(state, dispatch=following), instance))
        return result

    def silent_closure(self, state):
        """
        States reachable by at most internal_cap silent steps

        Returns:
            Sorted list of (state, last dispatched instance) pairs; `state`
            itself comes with None
        """
        seen = {(state.key(), ''): (state, None)}
        queue = deque([(state, 0)])
        while queue:
            current, steps = queue.popleft()
            if steps >= self.internal_cap:
                continue
            for following, instance in self.dispatch_moves(current):
                key = (following.key(), str(instance))
                if key not in seen:
                    seen[key] = (following, instance)
                    queue.append((following, steps + 1))
        return [seen[key] for key in sorted(seen)]

    def successors(self, state):
        # Dispatch on demand: after silent steps only the last dispatched instance may claim
        unique = {}
        for origin, dispatched in self.silent_closure(state):
            for event, target in self.observable_successors(origin):
                if dispatched is not None and not (event.is_claim and event.instance == dispatched):
                    continue
                unique.setdefault((event, target.key()), (event, target))
        return [unique[k] for k in sorted(unique, key=lambda k: (event_sort_key(k[0]), k[1]))]
