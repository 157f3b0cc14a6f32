"""Structural validation of specifications and the used sets of a dispatching sequence"""

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

import networkx as nx

from lsatsem.models.diagnostics import (
    Diagnostic,
    E_BAD_PROFILE,
    E_BAD_TIMING,
    E_CYCLE,
    E_MOVE_ENDPOINTS,
    E_MULTI_CLAIM,
    E_RELEASE_BEFORE_CLAIM,
    E_SELF_CONCURRENCY,
    E_UNCLAIMED_ACTION,
    E_UNKNOWN_REF,
    E_UNRELEASED_CLAIM,
)
from lsatsem.models.specification import (
    ActionNode,
    ClaimNode,
    Deterministic,
    Movable,
    Normal,
    ReleaseNode,
    ThirdOrder,
    Unmovable,
)
from lsatsem.sequence.algebra import DispatchingSequence
from lsatsem.utils.errors import InvalidSpecError, UnknownReferenceError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


class _Collector:
    """Accumulates diagnostics, attaching the span recorded for each entity"""

    def __init__(self, spec):
        self.spec = spec
        self.items = []

    def add(self, code, entity, message):
        self.items.append(Diagnostic(code, entity, message, span=self.spec.span_of(entity)))

    def sorted(self):
        unique = {(d.entity, d.code, d.message): d for d in self.items}
        return [unique[key] for key in sorted(unique)]


def _finite(*values):
    return all(isinstance(v, (int, float)) and math.isfinite(v) for v in values)


def _check_timing(collector, entity, timing):
    if isinstance(timing, Deterministic):
        if not _finite(timing.t) or timing.t < 0:
            collector.add(E_BAD_TIMING, entity, f"deterministic time must be >= 0, got {timing.t}")
    elif isinstance(timing, Normal):
        if not _finite(timing.mu, timing.sigma) or timing.sigma <= 0:
            collector.add(E_BAD_TIMING, entity, f"normal sigma must be > 0, got {timing.sigma}")
    else:
        # Triangular and PERT share the a <= m <= b constraint
        if not _finite(timing.a, timing.m, timing.b) or not (timing.a <= timing.m <= timing.b):
            collector.add(
                E_BAD_TIMING, entity,
                f"expected a <= m <= b, got a={timing.a} m={timing.m} b={timing.b}",
            )


def _check_movement(collector, peripheral, movement):
    entity = f"{peripheral.id}.{movement.id}"
    positions = peripheral.kind.positions

    if movement.source == movement.target:
        collector.add(E_MOVE_ENDPOINTS, entity, f"movement from '{movement.source}' to itself")
    for endpoint in (movement.source, movement.target):
        if endpoint not in positions:
            collector.add(E_MOVE_ENDPOINTS, entity, f"position '{endpoint}' is not defined on '{peripheral.id}'")

    profile = movement.profile
    parameters = {'vmax': profile.vmax, 'amax': profile.amax}
    if isinstance(profile, ThirdOrder):
        parameters['jmax'] = profile.jmax
    for name, value in parameters.items():
        if not _finite(value) or value <= 0:
            collector.add(E_BAD_PROFILE, entity, f"profile parameter {name} must be > 0, got {value}")
    if not _finite(movement.distance) or movement.distance < 0:
        collector.add(E_BAD_PROFILE, entity, f"distance must be >= 0, got {movement.distance}")
    if not _finite(movement.settling) or movement.settling < 0:
        collector.add(E_BAD_PROFILE, entity, f"settling time must be >= 0, got {movement.settling}")


def _check_peripherals(collector, spec):
    for peripheral_id in sorted(spec.peripherals):
        peripheral = spec.peripherals[peripheral_id]
        owner = spec.owner.get(peripheral_id)
        if owner is None or owner not in spec.resources:
            collector.add(E_UNKNOWN_REF, peripheral_id, f"peripheral '{peripheral_id}' has no defined owner resource")

        if isinstance(peripheral.kind, Unmovable):
            for action_id, timing in sorted(peripheral.kind.actions.items()):
                _check_timing(collector, f"{peripheral_id}.{action_id}", timing)
        elif isinstance(peripheral.kind, Movable):
            if not peripheral.kind.positions:
                collector.add(E_MOVE_ENDPOINTS, peripheral_id, f"movable peripheral '{peripheral_id}' has no positions")
            for movement_id, movement in sorted(peripheral.kind.moves.items()):
                _check_movement(collector, peripheral, movement)


def _check_node_references(collector, spec, activity):
    valid = True
    for node_id in sorted(activity.nodes):
        kind = activity.nodes[node_id]
        entity = f"{activity.id}.{node_id}"
        if isinstance(kind, (ClaimNode, ReleaseNode)):
            if kind.resource not in spec.resources:
                collector.add(E_UNKNOWN_REF, entity, f"undefined resource '{kind.resource}'")
                valid = False
        elif isinstance(kind, ActionNode):
            peripheral = spec.peripherals.get(kind.peripheral)
            if peripheral is None:
                collector.add(E_UNKNOWN_REF, entity, f"undefined peripheral '{kind.peripheral}'")
                valid = False
            elif kind.action not in peripheral.action_ids:
                collector.add(E_UNKNOWN_REF, entity, f"undefined action '{kind.peripheral}.{kind.action}'")
                valid = False

    for source, target in sorted(activity.edges):
        for end in (source, target):
            if end not in activity.nodes:
                collector.add(E_UNKNOWN_REF, activity.id, f"edge {source} -> {target} references undefined node '{end}'")
                valid = False
    return valid


def _check_ordering(collector, spec, activity):
    graph = activity.graph
    descendants = {node: nx.descendants(graph, node) for node in activity.nodes}

    def reaches(source, target):
        return target in descendants.get(source, ())

    claims, releases = {}, {}
    for node_id in sorted(activity.nodes):
        kind = activity.nodes[node_id]
        if isinstance(kind, ClaimNode):
            claims.setdefault(kind.resource, []).append(node_id)
        elif isinstance(kind, ReleaseNode):
            releases.setdefault(kind.resource, []).append(node_id)

    # Resource level: claimed and released at most once, claim before release
    for resource in sorted(set(claims) | set(releases)):
        claim_nodes = claims.get(resource, [])
        release_nodes = releases.get(resource, [])
        if len(claim_nodes) > 1 or len(release_nodes) > 1:
            collector.add(E_MULTI_CLAIM, activity.id, f"resource '{resource}' is claimed or released more than once")
        if claim_nodes and not release_nodes:
            collector.add(
                E_UNRELEASED_CLAIM, f"{activity.id}.{claim_nodes[0]}",
                f"claim of '{resource}' is never released",
            )
        elif release_nodes and not claim_nodes:
            collector.add(
                E_RELEASE_BEFORE_CLAIM, f"{activity.id}.{release_nodes[0]}",
                f"release of '{resource}' without a claim",
            )
        else:
            for release_node in release_nodes:
                if not any(reaches(claim_node, release_node) for claim_node in claim_nodes):
                    collector.add(
                        E_RELEASE_BEFORE_CLAIM, f"{activity.id}.{release_node}",
                        f"release of '{resource}' is not preceded by its claim",
                    )

    # Node level: every action sits between the claim and release of its owner
    for node_id in sorted(activity.nodes):
        kind = activity.nodes[node_id]
        if not isinstance(kind, ActionNode):
            continue
        entity = f"{activity.id}.{node_id}"
        owner = spec.owner.get(kind.peripheral)
        claim_nodes = claims.get(owner, [])
        release_nodes = releases.get(owner, [])
        if not any(reaches(claim_node, node_id) for claim_node in claim_nodes):
            collector.add(E_UNCLAIMED_ACTION, entity, f"action on '{kind.peripheral}' is not preceded by a claim of '{owner}'")
        elif release_nodes and not any(reaches(node_id, release_node) for release_node in release_nodes):
            collector.add(E_UNRELEASED_CLAIM, entity, f"action on '{kind.peripheral}' is not followed by a release of '{owner}'")

    # Actions on one peripheral must be totally ordered
    by_peripheral = {}
    for node_id in sorted(activity.nodes):
        kind = activity.nodes[node_id]
        if isinstance(kind, ActionNode):
            by_peripheral.setdefault(kind.peripheral, []).append(node_id)
    for peripheral_id, nodes in sorted(by_peripheral.items()):
        for i, first in enumerate(nodes):
            for second in nodes[i + 1:]:
                if not reaches(first, second) and not reaches(second, first):
                    collector.add(
                        E_SELF_CONCURRENCY, f"{activity.id}.{second}",
                        f"nodes {first} and {second} on peripheral '{peripheral_id}' are not ordered",
                    )


def _check_activities(collector, spec):
    for activity_id in sorted(spec.activities):
        activity = spec.activities[activity_id]
        references_ok = _check_node_references(collector, spec, activity)

        if not nx.is_directed_acyclic_graph(activity.graph):
            cycle = nx.find_cycle(activity.graph)
            path = ' -> '.join([edge[0] for edge in cycle] + [cycle[0][0]])
            collector.add(E_CYCLE, activity_id, f"dependency cycle {path}")
            continue

        if references_ok:
            _check_ordering(collector, spec, activity)


def _check_dispatch(collector, spec):
    dispatch = spec.dispatch
    if dispatch is None:
        return
    if not isinstance(dispatch, DispatchingSequence):
        names = {label for _, label, _ in dispatch.transitions}
        for state in sorted(dispatch.initial - dispatch.states):
            collector.add(E_UNKNOWN_REF, 'dispatch', f"undeclared initial state '{state}'")
        endpoints = {s for s, _, _ in dispatch.transitions} | {t for _, _, t in dispatch.transitions}
        for state in sorted(endpoints - dispatch.states):
            collector.add(E_UNKNOWN_REF, 'dispatch', f"undeclared state '{state}'")
    else:
        names = dispatch.activities
    for name in sorted(names):
        if name not in spec.activities:
            collector.add(E_UNKNOWN_REF, 'dispatch', f"undefined activity '{name}'")


def validate_spec(spec):
    """
    Check every structural rule of a specification

    Args:
        spec: Parsed Specification

    Returns:
        List of Diagnostic sorted by entity id then code; empty iff valid
    """
    collector = _Collector(spec)

    _check_peripherals(collector, spec)
    _check_activities(collector, spec)
    _check_dispatch(collector, spec)

    diagnostics = collector.sorted()
    logger.debug(f"Validated '{spec.source}': {len(diagnostics)} diagnostic(s)")
    return diagnostics


def require_valid(spec):
    """
    Raise InvalidSpecError unless the specification validates cleanly

    Returns:
        The specification
    """
    diagnostics = validate_spec(spec)
    if diagnostics:
        logger.error(f"Specification '{spec.source}' has {len(diagnostics)} diagnostic(s)")
        raise InvalidSpecError(f"Specification has {len(diagnostics)} diagnostic(s)", diagnostics)
    return spec


@dataclass(frozen=True)
class UsedSets:
    """
    Activities, resources and peripherals relevant to a dispatching sequence

    `instance_bound` maps each used activity to its number of instances, or
    None when the activity repeats forever.
    """
    activities: frozenset = frozenset()
    resources: frozenset = frozenset()
    peripherals: frozenset = frozenset()
    instance_bound: Mapping[str, Optional[int]] = field(default_factory=dict)

    @property
    def is_finite(self):
        return all(bound is not None for bound in self.instance_bound.values())

    def to_dict(self):
        return {
            'activities': sorted(self.activities),
            'resources': sorted(self.resources),
            'peripherals': sorted(self.peripherals),
            'instance_bound': {
                act: ('unbounded' if bound is None else bound)
                for act, bound in sorted(self.instance_bound.items())
            },
        }


def used_sets_of(spec, transient, periodic):
    """Used sets for the activities of `transient` (counted) and `periodic` (unbounded)"""
    activities = frozenset(transient) | frozenset(periodic)
    for name in sorted(activities):
        if name not in spec.activities:
            logger.error(f"Dispatch names undefined activity '{name}'")
            raise UnknownReferenceError(f"Undefined activity '{name}'", entity=name)

    resources = frozenset().union(*(spec.activities[a].resources for a in activities))
    peripherals = frozenset().union(*(spec.activities[a].peripherals for a in activities))
    periodic_set = frozenset(periodic)
    instance_bound = {
        act: (None if act in periodic_set else list(transient).count(act))
        for act in sorted(activities)
    }
    return UsedSets(activities, resources, peripherals, instance_bound)


def used_sets(spec, seq):
    """
    The used activities, resources, peripherals and instance bounds of `seq`

    Raises:
        UnknownReferenceError: If seq names an undefined activity
    """
    return used_sets_of(spec, seq.transient.items, seq.periodic.items)
