"""Data model of a manufacturing-system specification"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Mapping, Optional, Union

import networkx as nx

from lsatsem.utils.errors import UnknownReferenceError

if TYPE_CHECKING:
    from lsatsem.models.diagnostics import SourceSpan
    from lsatsem.sequence.algebra import DispatchingSequence
    from lsatsem.system.dispatch_fsa import DispatchFSA


# Timing of unmovable actions

@dataclass(frozen=True)
class Deterministic:
    t: float


@dataclass(frozen=True)
class Normal:
    mu: float
    sigma: float


@dataclass(frozen=True)
class Triangular:
    a: float
    m: float
    b: float


@dataclass(frozen=True)
class Pert:
    a: float
    m: float
    b: float


TimingSpec = Union[Deterministic, Normal, Triangular, Pert]


# Speed profiles of movements

@dataclass(frozen=True)
class SecondOrder:
    vmax: float
    amax: float


@dataclass(frozen=True)
class ThirdOrder:
    vmax: float
    amax: float
    jmax: float


SpeedProfile = Union[SecondOrder, ThirdOrder]


@dataclass(frozen=True)
class Movement:
    """Directed movement of a movable peripheral between two of its positions"""
    id: str
    source: str
    target: str
    profile: SpeedProfile
    distance: float = 1.0
    settling: float = 0.0


@dataclass(frozen=True)
class Unmovable:
    actions: Mapping[str, TimingSpec] = field(default_factory=dict)


@dataclass(frozen=True)
class Movable:
    positions: frozenset[str] = frozenset()
    moves: Mapping[str, Movement] = field(default_factory=dict)


PeripheralKind = Union[Unmovable, Movable]


@dataclass(frozen=True)
class Peripheral:
    id: str
    kind: PeripheralKind

    @property
    def is_movable(self):
        return isinstance(self.kind, Movable)

    @property
    def action_ids(self):
        """The action set A(p) of the peripheral"""
        if isinstance(self.kind, Movable):
            return frozenset(self.kind.moves)
        return frozenset(self.kind.actions)

    @property
    def positions(self):
        if isinstance(self.kind, Movable):
            return self.kind.positions
        return frozenset()


# Activity nodes

@dataclass(frozen=True)
class ClaimNode:
    resource: str


@dataclass(frozen=True)
class ReleaseNode:
    resource: str


@dataclass(frozen=True)
class ActionNode:
    action: str
    peripheral: str


NodeKind = Union[ClaimNode, ReleaseNode, ActionNode]


@dataclass(frozen=True)
class Activity:
    """
    An activity: a DAG of claim, release and action nodes

    Nodes map node ids to their kind (the mapping M(n)); edges are the
    dependency relation between node ids.
    """
    id: str
    nodes: Mapping[str, NodeKind] = field(default_factory=dict)
    edges: frozenset[tuple[str, str]] = frozenset()

    @cached_property
    def graph(self):
        """Dependency graph as a networkx DiGraph (dangling edge ends included)"""
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(self.nodes))
        graph.add_edges_from(sorted(self.edges))
        return graph

    @cached_property
    def predecessors(self):
        """Map node id -> frozenset of direct predecessors among known nodes"""
        preds = {node: set() for node in self.nodes}
        for source, target in self.edges:
            if target in preds and source in self.nodes:
                preds[target].add(source)
        return {node: frozenset(found) for node, found in preds.items()}

    @cached_property
    def resources(self):
        """R(Act): the resources mentioned by claim nodes"""
        return frozenset(kind.resource for kind in self.nodes.values() if isinstance(kind, ClaimNode))

    @cached_property
    def peripherals(self):
        return frozenset(kind.peripheral for kind in self.nodes.values() if isinstance(kind, ActionNode))

    def claim_node(self, resource):
        """Id of the claim node of `resource`, or None"""
        for node_id in sorted(self.nodes):
            kind = self.nodes[node_id]
            if isinstance(kind, ClaimNode) and kind.resource == resource:
                return node_id
        return None

    def release_node(self, resource):
        """Id of the release node of `resource`, or None"""
        for node_id in sorted(self.nodes):
            kind = self.nodes[node_id]
            if isinstance(kind, ReleaseNode) and kind.resource == resource:
                return node_id
        return None

    def enabled_nodes(self, remaining):
        """Nodes of the postset `remaining` that have no predecessor left in it"""
        return sorted(
            node for node in remaining
            if not (self.predecessors[node] & remaining)
        )


@dataclass(frozen=True)
class Specification:
    """
    A parsed specification

    `owner` is the function R(p). Spans and the source name are metadata and
    do not take part in equality.
    """
    resources: frozenset[str] = frozenset()
    peripherals: Mapping[str, Peripheral] = field(default_factory=dict)
    owner: Mapping[str, str] = field(default_factory=dict)
    activities: Mapping[str, Activity] = field(default_factory=dict)
    dispatch: Optional[Union['DispatchingSequence', 'DispatchFSA']] = None
    spans: Mapping[str, 'SourceSpan'] = field(default_factory=dict, compare=False, repr=False)
    source: str = field(default='<memory>', compare=False)

    def activity(self, activity_id):
        try:
            return self.activities[activity_id]
        except KeyError:
            raise UnknownReferenceError(f"Undefined activity '{activity_id}'", entity=activity_id) from None

    def peripheral(self, peripheral_id):
        try:
            return self.peripherals[peripheral_id]
        except KeyError:
            raise UnknownReferenceError(f"Undefined peripheral '{peripheral_id}'", entity=peripheral_id) from None

    def resources_of(self, activity_id):
        """R(Act) for an activity id"""
        return self.activity(activity_id).resources

    def owner_of(self, peripheral_id):
        """R(p) for a peripheral id"""
        try:
            return self.owner[peripheral_id]
        except KeyError:
            raise UnknownReferenceError(f"Peripheral '{peripheral_id}' has no owner", entity=peripheral_id) from None

    def span_of(self, entity):
        return self.spans.get(entity)
