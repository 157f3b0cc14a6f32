"""Construction of full-system automata and of single components"""

from lsatsem.automata.compose import sync_compose
from lsatsem.builders.activity import build_activity_automaton
from lsatsem.builders.availability import build_availability
from lsatsem.builders.claiming import build_claiming
from lsatsem.builders.peripheral import build_peripheral
from lsatsem.builders.universe import InstanceUniverse
from lsatsem.models.events import ActivityInstance
from lsatsem.sequence.algebra import DispatchingSequence
from lsatsem.services.validation_service import require_valid, used_sets, used_sets_of
from lsatsem.system.dispatch_fsa import DispatchFSA
from lsatsem.system.product import SequenceSystem, UnionSystem
from lsatsem.utils.errors import BudgetExceededError, EmptyFSAError, UnknownReferenceError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


def build_mseq(spec, seq, pins=None):
    """
    Full-system automaton for one dispatching sequence (lazy product)

    Args:
        spec: Specification (must validate cleanly)
        seq: DispatchingSequence
        pins: Optional map peripheral id -> allowed initial states

    Returns:
        SequenceSystem

    Raises:
        InvalidSpecError: If the specification has diagnostics
        UnknownReferenceError: If seq names an undefined activity
    """
    require_valid(spec)
    used = used_sets(spec, seq)
    universe = InstanceUniverse.from_used_sets(spec, used)
    system = SequenceSystem(spec, seq, universe, pins)
    logger.info(f"Built {system.name}: {len(system.resources)} resources, {len(system.peripheral_automata)} peripherals")
    return system


def build_mSeq(spec, fsa, pins=None, internal_cap=None):
    """
    Automaton for the union of the behaviors of every dispatch order of an FSA

    Args:
        spec: Specification (must validate cleanly)
        fsa: DispatchFSA
        pins: Optional map peripheral id -> allowed initial states
        internal_cap: Maximum consecutive silent dispatch steps

    Returns:
        UnionSystem

    Raises:
        InvalidSpecError: If the specification has diagnostics
        EmptyFSAError: If the FSA has no initial state
    """
    require_valid(spec)
    if not fsa.initial:
        logger.error("Dispatch FSA has no initial state")
        raise EmptyFSAError("Dispatch FSA has no initial state")
    used = used_sets_of(spec, (), sorted(fsa.labels))
    universe = InstanceUniverse.from_used_sets(spec, used)
    system = UnionSystem(spec, fsa, universe, pins, internal_cap)
    logger.info(f"Built {system.name}: {len(fsa.states)} dispatch states, internal cap {system.internal_cap}")
    return system


def component_automata(spec, seq, pins=None):
    """
    Every component automaton of the full system of a finite dispatching sequence

    Returns:
        List of availability, claiming, activity-instance and peripheral automata

    Raises:
        BudgetExceededError: If the sequence has a periodic part
    """
    used = used_sets(spec, seq)
    if not used.is_finite:
        logger.error(f"Cannot compose explicitly: '{seq}' has unboundedly many instances")
        raise BudgetExceededError(f"'{seq}' has unboundedly many activity instances")
    universe = InstanceUniverse.from_used_sets(spec, used)
    pins = pins or {}

    parts = []
    for resource in sorted(used.resources):
        parts.append(build_availability(resource, universe))
        parts.append(build_claiming(resource, seq, spec, universe))
    for instance in universe.all_instances():
        parts.append(build_activity_automaton(instance, spec.activities[instance.activity]))
    for peripheral_id in sorted(used.peripherals):
        parts.append(build_peripheral(spec.peripherals[peripheral_id], universe, pins.get(peripheral_id)))
    return parts


def build_mseq_explicit(spec, seq, pins=None):
    """
    Full-system automaton as the literal synchronous composition of its components

    Only available for sequences without a periodic part.

    Raises:
        InvalidSpecError: If the specification has diagnostics
        BudgetExceededError: If the sequence has a periodic part
    """
    require_valid(spec)
    parts = component_automata(spec, seq, pins)
    return sync_compose(parts, name=f"explicit:{seq}")


def _dispatch_universe(spec):
    dispatch = spec.dispatch
    if isinstance(dispatch, DispatchFSA):
        used = used_sets_of(spec, (), sorted(dispatch.labels))
    else:
        used = used_sets(spec, dispatch or DispatchingSequence())
    return InstanceUniverse.from_used_sets(spec, used)


def build_component(spec, component='system', pins=None):
    """
    Build the automaton named by a component selector

    Selectors: `system`, `availability:R`, `claiming:R`, `activity:Act#j`
    and `peripheral:p`. The dispatch section of the specification decides the
    used instances.

    Raises:
        ValueError: On a malformed selector
        UnknownReferenceError: If the selector names an undefined element
    """
    kind, _, argument = component.partition(':')
    dispatch = spec.dispatch

    if kind == 'system':
        if isinstance(dispatch, DispatchFSA):
            return build_mSeq(spec, dispatch, pins)
        return build_mseq(spec, dispatch or DispatchingSequence(), pins)

    require_valid(spec)
    if not argument:
        raise ValueError(f"Component '{component}' needs an argument")

    if kind in ('availability', 'claiming'):
        if argument not in spec.resources:
            raise UnknownReferenceError(f"Undefined resource '{argument}'", entity=argument)
        universe = _dispatch_universe(spec)
        if kind == 'availability':
            return build_availability(argument, universe)
        if isinstance(dispatch, DispatchFSA):
            raise ValueError("Claiming automata need a dispatch sequence, not a dispatch FSA")
        return build_claiming(argument, dispatch or DispatchingSequence(), spec, universe)

    if kind == 'activity':
        activity_id, _, index = argument.partition('#')
        activity = spec.activity(activity_id)
        if not index.isdigit() or int(index) < 1:
            raise ValueError(f"Expected an instance like '{activity_id}#1', got '{argument}'")
        return build_activity_automaton(ActivityInstance(activity_id, int(index)), activity)

    if kind == 'peripheral':
        peripheral = spec.peripheral(argument)
        pinned = (pins or {}).get(argument)
        return build_peripheral(peripheral, _dispatch_universe(spec), pinned)

    raise ValueError(f"Unknown component kind '{kind}'")
