"""Canonical text rendering of specifications"""

from lsatsem.models.specification import (
    ActionNode,
    ClaimNode,
    Deterministic,
    Normal,
    Pert,
    SecondOrder,
    Triangular,
)
from lsatsem.sequence.algebra import DispatchingSequence

INDENT = '  '


def _number(value):
    return repr(float(value))


def _timing(timing):
    if isinstance(timing, Deterministic):
        return _number(timing.t)
    if isinstance(timing, Normal):
        return f"normal(mu={_number(timing.mu)}, sigma={_number(timing.sigma)})"
    name = 'triangular' if isinstance(timing, Triangular) else 'pert'
    return f"{name}(a={_number(timing.a)}, m={_number(timing.m)}, b={_number(timing.b)})"


def _profile(profile):
    if isinstance(profile, SecondOrder):
        return f"second(v={_number(profile.vmax)}, a={_number(profile.amax)})"
    return f"third(v={_number(profile.vmax)}, a={_number(profile.amax)}, j={_number(profile.jmax)})"


def _peripheral_lines(peripheral):
    if not peripheral.is_movable:
        lines = [f"{INDENT}peripheral {peripheral.id} unmovable {{"]
        for action_id, timing in sorted(peripheral.kind.actions.items()):
            lines.append(f"{INDENT * 2}action {action_id} time {_timing(timing)}")
        lines.append(f"{INDENT}}}")
        return lines

    lines = [
        f"{INDENT}peripheral {peripheral.id} movable {{",
        f"{INDENT * 2}positions {{ {', '.join(sorted(peripheral.kind.positions))} }}",
    ]
    for move_id, move in sorted(peripheral.kind.moves.items()):
        lines.append(
            f"{INDENT * 2}move {move_id} from {move.source} to {move.target} profile {_profile(move.profile)}"
            f" distance {_number(move.distance)} settling {_number(move.settling)}"
        )
    lines.append(f"{INDENT}}}")
    return lines


def _node_text(kind):
    if isinstance(kind, ClaimNode):
        return f"claim {kind.resource}"
    if isinstance(kind, ActionNode):
        return f"{kind.peripheral}.{kind.action}"
    return f"release {kind.resource}"


def _activity_lines(activity):
    lines = [f"activity {activity.id} {{", f"{INDENT}nodes {{"]
    for node_id, kind in sorted(activity.nodes.items()):
        lines.append(f"{INDENT * 2}{node_id}: {_node_text(kind)}")
    lines.append(f"{INDENT}}}")
    if activity.edges:
        lines.append(f"{INDENT}flow {{")
        for source, target in sorted(activity.edges):
            lines.append(f"{INDENT * 2}{source} -> {target}")
        lines.append(f"{INDENT}}}")
    lines.append('}')
    return lines


def _dispatch_lines(dispatch):
    if dispatch is None or isinstance(dispatch, DispatchingSequence):
        dispatch = dispatch or DispatchingSequence()
        elements = list(dispatch.transient)
        if dispatch.periodic:
            elements.append(f"repeat {{ {' ; '.join(dispatch.periodic)} }}")
        body = f" {' ; '.join(elements)} " if elements else ' '
        return [f"dispatch sequence {{{body}}}"]

    lines = ['dispatch fsa {']
    lines.extend(f"{INDENT}{line}" for line in dispatch.render())
    lines.append('}')
    return lines


def pretty_print(spec):
    """
    Render a specification in canonical form

    Declarations are sorted by id and every optional attribute is written out,
    so parsing the result gives back an equal Specification. Comments and the
    original layout are not preserved.

    Args:
        spec: Specification

    Returns:
        Text in .lsat syntax, ending with a newline
    """
    lines = []
    for resource in sorted(spec.resources):
        peripherals = sorted(p for p, owner in spec.owner.items() if owner == resource and p in spec.peripherals)
        if not peripherals:
            lines.append(f"resource {resource} {{ }}")
            continue
        lines.append(f"resource {resource} {{")
        for peripheral_id in peripherals:
            lines.extend(_peripheral_lines(spec.peripherals[peripheral_id]))
        lines.append('}')

    for activity_id in sorted(spec.activities):
        lines.append('')
        lines.extend(_activity_lines(spec.activities[activity_id]))

    lines.append('')
    lines.extend(_dispatch_lines(spec.dispatch))
    return '\n'.join(lines).lstrip('\n') + '\n'
