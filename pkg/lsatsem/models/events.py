"""Activity instances and the event labels shared by all component automata"""

import re
from dataclasses import dataclass
from typing import Union

_NAME = r'[A-Za-z_][A-Za-z0-9_]*'

EVENT_PATTERN = re.compile(
    rf'^(?P<activity>{_NAME})#(?P<index>[0-9]+)\.'
    rf'(?:(?P<kind>claim|release)\((?P<resource>{_NAME})\)'
    rf'|do\((?P<peripheral>{_NAME})\.(?P<action>{_NAME})\))$'
)


@dataclass(frozen=True, order=True)
class ActivityInstance:
    """The index-th dispatched occurrence of an activity (rendered `Act#2`)"""
    activity: str
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"Instance index must be >= 1, got {self.index}")

    def __str__(self):
        return f"{self.activity}#{self.index}"


@dataclass(frozen=True)
class Claim:
    resource: str

    rank = 0

    def encode(self):
        return f"claim({self.resource})"

    def fields(self):
        return (self.resource,)


@dataclass(frozen=True)
class Release:
    resource: str

    rank = 1

    def encode(self):
        return f"release({self.resource})"

    def fields(self):
        return (self.resource,)


@dataclass(frozen=True)
class Do:
    action: str
    peripheral: str

    rank = 2

    def encode(self):
        return f"do({self.peripheral}.{self.action})"

    def fields(self):
        return (self.peripheral, self.action)


Payload = Union[Claim, Release, Do]


@dataclass(frozen=True)
class EventLabel:
    """An (instance, payload) pair such as `Act#1.claim(R1)`"""
    instance: ActivityInstance
    payload: Payload

    def sort_key(self):
        return (
            self.instance.activity,
            self.instance.index,
            self.payload.rank,
            self.payload.fields(),
        )

    def encode(self):
        return f"{self.instance}.{self.payload.encode()}"

    def __str__(self):
        return self.encode()

    @property
    def resource(self):
        """Resource of a claim or release event, None for actions"""
        return getattr(self.payload, 'resource', None)

    @property
    def is_claim(self):
        return isinstance(self.payload, Claim)

    @property
    def is_release(self):
        return isinstance(self.payload, Release)

    @property
    def is_action(self):
        return isinstance(self.payload, Do)


def claim(activity, index, resource):
    return EventLabel(ActivityInstance(activity, index), Claim(resource))


def release(activity, index, resource):
    return EventLabel(ActivityInstance(activity, index), Release(resource))


def do(activity, index, peripheral, action):
    return EventLabel(ActivityInstance(activity, index), Do(action, peripheral))


def event_sort_key(event):
    return event.sort_key()


def decode_event(text):
    """
    Parse the textual event encoding

    Args:
        text: One event such as `Act#1.claim(R1)` or `Act#2.do(p1.a)`

    Returns:
        The EventLabel

    Raises:
        ValueError: If the text is not a well-formed event
    """
    match = EVENT_PATTERN.match(text.strip())
    if not match:
        raise ValueError(f"Malformed event '{text.strip()}'")

    instance = ActivityInstance(match.group('activity'), int(match.group('index')))
    kind = match.group('kind')
    if kind == 'claim':
        return EventLabel(instance, Claim(match.group('resource')))
    if kind == 'release':
        return EventLabel(instance, Release(match.group('resource')))
    return EventLabel(instance, Do(match.group('action'), match.group('peripheral')))
