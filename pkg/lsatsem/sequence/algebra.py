"""Activity-sequence algebra: concatenation, powers, prefixes and dispatching sequences"""

import math
import re
from dataclasses import dataclass
from typing import Iterator, Optional

from lsatsem.models.events import ActivityInstance
from lsatsem.utils.errors import NegativePowerError, SequenceIndexError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)

EPSILON = 'ε'
PERIODIC_MARKERS = ('^w', '^ω', '^∞', '^inf')

_ACTIVITY_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def _render_items(items):
    return ' ; '.join(str(item) for item in items) if items else EPSILON


@dataclass(frozen=True, order=True)
class ActivitySequence:
    """A finite, possibly empty, ordered list of activity ids"""
    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'items', tuple(self.items))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return ActivitySequence(self.items[key])
        return self.items[key]

    def count(self, activity):
        return self.items.count(activity)

    def render(self):
        return _render_items(self.items)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class InstanceSequence:
    """Ordered list of activity instances, each activity numbered 1, 2, 3, ..."""
    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'items', tuple(self.items))
        seen = {}
        for instance in self.items:
            expected = seen.get(instance.activity, 0) + 1
            if instance.index != expected:
                raise ValueError(f"Instance {instance} out of order, expected index {expected}")
            seen[instance.activity] = expected

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def render(self):
        return _render_items(self.items)

    def __str__(self):
        return self.render()


def instantiate(w):
    """Number the occurrences of every activity in `w`"""
    counts = {}
    instances = []
    for activity in w:
        counts[activity] = counts.get(activity, 0) + 1
        instances.append(ActivityInstance(activity, counts[activity]))
    return InstanceSequence(tuple(instances))


@dataclass(frozen=True)
class DispatchingSequence:
    """
    A dispatching sequence transient;(periodic)^w

    Either part may be empty; with an empty periodic part the sequence is finite.
    """
    transient: ActivitySequence = ActivitySequence()
    periodic: ActivitySequence = ActivitySequence()

    def __post_init__(self):
        if not isinstance(self.transient, ActivitySequence):
            object.__setattr__(self, 'transient', ActivitySequence(tuple(self.transient)))
        if not isinstance(self.periodic, ActivitySequence):
            object.__setattr__(self, 'periodic', ActivitySequence(tuple(self.periodic)))

    @property
    def is_finite(self):
        return len(self.periodic) == 0

    @property
    def activities(self):
        return frozenset(self.transient.items) | frozenset(self.periodic.items)

    def word_item(self, k):
        """Activity id at 1-based position k of the denoted word, None past its end"""
        if k < 1:
            raise SequenceIndexError(f"Sequence position must be >= 1, got {k}", position=k)
        if k <= len(self.transient):
            return self.transient[k - 1]
        if self.is_finite:
            return None
        return self.periodic[(k - len(self.transient) - 1) % len(self.periodic)]

    def word_prefix(self, length):
        """The length-`length` prefix of the denoted word (shorter if the word is finite)"""
        if self.is_finite:
            return self.transient[:length]
        items = list(self.transient.items[:length])
        position = len(self.transient)
        while len(items) < length:
            items.append(self.periodic[(position - len(self.transient)) % len(self.periodic)])
            position += 1
        return ActivitySequence(tuple(items))

    def equivalent(self, other):
        """True when both sequences denote the same (possibly infinite) word"""
        if self.is_finite or other.is_finite:
            return self.is_finite and other.is_finite and self.transient == other.transient
        horizon = max(len(self.transient), len(other.transient)) + math.lcm(len(self.periodic), len(other.periodic))
        return self.word_prefix(horizon) == other.word_prefix(horizon)

    def render(self):
        """Textual rendering such as `ActA ; (ActB ; ActC)^w`"""
        if self.is_finite:
            return self.transient.render()
        periodic = f"({self.periodic.render()})^w"
        if len(self.transient) == 0:
            return periodic
        return f"{self.transient.render()} ; {periodic}"

    def __str__(self):
        return self.render()


def _split_items(text):
    items = []
    for part in text.split(';'):
        name = part.strip()
        if not name or name == EPSILON:
            continue
        if not _ACTIVITY_NAME.match(name):
            raise ValueError(f"Invalid activity name '{name}'")
        items.append(name)
    return tuple(items)


def parse_dispatching_sequence(text):
    """
    Read the textual rendering of a dispatching sequence

    Args:
        text: e.g. `ActA ; (ActB ; ActC)^w`, `(A)^w`, `A ; B` or `ε`

    Returns:
        DispatchingSequence

    Raises:
        ValueError: On malformed input
    """
    body = text.strip()
    periodic = ()
    marker = next((m for m in PERIODIC_MARKERS if body.endswith(m)), None)
    if marker is not None:
        body = body[:-len(marker)].rstrip()
        if not body.endswith(')') or '(' not in body:
            raise ValueError(f"Malformed periodic part in '{text}'")
        open_at = body.rindex('(')
        periodic = _split_items(body[open_at + 1:-1])
        body = body[:open_at].rstrip()
        if body.endswith(';'):
            body = body[:-1]
        elif body and body != EPSILON:
            raise ValueError(f"Missing ';' before the periodic part in '{text}'")
    if '(' in body or ')' in body:
        raise ValueError(f"Unexpected parenthesis in '{text}'")
    return DispatchingSequence(ActivitySequence(_split_items(body)), ActivitySequence(periodic))


def concat(w1, w2):
    """w1;w2"""
    return ActivitySequence(w1.items + w2.items)


def power(w, n):
    """
    n-fold self-concatenation of w

    Raises:
        NegativePowerError: If n < 0
    """
    if n < 0:
        logger.error(f"Negative power {n} requested for '{w}'")
        raise NegativePowerError(f"Power must be >= 0, got {n}", power=n)
    return ActivitySequence(w.items * n)


def prefixes(w):
    """All prefixes of w, the empty sequence included"""
    return frozenset(ActivitySequence(w.items[:i]) for i in range(len(w) + 1))


def dispatch_prefix_stream(seq) -> Iterator[ActivitySequence]:
    """
    Lazily enumerate the prefixes of a dispatching sequence by nondecreasing length

    The stream is infinite exactly when the periodic part is nonempty.
    """
    for i in range(len(seq.transient) + 1):
        yield seq.transient[:i]
    if seq.is_finite:
        return

    items = list(seq.transient.items)
    position = 0
    while True:
        items.append(seq.periodic[position % len(seq.periodic)])
        position += 1
        yield ActivitySequence(tuple(items))


def reduce_for_resource(w, resource, spec):
    """
    Keep only the activities of w that use `resource`

    Raises:
        UnknownReferenceError: If w names an undefined activity
    """
    return ActivitySequence(tuple(act for act in w if resource in spec.resources_of(act)))


def reduce_dispatching(seq, resource, spec):
    """The per-resource dispatching sequence reduce(transient);(reduce(periodic))^w"""
    return DispatchingSequence(
        reduce_for_resource(seq.transient, resource, spec),
        reduce_for_resource(seq.periodic, resource, spec),
    )


def instance_index(history, activity):
    """1 + number of occurrences of `activity` in `history`"""
    return 1 + history.count(activity)


def seq_item(seq, k) -> Optional[ActivityInstance]:
    """
    The k-th dispatched activity with its instance index

    Args:
        seq: Dispatching sequence
        k: 1-based position

    Returns:
        ActivityInstance, or None past the end of a finite sequence

    Raises:
        SequenceIndexError: If k < 1
    """
    if k < 1:
        logger.error(f"Invalid sequence position {k} for '{seq}'")
        raise SequenceIndexError(f"Sequence position must be >= 1, got {k}", position=k)

    activity = seq.word_item(k)
    if activity is None:
        return None

    transient, periodic = seq.transient, seq.periodic
    if k <= len(transient):
        return ActivityInstance(activity, transient.items[:k].count(activity))

    # Whole periods plus the partial one ending at position k
    offset = k - len(transient) - 1
    periods, remainder = divmod(offset, len(periodic))
    occurrences = (
        transient.count(activity)
        + periods * periodic.count(activity)
        + periodic.items[:remainder + 1].count(activity)
    )
    return ActivityInstance(activity, occurrences)
