"""Durations of movements and mean times of unmovable actions"""

import math

from lsatsem.models.specification import (
    Deterministic,
    Movable,
    Normal,
    Pert,
    SecondOrder,
    ThirdOrder,
    Triangular,
)
from lsatsem.utils.errors import UnknownReferenceError, UnsupportedProfileError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


def movement_duration(movement):
    """
    Time of a movement under a trapezoidal (second-order) velocity profile

    Short moves never reach vmax and take 2*sqrt(d/amax); longer ones
    accelerate, cruise at vmax and decelerate. Settling time is added.

    Args:
        movement: Movement with a SecondOrder profile

    Returns:
        Duration in time units

    Raises:
        UnsupportedProfileError: For third-order profiles
    """
    profile = movement.profile
    if isinstance(profile, ThirdOrder) or not isinstance(profile, SecondOrder):
        logger.error(f"Cannot time movement '{movement.id}': only second-order profiles are supported")
        raise UnsupportedProfileError(f"Movement '{movement.id}' has a third-order profile", movement=movement.id)

    distance = movement.distance
    vmax, amax = profile.vmax, profile.amax

    if distance <= vmax * vmax / amax:
        # Triangular velocity profile, peak speed below vmax
        travel = 2.0 * math.sqrt(distance / amax)
    else:
        travel = vmax / amax + distance / vmax

    return movement.settling + travel


def timing_mean(timing):
    """
    Mean of an action timing

    Args:
        timing: Deterministic, Normal, Triangular or Pert timing

    Returns:
        Mean duration
    """
    if isinstance(timing, Deterministic):
        return timing.t
    if isinstance(timing, Normal):
        return timing.mu
    if isinstance(timing, Triangular):
        return (timing.a + timing.m + timing.b) / 3.0
    if isinstance(timing, Pert):
        return (timing.a + 4.0 * timing.m + timing.b) / 6.0
    raise TypeError(f"Unknown timing specification {timing!r}")


def action_duration(spec, peripheral_id, action_id):
    """
    Mean duration of an action performed by a peripheral

    Returns:
        Duration, or None for movements with a third-order profile

    Raises:
        UnknownReferenceError: If the peripheral or action is undefined
    """
    peripheral = spec.peripheral(peripheral_id)
    if isinstance(peripheral.kind, Movable):
        movement = peripheral.kind.moves.get(action_id)
        if movement is None:
            raise UnknownReferenceError(f"Undefined movement '{peripheral_id}.{action_id}'", entity=f"{peripheral_id}.{action_id}")
        if isinstance(movement.profile, ThirdOrder):
            return None
        return movement_duration(movement)

    timing = peripheral.kind.actions.get(action_id)
    if timing is None:
        raise UnknownReferenceError(f"Undefined action '{peripheral_id}.{action_id}'", entity=f"{peripheral_id}.{action_id}")
    return timing_mean(timing)
