"""Instance universe: the used activity instances of a dispatch"""

from config import settings
from lsatsem.models.events import ActivityInstance


class InstanceUniverse:
    """
    Predicate plus generator over the used activity instances

    Activities with a finite bound have instances 1..bound; unbounded ones
    have every index >= 1. Membership is exact, enumeration of unbounded
    activities stops at `horizon`.

    Args:
        spec: Specification the activities belong to
        bounds: Map activity id -> instance count, None for unbounded
        horizon: Instances enumerated per unbounded activity
    """

    def __init__(self, spec, bounds, horizon=None):
        self.spec = spec
        self.bounds = dict(bounds)
        self.horizon = getattr(settings, 'INSTANCE_HORIZON', 2) if horizon is None else horizon

    @classmethod
    def from_used_sets(cls, spec, used, horizon=None):
        return cls(spec, used.instance_bound, horizon)

    @property
    def activities(self):
        return frozenset(self.bounds)

    @property
    def is_finite(self):
        return all(bound is not None for bound in self.bounds.values())

    def __contains__(self, instance):
        if instance.activity not in self.bounds:
            return False
        bound = self.bounds[instance.activity]
        return bound is None or instance.index <= bound

    def instances(self, activity):
        """Enumerated instances of one activity"""
        bound = self.bounds.get(activity, 0)
        limit = self.horizon if bound is None else bound
        return [ActivityInstance(activity, j) for j in range(1, limit + 1)]

    def all_instances(self):
        return [instance for act in sorted(self.bounds) for instance in self.instances(act)]

    def activities_using(self, resource):
        """Used activities whose resource set contains `resource`"""
        return sorted(act for act in self.bounds if resource in self.spec.resources_of(act))

    def __repr__(self):
        bounds = ', '.join(f"{a}={'inf' if b is None else b}" for a, b in sorted(self.bounds.items()))
        return f"InstanceUniverse({bounds})"
