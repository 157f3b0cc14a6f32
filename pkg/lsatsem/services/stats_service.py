"""Per-activity statistics of a specification"""

import pandas as pd

from lsatsem.builders.activity import enumerate_postsets
from lsatsem.models.specification import ActionNode
from lsatsem.services.timing_service import action_duration
from lsatsem.utils.errors import LsatError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)

STATS_COLUMNS = ['activity', 'nodes', 'edges', 'resources', 'peripherals', 'postsets', 'mean_action_time']


class StatsService:
    """Service computing summary tables for specifications"""

    def __init__(self, spec):
        self.spec = spec

    def activity_row(self, activity):
        """
        Summary of one activity

        Args:
            activity: Activity

        Returns:
            Dictionary with one value per column of STATS_COLUMNS
        """
        # Postset count (None when over the cap)
        try:
            postsets = len(enumerate_postsets(activity))
        except LsatError as e:
            logger.warning(f"Skipping postset count of '{activity.id}': {e}")
            postsets = None

        # Sum of mean durations of timed actions
        total = 0.0
        for kind in activity.nodes.values():
            if not isinstance(kind, ActionNode):
                continue
            try:
                duration = action_duration(self.spec, kind.peripheral, kind.action)
            except LsatError as e:
                logger.warning(f"No duration for '{kind.peripheral}.{kind.action}': {e}")
                duration = None
            if duration is not None:
                total += duration

        return {
            'activity': activity.id,
            'nodes': len(activity.nodes),
            'edges': len(activity.edges),
            'resources': len(activity.resources),
            'peripherals': len(activity.peripherals),
            'postsets': postsets,
            'mean_action_time': total,
        }

    def spec_statistics(self):
        """
        One row per activity, sorted by activity id

        Returns:
            pandas DataFrame with the STATS_COLUMNS columns
        """
        rows = [self.activity_row(self.spec.activities[a]) for a in sorted(self.spec.activities)]
        return pd.DataFrame(rows, columns=STATS_COLUMNS)


def spec_statistics(spec):
    """Statistics table of a specification (see StatsService.spec_statistics)"""
    return StatsService(spec).spec_statistics()
