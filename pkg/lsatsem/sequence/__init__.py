"""Sequence package initialization for the LSAT semantics toolkit"""

from lsatsem.sequence.algebra import (
    EPSILON,
    ActivitySequence,
    InstanceSequence,
    DispatchingSequence,
    instantiate,
    parse_dispatching_sequence,
    concat,
    power,
    prefixes,
    dispatch_prefix_stream,
    reduce_for_resource,
    reduce_dispatching,
    instance_index,
    seq_item,
)

# Define publicly available imports
__all__ = [
    'EPSILON',
    'ActivitySequence',
    'InstanceSequence',
    'DispatchingSequence',
    'instantiate',
    'parse_dispatching_sequence',
    'concat',
    'power',
    'prefixes',
    'dispatch_prefix_stream',
    'reduce_for_resource',
    'reduce_dispatching',
    'instance_index',
    'seq_item',
]
