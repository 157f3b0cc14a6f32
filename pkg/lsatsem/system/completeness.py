"""Completeness of dispatching-sequence sets with respect to a dispatch FSA"""

import itertools
from dataclasses import dataclass, field

import networkx as nx

from config import settings
from lsatsem.sequence.algebra import EPSILON, ActivitySequence, DispatchingSequence, dispatch_prefix_stream
from lsatsem.utils.errors import BudgetExceededError
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)


def _word_order(word):
    return (len(word), word)


def _render_word(word):
    return ' ; '.join(word) if word else EPSILON


@dataclass
class CompletenessReport:
    """
    Result of a bounded completeness check

    `missing_words` are FSA words no candidate prefix matches; `extra_prefixes`
    are candidate prefixes the FSA cannot produce. Both sorted shortest first.
    """
    depth: int
    missing_words: list = field(default_factory=list)
    extra_prefixes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.missing_words and not self.extra_prefixes

    def lines(self):
        """Human-readable report lines"""
        lines = [f"depth={self.depth} {'complete' if self.passed else 'incomplete'}"]
        lines.extend(f"missing word: {_render_word(w)}" for w in self.missing_words)
        lines.extend(f"extra prefix: {_render_word(w)}" for w in self.extra_prefixes)
        return lines

    def to_dict(self):
        return {
            'depth': self.depth,
            'passed': self.passed,
            'missing_words': [list(w) for w in self.missing_words],
            'extra_prefixes': [list(w) for w in self.extra_prefixes],
        }


def candidate_prefixes(candidates, depth):
    """Prefixes of length <= depth of every candidate sequence, as tuples"""
    found = set()
    for seq in candidates:
        for prefix in dispatch_prefix_stream(seq):
            if len(prefix) > depth:
                break
            found.add(prefix.items)
    return found


def check_complete(fsa, candidates, depth):
    """
    Bounded check that a set of dispatching sequences is complete for an FSA

    Every FSA word of length <= depth must be a prefix of some candidate, and
    every candidate prefix of length <= depth must be an FSA word. A pass is
    evidence up to `depth`, not a proof.

    Args:
        fsa: DispatchFSA
        candidates: Iterable of DispatchingSequence
        depth: Word length bound

    Returns:
        CompletenessReport
    """
    if depth < 0:
        raise ValueError(f"Depth must be >= 0, got {depth}")
    words = set(fsa.words(depth))
    prefixes = candidate_prefixes(list(candidates), depth)

    report = CompletenessReport(
        depth=depth,
        missing_words=sorted(words - prefixes, key=_word_order),
        extra_prefixes=sorted(prefixes - words, key=_word_order),
    )
    logger.debug(
        f"Completeness at depth {depth}: {len(report.missing_words)} missing, "
        f"{len(report.extra_prefixes)} extra"
    )
    return report


def _label_words(graph, path):
    """Every label word along a state path"""
    choices = [sorted(graph[u][v]['labels']) for u, v in zip(path, path[1:])]
    return [tuple(word) for word in itertools.product(*choices)]


def _paths(graph, source, target, cutoff):
    if source == target:
        yield [source]
        return
    for path in sorted(nx.all_simple_paths(graph, source, target, cutoff=cutoff)):
        yield path


def _canonical_cycles(graph):
    cycles = set()
    for cycle in nx.simple_cycles(graph):
        start = cycle.index(min(cycle))
        cycles.add(tuple(cycle[start:] + cycle[:start]))
    return sorted(cycles)


def _drop_equivalent(candidates, horizon):
    """Keep the shortest, then first-rendered, sequence of each class of equivalent ones"""
    buckets = {}
    for seq in sorted(candidates, key=lambda s: (len(s.transient) + len(s.periodic), s.render())):
        # Equivalent sequences share every prefix
        kept = buckets.setdefault((seq.is_finite, seq.word_prefix(horizon).items), [])
        if not any(seq.equivalent(other) for other in kept):
            kept.append(seq)
    return [seq for kept in buckets.values() for seq in kept]


def suggest_complete_set(fsa, max_len, max_candidates=None):
    """
    Best-effort set of lassos transient;(periodic)^w covering an FSA

    Lassos follow a simple path from an initial state into a simple cycle
    (entered at any of its states); maximal finite words end in states
    without outgoing transitions. The result is checked with check_complete
    at depth 2*max_len and a failing check is logged, not raised. Of several
    equivalent lassos only the shortest is kept.

    Args:
        fsa: DispatchFSA
        max_len: Bound on the length of both parts
        max_candidates: Candidate budget

    Returns:
        frozenset of DispatchingSequence

    Raises:
        BudgetExceededError: If more than max_candidates sequences are produced
    """
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    max_candidates = (
        getattr(settings, 'SUGGEST_MAX_CANDIDATES', 10000) if max_candidates is None else max_candidates
    )

    graph = fsa.graph()
    cycles = _canonical_cycles(graph)
    sinks = sorted(s for s in graph.nodes if graph.out_degree(s) == 0)
    candidates = set()

    def add(transient, periodic):
        candidates.add(DispatchingSequence(ActivitySequence(transient), ActivitySequence(periodic)))
        if len(candidates) > max_candidates:
            logger.error(f"More than {max_candidates} candidate sequences")
            raise BudgetExceededError(f"More than {max_candidates} candidate sequences", max_candidates=max_candidates)

    for start in sorted(fsa.initial):
        for cycle in cycles:
            if len(cycle) > max_len:
                continue
            for i, entry in enumerate(cycle):
                rotated = list(cycle[i:] + cycle[:i])
                loops = _label_words(graph, rotated + [rotated[0]])
                for path in _paths(graph, start, entry, max_len):
                    for transient in _label_words(graph, path):
                        for periodic in loops:
                            add(transient, periodic)

        for sink in sinks:
            for path in _paths(graph, start, sink, max_len):
                for transient in _label_words(graph, path):
                    add(transient, ())

    suggestion = frozenset(_drop_equivalent(candidates, 2 * max_len))
    report = check_complete(fsa, suggestion, 2 * max_len)
    if not report.passed:
        logger.warning(f"Suggested sequence set is incomplete: {'; '.join(report.lines()[1:6])}")
    logger.info(f"Suggested {len(suggestion)} dispatching sequence(s)")
    return suggestion
