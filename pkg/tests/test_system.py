"""Unit tests for full-system automata, dispatch FSAs and completeness checks"""

import unittest

import networkx as nx

from lsatsem.automata.base import ExplicitAutomaton
from lsatsem.automata.explore import bounded_explore
from lsatsem.automata.traces import accepts_trace, bounded_language, bounded_language_equal
from lsatsem.builders.activity import node_event
from lsatsem.builders.availability import AvailabilityAutomaton, AvailabilityState
from lsatsem.builders.claiming import ClaimingAutomaton
from lsatsem.builders.peripheral import PeripheralAutomaton
from lsatsem.models.events import claim, do, release
from lsatsem.models.specification import Activity, ClaimNode
from lsatsem.sequence.algebra import reduce_dispatching, seq_item
from lsatsem.system.builders import build_component, build_mSeq, build_mseq, build_mseq_explicit
from lsatsem.system.completeness import check_complete, suggest_complete_set
from lsatsem.system.dispatch_fsa import DispatchFSA
from lsatsem.system.product import SequenceSystem, UnionSystem
from lsatsem.utils.errors import (
    BudgetExceededError,
    EmptyFSAError,
    InvalidSpecError,
    UnknownReferenceError,
)
from tests.factories import (
    claiming_spec,
    dispatching,
    fig2_spec,
    random_small_spec,
    seeded,
    two_activity_spec,
)

LEFT = {'p2': {'left'}}


def cycle_fsa():
    """s0 -A1-> s1 -A2-> s0"""
    return DispatchFSA({'s0', 's1'}, {('s0', 'A1', 's1'), ('s1', 'A2', 's0')}, {'s0'})


def check_resource_discipline(test, spec, seq, trace):
    """Per resource, claims and releases alternate and claims follow the reduced order"""
    for resource in sorted(spec.resources):
        reduced = reduce_dispatching(seq, resource, spec)
        events = [e for e in trace if e.resource == resource]
        claimed = False
        claims = 0
        for event in events:
            test.assertEqual(event.is_claim, not claimed)
            if event.is_claim:
                claims += 1
                test.assertEqual(event.instance, seq_item(reduced, claims))
            claimed = event.is_claim


def check_node_order(test, spec, trace):
    """Per instance and peripheral, actions never run ahead of a predecessor node"""
    seen = {}
    for event in trace:
        if not event.is_action:
            continue
        activity = spec.activities[event.instance.activity]
        nodes = {node_event(event.instance, kind): node_id for node_id, kind in activity.nodes.items()}
        node = nodes[event]
        earlier = seen.setdefault((event.instance, event.payload.peripheral), [])
        for previous in earlier:
            test.assertNotIn(node, nx.ancestors(activity.graph, previous))
        earlier.append(node)


def check_movement_chain(test, spec, trace):
    """Each movement of a movable peripheral starts where the previous one ended"""
    positions = {}
    movements = 0
    for event in trace:
        if not event.is_action:
            continue
        peripheral = spec.peripherals[event.payload.peripheral]
        if not peripheral.is_movable:
            continue
        movement = peripheral.kind.moves[event.payload.action]
        if peripheral.id in positions:
            test.assertEqual(movement.source, positions[peripheral.id])
        positions[peripheral.id] = movement.target
        movements += 1
    return movements


class TestSequenceSystem(unittest.TestCase):
    """Test cases for the full system of one dispatching sequence"""

    def test_single_instance_terminates(self):
        """Test that one pinned instance of Act ends with both resources released"""
        graph = bounded_explore(build_mseq(fig2_spec(), dispatching(['Act']), LEFT), depth=20)
        self.assertEqual(graph.frontier, frozenset())
        terminal = graph.terminal_states()
        self.assertEqual(len(terminal), 1)
        state = graph.objects[terminal[0]]
        self.assertEqual(dict(state.availability), {'R1': AvailabilityState.RELEASED, 'R2': AvailabilityState.RELEASED})
        self.assertEqual(state.in_flight, ())
        self.assertEqual(dict(state.completed), {'Act': 1})

    def test_blocked_movement(self):
        """Test that starting in the middle position deadlocks with R2 claimed"""
        graph = bounded_explore(build_mseq(fig2_spec(), dispatching(['Act']), {'p2': {'middle'}}), depth=20)
        [terminal] = graph.terminal_states()
        self.assertEqual(dict(graph.objects[terminal].availability)['R2'], AvailabilityState.CLAIMED)

    def test_all_initial_peripheral_states(self):
        """Test that without pins every peripheral state combination is initial"""
        system = build_mseq(fig2_spec(), dispatching(['Act']))
        self.assertEqual(len(system.initial_states()), 2)
        self.assertEqual(len(build_mseq(fig2_spec(), dispatching(['Act']), LEFT).initial_states()), 1)

    def test_empty_sequence(self):
        """Test that the empty dispatching sequence only has the empty trace"""
        self.assertEqual(bounded_language(build_mseq(fig2_spec(), dispatching()), 5), {()})

    def test_overlapping_instances(self):
        """Test that Act#2 may act on p1 before Act#1 moves p2"""
        system = build_mseq(fig2_spec(), dispatching([], ['Act']), LEFT)
        trace = [
            claim('Act', 1, 'R1'),
            claim('Act', 1, 'R2'),
            do('Act', 1, 'p1', 'a'),
            release('Act', 1, 'R1'),
            claim('Act', 2, 'R1'),
            do('Act', 2, 'p1', 'a'),
            do('Act', 1, 'p2', 'l_to_m'),
        ]
        self.assertTrue(accepts_trace(system, trace))
        self.assertFalse(accepts_trace(system, [claim('Act', 2, 'R1')]))

    def test_unbounded_in_flight_instances(self):
        """Test that k instances are in flight together within 4k events"""
        system = build_mseq(fig2_spec(), dispatching([], ['Act']), LEFT)
        for k in range(1, 5):
            graph = bounded_explore(system, depth=4 * k)
            self.assertIn(k, {len(state.in_flight) for state in graph.objects})

    def test_equivalent_sequences(self):
        """Test that A1;A2;(A1;A2)^w and A1;(A2;A1)^w have the same language"""
        spec = two_activity_spec()
        first = build_mseq(spec, dispatching(['A1', 'A2'], ['A1', 'A2']))
        second = build_mseq(spec, dispatching(['A1'], ['A2', 'A1']))
        equal, witness = bounded_language_equal(first, second, 20)
        self.assertTrue(equal)
        self.assertIsNone(witness)

    def test_different_sequences(self):
        """Test that a different claim order is told apart"""
        spec = two_activity_spec()
        first = build_mseq(spec, dispatching(['A1', 'A2']))
        second = build_mseq(spec, dispatching(['A2', 'A1']))
        equal, witness = bounded_language_equal(first, second, 10)
        self.assertFalse(equal)
        self.assertEqual(witness, [claim('A1', 1, 'R1')])

    def test_resource_discipline(self):
        """Test alternation and claim order on every explored trace"""
        spec = claiming_spec()
        system = build_mseq(spec, spec.dispatch)
        for trace in bounded_language(system, 8):
            check_resource_discipline(self, spec, spec.dispatch, trace)

    def test_lazy_matches_explicit(self):
        """Test the lazy product against the literal composition on random specs, movable peripherals included"""
        rng = seeded(11)
        with_movements = 0
        for _ in range(50):
            spec = random_small_spec(rng)
            lazy = build_mseq(spec, spec.dispatch)
            explicit = build_mseq_explicit(spec, spec.dispatch)
            equal, witness = bounded_language_equal(lazy, explicit, 10)
            self.assertTrue(equal, msg=f"{spec.dispatch}: {witness}")
            used = frozenset().union(*(a.peripherals for a in spec.activities.values()))
            with_movements += any(spec.peripherals[p].is_movable for p in used)
        self.assertGreater(with_movements, 0)

    def test_explicit_needs_finite_sequence(self):
        """Test that explicit composition refuses periodic sequences"""
        with self.assertRaises(BudgetExceededError):
            build_mseq_explicit(fig2_spec(), dispatching([], ['Act']))

    def test_invalid_spec(self):
        """Test E_INVALID_SPEC"""
        spec = fig2_spec(activity=Activity('Act', {'n1': ClaimNode('R1')}))
        with self.assertRaises(InvalidSpecError) as ctx:
            build_mseq(spec, dispatching(['Act']))
        self.assertEqual(ctx.exception.diagnostics[0].code, 'E_UNRELEASED_CLAIM')

    def test_undefined_pin(self):
        """Test that pinning an undefined peripheral is an error"""
        with self.assertRaises(UnknownReferenceError):
            build_mseq(fig2_spec(), dispatching(['Act']), {'p9': {'left'}})


class TestUnionSystem(unittest.TestCase):
    """Test cases for the union system of a dispatch FSA"""

    def test_cycle_matches_sequence(self):
        """Test that a two-state cycle behaves like A1;(A2;A1)^w and A1;A2;(A1;A2)^w"""
        spec = two_activity_spec()
        union = build_mSeq(spec, cycle_fsa())
        for seq in [dispatching(['A1'], ['A2', 'A1']), dispatching(['A1', 'A2'], ['A1', 'A2'])]:
            with self.subTest(seq=seq.render()):
                self.assertTrue(bounded_language_equal(union, build_mseq(spec, seq), 20)[0])

    def test_one_target_per_event(self):
        """Test that dispatching on demand keeps a deterministic FSA's union deterministic"""
        graph = bounded_explore(build_mSeq(two_activity_spec(), cycle_fsa()), depth=8)
        for source in range(len(graph.states)):
            events = [event for origin, event, _ in graph.transitions if origin == source]
            self.assertEqual(len(events), len(set(events)))

    def test_branches_are_a_union(self):
        """Test that two branches over disjoint resources give the union of both languages"""
        spec = claiming_spec()
        fsa = DispatchFSA(
            {'s0', 's1', 's2'},
            {('s0', 'ActA', 's1'), ('s0', 'ActC', 's2')},
            {'s0'},
        )
        expected = (
            bounded_language(build_mseq(spec, dispatching(['ActA'])), 10)
            | bounded_language(build_mseq(spec, dispatching(['ActC'])), 10)
        )
        self.assertEqual(bounded_language(build_mSeq(spec, fsa), 10), expected)

    def test_no_transitions(self):
        """Test that an FSA without transitions only has the empty trace"""
        fsa = DispatchFSA({'s0'}, set(), {'s0'})
        self.assertEqual(bounded_language(build_mSeq(two_activity_spec(), fsa), 6), {()})

    def test_empty_fsa(self):
        """Test E_EMPTY_FSA"""
        with self.assertRaises(EmptyFSAError):
            build_mSeq(two_activity_spec(), DispatchFSA({'s0'}, set(), set()))

    def test_internal_cap(self):
        """Test the default cap on consecutive silent dispatch steps"""
        self.assertEqual(build_mSeq(two_activity_spec(), cycle_fsa()).internal_cap, 8)
        self.assertEqual(build_mSeq(two_activity_spec(), cycle_fsa(), internal_cap=3).internal_cap, 3)

    def test_dispatch_is_silent(self):
        """Test that dispatching is silent and A2#1 may claim R2 ahead of A1#1"""
        union = build_mSeq(two_activity_spec(), cycle_fsa())
        [initial] = union.initial_states()
        events = [event for event, _ in union.successors(initial)]
        self.assertEqual(events, [claim('A1', 1, 'R1'), claim('A2', 1, 'R2')])


class TestSystemProperties(unittest.TestCase):
    """Properties checked on every explored trace"""

    def specs(self, seed, count=20):
        rng = seeded(seed)
        return [fig2_spec(dispatch=dispatching([], ['Act']))] + [random_small_spec(rng) for _ in range(count)]

    def test_actions_follow_node_order(self):
        """Test that an instance's actions on one peripheral respect the activity's edges"""
        for spec in self.specs(23):
            for trace in bounded_language(build_mseq(spec, spec.dispatch), 8):
                check_node_order(self, spec, trace)

    def test_movements_chain(self):
        """Test that every movement starts at the position the previous one reached"""
        movements = 0
        for spec in self.specs(29):
            for trace in bounded_language(build_mseq(spec, spec.dispatch), 8):
                movements += check_movement_chain(self, spec, trace)
        self.assertGreater(movements, 0)

    def test_union_contains_accepted_sequences(self):
        """Test that the FSA union contains the traces of every sequence the completeness check accepts"""
        spec = two_activity_spec()
        fsa = cycle_fsa()
        union = bounded_language(build_mSeq(spec, fsa), 8)
        words = [(), ('A1',), ('A2',), ('A1', 'A2'), ('A2', 'A1'), ('A1', 'A1'), ('A2', 'A2')]
        accepted = 0
        for transient in words:
            for periodic in words:
                seq = dispatching(transient, periodic)
                if check_complete(fsa, [seq], 8).extra_prefixes:
                    continue
                accepted += 1
                self.assertLessEqual(bounded_language(build_mseq(spec, seq), 8), union, msg=seq.render())
        self.assertGreater(accepted, 3)


class TestDispatchFSA(unittest.TestCase):
    """Test cases for dispatch FSAs"""

    def test_words(self):
        """Test the words of length <= 3 of the two-state cycle"""
        words = cycle_fsa().words(3)
        self.assertEqual(set(words), {(), ('A1',), ('A1', 'A2'), ('A1', 'A2', 'A1')})
        self.assertEqual(words[('A1', 'A2')], frozenset({'s0'}))

    def test_graph_and_render(self):
        """Test the state graph and the text form"""
        fsa = cycle_fsa()
        self.assertEqual(fsa.graph()['s0']['s1']['labels'], {'A1'})
        self.assertEqual(fsa.render(), ['states { s0, s1 }', 'initial s0', 'edge s0 -A1-> s1', 'edge s1 -A2-> s0'])
        self.assertEqual(fsa.labels, frozenset({'A1', 'A2'}))


class TestCompleteness(unittest.TestCase):
    """Test cases for completeness checks and suggested sequence sets"""

    def test_complete(self):
        """Test a complete single candidate at depth 20"""
        report = check_complete(cycle_fsa(), [dispatching(['A1'], ['A2', 'A1'])], 20)
        self.assertTrue(report.passed)
        self.assertEqual(report.lines(), ['depth=20 complete'])

    def test_redundant_candidates(self):
        """Test that redundant candidates still pass"""
        candidates = [dispatching(['A1'], ['A2', 'A1']), dispatching(['A1', 'A2'], ['A1', 'A2'])]
        self.assertTrue(check_complete(cycle_fsa(), candidates, 12).passed)

    def test_no_candidates(self):
        """Test that the shortest word is reported missing"""
        report = check_complete(cycle_fsa(), [], 4)
        self.assertFalse(report.passed)
        self.assertEqual(report.missing_words[0], ())
        self.assertEqual(report.lines()[1], 'missing word: ε')

    def test_extra_prefix(self):
        """Test that candidate prefixes outside the FSA language are reported"""
        report = check_complete(cycle_fsa(), [dispatching(['A1'], ['A2', 'A1']), dispatching([], ['A2'])], 3)
        self.assertEqual(report.extra_prefixes[0], ('A2',))
        self.assertEqual(report.to_dict()['extra_prefixes'][0], ['A2'])
        self.assertFalse(report.to_dict()['passed'])

    def test_negative_depth(self):
        """Test that a negative depth is rejected"""
        with self.assertRaises(ValueError):
            check_complete(cycle_fsa(), [], -1)

    def test_suggest_self_loop(self):
        """Test the single lasso of a self-loop"""
        fsa = DispatchFSA({'s'}, {('s', 'A', 's')}, {'s'})
        self.assertEqual(suggest_complete_set(fsa, 2), {dispatching([], ['A'])})

    def test_suggest_cycle(self):
        """Test that both entries of the cycle collapse into one lasso that passes the check"""
        suggestion = suggest_complete_set(cycle_fsa(), 3)
        self.assertEqual(suggestion, {dispatching([], ['A1', 'A2'])})
        self.assertTrue(dispatching(['A1'], ['A2', 'A1']).equivalent(dispatching([], ['A1', 'A2'])))
        self.assertTrue(check_complete(cycle_fsa(), suggestion, 10).passed)

    def test_suggest_dag(self):
        """Test that an acyclic FSA yields its maximal finite words"""
        fsa = DispatchFSA(
            {'s0', 's1', 's2', 's3'},
            {('s0', 'A', 's1'), ('s1', 'B', 's2'), ('s0', 'C', 's3')},
            {'s0'},
        )
        suggestion = suggest_complete_set(fsa, 3)
        self.assertEqual(suggestion, {dispatching(['A', 'B']), dispatching(['C'])})
        self.assertTrue(check_complete(fsa, suggestion, 6).passed)

    def test_suggest_errors(self):
        """Test max_len and candidate budget errors"""
        with self.assertRaises(ValueError):
            suggest_complete_set(cycle_fsa(), 0)
        fsa = DispatchFSA({'s0', 's1', 's2'}, {('s0', 'A', 's1'), ('s0', 'B', 's2')}, {'s0'})
        with self.assertRaises(BudgetExceededError):
            suggest_complete_set(fsa, 2, max_candidates=1)


class TestComponentSelection(unittest.TestCase):
    """Test cases for component selectors"""

    def test_selectors(self):
        """Test every selector kind on the fig2 specification"""
        spec = fig2_spec()
        self.assertIsInstance(build_component(spec), SequenceSystem)
        self.assertIsInstance(build_component(spec, 'availability:R1'), AvailabilityAutomaton)
        self.assertIsInstance(build_component(spec, 'claiming:R2'), ClaimingAutomaton)
        activity = build_component(spec, 'activity:Act#2')
        self.assertIsInstance(activity, ExplicitAutomaton)
        self.assertEqual(activity.name, 'activity:Act#2')
        peripheral = build_component(spec, 'peripheral:p2', LEFT)
        self.assertIsInstance(peripheral, PeripheralAutomaton)
        self.assertEqual(peripheral.initial_states(), ['left'])

    def test_fsa_dispatch(self):
        """Test selectors on a specification with a dispatch FSA"""
        spec = two_activity_spec()
        self.assertIsInstance(build_component(spec), UnionSystem)
        self.assertIsInstance(build_component(spec, 'availability:R1'), AvailabilityAutomaton)
        with self.assertRaises(ValueError):
            build_component(spec, 'claiming:R1')

    def test_bad_selectors(self):
        """Test malformed and undefined selectors"""
        spec = fig2_spec()
        for selector in ['availability', 'activity:Act', 'activity:Act#0', 'bogus:x']:
            with self.subTest(selector=selector):
                with self.assertRaises(ValueError):
                    build_component(spec, selector)
        for selector in ['availability:R9', 'activity:Ghost#1', 'peripheral:p9']:
            with self.subTest(selector=selector):
                with self.assertRaises(UnknownReferenceError):
                    build_component(spec, selector)


if __name__ == '__main__':
    unittest.main()
