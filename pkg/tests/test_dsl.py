"""Unit tests for the .lsat parser and pretty-printer"""

import unittest

from lsatsem.dsl.parser import parse, parse_file
from lsatsem.dsl.printer import pretty_print
from lsatsem.models.specification import Movement, SecondOrder
from lsatsem.system.dispatch_fsa import DispatchFSA
from tests.factories import (
    dispatching,
    fig2_spec,
    fixture_path,
    random_printable_spec,
    read_fixture,
    seeded,
    two_activity_spec,
)

PERIPHERAL = "resource R1 {\n  peripheral p1 unmovable { action a time 1.0 }\n}\n"
ACTIVITY = "activity A {\n  nodes { n1: claim R1  n2: release R1 }\n  flow { n1 -> n2 }\n}\n"
DISPATCH = "dispatch sequence { A }\n"


def codes(result):
    return [d.code for d in result.diagnostics]


class TestParser(unittest.TestCase):
    """Test cases for parsing specifications"""

    def test_fig2(self):
        """Test the fixture against its code-built twin"""
        result = parse(read_fixture('fig2.lsat'))
        self.assertTrue(result.ok)
        spec = result.spec
        self.assertEqual(spec.resources, frozenset({'R1', 'R2'}))
        self.assertEqual(len(spec.peripherals), 2)
        self.assertEqual(len(spec.activities['Act'].nodes), 6)
        self.assertEqual(len(spec.activities['Act'].edges), 5)
        self.assertEqual(spec.owner, {'p1': 'R1', 'p2': 'R2'})
        self.assertEqual(spec, fig2_spec())

    def test_fsa_dispatch(self):
        """Test the dispatch fsa section"""
        spec = parse(read_fixture('two_activities.lsat')).spec
        self.assertIsInstance(spec.dispatch, DispatchFSA)
        self.assertEqual(spec, two_activity_spec())

    def test_sequence_dispatch(self):
        """Test transient elements followed by a repeat block"""
        text = PERIPHERAL + ACTIVITY + "dispatch sequence { A ; A ; repeat { A ; A } }\n"
        self.assertEqual(parse(text).spec.dispatch, dispatching(['A', 'A'], ['A', 'A']))
        empty = parse(PERIPHERAL + ACTIVITY + "dispatch sequence { }\n").spec
        self.assertEqual(empty.dispatch, dispatching())

    def test_spans(self):
        """Test that declarations remember where they were made"""
        result = parse(read_fixture('fig2.lsat'), file_name='fig2.lsat')
        span = result.spec.span_of('Act')
        self.assertEqual((span.file, span.line, span.column, span.length), ('fig2.lsat', 13, 10, 3))
        self.assertEqual(result.spec.span_of('R1').line, 3)
        self.assertEqual(result.spec.source, 'fig2.lsat')

    def test_movement_defaults(self):
        """Test the default distance and settling time"""
        text = (
            "resource R1 {\n  peripheral p movable {\n    positions { x, y }\n"
            "    move go from x to y profile second(v=1.0, a=1.0)\n  }\n}\ndispatch sequence { }\n"
        )
        spec = parse(text).spec
        self.assertEqual(
            spec.peripherals['p'].kind.moves['go'],
            Movement('go', 'x', 'y', SecondOrder(1.0, 1.0), distance=1.0, settling=0.0),
        )

    def test_bytes_input(self):
        """Test UTF-8 bytes input and undecodable bytes"""
        self.assertTrue(parse(read_fixture('fig2.lsat').encode('utf-8')).ok)
        result = parse(b'resource \xff { }')
        self.assertIsNone(result.spec)
        self.assertEqual(codes(result), ['P_SYNTAX'])

    def test_parse_file(self):
        """Test reading from disk and a missing file"""
        result = parse_file(fixture_path('claiming.lsat'))
        self.assertTrue(result.ok)
        self.assertEqual(result.spec.dispatch, dispatching(['ActA'], ['ActB', 'ActC']))
        with self.assertRaises(OSError):
            parse_file(fixture_path('missing.lsat'))


class TestParserDiagnostics(unittest.TestCase):
    """Test cases for malformed input"""

    def test_empty_input(self):
        """Test that an empty file lacks a dispatch section"""
        result = parse('')
        self.assertIsNone(result.spec)
        self.assertEqual(codes(result), ['P_SYNTAX'])
        self.assertIsNone(result.diagnostics[0].span)

    def test_end_of_input(self):
        """Test an unterminated block"""
        result = parse('resource R1 {')
        [diagnostic] = result.diagnostics
        self.assertEqual(diagnostic.code, 'P_SYNTAX')
        self.assertIn('end of input', diagnostic.message)
        self.assertEqual((diagnostic.span.line, diagnostic.span.column), (1, 13))

    def test_unexpected_character(self):
        """Test a character no token starts with"""
        result = parse('resource R1 { $ }\n' + DISPATCH)
        self.assertEqual(codes(result), ['P_SYNTAX'])
        self.assertEqual(result.diagnostics[0].span.column, 15)

    def test_unknown_keywords(self):
        """Test misspelled keywords"""
        for text, line in [
            ('resourc R1 { }\n' + DISPATCH, 1),
            ('resource R1 {\n  peripheral p1 unmovabel { }\n}\n' + DISPATCH, 2),
            (PERIPHERAL + ACTIVITY + 'dispatch sequense { A }\n', 8),
        ]:
            with self.subTest(text=text):
                result = parse(text)
                self.assertEqual(codes(result), ['P_UNKNOWN_KEYWORD'])
                self.assertEqual(result.diagnostics[0].span.line, line)

    def test_unknown_distribution(self):
        """Test distribution and profile names outside the known tables"""
        result = parse("resource R1 {\n  peripheral p1 unmovable { action a time gauss(mu=1.0) }\n}\n" + DISPATCH)
        self.assertEqual(codes(result), ['P_UNKNOWN_KEYWORD'])
        self.assertEqual(result.diagnostics[0].entity, 'p1.a')

        result = parse(
            "resource R1 {\n  peripheral p movable {\n    positions { x, y }\n"
            "    move go from x to y profile fourth(v=1.0)\n  }\n}\n" + DISPATCH
        )
        self.assertEqual(codes(result), ['P_UNKNOWN_KEYWORD'])

    def test_parameters(self):
        """Test duplicate, unknown and missing parameters"""
        cases = [
            ('normal(mu=1.0, mu=2.0, sigma=1.0)', 'P_DUPLICATE'),
            ('normal(mu=1.0, sd=2.0)', 'P_SYNTAX'),
            ('triangular(a=1.0, b=2.0)', 'P_SYNTAX'),
        ]
        for timing, code in cases:
            with self.subTest(timing=timing):
                text = f"resource R1 {{\n  peripheral p1 unmovable {{ action a time {timing} }}\n}}\n" + DISPATCH
                self.assertIn(code, codes(parse(text)))

    def test_duplicate_activity(self):
        """Test P_DUPLICATE with the first declaration as related span"""
        result = parse(PERIPHERAL + ACTIVITY + ACTIVITY + DISPATCH)
        [diagnostic] = result.diagnostics
        self.assertEqual(diagnostic.code, 'P_DUPLICATE')
        self.assertEqual(diagnostic.entity, 'A')
        self.assertEqual(diagnostic.span.line, 8)
        self.assertEqual([span.line for span in diagnostic.related], [4])

    def test_duplicate_declarations(self):
        """Test duplicate resources, nodes, move attributes and dispatch sections"""
        texts = [
            PERIPHERAL + 'resource R1 { }\n' + DISPATCH,
            PERIPHERAL + "activity A {\n  nodes { n1: claim R1  n1: release R1 }\n}\n" + DISPATCH,
            PERIPHERAL + ACTIVITY + DISPATCH + DISPATCH,
            (
                "resource R1 {\n  peripheral p movable {\n    positions { x, y }\n"
                "    move go from x to y profile second(v=1.0, a=1.0) distance 1.0 distance 2.0\n  }\n}\n" + DISPATCH
            ),
        ]
        for text in texts:
            with self.subTest(text=text):
                self.assertEqual(codes(parse(text)), ['P_DUPLICATE'])

    def test_repeat_must_be_last(self):
        """Test misplaced and repeated repeat blocks"""
        for body in ['repeat { A } ; A', 'repeat { A } ; repeat { A }']:
            with self.subTest(body=body):
                result = parse(PERIPHERAL + ACTIVITY + f"dispatch sequence {{ {body} }}\n")
                self.assertEqual(codes(result), ['P_SYNTAX'])

    def test_missing_dispatch(self):
        """Test that a dispatch section is required"""
        self.assertEqual(codes(parse(PERIPHERAL + ACTIVITY)), ['P_SYNTAX'])

    def test_diagnostics_are_sorted(self):
        """Test that several walker diagnostics come back in source order"""
        text = PERIPHERAL + ACTIVITY + ACTIVITY + 'resource R1 { }\n' + DISPATCH
        result = parse(text)
        self.assertEqual([d.span.line for d in result.diagnostics], [8, 12])

    def test_spans_stay_inside_text(self):
        """Test that every reported span points at an existing character"""
        texts = ['resource R1 {\n\n\n', 'resource R1 { $ }', 'activity', 'dispatch sequence { A ; }\n']
        for text in texts:
            lines = text.split('\n')
            for diagnostic in parse(text).diagnostics:
                if diagnostic.span is None:
                    continue
                self.assertLessEqual(diagnostic.span.line, len(lines))
                self.assertLessEqual(diagnostic.span.column, max(1, len(lines[diagnostic.span.line - 1])))


class TestPrettyPrinter(unittest.TestCase):
    """Test cases for canonical rendering"""

    def test_fig2_round_trip(self):
        """Test that printing and parsing gives back the same specification"""
        spec = parse(read_fixture('fig2.lsat')).spec
        text = pretty_print(spec)
        self.assertEqual(parse(text).spec, spec)
        self.assertNotIn('//', text)
        self.assertTrue(text.endswith('}\n'))

    def test_canonical_form(self):
        """Test the printed layout of the fig2 specification"""
        text = pretty_print(fig2_spec())
        self.assertIn('  peripheral p1 unmovable {\n    action a time 2.0\n  }', text)
        self.assertIn(
            'move l_to_m from left to middle profile second(v=1.0, a=2.0) distance 1.0 settling 0.1',
            text,
        )
        self.assertIn('    n3: p1.a\n', text)
        self.assertIn('dispatch sequence { Act }', text)
        self.assertLess(text.index('resource R1'), text.index('resource R2'))

    def test_fsa_and_repeat(self):
        """Test printing of both dispatch forms"""
        self.assertIn('edge s0 -A1-> s1', pretty_print(two_activity_spec()))
        spec = fig2_spec(dispatch=dispatching(['Act'], ['Act']))
        self.assertIn('dispatch sequence { Act ; repeat { Act } }', pretty_print(spec))

    def test_declaration_order_does_not_matter(self):
        """Test that reordered input prints identically"""
        text = PERIPHERAL + ACTIVITY + DISPATCH
        reordered = DISPATCH + ACTIVITY + PERIPHERAL
        self.assertEqual(pretty_print(parse(text).spec), pretty_print(parse(reordered).spec))

    def test_random_round_trips(self):
        """Test parse(pretty_print(spec)) == spec on generated specifications"""
        rng = seeded(17)
        for _ in range(100):
            spec = random_printable_spec(rng)
            text = pretty_print(spec)
            result = parse(text)
            self.assertEqual(result.diagnostics, [], msg=text)
            self.assertEqual(result.spec, spec, msg=text)
            self.assertEqual(pretty_print(result.spec), text)


if __name__ == '__main__':
    unittest.main()
