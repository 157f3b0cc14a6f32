"""Parser for .lsat specification files"""

import functools
from dataclasses import dataclass, field
from typing import Optional

import lark
from lark.exceptions import LarkError, UnexpectedCharacters, UnexpectedEOF, UnexpectedToken
from lark.lexer import PatternStr

from config import settings
from lsatsem.models.diagnostics import (
    Diagnostic,
    P_DUPLICATE,
    P_SYNTAX,
    P_UNKNOWN_KEYWORD,
    SourceSpan,
)
from lsatsem.models.specification import (
    ActionNode,
    Activity,
    ClaimNode,
    Deterministic,
    Movable,
    Movement,
    Normal,
    Peripheral,
    Pert,
    ReleaseNode,
    SecondOrder,
    Specification,
    ThirdOrder,
    Triangular,
    Unmovable,
)
from lsatsem.sequence.algebra import ActivitySequence, DispatchingSequence
from lsatsem.system.dispatch_fsa import DispatchFSA
from lsatsem.utils.logging_utils import get_logger

logger = get_logger(__name__)

# Distribution and profile names with their parameter names, in print order
DISTRIBUTIONS = {
    'normal': ('mu', 'sigma'),
    'triangular': ('a', 'm', 'b'),
    'pert': ('a', 'm', 'b'),
}
PROFILES = {
    'second': ('v', 'a'),
    'third': ('v', 'a', 'j'),
}


@functools.cache
def _parser():
    """Create/retrieve the singleton LALR parser"""
    return lark.Lark.open(
        'lsat.lark',
        rel_to=__file__,
        parser='lalr',
        propagate_positions=True,
        maybe_placeholders=False,
    )


@functools.cache
def _keyword_terminals():
    """Names of the terminals that stand for alphabetic keywords"""
    return frozenset(
        terminal.name for terminal in _parser().terminals
        if isinstance(terminal.pattern, PatternStr) and terminal.pattern.value.isalpha()
    )


@dataclass
class ParseResult:
    """Outcome of parsing: a Specification when no diagnostics were raised"""
    spec: Optional[Specification] = None
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self):
        return self.spec is not None and not self.diagnostics


class _SpecBuilder:
    """Walks the parse tree, building model objects and collecting diagnostics"""

    def __init__(self, text, file_name):
        self.text = text
        self.file = file_name
        self.diagnostics = []
        self.spans = {}
        self.seen = {}
        self.resources = set()
        self.peripherals = {}
        self.owner = {}
        self.activities = {}
        self.dispatch = None

    # Spans and diagnostics

    def span(self, token):
        return SourceSpan(self.file, token.line, token.column, max(1, len(token)))

    def span_at(self, line, column, length=1):
        """Span clamped inside the text (end-of-input errors point at the last character)"""
        lines = self.text.split('\n')
        if not self.text.strip():
            return None
        inside = (
            line is not None and 1 <= line <= len(lines)
            and column is not None and 1 <= column <= max(1, len(lines[line - 1]))
        )
        if not inside:
            line = max(i for i, content in enumerate(lines, start=1) if content.strip())
            column = len(lines[line - 1].rstrip())
        width = max(1, min(length, len(lines[line - 1]) - column + 1))
        return SourceSpan(self.file, line, column, width)

    def report(self, code, entity, message, token=None, related=()):
        span = self.span(token) if token is not None else None
        self.diagnostics.append(Diagnostic(code, entity, message, span=span, related=tuple(related)))

    def declare(self, namespace, entity, token):
        """Record a declaration; False (with P_DUPLICATE) if already declared"""
        first = self.seen.setdefault(namespace, {}).get(entity)
        if first is not None:
            self.report(
                P_DUPLICATE, entity,
                f"duplicate {namespace} '{entity}' (first declared at line {first.line})",
                token, related=(first,),
            )
            return False
        span = self.span(token)
        self.seen[namespace][entity] = span
        self.spans.setdefault(entity, span)
        return True

    # Numbers and parameter lists

    def params(self, trees, entity, allowed):
        """Map parameter name -> value, reporting unknown, missing and duplicate names"""
        values = {}
        for tree in trees:
            name, number = tree.children
            if name in values:
                self.report(P_DUPLICATE, entity, f"duplicate parameter '{name}'", name)
            elif name not in allowed:
                self.report(P_SYNTAX, entity, f"unexpected parameter '{name}', expected {', '.join(allowed)}", name)
            else:
                values[str(name)] = float(number)
        return values

    def complete(self, values, allowed, entity, token):
        missing = [name for name in allowed if name not in values]
        if missing:
            self.report(P_SYNTAX, entity, f"missing parameter(s) {', '.join(missing)}", token)
            return False
        return True

    # Resources

    def resource(self, tree):
        name = tree.children[0]
        if not self.declare('resource', str(name), name):
            return
        self.resources.add(str(name))
        for child in tree.children[1:]:
            self.peripheral(child, str(name))

    def peripheral(self, tree, owner):
        name = tree.children[0]
        peripheral_id = str(name)
        if not self.declare('peripheral', peripheral_id, name):
            return
        self.owner[peripheral_id] = owner

        if tree.data == 'unmovable':
            actions = {}
            for decl in tree.children[1:]:
                action_token, timing_tree = decl.children
                entity = f"{peripheral_id}.{action_token}"
                if not self.declare('action', entity, action_token):
                    continue
                timing = self.timing(timing_tree, entity)
                if timing is not None:
                    actions[str(action_token)] = timing
            self.peripherals[peripheral_id] = Peripheral(peripheral_id, Unmovable(actions))
            return

        positions = set()
        moves = {}
        for child in tree.children[1:]:
            if child.data == 'positions':
                for token in child.children:
                    if self.declare('position', f"{peripheral_id}@{token}", token):
                        positions.add(str(token))
            else:
                movement = self.movement(child, peripheral_id)
                if movement is not None:
                    moves[movement.id] = movement
        self.peripherals[peripheral_id] = Peripheral(peripheral_id, Movable(frozenset(positions), moves))

    def timing(self, tree, entity):
        if tree.data == 'fixed_time':
            return Deterministic(float(tree.children[0]))

        name = tree.children[0]
        allowed = DISTRIBUTIONS.get(str(name))
        if allowed is None:
            self.report(
                P_UNKNOWN_KEYWORD, entity,
                f"unknown distribution '{name}', expected {', '.join(DISTRIBUTIONS)}", name,
            )
            return None
        values = self.params(tree.children[1:], entity, allowed)
        if not self.complete(values, allowed, entity, name):
            return None
        if name == 'normal':
            return Normal(values['mu'], values['sigma'])
        if name == 'triangular':
            return Triangular(values['a'], values['m'], values['b'])
        return Pert(values['a'], values['m'], values['b'])

    def movement(self, tree, peripheral_id):
        move_token, source, target, profile_token = tree.children[:4]
        entity = f"{peripheral_id}.{move_token}"
        if not self.declare('action', entity, move_token):
            return None

        params = [c for c in tree.children[4:] if c.data == 'param']
        attributes = [c for c in tree.children[4:] if c.data != 'param']

        allowed = PROFILES.get(str(profile_token))
        if allowed is None:
            self.report(
                P_UNKNOWN_KEYWORD, entity,
                f"unknown profile '{profile_token}', expected {', '.join(PROFILES)}", profile_token,
            )
            return None
        values = self.params(params, entity, allowed)
        if not self.complete(values, allowed, entity, profile_token):
            return None
        if profile_token == 'second':
            profile = SecondOrder(values['v'], values['a'])
        else:
            profile = ThirdOrder(values['v'], values['a'], values['j'])

        extra = {}
        for attribute in attributes:
            if attribute.data in extra:
                self.report(P_DUPLICATE, entity, f"duplicate attribute '{attribute.data}'", attribute.children[0])
                continue
            extra[attribute.data] = float(attribute.children[0])

        return Movement(
            id=str(move_token),
            source=str(source),
            target=str(target),
            profile=profile,
            distance=extra.get('distance', getattr(settings, 'DEFAULT_MOVEMENT_DISTANCE', 1.0)),
            settling=extra.get('settling', 0.0),
        )

    # Activities

    def activity(self, tree):
        name = tree.children[0]
        activity_id = str(name)
        if not self.declare('activity', activity_id, name):
            return

        nodes = {}
        for decl in tree.children[1].children:
            node_token = decl.children[0]
            if not self.declare('node', f"{activity_id}.{node_token}", node_token):
                continue
            if decl.data == 'claim_decl':
                nodes[str(node_token)] = ClaimNode(str(decl.children[1]))
            elif decl.data == 'release_decl':
                nodes[str(node_token)] = ReleaseNode(str(decl.children[1]))
            else:
                nodes[str(node_token)] = ActionNode(str(decl.children[2]), str(decl.children[1]))

        edges = set()
        if len(tree.children) > 2:
            for chain in tree.children[2].children:
                names = [str(token) for token in chain.children]
                edges.update(zip(names, names[1:]))

        self.activities[activity_id] = Activity(activity_id, nodes, frozenset(edges))

    # Dispatch

    def dispatch_section(self, tree):
        keyword_span = self.span_at(getattr(tree.meta, 'line', None), getattr(tree.meta, 'column', None), len('dispatch'))
        if self.dispatch is not None:
            first = self.spans.get('dispatch')
            self.diagnostics.append(Diagnostic(
                P_DUPLICATE, 'dispatch', "duplicate dispatch section",
                span=keyword_span, related=(first,) if first else (),
            ))
            return
        if keyword_span is not None:
            self.spans['dispatch'] = keyword_span

        if tree.data == 'dispatch_sequence':
            self.dispatch = self.sequence(tree)
        else:
            self.dispatch = self.fsa(tree)

    def sequence(self, tree):
        transient, periodic = [], None
        for element in tree.children:
            if element.data == 'seq_repeat':
                if periodic is not None:
                    self.report(P_SYNTAX, 'dispatch', "only one repeat block is allowed", element.children[0] if element.children else None)
                    continue
                periodic = [str(token) for token in element.children]
            elif periodic is not None:
                self.report(P_SYNTAX, 'dispatch', "repeat block must be the last element", element.children[0])
            else:
                transient.append(str(element.children[0]))
        return DispatchingSequence(ActivitySequence(tuple(transient)), ActivitySequence(tuple(periodic or ())))

    def fsa(self, tree):
        states, initial, transitions = set(), set(), set()
        for item in tree.children:
            if item.data == 'fsa_states':
                for token in item.children:
                    if self.declare('dispatch state', f"dispatch@{token}", token):
                        states.add(str(token))
            elif item.data == 'fsa_initial':
                initial.update(str(token) for token in item.children)
            else:
                source, label, target = (str(token) for token in item.children)
                transitions.add((source, label, target))
        return DispatchFSA(frozenset(states), frozenset(transitions), frozenset(initial))

    def walk(self, tree):
        for section in tree.children:
            if section.data == 'resource':
                self.resource(section)
            elif section.data == 'activity':
                self.activity(section)
            else:
                self.dispatch_section(section)

        if self.dispatch is None:
            self.diagnostics.append(Diagnostic(P_SYNTAX, 'dispatch', "missing dispatch section"))

    def build(self):
        return Specification(
            resources=frozenset(self.resources),
            peripherals=self.peripherals,
            owner=self.owner,
            activities=self.activities,
            dispatch=self.dispatch,
            spans=self.spans,
            source=self.file,
        )


def _syntax_diagnostic(builder, error):
    """Translate a lark error into a diagnostic"""
    keywords = _keyword_terminals()

    if isinstance(error, UnexpectedToken):
        token = error.token
        expected = set(error.expected)
        if token.type == '$END':
            return Diagnostic(
                P_SYNTAX, 'syntax', "unexpected end of input",
                span=builder.span_at(None, None),
            )
        span = builder.span_at(token.line, token.column, len(token))
        if token.type == 'NAME' and expected & keywords and 'NAME' not in expected:
            return Diagnostic(
                P_UNKNOWN_KEYWORD, 'syntax',
                f"unknown keyword '{token}', expected {', '.join(sorted(e.lower() for e in expected & keywords))}",
                span=span,
            )
        return Diagnostic(
            P_SYNTAX, 'syntax',
            f"unexpected '{token}', expected {', '.join(sorted(expected))}",
            span=span,
        )

    if isinstance(error, UnexpectedCharacters):
        span = builder.span_at(error.line, error.column)
        allowed = set(error.allowed or ())
        char = error.char if error.char else ''
        if (char.isalpha() or char == '_') and allowed & keywords and 'NAME' not in allowed:
            return Diagnostic(
                P_UNKNOWN_KEYWORD, 'syntax',
                f"unknown keyword, expected {', '.join(sorted(a.lower() for a in allowed & keywords))}",
                span=span,
            )
        return Diagnostic(P_SYNTAX, 'syntax', f"unexpected character {char!r}", span=span)

    if isinstance(error, UnexpectedEOF):
        return Diagnostic(P_SYNTAX, 'syntax', "unexpected end of input", span=builder.span_at(None, None))

    return Diagnostic(P_SYNTAX, 'syntax', str(error).splitlines()[0] if str(error) else "syntax error",
                      span=builder.span_at(getattr(error, 'line', None), getattr(error, 'column', None)))


def parse(text, file_name='<input>'):
    """
    Parse a specification

    Never raises on malformed input: problems are returned as diagnostics.

    Args:
        text: File contents (str or bytes; bytes must be UTF-8)
        file_name: Name used in spans

    Returns:
        ParseResult with the Specification (None when there are diagnostics)
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode('utf-8')
        except UnicodeDecodeError as e:
            logger.debug(f"Input '{file_name}' is not UTF-8: {e}")
            return ParseResult(None, [Diagnostic(P_SYNTAX, 'syntax', f"input is not valid UTF-8 (byte {e.start})")])

    builder = _SpecBuilder(text, file_name)
    try:
        tree = _parser().parse(text)
    except LarkError as e:
        diagnostic = _syntax_diagnostic(builder, e)
        logger.debug(f"Syntax error in '{file_name}': {diagnostic.message}")
        return ParseResult(None, [diagnostic])

    builder.walk(tree)
    if builder.diagnostics:
        diagnostics = sorted(builder.diagnostics, key=lambda d: (d.span or SourceSpan(file_name, 1, 1), d.code))
        logger.debug(f"'{file_name}' has {len(diagnostics)} parse diagnostic(s)")
        return ParseResult(None, diagnostics)

    spec = builder.build()
    logger.info(
        f"Parsed '{file_name}': {len(spec.resources)} resources, {len(spec.peripherals)} peripherals, "
        f"{len(spec.activities)} activities"
    )
    return ParseResult(spec, [])


def parse_file(path):
    """
    Read and parse a specification file

    Raises:
        OSError: If the file cannot be read
    """
    with open(path, 'rb') as f:
        data = f.read()
    return parse(data, file_name=str(path))
