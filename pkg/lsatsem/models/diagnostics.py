"""Diagnostics reported by validation and parsing"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

# Validation codes
E_CYCLE = 'E_CYCLE'
E_SELF_CONCURRENCY = 'E_SELF_CONCURRENCY'
E_UNCLAIMED_ACTION = 'E_UNCLAIMED_ACTION'
E_UNRELEASED_CLAIM = 'E_UNRELEASED_CLAIM'
E_MULTI_CLAIM = 'E_MULTI_CLAIM'
E_RELEASE_BEFORE_CLAIM = 'E_RELEASE_BEFORE_CLAIM'
E_UNKNOWN_REF = 'E_UNKNOWN_REF'
E_BAD_TIMING = 'E_BAD_TIMING'
E_BAD_PROFILE = 'E_BAD_PROFILE'
E_MOVE_ENDPOINTS = 'E_MOVE_ENDPOINTS'

# Parser codes
P_SYNTAX = 'P_SYNTAX'
P_DUPLICATE = 'P_DUPLICATE'
P_UNKNOWN_KEYWORD = 'P_UNKNOWN_KEYWORD'

VALIDATION_CODES = frozenset({
    E_CYCLE, E_SELF_CONCURRENCY, E_UNCLAIMED_ACTION, E_UNRELEASED_CLAIM,
    E_MULTI_CLAIM, E_RELEASE_BEFORE_CLAIM, E_UNKNOWN_REF, E_BAD_TIMING,
    E_BAD_PROFILE, E_MOVE_ENDPOINTS,
})
PARSER_CODES = frozenset({P_SYNTAX, P_DUPLICATE, P_UNKNOWN_KEYWORD})


@dataclass(frozen=True, order=True)
class SourceSpan:
    """Location of a token in a source file (1-based line and column)"""
    file: str
    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError(f"Invalid span position {self.line}:{self.column}")


@dataclass(frozen=True)
class Diagnostic:
    """
    A single problem found in a specification

    `entity` names the offending element (e.g. `Act`, `Act.n3`, `p1.a`);
    `related` holds extra spans, such as the first declaration of a duplicate.
    """
    code: str
    entity: str
    message: str
    span: Optional[SourceSpan] = None
    related: tuple[SourceSpan, ...] = field(default=())

    def sort_key(self):
        return (self.entity, self.code, self.message)

    def format(self, file_name=None):
        """Render as `code:file:line:col: message`"""
        if self.span is not None:
            file_part = file_name or self.span.file
            return f"{self.code}:{file_part}:{self.span.line}:{self.span.column}: {self.message}"
        return f"{self.code}:{file_name or '-'}:0:0: {self.message}"

    def to_dict(self):
        return {
            'code': self.code,
            'entity': self.entity,
            'message': self.message,
            'line': self.span.line if self.span else None,
            'column': self.span.column if self.span else None,
        }
