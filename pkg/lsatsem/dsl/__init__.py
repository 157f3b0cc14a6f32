"""DSL package: grammar, parser and pretty-printer for .lsat files"""

from lsatsem.dsl.parser import ParseResult, parse, parse_file
from lsatsem.dsl.printer import pretty_print

# Define publicly available imports
__all__ = [
    'ParseResult',
    'parse',
    'parse_file',
    'pretty_print',
]
