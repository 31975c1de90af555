"""Text formats for structures, patterns and NUF tables."""

from .nuf_file import parse_nuf_table, serialize_nuf_table
from .pattern_file import parse_pattern, serialize_pattern
from .structure_file import parse_structure, parse_structures, serialize_structure, serialize_structures

__all__ = [
    'parse_nuf_table',
    'parse_pattern',
    'parse_structure',
    'parse_structures',
    'serialize_nuf_table',
    'serialize_pattern',
    'serialize_structure',
    'serialize_structures',
]
