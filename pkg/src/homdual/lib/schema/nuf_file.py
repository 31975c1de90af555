"""NUF table files: a header ``nuf <k> <n>`` and then one value per line.

Values follow the mixed-radix order of the argument tuples, the last
argument varying fastest.
"""

from __future__ import annotations

import numpy as np

from ..duality.nuf import NufCandidate
from ..errors import ParseError
from ..structures import RelationalStructure
from .structure_file import LineReader, expect_arguments, parse_int


def parse_nuf_table(text: str, H: RelationalStructure) -> NufCandidate:
    """Reads a table for a candidate on ``H``.

    Raises:
        ParseError: On a malformed header, a size other than ``|H|``, a wrong
            number of values or a value outside ``H``.
    """
    reader = LineReader(text)
    header = reader.next("'nuf <k> <n>'")
    if header.keyword != 'nuf':
        raise ParseError(f"expected 'nuf', got {header.keyword!r}", header.number, header.tokens[0].column)
    expect_arguments(header, 2)
    k = parse_int(header.tokens[1], header, 'arity')
    n = parse_int(header.tokens[2], header, 'size')
    if k < 3:
        raise ParseError(f'near-unanimity arity {k} < 3', header.number, header.tokens[1].column)
    if n != H.size:
        raise ParseError(f'table is for {n} elements, structure has {H.size}', header.number, header.tokens[2].column)
    values = []
    while not reader.at_end():
        line = reader.next()
        for token in line.tokens:
            value = parse_int(token, line, 'value')
            if value >= n:
                raise ParseError(f'value {value} outside universe of size {n}', line.number, token.column)
            values.append(value)
    if len(values) != n**k:
        raise ParseError(f'expected {n**k} values, got {len(values)}', reader.last_line + 1)
    return NufCandidate(H, k, np.array(values, dtype=np.int64).reshape((n,) * k))


def serialize_nuf_table(c: NufCandidate) -> str:
    lines = [f'nuf {c.k} {c.n}']
    lines.extend(str(int(v)) for v in c.table.ravel())
    return '\n'.join(lines) + '\n'
