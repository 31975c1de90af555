"""Plain-text structure documents.

A document describes one structure::

    # the transitive tournament on three vertices
    digraph T3
    vertices 3
    arcs
    0 1
    0 2
    1 2
    end

General structures declare their vocabulary as ``<symbol> <arity>`` pairs
and list each relation in its own ``rel <symbol>`` block::

    structure S
    vocab R 3 U 1
    universe 2
    rel R
    0 1 1
    rel U
    0
    end

A file may hold several documents one after another. ``#`` starts a comment.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from typing import NamedTuple

from ..errors import HomdualError, ParseError
from ..structures import DIGRAPH, EDGE, RelationalStructure, Vocabulary

_TOKEN = re.compile(r'\S+')


class Token(NamedTuple):
    text: str
    column: int


class Line(NamedTuple):
    number: int
    text: str
    tokens: tuple[Token, ...]

    @property
    def keyword(self) -> str:
        return self.tokens[0].text

    def rest(self) -> str:
        """Text after the first token, comments removed."""
        first = self.tokens[0]
        return self.text[first.column - 1 + len(first.text) :].strip()


def tokenize(text: str, first_column: int = 1) -> tuple[Token, ...]:
    return tuple(Token(m.group(), m.start() + first_column) for m in _TOKEN.finditer(text))


class LineReader:
    """Non-blank, comment-free lines of a document with their positions."""

    def __init__(self, text: str):
        self.lines: list[Line] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split('#', 1)[0]
            tokens = tokenize(content)
            if tokens:
                self.lines.append(Line(number, content, tokens))
        self.position = 0
        self.last_line = len(text.splitlines())

    def at_end(self) -> bool:
        return self.position >= len(self.lines)

    def peek(self) -> Line | None:
        return None if self.at_end() else self.lines[self.position]

    def next(self, expected: str = 'more input') -> Line:
        if self.at_end():
            raise ParseError(f'unexpected end of input, expected {expected}', self.last_line + 1)
        line = self.lines[self.position]
        self.position += 1
        return line


def parse_int(token: Token, line: Line, what: str = 'integer') -> int:
    try:
        value = int(token.text)
    except ValueError:
        raise ParseError(f'expected {what}, got {token.text!r}', line.number, token.column) from None
    if value < 0:
        raise ParseError(f'expected non-negative {what}, got {value}', line.number, token.column)
    return value


def expect_arguments(line: Line, count: int) -> None:
    if len(line.tokens) != count + 1:
        column = line.tokens[min(len(line.tokens), count + 1) - 1].column
        raise ParseError(
            f'{line.keyword} takes {count} argument(s), got {len(line.tokens) - 1}', line.number, column
        )


def parse_vocabulary(line: Line) -> Vocabulary:
    """Reads ``<symbol> <arity>`` pairs following the first token of ``line``."""
    tokens = line.tokens[1:]
    if len(tokens) % 2:
        raise ParseError('vocabulary needs <symbol> <arity> pairs', line.number, tokens[-1].column)
    pairs = [
        (tokens[i].text, parse_int(tokens[i + 1], line, 'arity')) for i in range(0, len(tokens), 2)
    ]
    try:
        return Vocabulary(tuple(pairs))
    except HomdualError as err:
        raise ParseError(str(err), line.number, line.tokens[0].column) from None


def read_body(reader: LineReader, vocab: Vocabulary | None, name: str, header: Line) -> RelationalStructure:
    """Reads the lines after a header up to and including ``end``.

    ``vocab`` is None for ``structure`` documents, which must declare it.
    """
    size: int | None = None
    blocks: dict[str, list[tuple[int, ...]]] = {}
    current: str | None = None
    while True:
        line = reader.next(f"'end' for the document started on line {header.number}")
        keyword = line.keyword
        if keyword == 'end':
            expect_arguments(line, 0)
            break
        if keyword in ('universe', 'vertices'):
            expect_arguments(line, 1)
            if size is not None:
                raise ParseError('universe declared twice', line.number)
            size = parse_int(line.tokens[1], line, 'universe size')
            current = None
        elif keyword == 'vocab':
            if vocab is not None:
                raise ParseError('vocabulary declared twice or not allowed here', line.number)
            vocab = parse_vocabulary(line)
            current = None
        elif keyword in ('arcs', 'rel'):
            if vocab is None:
                raise ParseError(f"'{keyword}' before 'vocab'", line.number)
            if keyword == 'arcs':
                expect_arguments(line, 0)
                if vocab != DIGRAPH:
                    raise ParseError("'arcs' block in a structure that is not a digraph", line.number)
                current = EDGE
            else:
                expect_arguments(line, 1)
                current = line.tokens[1].text
                if current not in vocab:
                    raise ParseError(f'unknown relation symbol {current!r}', line.number, line.tokens[1].column)
            blocks.setdefault(current, [])
        elif current is not None:
            if size is None:
                raise ParseError("tuple before 'universe'", line.number, line.tokens[0].column)
            arity = vocab.arity(current)
            if len(line.tokens) != arity:
                raise ParseError(
                    f'{current} has arity {arity}, tuple has {len(line.tokens)} entries',
                    line.number,
                    line.tokens[0].column,
                )
            t = []
            for token in line.tokens:
                x = parse_int(token, line, 'element')
                if x >= size:
                    raise ParseError(f'element {x} outside universe of size {size}', line.number, token.column)
                t.append(x)
            blocks[current].append(tuple(t))
        else:
            raise ParseError(f'unexpected {keyword!r}', line.number, line.tokens[0].column)
    if vocab is None:
        raise ParseError("structure without 'vocab'", header.number)
    if size is None:
        raise ParseError("document without 'universe'", header.number)
    return RelationalStructure(vocab, size, blocks, name=name)


def read_document(reader: LineReader) -> RelationalStructure:
    header = reader.next("'digraph' or 'structure'")
    if header.keyword == 'digraph':
        return read_body(reader, DIGRAPH, header.rest(), header)
    if header.keyword == 'structure':
        return read_body(reader, None, header.rest(), header)
    raise ParseError(
        f"expected 'digraph' or 'structure', got {header.keyword!r}", header.number, header.tokens[0].column
    )


def parse_structures(text: str) -> list[RelationalStructure]:
    """Parses every document in ``text``, in order."""
    reader = LineReader(text)
    documents = []
    while not reader.at_end():
        documents.append(read_document(reader))
    return documents


def parse_structure(text: str) -> RelationalStructure:
    """Parses a text holding exactly one document.

    Raises:
        ParseError: With the 1-based line and column of the first problem.
    """
    reader = LineReader(text)
    structure = read_document(reader)
    extra = reader.peek()
    if extra is not None:
        raise ParseError('trailing input after end of document', extra.number, extra.tokens[0].column)
    return structure


def body_lines(A: RelationalStructure) -> list[str]:
    """Universe and relation blocks of ``A``, closed by ``end``."""
    if A.is_digraph:
        lines = [f'vertices {A.size}', 'arcs']
        lines.extend(f'{x} {y}' for x, y in A.arcs)
    else:
        lines = [f'universe {A.size}']
        for symbol, tuples in A.items():
            lines.append(f'rel {symbol}')
            lines.extend(' '.join(map(str, t)) for t in tuples)
    lines.append('end')
    return lines


def serialize_structure(A: RelationalStructure) -> str:
    """Canonical document for ``A``: tuples in sorted order, one per line."""
    if A.is_digraph:
        lines = [f'digraph {A.name}'.rstrip()]
    else:
        vocab = ' '.join(f'{symbol} {arity}' for symbol, arity in A.vocab)
        lines = [f'structure {A.name}'.rstrip(), f'vocab {vocab}'.rstrip()]
    lines.extend(body_lines(A))
    return '\n'.join(lines) + '\n'


def serialize_structures(structures: Iterable[RelationalStructure]) -> Iterator[str]:
    for A in structures:
        yield serialize_structure(A)
