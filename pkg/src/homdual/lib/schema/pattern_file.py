"""Plain-text Pultr pattern documents.

::

    pattern arc_graph
    sigma E 2
    tau E 2
    P
    vertices 2
    arcs
    0 1
    end
    Q E
    vertices 3
    arcs
    0 1
    1 2
    end
    q E 1: 0 1
    q E 2: 1 2

``P`` and every ``Q <R>`` are structure bodies over sigma. A line
``q <R> <i>: <p0> <p1> ...`` gives the image of every element of ``P`` under
the ``i``-th map (``i`` counts from 1). The maps are checked to be
homomorphisms when the pattern is built.
"""

from __future__ import annotations

from ..errors import ParseError
from ..pultr import Pattern
from ..structures import RelationalStructure
from .structure_file import (
    Line,
    LineReader,
    body_lines,
    expect_arguments,
    parse_int,
    parse_vocabulary,
    read_body,
    tokenize,
)


def parse_pattern(text: str) -> Pattern:
    """Parses a pattern document.

    Raises:
        ParseError: On malformed or incomplete documents.
        InvalidPattern: If a declared map is not a homomorphism.
    """
    reader = LineReader(text)
    header = reader.next("'pattern'")
    if header.keyword != 'pattern':
        raise ParseError(f"expected 'pattern', got {header.keyword!r}", header.number, header.tokens[0].column)
    name = header.rest()
    sigma = tau = None
    P: RelationalStructure | None = None
    queries: dict[str, RelationalStructure] = {}
    maps: dict[str, dict[int, tuple[int, ...]]] = {}
    while not reader.at_end():
        line = reader.next()
        keyword = line.keyword
        if keyword in ('sigma', 'tau'):
            vocab = parse_vocabulary(line)
            if keyword == 'sigma':
                sigma = vocab
            else:
                tau = vocab
        elif keyword == 'P':
            expect_arguments(line, 0)
            if sigma is None:
                raise ParseError("'P' before 'sigma'", line.number)
            P = read_body(reader, sigma, 'P', line)
        elif keyword == 'Q':
            expect_arguments(line, 1)
            if sigma is None:
                raise ParseError("'Q' before 'sigma'", line.number)
            symbol = line.tokens[1].text
            queries[symbol] = read_body(reader, sigma, f'Q_{symbol}', line)
        elif keyword == 'q':
            symbol, index, image = _parse_map(line)
            maps.setdefault(symbol, {})[index] = image
        else:
            raise ParseError(f'unexpected {keyword!r}', line.number, line.tokens[0].column)

    end = reader.last_line + 1
    if sigma is None or tau is None:
        raise ParseError("pattern needs both 'sigma' and 'tau'", end)
    if P is None:
        raise ParseError("pattern without 'P'", end)
    data = {}
    for symbol in tau.names:
        if symbol not in queries:
            raise ParseError(f'no Q given for {symbol}', end)
        given = maps.get(symbol, {})
        arity = tau.arity(symbol)
        if sorted(given) != list(range(1, arity + 1)):
            raise ParseError(f'{symbol} has arity {arity} but maps {sorted(given)} are given', end)
        for i, image in given.items():
            if len(image) != P.size:
                raise ParseError(f'q {symbol} {i} has {len(image)} images for {P.size} elements of P', end)
        data[symbol] = (queries[symbol], [given[i] for i in range(1, arity + 1)])
    unknown = (set(queries) | set(maps)) - set(tau.names)
    if unknown:
        raise ParseError(f'symbols {sorted(unknown)} are not in tau', end)
    return Pattern.build(name, sigma, tau, P, data)


def _parse_map(line: Line) -> tuple[str, int, tuple[int, ...]]:
    head, colon, tail = line.text.partition(':')
    if not colon:
        raise ParseError("map line needs ':' before the images", line.number, line.tokens[0].column)
    head_tokens = tokenize(head)
    if len(head_tokens) != 3:
        raise ParseError('expected q <symbol> <index>:', line.number, line.tokens[0].column)
    index = parse_int(head_tokens[2], line, 'map index')
    if index < 1:
        raise ParseError('map indices count from 1', line.number, head_tokens[2].column)
    images = tuple(parse_int(token, line, 'element') for token in tokenize(tail, len(head) + 2))
    return head_tokens[1].text, index, images


def serialize_pattern(pat: Pattern) -> str:
    def vocab_line(keyword, vocab):
        pairs = ' '.join(f'{symbol} {arity}' for symbol, arity in vocab)
        return f'{keyword} {pairs}'.rstrip()

    lines = [f'pattern {pat.name}'.rstrip(), vocab_line('sigma', pat.sigma), vocab_line('tau', pat.tau), 'P']
    lines.extend(body_lines(pat.P))
    for symbol, rel in pat.relations:
        lines.append(f'Q {symbol}')
        lines.extend(body_lines(rel.Q))
    for symbol, rel in pat.relations:
        for i, q in enumerate(rel.maps, start=1):
            lines.append(f'q {symbol} {i}: ' + ' '.join(map(str, q)))
    return '\n'.join(lines) + '\n'
