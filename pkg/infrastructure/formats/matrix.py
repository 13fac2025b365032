# infrastructure/formats/matrix.py
"""Matrix literals: a ``rows cols`` line, then one line of entries per row.

Entries are field literals or ``[c0, .., cn]`` coefficient arrays.
"""
from core.algebra.linalg import MatrixR
from core.algebra.scalars import TruncatedRing
from infrastructure.formats.common import LineReader, parse_int


def read_matrix(reader: LineReader, ring: TruncatedRing) -> MatrixR:
    header = reader.next_line("a 'rows cols' line")
    sizes = header.text.split()
    if len(sizes) != 2:
        raise reader.error(header, f"Expected 'rows cols', got '{header.text}'")
    rows, cols = (parse_int(reader, header, s) for s in sizes)
    entries = []
    for _ in range(rows):
        line = reader.next_line(f"a row of {cols} entries")
        tokens = line.tokens
        if len(tokens) != cols:
            raise reader.error(line, f"Expected {cols} entries, got {len(tokens)}")
        entries.append([ring.parse(token, reader.source, line.number) for token in tokens])
    return MatrixR.from_scalars(ring, entries, cols)


def parse_matrix(text: str, ring: TruncatedRing, source: str = "<string>") -> MatrixR:
    reader = LineReader(text, source)
    matrix = read_matrix(reader, ring)
    extra = reader.peek()
    if extra is not None:
        raise reader.error(extra, "Unexpected content after the matrix")
    return matrix


def format_matrix(matrix: MatrixR) -> str:
    return matrix.format()
