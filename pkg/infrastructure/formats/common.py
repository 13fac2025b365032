# infrastructure/formats/common.py
"""Line reader shared by the text formats: ``#`` comments, blank lines and ``a b -> s`` entries."""
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from core.algebra.scalars import BaseField, FieldElem
from core.errors import ParseError

TOKEN_RE = re.compile(r"\[[^\]]*\]|\S+")


@dataclass(frozen=True)
class Line:
    number: int
    text: str

    @property
    def tokens(self) -> List[str]:
        return TOKEN_RE.findall(self.text)

    @property
    def keyword(self) -> str:
        return self.text.split()[0]

    @property
    def rest(self) -> str:
        parts = self.text.split(None, 1)
        return parts[1].strip() if len(parts) > 1 else ""


class LineReader:
    """Cursor over the meaningful lines of one artifact."""

    def __init__(self, text: str, source: str = "<string>"):
        self.source = source
        self.lines: List[Line] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.split("#", 1)[0].strip()
            if stripped:
                self.lines.append(Line(number, stripped))
        self.position = 0

    def __iter__(self) -> Iterator[Line]:
        return self

    def __next__(self) -> Line:
        if self.position >= len(self.lines):
            raise StopIteration
        line = self.lines[self.position]
        self.position += 1
        return line

    def peek(self) -> Optional[Line]:
        return self.lines[self.position] if self.position < len(self.lines) else None

    def next_line(self, expecting: str) -> Line:
        line = self.peek()
        if line is None:
            last = self.lines[-1].number if self.lines else 0
            raise ParseError(f"Unexpected end of input, expected {expecting}", self.source, last)
        self.position += 1
        return line

    def error(self, line: Line, detail: str) -> ParseError:
        return ParseError(detail, self.source, line.number)


def split_entry(reader: LineReader, line: Line, arity: int) -> Tuple[Tuple[str, ...], str]:
    """Split ``a b c -> s`` into the key objects and the scalar text."""
    if "->" not in line.text:
        raise reader.error(line, f"Expected an entry 'x1 .. x{arity} -> value', got '{line.text}'")
    left, right = line.text.split("->", 1)
    key = tuple(left.split())
    if len(key) != arity:
        raise reader.error(line, f"Expected {arity} indices, got {len(key)}")
    if not right.strip():
        raise reader.error(line, "Missing value after '->'")
    return key, right.strip()


def parse_scalar(reader: LineReader, line: Line, field: BaseField, text: str) -> FieldElem:
    return field.parse_elem(text, reader.source, line.number)


def parse_bool(reader: LineReader, line: Line, text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise reader.error(line, f"Expected true or false, got '{text}'")


def parse_int(reader: LineReader, line: Line, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise reader.error(line, f"Expected an integer, got '{text}'")
