# infrastructure/formats/diagram.py
"""Braid text and Morse slice lists.

Braid text: ``strands=3; word=s1 -s2 s1; framings=0,1,0; singular=2; singular_twists=(1,2)``.
Singular letter positions are 1-based. Morse text: an optional ``source Up Down``
line and an optional ``name`` line, then one ``KIND offset`` line per slice.
"""
import re
from typing import Dict, List, Tuple

from pydantic import ValidationError as PydanticValidationError

from core.errors import ParseError
from domain.entities.diagram import BraidWord, MorseDiagram, Orientation, Slice, SliceKind
from infrastructure.formats.common import LineReader, parse_int

_LETTER_RE = re.compile(r"^(-?)s?(\d+)$")
_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_BRAID_KEYS = ("strands", "word", "framings", "singular", "singular_twists", "name")


def _int_list(text: str, key: str, source: str) -> Tuple[int, ...]:
    items = [item for item in re.split(r"[,\s]+", text.strip()) if item]
    try:
        return tuple(int(item) for item in items)
    except ValueError:
        raise ParseError(f"'{key}' needs integers, got '{text.strip()}'", source, 1)


def parse_braid(text: str, source: str = "<string>") -> BraidWord:
    fields: Dict[str, str] = {}
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    for part in body.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise ParseError(f"Expected key=value, got '{part.strip()}'", source, 1)
        key, value = (piece.strip() for piece in part.split("=", 1))
        if key not in _BRAID_KEYS:
            raise ParseError(f"Unknown braid key '{key}'", source, 1)
        fields[key] = value
    if "strands" not in fields:
        raise ParseError("Braid text needs 'strands='", source, 1)
    letters: List[int] = []
    for token in fields.get("word", "").split():
        match = _LETTER_RE.match(token)
        if not match or int(match.group(2)) == 0:
            raise ParseError(f"Invalid braid letter '{token}'", source, 1)
        letters.append(-int(match.group(2)) if match.group(1) else int(match.group(2)))
    twists_text = fields.get("singular_twists", "")
    twists = tuple((int(s), int(c)) for s, c in _PAIR_RE.findall(twists_text))
    if _PAIR_RE.sub("", twists_text).strip(" ,"):
        raise ParseError(f"Invalid singular_twists '{twists_text}'", source, 1)
    try:
        strands = int(fields["strands"])
        return BraidWord(
            strands=strands, letters=tuple(letters),
            framings=_int_list(fields.get("framings", ""), "framings", source),
            singular_letters=_int_list(fields.get("singular", ""), "singular", source),
            singular_framing_points=twists, name=fields.get("name") or source,
        )
    except ValueError as exc:
        if isinstance(exc, PydanticValidationError):
            raise ParseError("; ".join(error["msg"] for error in exc.errors()), source, 1)
        raise ParseError(f"Invalid strand count '{fields['strands']}'", source, 1)


def format_braid(b: BraidWord) -> str:
    word = " ".join(f"-s{-x}" if x < 0 else f"s{x}" for x in b.letters)
    parts = [f"strands={b.strands}", f"word={word}",
             "framings=" + ",".join(str(b.framing(s)) for s in range(1, b.strands + 1))]
    if b.singular_letters:
        parts.append("singular=" + ",".join(str(p) for p in b.singular_letters))
    if b.singular_framing_points:
        parts.append("singular_twists=" + " ".join(f"({s},{c})" for s, c in b.singular_framing_points))
    return "; ".join(parts)


def parse_morse(text: str, source: str = "<string>") -> MorseDiagram:
    reader = LineReader(text, source)
    orientations = {o.value: o for o in Orientation}
    kinds = {k.value: k for k in SliceKind}
    boundary: Tuple[Orientation, ...] = ()
    name = source
    slices: List[Slice] = []
    for line in reader:
        if line.keyword == "source" and not slices:
            try:
                boundary = tuple(orientations[token] for token in line.rest.split())
            except KeyError as exc:
                raise reader.error(line, f"Unknown orientation {exc}")
            continue
        if line.keyword == "name" and not slices:
            name = line.rest
            continue
        tokens = line.text.split()
        if tokens[0] not in kinds or len(tokens) > 2:
            raise reader.error(line, f"Expected 'KIND offset', got '{line.text}'")
        offset = parse_int(reader, line, tokens[1]) if len(tokens) == 2 else 0
        if offset < 0:
            raise reader.error(line, f"Negative offset {offset}")
        slices.append(Slice(kind=kinds[tokens[0]], offset=offset))
    return MorseDiagram(slices=tuple(slices), source=boundary, name=name)


def format_morse(d: MorseDiagram) -> str:
    lines = [f"name {d.name}"]
    if d.source:
        lines.append("source " + " ".join(o.value for o in d.source))
    lines += [str(piece) for piece in d.slices]
    return "\n".join(lines) + "\n"
