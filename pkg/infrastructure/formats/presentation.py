# infrastructure/formats/presentation.py
"""Presentation, functor and deformation files.

A presentation file::

    field Fp:2
    name Z2
    objects e g
    unit e
    tensor
    e g
    g e
    assoc
    g g g -> 1
    braiding
    g g -> 1

``runit`` and ``lunit`` sections take ``a -> s`` entries. A ``braiding``
section, even an empty one, marks the presentation as braided.
"""
import logging
from typing import Dict, List, Optional

from pydantic import ValidationError as PydanticValidationError

from core.algebra.scalars import BaseField
from core.errors import ConfigMismatchError, ParseError
from domain.entities.cochain import Cochain, DeformationSeries
from domain.entities.presentation import FunctorPresentation, SkeletalPresentation
from infrastructure.formats.common import LineReader, parse_bool, parse_int, parse_scalar, split_entry

logger = logging.getLogger(__name__)

_SECTIONS = {"tensor": 0, "assoc": 3, "braiding": 2, "runit": 1, "lunit": 1}


def _model_error(reader: LineReader, exc: PydanticValidationError) -> ParseError:
    messages = "; ".join(error["msg"] for error in exc.errors())
    last = reader.lines[-1].number if reader.lines else 0
    return ParseError(messages, reader.source, last)


def _read_field(reader: LineReader, expected: Optional[BaseField]) -> BaseField:
    line = reader.next_line("a 'field' line")
    if line.keyword != "field":
        raise reader.error(line, f"Expected 'field Q|Fp:<p>', got '{line.text}'")
    field = BaseField.parse(line.rest) if line.rest else None
    if field is None:
        raise reader.error(line, "Missing field header")
    if expected is not None and field != expected:
        raise ConfigMismatchError(f"{reader.source}: field {field.header} differs from configured {expected.header}")
    return field


def parse_presentation(text: str, source: str = "<string>", field: Optional[BaseField] = None) -> SkeletalPresentation:
    """Parse and structurally validate a presentation; coherence checks are left to services.skeletal."""
    reader = LineReader(text, source)
    field = _read_field(reader, field)
    values: Dict[str, object] = {"name": "C"}
    sections: Dict[str, dict] = {}
    current: Optional[str] = None
    tensor_rows: List = []
    for line in reader:
        keyword = line.keyword
        if keyword in _SECTIONS and not line.rest:
            if keyword in sections:
                raise reader.error(line, f"Section '{keyword}' appears twice")
            current = keyword
            sections[keyword] = {}
            continue
        if keyword in ("name", "objects", "unit") and current is None:
            values[keyword] = line.rest.split() if keyword == "objects" else line.rest
            continue
        if current is None:
            raise reader.error(line, f"Unexpected line '{line.text}'")
        if current == "tensor":
            tensor_rows.append((line, line.text.split()))
            continue
        key, scalar_text = split_entry(reader, line, _SECTIONS[current])
        sections[current][key if len(key) > 1 else key[0]] = parse_scalar(reader, line, field, scalar_text)
    objects = tuple(values.get("objects") or ())
    if not objects or "unit" not in values:
        raise ParseError("A presentation needs 'objects' and 'unit' lines", source, 0)
    if len(tensor_rows) != len(objects):
        raise ParseError(f"Tensor table needs {len(objects)} rows, got {len(tensor_rows)}", source, 0)
    table = {}
    for a, (line, row) in zip(objects, tensor_rows):
        if len(row) != len(objects):
            raise reader.error(line, f"Tensor row for '{a}' needs {len(objects)} entries")
        for b, product_name in zip(objects, row):
            table[(a, b)] = product_name
    try:
        presentation = SkeletalPresentation(
            field=field, objects=objects, unit=values["unit"], tensor_table=table,
            assoc=sections.get("assoc", {}), braiding=sections.get("braiding"),
            runit=sections.get("runit", {}), lunit=sections.get("lunit", {}), name=values["name"],
        )
    except PydanticValidationError as exc:
        raise _model_error(reader, exc)
    logger.debug(f"Parsed presentation {presentation.name} with {len(objects)} objects from {source}")
    return presentation


def format_presentation(p: SkeletalPresentation) -> str:
    lines = [f"field {p.field.header}", f"name {p.name}", "objects " + " ".join(p.objects), f"unit {p.unit}", "tensor"]
    lines += [" ".join(p.tensor(a, b) for b in p.objects) for a in p.objects]
    lines.append("assoc")
    lines += [f"{a} {b} {c} -> {p.field.format_elem(s)}" for (a, b, c), s in sorted(p.assoc.items())]
    if p.braiding is not None:
        lines.append("braiding")
        lines += [f"{a} {b} -> {p.field.format_elem(s)}" for (a, b), s in sorted(p.braiding.items())]
    for name, table in (("runit", p.runit), ("lunit", p.lunit)):
        lines.append(name)
        lines += [f"{a} -> {p.field.format_elem(s)}" for a, s in sorted(table.items())]
    return "\n".join(lines) + "\n"


def parse_functor(text: str, presentation: SkeletalPresentation, source: str = "<string>") -> FunctorPresentation:
    """Parse an endofunctor of ``presentation``; unlisted objects map to themselves.

    Format: optional ``name``, an ``object_map`` section of ``a -> b`` lines, a
    ``coherence`` section of ``a b -> s`` lines and an optional ``unit_scalar s``.
    """
    reader = LineReader(text, source)
    field = presentation.field
    object_map = {a: a for a in presentation.objects}
    coherence = {}
    unit_scalar = None
    name = "F"
    current = None
    for line in reader:
        if line.keyword in ("object_map", "coherence") and not line.rest:
            current = line.keyword
        elif line.keyword == "name":
            name = line.rest
        elif line.keyword == "unit_scalar":
            unit_scalar = parse_scalar(reader, line, field, line.rest)
        elif current == "object_map":
            key, image = split_entry(reader, line, 1)
            object_map[key[0]] = image
        elif current == "coherence":
            key, scalar_text = split_entry(reader, line, 2)
            coherence[key] = parse_scalar(reader, line, field, scalar_text)
        else:
            raise reader.error(line, f"Unexpected line '{line.text}'")
    try:
        return FunctorPresentation(source=presentation, target=presentation, object_map=object_map,
                                   coherence=coherence, unit_scalar=unit_scalar, name=name)
    except PydanticValidationError as exc:
        raise _model_error(reader, exc)


def parse_deformation(text: str, functor: FunctorPresentation, source: str = "<string>",
                      order: Optional[int] = None) -> DeformationSeries:
    """Parse ``field``, ``order``, optional ``proper`` and one ``term k`` section per order."""
    reader = LineReader(text, source)
    field = _read_field(reader, functor.field)
    order_line = reader.next_line("an 'order' line")
    if order_line.keyword != "order":
        raise reader.error(order_line, f"Expected 'order n', got '{order_line.text}'")
    declared = parse_int(reader, order_line, order_line.rest)
    if order is not None and declared != order:
        raise ConfigMismatchError(f"{source}: order {declared} differs from configured {order}")
    proper = False
    terms: Dict[int, dict] = {}
    current = None
    for line in reader:
        if line.keyword == "proper":
            proper = parse_bool(reader, line, line.rest)
        elif line.keyword == "term":
            current = parse_int(reader, line, line.rest)
            if not 1 <= current <= declared or current in terms:
                raise reader.error(line, f"Term index {current} is repeated or outside 1..{declared}")
            terms[current] = {}
        elif current is not None:
            key, scalar_text = split_entry(reader, line, 2)
            terms[current][key] = parse_scalar(reader, line, field, scalar_text)
        else:
            raise reader.error(line, f"Unexpected line '{line.text}'")
    missing = [k for k in range(1, declared + 1) if k not in terms]
    if missing:
        raise ParseError(f"Missing term sections {missing}", source, 0)
    try:
        cochains = tuple(Cochain(degree=2, functor=functor, components=terms[k], proper=proper)
                         for k in range(1, declared + 1))
        return DeformationSeries(functor=functor, terms=cochains, proper=proper)
    except PydanticValidationError as exc:
        raise _model_error(reader, exc)


def format_deformation(d: DeformationSeries) -> str:
    field = d.functor.field
    lines = [f"field {field.header}", f"order {d.order}", f"proper {'true' if d.proper else 'false'}"]
    objects = d.functor.source.objects
    for k in range(1, d.order + 1):
        lines.append(f"term {k}")
        term = d.term(k)
        for a in objects:
            for b in objects:
                value = term.value((a, b))
                if value:
                    lines.append(f"{a} {b} -> {field.format_elem(value)}")
    return "\n".join(lines) + "\n"
