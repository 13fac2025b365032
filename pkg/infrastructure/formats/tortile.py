# infrastructure/formats/tortile.py
"""Tortile data files: ``field``, ``order`` and ``dim`` lines, then six labeled matrices."""
from typing import Optional

from pydantic import ValidationError as PydanticValidationError

from core.algebra.scalars import BaseField, TruncatedRing
from core.errors import ConfigMismatchError, ParseError
from domain.entities.tortile import MATRIX_NAMES, TortileObjectData
from infrastructure.formats.common import LineReader, parse_int
from infrastructure.formats.matrix import format_matrix, read_matrix


def parse_tortile_data(text: str, source: str = "<string>", field: Optional[BaseField] = None,
                       order: Optional[int] = None) -> TortileObjectData:
    reader = LineReader(text, source)
    header = {}
    for key in ("field", "order", "dim"):
        line = reader.next_line(f"a '{key}' line")
        if line.keyword != key:
            raise reader.error(line, f"Expected '{key}', got '{line.text}'")
        header[key] = line.rest
        header[f"{key}_line"] = line
    parsed_field = BaseField.parse(header["field"])
    parsed_order = parse_int(reader, header["order_line"], header["order"])
    dim = parse_int(reader, header["dim_line"], header["dim"])
    if field is not None and parsed_field != field:
        raise ConfigMismatchError(f"{source}: field {parsed_field.header} differs from configured {field.header}")
    if order is not None and parsed_order != order:
        raise ConfigMismatchError(f"{source}: order {parsed_order} differs from configured {order}")
    ring = TruncatedRing(parsed_field, parsed_order)
    matrices = {}
    for line in reader:
        if line.keyword not in MATRIX_NAMES or line.rest:
            raise reader.error(line, f"Expected one of {', '.join(MATRIX_NAMES)}, got '{line.text}'")
        if line.keyword in matrices:
            raise reader.error(line, f"Matrix '{line.keyword}' given twice")
        matrices[line.keyword] = read_matrix(reader, ring)
    missing = [name for name in MATRIX_NAMES if name not in matrices]
    if missing:
        raise ParseError(f"Missing matrices: {', '.join(missing)}", source, 0)
    try:
        return TortileObjectData(dim=dim, ring=ring, name=source, **matrices)
    except PydanticValidationError as exc:
        raise ParseError("; ".join(error["msg"] for error in exc.errors()), source, 0)


def format_tortile_data(t: TortileObjectData) -> str:
    lines = [f"field {t.field.header}", f"order {t.order}", f"dim {t.dim}"]
    for name, matrix in t.matrices().items():
        lines.append(name)
        lines.append(format_matrix(matrix))
    return "\n".join(lines) + "\n"
