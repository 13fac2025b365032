# routes/v1/common.py
"""Artifact loading and output shared by the command routers."""
import logging
import re
from typing import List, Optional, Sequence, Tuple

import pandas as pd
from pydantic import BaseModel

from app.config.settings import settings
from core.algebra.scalars import RATIONALS, TruncatedRing
from core.errors import ParseError
from domain.entities.diagram import MorseDiagram
from domain.entities.presentation import FunctorPresentation, SkeletalPresentation
from domain.entities.tortile import TortileObjectData
from domain.schemas.run import RunConfig, rows_to_records
from infrastructure.formats.diagram import parse_braid, parse_morse
from infrastructure.formats.presentation import parse_functor, parse_presentation
from infrastructure.formats.tortile import parse_tortile_data
from infrastructure.storage.file_storage import file_storage
from services.skeletal import identity_functor, validate_functor, validate_presentation
from services.tangles import trace_closure, validate
from services.tortile import kauffman_data, symmetric_data

logger = logging.getLogger(__name__)

_BUILTIN_RE = re.compile(r"^(kauffman|symmetric):(\d+)$")


def load_data(data_ref: str, config: RunConfig) -> Tuple[TortileObjectData, RunConfig]:
    """Resolve ``kauffman:<order>``, ``symmetric:<dim>`` or a data file path."""
    match = _BUILTIN_RE.match(data_ref.strip())
    field = config.base_field or RATIONALS
    if match and match.group(1) == "kauffman":
        data = kauffman_data(int(match.group(2)), field)
    elif match:
        order = config.order if config.order is not None else settings.ORDER
        data = symmetric_data(int(match.group(2)), TruncatedRing(field, order))
    else:
        data = parse_tortile_data(file_storage.read_text(data_ref), data_ref)
    config = config.bind(data_ref, data.field, data.order)
    logger.info(f"Loaded tortile data {data.name} (dim {data.dim}, order {data.order})")
    return data, config


def load_diagram(braid: Optional[str] = None, morse: Optional[str] = None) -> MorseDiagram:
    """A braid (inline text containing 'strands=' or a path) closed up, or a Morse file."""
    if braid:
        if "strands=" in braid:
            return trace_closure(parse_braid(braid, "braid"))
        word = parse_braid(file_storage.read_text(braid), braid)
        return trace_closure(word)
    if morse:
        diagram = parse_morse(file_storage.read_text(morse), morse)
        validate(diagram)
        return diagram
    raise ParseError("A diagram is required: pass --braid or --morse")


def load_presentation(path: str, config: RunConfig) -> Tuple[SkeletalPresentation, RunConfig]:
    presentation = parse_presentation(file_storage.read_text(path), path, config.base_field)
    validate_presentation(presentation)
    return presentation, config.bind(path, presentation.field)


def load_functor(path: Optional[str], presentation: SkeletalPresentation) -> FunctorPresentation:
    """The functor file over ``presentation``, or its identity functor when no file is given."""
    if not path:
        return identity_functor(presentation)
    return validate_functor(parse_functor(file_storage.read_text(path), presentation, path))


def emit_header(config: RunConfig) -> None:
    print(config.header())


def emit_rows(config: RunConfig, rows: Sequence[BaseModel], columns: Optional[List[str]] = None) -> None:
    """Aligned pandas table in human mode; space-separated records in machine mode."""
    records = rows_to_records(list(rows))
    if not records:
        return
    columns = columns or list(records[0])
    if config.machine:
        for record in records:
            print(" ".join(str(record[c]) for c in columns))
        return
    frame = pd.DataFrame.from_records(records, columns=columns)
    print(frame.to_string(index=False))
