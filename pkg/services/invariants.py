# services/invariants.py
"""The evaluation functor on framed singular tangles and its Vassiliev coefficients.

Evaluation keeps the running state as coefficient slabs of shape
(n+1, d^w, d^src) and contracts each slice against the strands it touches,
so whiskering identities are never materialized. ``slice_matrix`` builds the
whiskered Kronecker form of one slice and is used as the reference path.
"""
import logging
from typing import Callable, Dict, List, Sequence

import numpy as np

from core.algebra.linalg import MatrixR
from core.algebra.scalars import FieldElem, TruncatedScalar
from core.errors import BaseError, BoundaryError, FlaggedDataError, InternalError, NonUnitError, OrderError
from domain.entities.diagram import RESOLUTIONS, BraidWord, MorseDiagram, Slice, SliceKind
from domain.entities.results import (
    ConvolutionRow,
    DisjointUnionReport,
    EvaluationResult,
    ResolutionTerm,
    TypeBoundReport,
)
from domain.entities.tortile import TortileObjectData
from services import tangles
from services.tortile import identity, infinitesimally_symmetric, inverse_braiding, inverse_twist, whisker

logger = logging.getLogger(__name__)


def local_matrix(kind: SliceKind, t: TortileObjectData) -> MatrixR:
    """Matrix of a slice on just the strands it touches."""
    if kind in (SliceKind.ID_UP, SliceKind.ID_DOWN):
        return identity(t)
    table: Dict[SliceKind, Callable[[], MatrixR]] = {
        SliceKind.CUP_R: lambda: t.coev_r,
        SliceKind.CUP_L: lambda: t.coev_l,
        SliceKind.CAP_R: lambda: t.ev_r,
        SliceKind.CAP_L: lambda: t.ev_l,
        SliceKind.CR_POS: lambda: t.c_plus,
        SliceKind.CR_NEG: lambda: inverse_braiding(t),
        SliceKind.CR_SING: lambda: t.c_plus - inverse_braiding(t),
        SliceKind.TW_POS: lambda: t.theta,
        SliceKind.TW_NEG: lambda: inverse_twist(t),
        SliceKind.TW_SING: lambda: t.theta - inverse_twist(t),
    }
    return table[kind]()


def slice_matrix(piece: Slice, width: int, t: TortileObjectData) -> MatrixR:
    """Id^(x offset) (x) slice (x) Id^(x rest) for a slice acting inside ``width`` ambient strands."""
    rest = width - piece.offset - len(piece.inputs)
    if rest < 0:
        raise BoundaryError(f"{piece} does not fit in {width} strands")
    return whisker(t, local_matrix(piece.kind, t), piece.offset, rest)


def _apply_slice(state: np.ndarray, local: MatrixR, piece: Slice, width: int, d: int) -> np.ndarray:
    """Contract a local slice matrix into the state slabs along the touched strands."""
    order = state.shape[0] - 1
    cols = state.shape[2]
    before = d ** piece.offset
    inner = d ** len(piece.inputs)
    after = d ** (width - piece.offset - len(piece.inputs)) * cols
    blocks = state.reshape(order + 1, before, inner, after)
    out_rows = local.rows
    result = np.empty((order + 1, before, out_rows, after), dtype=object)
    result.fill(local.field.zero)
    for k in range(order + 1):
        for i in range(k + 1):
            contracted = np.tensordot(local.slabs[i], blocks[k - i], axes=([1], [1]))
            result[k] = result[k] + contracted.transpose(1, 0, 2)
    new_width = width - len(piece.inputs) + len(piece.outputs)
    return result.reshape(order + 1, d ** new_width, cols)


def evaluate(d: MorseDiagram, t: TortileObjectData) -> EvaluationResult:
    """Compose the slice matrices bottom to top.

    Raises:
        DiagramValidationError: If the slices do not chain.
        NonUnitMatrixError: If a needed inverse does not exist.
    """
    source, top = tangles.validate(d)
    state = identity(t, len(source)).slabs.copy()
    width = len(source)
    for piece in d.slices:
        state = _apply_slice(state, local_matrix(piece.kind, t), piece, width, t.dim)
        width += len(piece.outputs) - len(piece.inputs)
    result = EvaluationResult(matrix=MatrixR(t.ring, state), source=source, target=top)
    logger.debug(f"Evaluated {d.name} ({len(d)} slices) with {t.name}")
    return result


def evaluate_by_kronecker(d: MorseDiagram, t: TortileObjectData) -> EvaluationResult:
    """Same value as ``evaluate``, multiplying full whiskered slice matrices."""
    source, top = tangles.validate(d)
    matrix = identity(t, len(source))
    width = len(source)
    for piece in d.slices:
        matrix = slice_matrix(piece, width, t) @ matrix
        width += len(piece.outputs) - len(piece.inputs)
    return EvaluationResult(matrix=matrix, source=source, target=top)


def _closed_value(d: MorseDiagram, t: TortileObjectData) -> TruncatedScalar:
    result = evaluate(d, t)
    if not result.is_closed:
        raise BoundaryError(f"{d.name} is not a closed diagram")
    return result.scalar


def unknot_value(t: TortileObjectData) -> TruncatedScalar:
    return _closed_value(tangles.trace_closure(BraidWord(strands=1, name="unknot")), t)


def vassiliev_coeff(d: MorseDiagram, t: TortileObjectData, k: int) -> FieldElem:
    """Coefficient of eps^k in the value of a closed diagram.

    Raises:
        BoundaryError: If d is not closed.
        OrderError: If k exceeds the datum's order.
    """
    if not 0 <= k <= t.order:
        raise OrderError(f"Coefficient {k} outside 0..{t.order}")
    return _closed_value(d, t).coefficient(k)


def resolve_singular(d: MorseDiagram) -> List[ResolutionTerm]:
    """Expand every singular slice as (positive resolution) - (negative resolution)."""
    terms = [(1, list(d.slices), "")]
    for position, piece in enumerate(d.slices):
        if not piece.is_singular:
            continue
        positive, negative = RESOLUTIONS[piece.kind]
        expanded = []
        for sign, slices, tag in terms:
            for kind, factor, mark in ((positive, 1, "+"), (negative, -1, "-")):
                replaced = list(slices)
                replaced[position] = Slice(kind=kind, offset=piece.offset)
                expanded.append((sign * factor, replaced, tag + mark))
        terms = expanded
    return [ResolutionTerm(sign=sign, diagram=d.with_slices(slices, name=f"{d.name}{tag}" if tag else d.name))
            for sign, slices, tag in terms]


def _require_symmetric(t: TortileObjectData) -> None:
    if not infinitesimally_symmetric(t):
        raise FlaggedDataError(
            f"{t.name} is not infinitesimally symmetric; the type bound does not apply to it")


def verify_type_bound(d: MorseDiagram, t: TortileObjectData) -> TypeBoundReport:
    """Evaluate a singular closed diagram and check that it vanishes when it has at least n+1 singular points.

    Raises:
        FlaggedDataError: If c - c^-1 or theta - theta^-1 is nonzero mod eps.
        BoundaryError: If d is not closed.
    """
    _require_symmetric(t)
    count = tangles.singular_count(d)
    value = _closed_value(d, t)
    applicable = count >= t.order + 1
    report = TypeBoundReport(diagram=d.name, singular_count=count, order=t.order, applicable=applicable,
                             passed=value.is_zero() or not applicable, value=value)
    if applicable and not report.passed:
        logger.warning(f"Type bound violated by {d.name}: {value.format()}")
    return report


def type_bound_sweep(d: MorseDiagram, t: TortileObjectData, max_singular: int) -> List[TypeBoundReport]:
    """verify_type_bound over every singularization of d with 1..max_singular singular slices."""
    _require_symmetric(t)
    try:
        reports = []
        for s in range(1, max_singular + 1):
            reports += [verify_type_bound(pattern, t) for pattern in tangles.singularization_patterns(d, s)]
        logger.info(f"Swept {len(reports)} singular patterns of {d.name}")
        return reports
    except BaseError:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in type_bound_sweep: {str(e)}", exc_info=True)
        raise InternalError(f"Type bound sweep failed: {str(e)}")


def verify_coefficient_type(d: MorseDiagram, t: TortileObjectData, k: int) -> TypeBoundReport:
    """Coefficient k is of type <= k: it vanishes on diagrams with at least k+1 singular points."""
    _require_symmetric(t)
    if not 0 <= k <= t.order:
        raise OrderError(f"Coefficient {k} outside 0..{t.order}")
    count = tangles.singular_count(d)
    value = _closed_value(d, t)
    applicable = count >= k + 1
    return TypeBoundReport(diagram=d.name, singular_count=count, order=k, applicable=applicable,
                           passed=not applicable or not value.coefficient(k), value=value)


def normalized_value(d: MorseDiagram, t: TortileObjectData) -> TruncatedScalar:
    """Value divided by the unknot value once per component.

    Raises:
        NonUnitError: If the unknot value is not invertible in R_n.
    """
    unknot = unknot_value(t)
    if not unknot.is_unit():
        raise NonUnitError(f"Unknot value {unknot.format()} is not a unit")
    return _closed_value(d, t) * unknot ** (-tangles.component_count(d))


def linear_image(d: MorseDiagram, t: TortileObjectData, weights: Sequence[FieldElem]) -> FieldElem:
    """sum_k weights[k] * coefficient k."""
    if len(weights) > t.order + 1:
        raise OrderError(f"{len(weights)} weights for a series of order {t.order}")
    value = _closed_value(d, t)
    total = t.field.zero
    for k, weight in enumerate(weights):
        total += t.field.convert(weight) * value.coefficient(k)
    return total


def check_disjoint_union(a: MorseDiagram, b: MorseDiagram, t: TortileObjectData) -> DisjointUnionReport:
    """Multiplicativity and the coefficient convolution identity for a separated union."""
    union = tangles.disjoint_union(a, b)
    va, vb, vu = _closed_value(a, t), _closed_value(b, t), _closed_value(union, t)
    rows = []
    for k in range(t.order + 1):
        convolution = t.field.zero
        for i in range(k + 1):
            convolution += va.coefficient(i) * vb.coefficient(k - i)
        rows.append(ConvolutionRow(k=k, union=vu.coefficient(k), convolution=convolution))
    report = DisjointUnionReport(
        left=a.name, right=b.name, left_components=tangles.component_count(a),
        right_components=tangles.component_count(b), union_components=tangles.component_count(union),
        union_value=vu, product_value=va * vb, rows=rows,
    )
    logger.info(f"Disjoint union {union.name}: passed={report.passed}")
    return report
