# services/defcomplex.py
"""The deformation complex X*(F) of a skeletal functor presentation.

Cochains are scalar families on tuples of source objects. Every operation pads
its terms with ``functor_padding`` scalars, the value of the coherence iso
F(left comb) -> right comb of the F(a_i); after dividing a cochain by its
padding the coboundary is the ordinary bar formula.
"""
import logging
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from core.algebra.linalg import MatrixK, NoSolution, kernel_basis, rank, solve
from core.algebra.scalars import FieldElem, TruncatedRing, TruncatedScalar
from core.errors import (
    BaseError,
    BraceIndexError,
    FunctorMismatchError,
    InternalError,
    InvalidDeformationError,
    UnsupportedDegreeError,
)
from domain.entities.cochain import Cochain, DeformationSeries, ObjTuple, ObstructionClass
from domain.entities.presentation import FunctorPresentation
from domain.entities.results import CohomologyRow, UnitTriviality
from services.skeletal import _pair_lookup, compose_functors, functor_padding, unit_inclusion

logger = logging.getLogger(__name__)

MAX_DEGREE = 4


def _check_degree(n: int) -> None:
    if not 1 <= n <= MAX_DEGREE:
        raise UnsupportedDegreeError(f"Degree {n} outside the supported range 1..{MAX_DEGREE}")


def _check_same_functor(g: Cochain, h: Cochain) -> None:
    if not g.functor.same_as(h.functor):
        raise FunctorMismatchError(f"Cochains of {g.functor.name} and {h.functor.name} cannot be combined")


def cochain_tuples(f: FunctorPresentation, n: int, proper: bool = False) -> List[ObjTuple]:
    """S^n in object order; with ``proper`` only tuples avoiding the unit."""
    objects = f.source.non_unit_objects if proper else f.source.objects
    return list(product(objects, repeat=n))


def zero_cochain(f: FunctorPresentation, n: int, proper: bool = False) -> Cochain:
    return Cochain(degree=n, functor=f, components={}, proper=proper)


def indicator(f: FunctorPresentation, key: Sequence[str], value: FieldElem = None) -> Cochain:
    """Cochain that is ``value`` (default 1) at ``key`` and zero elsewhere."""
    value = f.field.one if value is None else value
    return Cochain(degree=len(key), functor=f, components={tuple(key): value})


def _bar_terms(a: ObjTuple, f: FunctorPresentation) -> List[Tuple[int, ObjTuple]]:
    """Signed faces of (a_0, ..., a_n): drop the first, merge neighbours, drop the last."""
    n = len(a) - 1
    tensor = f.source.tensor
    terms = [(1, a[1:])]
    for i in range(1, n + 1):
        terms.append(((-1) ** i, a[: i - 1] + (tensor(a[i - 1], a[i]),) + a[i + 1:]))
    terms.append(((-1) ** (n + 1), a[:n]))
    return terms


def delta(c: Cochain) -> Cochain:
    """Padded bar coboundary of c, a cochain of degree n+1.

    Raises:
        UnsupportedDegreeError: If c has degree above the materialized range.
    """
    _check_degree(c.degree)
    f = c.functor
    components = {}
    if not c.is_zero():
        for a in product(f.source.objects, repeat=c.degree + 1):
            total = f.field.zero
            for sign, face in _bar_terms(a, f):
                value = c.value(face)
                if value:
                    term = value * functor_padding(f, a) / functor_padding(f, face)
                    total = total + term if sign > 0 else total - term
            if total:
                components[a] = total
    return Cochain(degree=c.degree + 1, functor=f, components=components, proper=c.proper)


def coboundary_matrix(f: FunctorPresentation, n: int, proper: bool = False) -> MatrixK:
    """Matrix of delta_n: rows indexed by degree n+1 tuples, columns by degree n tuples."""
    _check_degree(n)
    rows = cochain_tuples(f, n + 1, proper)
    cols = cochain_tuples(f, n, proper)
    col_index = {t: j for j, t in enumerate(cols)}
    entries = [[f.field.zero] * len(cols) for _ in rows]
    for i, a in enumerate(rows):
        for sign, face in _bar_terms(a, f):
            j = col_index.get(face)
            if j is None:
                continue
            term = functor_padding(f, a) / functor_padding(f, face)
            entries[i][j] = entries[i][j] + term if sign > 0 else entries[i][j] - term
    return MatrixK.from_rows(f.field, entries, cols=len(cols))


def cochain_vector(c: Cochain, tuples: Sequence[ObjTuple]) -> Tuple[FieldElem, ...]:
    return tuple(c.value(t) for t in tuples)


def cochain_from_vector(f: FunctorPresentation, n: int, vector: Sequence[FieldElem], tuples: Sequence[ObjTuple],
                        proper: bool = False) -> Cochain:
    return Cochain(degree=n, functor=f, components=dict(zip(tuples, vector)), proper=proper)


def cup(g: Cochain, h: Cochain) -> Cochain:
    """(g u h)(a_1..a_(n+m)) = padding * g(a_1..a_n) * h(a_(n+1)..a_(n+m)).

    Raises:
        FunctorMismatchError: If g and h belong to different functors.
    """
    _check_same_functor(g, h)
    f = g.functor
    components = {}
    for x, gx in g.components.items():
        for y, hy in h.components.items():
            a = x + y
            components[a] = functor_padding(f, a) / (functor_padding(f, x) * functor_padding(f, y)) * gx * hy
    return Cochain(degree=g.degree + h.degree, functor=f, components=components, proper=g.proper and h.proper)


def brace_i(g: Cochain, h: Cochain, i: int) -> Cochain:
    """Insert h at position i of g: a cochain of degree deg g + deg h - 1.

    Raises:
        BraceIndexError: If i is outside 0..deg(g)-1.
        FunctorMismatchError: If g and h belong to different functors.
    """
    _check_same_functor(g, h)
    if not 0 <= i <= g.degree - 1:
        raise BraceIndexError(f"Insertion index {i} outside 0..{g.degree - 1}")
    f = g.functor
    components = {}
    for y, hy in h.components.items():
        merged = f.source.product_of(y)
        for x, gx in g.components.items():
            if x[i] != merged:
                continue
            a = x[:i] + y + x[i + 1:]
            components[a] = functor_padding(f, a) / (functor_padding(f, y) * functor_padding(f, x)) * hy * gx
    return Cochain(degree=g.degree + h.degree - 1, functor=f, components=components, proper=g.proper and h.proper)


def brace(g: Cochain, h: Cochain) -> Cochain:
    """Signed sum of insertions, sign (-1)^((deg h - 1) i)."""
    _check_same_functor(g, h)
    total = zero_cochain(g.functor, g.degree + h.degree - 1, proper=g.proper and h.proper)
    for i in range(g.degree):
        term = brace_i(g, h, i)
        total = total + term if ((h.degree - 1) * i) % 2 == 0 else total - term
    return total


def cohomology_row(f: FunctorPresentation, n: int, proper: bool = False) -> CohomologyRow:
    """Kernel dimension of delta_n and rank of delta_(n-1) (zero when n = 1)."""
    _check_degree(n)
    matrix = coboundary_matrix(f, n, proper)
    kernel_dim = matrix.cols - rank(matrix)
    image_rank = rank(coboundary_matrix(f, n - 1, proper)) if n > 1 else 0
    logger.debug(f"H^{n} of {f.name} (proper={proper}): ker {kernel_dim}, im {image_rank}")
    return CohomologyRow(degree=n, kernel_dim=kernel_dim, image_rank=image_rank, proper=proper)


def cohomology_dim(f: FunctorPresentation, n: int, proper: bool = False) -> int:
    """dim ker delta_n - dim im delta_(n-1) over K.

    Raises:
        UnsupportedDegreeError: For n outside 1..4.
    """
    return cohomology_row(f, n, proper).cohomology_dim


def cohomology_table(f: FunctorPresentation, degrees: Sequence[int], proper: bool = False) -> List[CohomologyRow]:
    try:
        rows = [cohomology_row(f, n, proper) for n in degrees]
        logger.info(f"Cohomology of {f.name}: " + ", ".join(f"H^{r.degree}={r.cohomology_dim}" for r in rows))
        return rows
    except BaseError:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in cohomology_table: {str(e)}", exc_info=True)
        raise InternalError(f"Cohomology computation failed: {str(e)}")


def cocycle_basis(f: FunctorPresentation, n: int, proper: bool = False) -> List[Cochain]:
    tuples = cochain_tuples(f, n, proper)
    return [cochain_from_vector(f, n, v, tuples, proper) for v in kernel_basis(coboundary_matrix(f, n, proper))]


def solve_coboundary(c: Cochain, proper: bool = False) -> Optional[Cochain]:
    """Some psi with delta(psi) = c, or None when c is not a coboundary."""
    f = c.functor
    n = c.degree - 1
    _check_degree(n)
    matrix = coboundary_matrix(f, n, proper)
    rhs = cochain_vector(c, cochain_tuples(f, c.degree, proper))
    if proper and any(c.value(t) for t in c.components if f.source.unit in t):
        return None
    solution = solve(matrix, rhs)
    if isinstance(solution, NoSolution):
        return None
    return cochain_from_vector(f, n, solution, cochain_tuples(f, n, proper), proper)


def is_proper(c: Cochain) -> bool:
    """True when every component indexed by a tuple containing the unit vanishes."""
    e = c.functor.source.unit
    return all(e not in key for key in c.components)


def properize_check(g: Cochain, h: Cochain) -> List[str]:
    """Names of the operations whose output fails to be proper on proper inputs; empty means pass."""
    failures = []
    candidates = []
    for name, c in (("delta(g)", g), ("delta(h)", h)):
        if 1 <= c.degree <= MAX_DEGREE:
            candidates.append((name, lambda c=c: delta(c)))
        else:
            logger.debug(f"properize_check skips {name}: degree {c.degree} outside 1..{MAX_DEGREE}")
    candidates.append(("g cup h", lambda: cup(g, h)))
    candidates += [(f"<g,h>^({i})", lambda i=i: brace_i(g, h, i)) for i in range(g.degree)]
    for name, build in candidates:
        if not is_proper(build()):
            failures.append(name)
    return failures


def _deformed_coherence(d: DeformationSeries, ring: TruncatedRing, a: str, b: str) -> TruncatedScalar:
    return ring.from_coeffs([d.component(k, a, b) for k in range(ring.order + 1)])


def check_deformation(d: DeformationSeries) -> Optional[Tuple[str, str, str]]:
    """First triple where the deformed functor hexagon fails over R_n, or None."""
    f = d.functor
    src, tgt = f.source, f.target
    ring = TruncatedRing(f.field, d.order)
    for a, b, c in product(src.objects, repeat=3):
        lhs = (_deformed_coherence(d, ring, a, b) * _deformed_coherence(d, ring, src.tensor(a, b), c)
               * tgt.alpha(f.obj(a), f.obj(b), f.obj(c)))
        rhs = (_deformed_coherence(d, ring, a, src.tensor(b, c)) * _deformed_coherence(d, ring, b, c)
               * src.alpha(a, b, c))
        if lhs != rhs:
            logger.debug(f"Deformed hexagon fails at {(a, b, c)}")
            return (a, b, c)
    return None


def hexagon_residual(d: DeformationSeries, k: int) -> Cochain:
    """eps^k coefficient of the deformed hexagon's two sides, terms beyond the series' order taken as zero."""
    f = d.functor
    src, tgt = f.source, f.target
    components = {}
    for a, b, c in product(src.objects, repeat=3):
        ab, bc = src.tensor(a, b), src.tensor(b, c)
        lhs = f.field.zero
        rhs = f.field.zero
        for i in range(k + 1):
            lhs = lhs + d.component(i, a, b) * d.component(k - i, ab, c)
            rhs = rhs + d.component(i, a, bc) * d.component(k - i, b, c)
        value = tgt.alpha(f.obj(a), f.obj(b), f.obj(c)) * lhs - src.alpha(a, b, c) * rhs
        if value:
            components[(a, b, c)] = value
    return Cochain(degree=3, functor=f, components=components)


def obstruction(d: DeformationSeries) -> Cochain:
    """sum_(i=1..n) <F^(i), F^(n-i+1)>, the 3-cocycle obstructing order n+1.

    Raises:
        InvalidDeformationError: If d fails its deformed hexagon.
    """
    witness = check_deformation(d)
    if witness is not None:
        raise InvalidDeformationError(witness)
    n = d.order
    total = zero_cochain(d.functor, 3, proper=d.proper)
    for i in range(1, n + 1):
        total = total + brace(d.term(i), d.term(n - i + 1))
    return total


def extend_deformation(d: DeformationSeries, target_order: int) -> Union[DeformationSeries, ObstructionClass]:
    """Extend d term by term by solving delta(F^(k+1)) = obstruction.

    Proper series are extended with proper terms only. Failure is returned as an
    ObstructionClass, not raised.

    Raises:
        InvalidDeformationError: If d fails its deformed hexagon.
    """
    try:
        witness = check_deformation(d)
        if witness is not None:
            raise InvalidDeformationError(witness)
        f = d.functor
        if target_order <= d.order:
            return DeformationSeries(functor=f, terms=d.terms[:target_order], proper=d.proper)
        matrix = coboundary_matrix(f, 2, d.proper)
        rows = cochain_tuples(f, 3, d.proper)
        cols = cochain_tuples(f, 2, d.proper)
        current = d
        while current.order < target_order:
            obs = obstruction(current)
            solution = solve(matrix, cochain_vector(obs, rows))
            if isinstance(solution, NoSolution):
                next_matrix = coboundary_matrix(f, 3, d.proper)
                result = ObstructionClass(
                    representative=obs, failed_order=current.order + 1, partial=current,
                    kernel_dim=next_matrix.cols - rank(next_matrix), image_rank=solution.rank,
                )
                logger.info(f"Extension of {f.name} obstructed at order {current.order + 1}")
                return result
            current = current.extended(cochain_from_vector(f, 2, solution, cols, d.proper))
        logger.info(f"Extended deformation of {f.name} to order {current.order}")
        return current
    except BaseError:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in extend_deformation: {str(e)}", exc_info=True)
        raise InternalError(f"Deformation extension failed: {str(e)}")


def equivalence_witness(d1: DeformationSeries, d2: DeformationSeries) -> Optional[Cochain]:
    """A 1-cochain psi with delta(psi) = F2^(1) - F1^(1), or None when the two are inequivalent.

    Raises:
        FunctorMismatchError: If the series deform different functors.
    """
    if not d1.functor.same_as(d2.functor):
        raise FunctorMismatchError("Deformations of different functors cannot be compared")
    difference = d2.term(1) - d1.term(1)
    return solve_coboundary(Cochain(degree=2, functor=d1.functor, components=difference.components))


def pullback(c: Cochain, inner: FunctorPresentation,
             composite: Optional[FunctorPresentation] = None) -> Cochain:
    """Cochain induced on outer o inner: c'(a) = P^(outer.inner)(a) / P^outer(inner a) * c(inner a)."""
    outer = c.functor
    composite = composite or compose_functors(outer, inner)
    components = {}
    for a in product(inner.source.objects, repeat=c.degree):
        image = tuple(inner.obj(x) for x in a)
        value = c.value(image)
        if value:
            components[a] = functor_padding(composite, a) / functor_padding(outer, image) * value
    return Cochain(degree=c.degree, functor=composite, components=components)


def unit_triviality(d: DeformationSeries) -> UnitTriviality:
    """Whether F^(1) restricted along a -> (e,a) and a -> (a,e) is a coboundary.

    Raises:
        ShapeError: If d does not deform a multiplication C x C -> C.
    """
    m = d.functor
    _pair_lookup(m)
    c = m.target
    first = d.term(1) if d.order else zero_cochain(m, 2)
    outcome = {}
    for side in ("left", "right"):
        inclusion = unit_inclusion(c, side, m.source)
        restricted = pullback(first, inclusion, compose_functors(m, inclusion))
        outcome[side] = solve_coboundary(restricted)
    result = UnitTriviality(left=outcome["left"] is not None, right=outcome["right"] is not None,
                            left_witness=outcome["left"], right_witness=outcome["right"])
    logger.info(f"Unit triviality of {m.name}: left={result.left}, right={result.right}")
    return result
