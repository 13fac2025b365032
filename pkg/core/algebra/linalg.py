# core/algebra/linalg.py
"""Dense exact matrices over K and over R_n.

A ``MatrixK`` wraps a 2-D numpy object array of field elements. A ``MatrixR``
stores one coefficient slab per power of eps, shape (n+1, rows, cols), so
products and Kronecker products are Cauchy sums of slab products. Row
reduction goes through ``sympy.polys.matrices.DomainMatrix``.
"""
import logging
import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from core.algebra.scalars import BaseField, FieldElem, TruncatedRing, TruncatedScalar
from core.errors import NonUnitMatrixError, OrderError, OrderMismatchError, ShapeError

logger = logging.getLogger(__name__)

Vector = Tuple[FieldElem, ...]


def _zeros(field: BaseField, shape: Tuple[int, ...]) -> np.ndarray:
    array = np.empty(shape, dtype=object)
    array.fill(field.zero)
    return array


def _slab_dot(field: BaseField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return _zeros(field, (a.shape[0], b.shape[1]))
    return np.dot(a, b)


def _slab_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    r1, c1 = a.shape
    r2, c2 = b.shape
    return np.multiply.outer(a, b).transpose(0, 2, 1, 3).reshape(r1 * r2, c1 * c2)


def _arrays_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


@dataclass(frozen=True, eq=False)
class MatrixK:
    """Dense matrix over the base field."""
    field: BaseField
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.ndim != 2:
            raise ShapeError(f"MatrixK needs a 2-D array, got shape {self.entries.shape}")

    @classmethod
    def from_rows(cls, field: BaseField, rows: Sequence[Sequence[Union[int, FieldElem]]], cols: int = None) -> "MatrixK":
        rows = [list(row) for row in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        array = _zeros(field, (len(rows), width))
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ShapeError(f"Row {i} has {len(row)} entries, expected {width}")
            for j, value in enumerate(row):
                array[i, j] = field.convert(value)
        return cls(field, array)

    @classmethod
    def zeros(cls, field: BaseField, rows: int, cols: int) -> "MatrixK":
        return cls(field, _zeros(field, (rows, cols)))

    @classmethod
    def identity(cls, field: BaseField, size: int) -> "MatrixK":
        array = _zeros(field, (size, size))
        for i in range(size):
            array[i, i] = field.one
        return cls(field, array)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def entry(self, i: int, j: int) -> FieldElem:
        return self.entries[i, j]

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(row) for row in self.entries], (self.rows, self.cols), self.field.domain)

    def apply(self, x: Sequence[FieldElem]) -> Vector:
        """Matrix-vector product."""
        if len(x) != self.cols:
            raise ShapeError(f"Vector of length {len(x)} does not fit {self.rows}x{self.cols}")
        zero = self.field.zero
        return tuple(sum((self.entries[i, j] * x[j] for j in range(self.cols) if x[j]), zero)
                     for i in range(self.rows))

    def __matmul__(self, other: "MatrixK") -> "MatrixK":
        if self.cols != other.rows:
            raise ShapeError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return MatrixK(self.field, _slab_dot(self.field, self.entries, other.entries))

    def __add__(self, other: "MatrixK") -> "MatrixK":
        if self.entries.shape != other.entries.shape:
            raise ShapeError(f"Cannot add {self.entries.shape} and {other.entries.shape}")
        return MatrixK(self.field, self.entries + other.entries)

    def __sub__(self, other: "MatrixK") -> "MatrixK":
        if self.entries.shape != other.entries.shape:
            raise ShapeError(f"Cannot subtract {self.entries.shape} and {other.entries.shape}")
        return MatrixK(self.field, self.entries - other.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixK) and self.field == other.field and _arrays_equal(self.entries, other.entries)

    __hash__ = None


@dataclass(frozen=True)
class NoSolution:
    """Inconsistent linear system; the right-hand side is not in the column space.

    ``witness`` is a left null vector y of the matrix with y.b = ``residual`` != 0, so b
    has a nonzero class in the cokernel.
    """
    rank: int
    augmented_rank: int
    witness: Vector = ()
    residual: FieldElem = None

    @property
    def defect(self) -> int:
        return self.augmented_rank - self.rank


def rank(a: MatrixK) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return a.to_domain_matrix().rank()


def _rref(a: MatrixK) -> Tuple[list, Tuple[int, ...]]:
    reduced, pivots = a.to_domain_matrix().rref()
    return reduced.to_list(), tuple(pivots)


def kernel_basis(a: MatrixK) -> List[Vector]:
    """Basis of the right null space, one vector per free column."""
    field = a.field
    if a.cols == 0:
        return []
    if a.rows == 0:
        return [tuple(field.one if j == i else field.zero for j in range(a.cols)) for i in range(a.cols)]
    reduced, pivots = _rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    basis = []
    for f in free:
        vector = [field.zero] * a.cols
        vector[f] = field.one
        for row, p in enumerate(pivots):
            vector[p] = -reduced[row][f]
        basis.append(tuple(vector))
    logger.debug(f"Kernel of {a.rows}x{a.cols} matrix has dimension {len(basis)}")
    return basis


def _cokernel_witness(a: MatrixK, b: Sequence[FieldElem]) -> Tuple[Vector, FieldElem]:
    """First left null vector of a pairing nonzero with b."""
    field = a.field
    transposed = MatrixK(field, np.ascontiguousarray(a.entries.T))
    for y in kernel_basis(transposed):
        value = sum((y[i] * field.convert(b[i]) for i in range(a.rows)), field.zero)
        if value:
            return y, value
    raise ShapeError("Right-hand side lies in the column space")


def solve(a: MatrixK, b: Sequence[FieldElem]) -> Union[Vector, NoSolution]:
    """Some x with a.x = b, free variables set to zero, or NoSolution.

    Raises:
        ShapeError: If b does not have a.rows entries.
    """
    field = a.field
    if len(b) != a.rows:
        raise ShapeError(f"Right-hand side of length {len(b)} does not fit {a.rows} rows")
    if a.rows == 0:
        return tuple(field.zero for _ in range(a.cols))
    augmented = _zeros(field, (a.rows, a.cols + 1))
    augmented[:, : a.cols] = a.entries
    for i, value in enumerate(b):
        augmented[i, a.cols] = field.convert(value)
    reduced, pivots = _rref(MatrixK(field, augmented))
    if a.cols in pivots:
        base_rank = len(pivots) - 1
        witness, residual = _cokernel_witness(a, b)
        logger.debug(f"System inconsistent: rank {base_rank}, augmented rank {len(pivots)}, residual {residual}")
        return NoSolution(rank=base_rank, augmented_rank=len(pivots), witness=witness, residual=residual)
    x = [field.zero] * a.cols
    for row, p in enumerate(pivots):
        x[p] = reduced[row][a.cols]
    return tuple(x)


@dataclass(frozen=True, eq=False)
class MatrixR:
    """Dense matrix over R_n, stored as coefficient slabs of shape (n+1, rows, cols)."""
    ring: TruncatedRing
    slabs: np.ndarray

    def __post_init__(self):
        if self.slabs.ndim != 3 or self.slabs.shape[0] != self.ring.order + 1:
            raise ShapeError(f"Slab array of shape {self.slabs.shape} does not fit order {self.ring.order}")

    @classmethod
    def zeros(cls, ring: TruncatedRing, rows: int, cols: int) -> "MatrixR":
        return cls(ring, _zeros(ring.field, (ring.order + 1, rows, cols)))

    @classmethod
    def identity(cls, ring: TruncatedRing, size: int) -> "MatrixR":
        return cls.from_field_matrix(ring, MatrixK.identity(ring.field, size))

    @classmethod
    def from_field_matrix(cls, ring: TruncatedRing, a: MatrixK) -> "MatrixR":
        slabs = _zeros(ring.field, (ring.order + 1, a.rows, a.cols))
        slabs[0] = a.entries
        return cls(ring, slabs)

    @classmethod
    def from_scalars(cls, ring: TruncatedRing, rows: Sequence[Sequence[Union[int, FieldElem, TruncatedScalar]]],
                     cols: int = None) -> "MatrixR":
        rows = [list(row) for row in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        slabs = _zeros(ring.field, (ring.order + 1, len(rows), width))
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ShapeError(f"Row {i} has {len(row)} entries, expected {width}")
            for j, value in enumerate(row):
                scalar = ring.coerce(value)
                for k, c in enumerate(scalar.coeffs):
                    slabs[k, i, j] = c
        return cls(ring, slabs)

    @property
    def order(self) -> int:
        return self.ring.order

    @property
    def field(self) -> BaseField:
        return self.ring.field

    @property
    def rows(self) -> int:
        return self.slabs.shape[1]

    @property
    def cols(self) -> int:
        return self.slabs.shape[2]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> TruncatedScalar:
        return TruncatedScalar(self.ring, tuple(self.slabs[:, i, j]))

    def as_scalar(self) -> TruncatedScalar:
        if self.shape != (1, 1):
            raise ShapeError(f"Expected a 1x1 matrix, got {self.rows}x{self.cols}")
        return self.entry(0, 0)

    def slab(self, k: int) -> MatrixK:
        return MatrixK(self.field, self.slabs[k].copy())

    def is_zero(self) -> bool:
        return not any(bool(x) for x in self.slabs.flat)

    def nonzero_entries(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if any(self.slabs[:, i, j])]

    def _check_ring(self, other: "MatrixR") -> None:
        if self.ring != other.ring:
            raise OrderMismatchError(f"Cannot combine matrices over {self.ring} and {other.ring}")

    def __add__(self, other: "MatrixR") -> "MatrixR":
        return mat_add(self, other)

    def __sub__(self, other: "MatrixR") -> "MatrixR":
        return mat_add(self, other.scale(self.ring.constant(-1)))

    def __neg__(self) -> "MatrixR":
        return self.scale(self.ring.constant(-1))

    def __matmul__(self, other: "MatrixR") -> "MatrixR":
        return mat_mul(self, other)

    def scale(self, s: Union[int, FieldElem, TruncatedScalar]) -> "MatrixR":
        s = self.ring.coerce(s)
        result = _zeros(self.field, self.slabs.shape)
        for k in range(self.order + 1):
            for i in range(k + 1):
                if s.coeffs[i]:
                    result[k] = result[k] + self.slabs[k - i] * s.coeffs[i]
        return MatrixR(self.ring, result)

    def transpose(self) -> "MatrixR":
        return MatrixR(self.ring, self.slabs.transpose(0, 2, 1).copy())

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixR) and self.ring == other.ring and _arrays_equal(self.slabs, other.slabs)

    __hash__ = None

    def format(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            lines.append(" ".join(self.entry(i, j).format() for j in range(self.cols)))
        return "\n".join(lines)


def mat_add(a: MatrixR, b: MatrixR) -> MatrixR:
    """Entrywise sum.

    Raises:
        ShapeError: On dimension mismatch.
    """
    a._check_ring(b)
    if a.shape != b.shape:
        raise ShapeError(f"Cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    return MatrixR(a.ring, a.slabs + b.slabs)


def mat_mul(a: MatrixR, b: MatrixR) -> MatrixR:
    """Matrix product over R_n: slab k of the result is sum_i A_i B_(k-i).

    Raises:
        ShapeError: If a.cols != b.rows.
    """
    a._check_ring(b)
    if a.cols != b.rows:
        raise ShapeError(f"Cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    field = a.field
    result = _zeros(field, (a.order + 1, a.rows, b.cols))
    for k in range(a.order + 1):
        for i in range(k + 1):
            result[k] = result[k] + _slab_dot(field, a.slabs[i], b.slabs[k - i])
    return MatrixR(a.ring, result)


def kron(a: MatrixR, b: MatrixR) -> MatrixR:
    """Kronecker product over R_n."""
    a._check_ring(b)
    result = _zeros(a.field, (a.order + 1, a.rows * b.rows, a.cols * b.cols))
    for k in range(a.order + 1):
        for i in range(k + 1):
            result[k] = result[k] + _slab_kron(a.slabs[i], b.slabs[k - i])
    return MatrixR(a.ring, result)


def mat_invert(a: MatrixR) -> MatrixR:
    """Two-sided inverse over R_n: invert mod eps, then lift one order at a time.

    Raises:
        ShapeError: If a is not square.
        NonUnitMatrixError: If a is singular mod eps.
    """
    if a.rows != a.cols:
        raise ShapeError(f"Cannot invert a {a.rows}x{a.cols} matrix")
    field = a.field
    size = a.rows
    result = _zeros(field, a.slabs.shape)
    if size == 0:
        return MatrixR(a.ring, result)
    try:
        inverse0 = a.slab(0).to_domain_matrix().inv()
    except (DMNonInvertibleMatrixError, ZeroDivisionError) as exc:
        logger.debug(f"Constant slab is singular: {exc}")
        raise NonUnitMatrixError(f"{size}x{size} matrix is singular mod eps")
    result[0] = np.array(inverse0.to_list(), dtype=object).reshape(size, size)
    for k in range(1, a.order + 1):
        total = _zeros(field, (size, size))
        for j in range(1, k + 1):
            total = total + np.dot(a.slabs[j], result[k - j])
        result[k] = -np.dot(result[0], total)
    return MatrixR(a.ring, result)


def reduce_matrix(a: MatrixR, k: int) -> MatrixR:
    """Entrywise reduction mod eps^(k+1).

    Raises:
        OrderError: If k exceeds the order of a.
    """
    if not 0 <= k <= a.order:
        raise OrderError(f"Cannot reduce order {a.order} matrix to order {k}")
    return MatrixR(TruncatedRing(a.field, k), a.slabs[: k + 1].copy())


def random_matrix(ring: TruncatedRing, rows: int, cols: int, rng: random.Random) -> MatrixR:
    return MatrixR.from_scalars(ring, [[ring.random_element(rng) for _ in range(cols)] for _ in range(rows)], cols)
