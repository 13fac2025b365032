# core/algebra/scalars.py
"""Exact base fields and the truncated ring R_n = K[eps]/<eps^(n+1)>.

Field elements are sympy domain elements (``QQ`` or ``GF(p)``) used as-is.
Truncated scalars are immutable coefficient tuples tied to a ring context;
arithmetic between different contexts is an error, never a coercion.
"""
import logging
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from core.errors import (
    NonUnitError,
    NoninvertibleFactorialError,
    OrderError,
    OrderMismatchError,
    ParseError,
    ValidationError,
)

logger = logging.getLogger(__name__)

FieldElem = Any

_HEADER_RE = re.compile(r"^\s*(?:Q|Fp:(\d+))\s*$")
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@lru_cache(maxsize=None)
def _domain_for(characteristic: int) -> Domain:
    if characteristic == 0:
        return QQ
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class BaseField:
    """The ground field K: the rationals (characteristic 0) or F_p."""
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise ValidationError(f"Field characteristic must be 0 or a prime, got: {self.characteristic}")

    @classmethod
    def parse(cls, header: str) -> "BaseField":
        """Parse a field header ``Q`` or ``Fp:<prime>``."""
        match = _HEADER_RE.match(header or "")
        if not match:
            raise ParseError(f"Invalid field header '{header}', expected Q or Fp:<prime>")
        return cls(int(match.group(1)) if match.group(1) else 0)

    @property
    def domain(self) -> Domain:
        return _domain_for(self.characteristic)

    @property
    def zero(self) -> FieldElem:
        return self.domain.zero

    @property
    def one(self) -> FieldElem:
        return self.domain.one

    @property
    def header(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    def __str__(self) -> str:
        return self.header

    def __call__(self, numerator: Union[int, FieldElem], denominator: int = 1) -> FieldElem:
        """Build the element numerator/denominator of this field."""
        K = self.domain
        if self.characteristic == 0:
            if isinstance(numerator, int):
                if denominator == 0:
                    raise ValidationError("Zero denominator")
                return K(numerator, denominator)
            return K.convert(numerator) / K(denominator)
        den = K(denominator)
        if not den:
            raise ValidationError(f"Denominator {denominator} vanishes in {self.header}")
        return K(int(numerator)) / den if isinstance(numerator, int) else K.convert(numerator) / den

    def convert(self, value: Union[int, FieldElem]) -> FieldElem:
        if isinstance(value, int):
            return self(value)
        return self.domain.convert(value)

    def is_zero(self, a: FieldElem) -> bool:
        return not a

    def inv(self, a: FieldElem) -> FieldElem:
        if not a:
            raise NonUnitError(f"Cannot invert zero in {self.header}")
        return self.one / a

    def parse_elem(self, text: str, source: str = "<string>", line: int = 0) -> FieldElem:
        """Parse a literal ``p/q`` or ``p``."""
        match = _RATIONAL_RE.match(text)
        if not match:
            raise ParseError(f"Invalid scalar literal '{text.strip()}'", source, line)
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) else 1
        try:
            return self(numerator, denominator)
        except ValidationError as ve:
            raise ParseError(ve.detail, source, line)

    def format_elem(self, a: FieldElem) -> str:
        K = self.domain
        if self.characteristic == 0:
            numerator, denominator = int(K.numer(a)), int(K.denom(a))
            return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"
        return str(int(a) % self.characteristic)

    def elements(self) -> list:
        """All elements of a prime field, in increasing representative order."""
        if self.characteristic == 0:
            raise ValidationError("The rationals cannot be enumerated")
        return [self(i) for i in range(self.characteristic)]

    def units(self) -> list:
        """Candidate unit values: all of F_p^x, or +-1 over Q."""
        if self.characteristic == 0:
            return [self.one, -self.one]
        return [self(i) for i in range(1, self.characteristic)]

    def random_element(self, rng: random.Random, bound: int = 5) -> FieldElem:
        if self.characteristic == 0:
            return self(rng.randint(-bound, bound), rng.randint(1, 3))
        return self(rng.randrange(self.characteristic))


RATIONALS = BaseField(0)


@dataclass(frozen=True)
class TruncatedRing:
    """Ring context R_n = K[eps]/<eps^(n+1)>."""
    field: BaseField
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValidationError(f"Order must be non-negative, got: {self.order}")

    @property
    def zero(self) -> "TruncatedScalar":
        return TruncatedScalar(self, (self.field.zero,) * (self.order + 1))

    @property
    def one(self) -> "TruncatedScalar":
        return self.constant(self.field.one)

    @property
    def eps(self) -> "TruncatedScalar":
        """The deformation variable (zero at order 0)."""
        return self.monomial(self.field.one, 1)

    def constant(self, value: Union[int, FieldElem]) -> "TruncatedScalar":
        return self.monomial(value, 0)

    def monomial(self, value: Union[int, FieldElem], power: int) -> "TruncatedScalar":
        coeffs = [self.field.zero] * (self.order + 1)
        if power <= self.order:
            coeffs[power] = self.field.convert(value)
        return TruncatedScalar(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Sequence[Union[int, FieldElem]]) -> "TruncatedScalar":
        """Build a scalar; missing high coefficients are zero, extra ones are truncated."""
        values = [self.field.convert(c) for c in list(coeffs)[: self.order + 1]]
        values += [self.field.zero] * (self.order + 1 - len(values))
        return TruncatedScalar(self, tuple(values))

    def coerce(self, value: Union[int, FieldElem, "TruncatedScalar"]) -> "TruncatedScalar":
        if isinstance(value, TruncatedScalar):
            if value.ring != self:
                raise OrderMismatchError(f"Cannot combine {value.ring} with {self}")
            return value
        return self.constant(value)

    def parse(self, text: str, source: str = "<string>", line: int = 0) -> "TruncatedScalar":
        """Parse ``[c0, c1, ..., cn]`` (exactly order+1 entries) or a bare field literal."""
        stripped = text.strip()
        if not stripped.startswith("["):
            return self.constant(self.field.parse_elem(stripped, source, line))
        if not stripped.endswith("]"):
            raise ParseError(f"Unterminated coefficient array '{stripped}'", source, line)
        parts = [part for part in stripped[1:-1].split(",") if part.strip()]
        if len(parts) != self.order + 1:
            raise ParseError(
                f"Expected {self.order + 1} coefficients for order {self.order}, got {len(parts)}",
                source, line)
        return TruncatedScalar(self, tuple(self.field.parse_elem(part, source, line) for part in parts))

    def random_element(self, rng: random.Random, unit: bool = False) -> "TruncatedScalar":
        coeffs = [self.field.random_element(rng) for _ in range(self.order + 1)]
        while unit and not coeffs[0]:
            coeffs[0] = self.field.random_element(rng)
        return TruncatedScalar(self, tuple(coeffs))

    def __str__(self) -> str:
        return f"R_{self.order}({self.field.header})"


@dataclass(frozen=True)
class TruncatedScalar:
    """Element of R_n; ``coeffs[k]`` is the coefficient of eps^k."""
    ring: TruncatedRing
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.ring.order + 1:
            raise ValidationError(
                f"Scalar of order {self.ring.order} needs {self.ring.order + 1} coefficients, got {len(self.coeffs)}")

    @property
    def order(self) -> int:
        return self.ring.order

    @property
    def field(self) -> BaseField:
        return self.ring.field

    def coefficient(self, k: int) -> FieldElem:
        if not 0 <= k <= self.order:
            raise OrderError(f"Coefficient index {k} outside 0..{self.order}")
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return bool(self.coeffs[0])

    def __add__(self, other):
        other = self.ring.coerce(other)
        return TruncatedScalar(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedScalar(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __mul__(self, other):
        other = self.ring.coerce(other)
        n = self.order
        zero = self.field.zero
        a, b = self.coeffs, other.coeffs
        product = []
        for k in range(n + 1):
            total = zero
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    total += a[i] * b[k - i]
            product.append(total)
        return TruncatedScalar(self.ring, tuple(product))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * ring_inverse(self.ring.coerce(other))

    def __rtruediv__(self, other):
        return self.ring.coerce(other) * ring_inverse(self)

    def __pow__(self, exponent: int):
        base = self if exponent >= 0 else ring_inverse(self)
        result = self.ring.one
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __bool__(self) -> bool:
        return not self.is_zero()

    def format(self) -> str:
        return "[" + ", ".join(self.field.format_elem(c) for c in self.coeffs) + "]"

    def __str__(self) -> str:
        return self.format()


def ring_add(a: TruncatedScalar, b: TruncatedScalar) -> TruncatedScalar:
    """Coefficient-wise sum.

    Raises:
        OrderMismatchError: If the operands live in different rings.
    """
    _require_same_ring(a, b)
    return a + b


def ring_mul(a: TruncatedScalar, b: TruncatedScalar) -> TruncatedScalar:
    """Cauchy product truncated at eps^order.

    Raises:
        OrderMismatchError: If the operands live in different rings.
    """
    _require_same_ring(a, b)
    return a * b


def ring_inverse(a: TruncatedScalar) -> TruncatedScalar:
    """Inverse in the local ring R_n, lifted coefficient by coefficient.

    Raises:
        NonUnitError: If the constant coefficient is zero.
    """
    if not a.coeffs[0]:
        raise NonUnitError(f"Scalar {a.format()} has zero constant term")
    field = a.field
    b0 = field.inv(a.coeffs[0])
    inverse = [b0]
    for k in range(1, a.order + 1):
        total = field.zero
        for j in range(1, k + 1):
            if a.coeffs[j]:
                total += a.coeffs[j] * inverse[k - j]
        inverse.append(-b0 * total)
    return TruncatedScalar(a.ring, tuple(inverse))


def truncated_exp(c: Union[int, FieldElem], order: int, field: BaseField = RATIONALS) -> TruncatedScalar:
    """The series sum_{k<=n} c^k/k! eps^k.

    Raises:
        NoninvertibleFactorialError: In characteristic p when order >= p.
    """
    if field.characteristic and order >= field.characteristic:
        raise NoninvertibleFactorialError(
            f"exp series to order {order} needs 1/{field.characteristic}! in {field.header}")
    ring = TruncatedRing(field, order)
    c = field.convert(c)
    coeffs = [field.one]
    for k in range(1, order + 1):
        coeffs.append(coeffs[-1] * c / field(k))
    return TruncatedScalar(ring, tuple(coeffs))


def reduce_order(a: TruncatedScalar, k: int) -> TruncatedScalar:
    """Reduction mod eps^(k+1).

    Raises:
        OrderError: If k exceeds the order of a.
    """
    if not 0 <= k <= a.order:
        raise OrderError(f"Cannot reduce order {a.order} scalar to order {k}")
    return TruncatedScalar(TruncatedRing(a.field, k), a.coeffs[: k + 1])


def _require_same_ring(a: TruncatedScalar, b: TruncatedScalar) -> None:
    if a.ring != b.ring:
        raise OrderMismatchError(f"Cannot combine {a.ring} with {b.ring}")


def series_sum(values: Iterable[TruncatedScalar], ring: TruncatedRing) -> TruncatedScalar:
    total = ring.zero
    for value in values:
        total = total + value
    return total
