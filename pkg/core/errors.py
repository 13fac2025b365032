# core/errors.py
import logging
from typing import Optional, Sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL = 3


class BaseError(Exception):
    """Base class for engine errors.

    Args:
        exit_code (int): Process exit code reported by the command line.
        detail (str): Detailed message describing the error.
    """

    def __init__(self, exit_code: int, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail
        logger.error(f"Error occurred: {detail} (Exit: {exit_code})")

    def __str__(self) -> str:
        return self.detail


class ValidationError(BaseError):
    """Exception raised for invalid input data.

    Args:
        detail (str, optional): Specific detail about the validation failure. Defaults to "Invalid input".
    """

    def __init__(self, detail: Optional[str] = "Invalid input"):
        super().__init__(exit_code=EXIT_INPUT_ERROR, detail=detail)


class NotFoundError(ValidationError):
    """Exception raised when an input file cannot be found.

    Args:
        path (str): The missing path.
    """

    def __init__(self, path: str):
        self.path = path
        super().__init__(detail=f"File not found: {path}")


class ParseError(ValidationError):
    """Exception raised for malformed literals, tagged with a file:line position.

    Args:
        detail (str): What could not be parsed.
        source (str, optional): File name or "<string>". Defaults to "<string>".
        line (int, optional): 1-based line number. Defaults to 0 (unknown).
    """

    def __init__(self, detail: str, source: str = "<string>", line: int = 0):
        self.source = source
        self.line = line
        position = f"{source}:{line}" if line else source
        super().__init__(detail=f"{position}: {detail}")


class ConfigMismatchError(ValidationError):
    """Field or order of a loaded artifact disagrees with the run configuration."""

    def __init__(self, detail: Optional[str] = "Artifact does not match the configured field/order"):
        super().__init__(detail=detail)


class OrderMismatchError(ValidationError):
    """Arithmetic between truncated scalars of different rings."""

    def __init__(self, detail: Optional[str] = "Mismatched truncation orders"):
        super().__init__(detail=detail)


class OrderError(ValidationError):
    """A reduction or coefficient index exceeds the available order."""

    def __init__(self, detail: Optional[str] = "Order out of range"):
        super().__init__(detail=detail)


class ShapeError(ValidationError):
    """Dimension mismatch between matrices, vectors or functor shapes."""

    def __init__(self, detail: Optional[str] = "Shape mismatch"):
        super().__init__(detail=detail)


class BoundaryError(ValidationError):
    """Mismatched leaves of coherence trees or a non-closed diagram where a link is required."""

    def __init__(self, detail: Optional[str] = "Boundary mismatch"):
        super().__init__(detail=detail)


class DiagramValidationError(ValidationError):
    """Slice signatures do not chain.

    Args:
        position (int): 1-based slice number of the first violation.
        detail (str): Description of the mismatch.
    """

    def __init__(self, position: int, detail: str):
        self.position = position
        super().__init__(detail=f"slice {position}: {detail}")


class BraceIndexError(ValidationError):
    """Insertion index outside 0..deg(g)-1."""

    def __init__(self, detail: Optional[str] = "Insertion index out of range"):
        super().__init__(detail=detail)


class UnsupportedDegreeError(ValidationError):
    """Cochain degree outside the materialized range."""

    def __init__(self, detail: Optional[str] = "Unsupported cochain degree"):
        super().__init__(detail=detail)


class FunctorMismatchError(ValidationError):
    """Cochains belonging to different functors were combined."""

    def __init__(self, detail: Optional[str] = "Cochains belong to different functors"):
        super().__init__(detail=detail)


class InvalidDeformationError(ValidationError):
    """A deformation series fails its deformed hexagon.

    Args:
        witness (Sequence[str]): The first violating object triple.
    """

    def __init__(self, witness: Sequence[str], detail: Optional[str] = None):
        self.witness = tuple(witness)
        super().__init__(detail=detail or f"Deformed hexagon fails at {self.witness}")


class PropertyFailure(BaseError):
    """A checked property does not hold.

    Args:
        detail (str, optional): What failed. Defaults to "Property check failed".
        witnesses (Sequence, optional): Counterexamples backing the failure.
    """

    def __init__(self, detail: Optional[str] = "Property check failed", witnesses: Optional[Sequence] = None):
        self.witnesses = list(witnesses or [])
        super().__init__(exit_code=EXIT_PROPERTY_FAILURE, detail=detail)


class CoherenceError(PropertyFailure):
    """Pentagon, triangle, hexagon or functor hexagon violations found while validating a presentation."""


class FlaggedDataError(PropertyFailure):
    """Tortile data fails infinitesimal symmetry, so the type bound cannot be claimed."""


class PreconditionError(PropertyFailure):
    """An operation was called on data that fails its documented precondition."""


class AlgebraError(BaseError):
    """Base class for arithmetic preconditions that fail."""

    def __init__(self, detail: Optional[str] = "Algebra error"):
        super().__init__(exit_code=EXIT_INPUT_ERROR, detail=detail)


class NonUnitError(AlgebraError):
    """Inversion of a scalar with zero constant term."""

    def __init__(self, detail: Optional[str] = "Scalar is not a unit"):
        super().__init__(detail=detail)


class NonUnitMatrixError(AlgebraError):
    """Inversion of a matrix that is singular mod epsilon."""

    def __init__(self, detail: Optional[str] = "Matrix is singular mod epsilon"):
        super().__init__(detail=detail)


class NoninvertibleFactorialError(AlgebraError):
    """Exponential series whose factorial denominators vanish in the field."""

    def __init__(self, detail: Optional[str] = "Factorial not invertible in this field"):
        super().__init__(detail=detail)


class UnsupportedModelError(AlgebraError):
    """Input lies outside the supported skeletal or field model."""

    def __init__(self, detail: Optional[str] = "Unsupported model"):
        super().__init__(detail=detail)


class InternalError(BaseError):
    """Exception raised for unexpected failures.

    Args:
        detail (str, optional): Specific detail about the failure. Defaults to "Internal error".
    """

    def __init__(self, detail: Optional[str] = "Internal error"):
        super().__init__(exit_code=EXIT_INTERNAL, detail=detail)
