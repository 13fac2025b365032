# domain/entities/results.py
from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, InstanceOf

from core.algebra.linalg import MatrixR
from core.algebra.scalars import TruncatedScalar
from domain.entities.diagram import MorseDiagram, Orientation


class EvaluationResult(BaseModel):
    """Value of the evaluation functor on one diagram."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: InstanceOf[MatrixR] = Field(..., description="d^|target| x d^|source| matrix over R_n")
    source: Tuple[Orientation, ...] = Field(default_factory=tuple, description="Bottom signature")
    target: Tuple[Orientation, ...] = Field(default_factory=tuple, description="Top signature")

    @property
    def order(self) -> int:
        return self.matrix.order

    @property
    def is_closed(self) -> bool:
        return not self.source and not self.target

    @property
    def scalar(self) -> TruncatedScalar:
        return self.matrix.as_scalar()


class ResolutionTerm(BaseModel):
    """One signed nonsingular resolution of a singular diagram."""
    model_config = ConfigDict(frozen=True)

    sign: int = Field(..., description="+1 or -1")
    diagram: MorseDiagram = Field(..., description="Nonsingular diagram")


class TypeBoundReport(BaseModel):
    """Outcome of the vanishing check for one singular diagram."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    diagram: str = Field(..., description="Diagram identifier")
    singular_count: int = Field(..., ge=0, description="Number of singular slices")
    order: int = Field(..., ge=0, description="Order n of the data")
    applicable: bool = Field(..., description="singular_count >= n + 1")
    passed: bool = Field(..., description="Value vanishes, or the bound does not apply")
    value: InstanceOf[TruncatedScalar] = Field(..., description="The evaluated singular value")


class ConvolutionRow(BaseModel):
    """Coefficient k of a disjoint union against the convolution of the factors' coefficients."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(..., ge=0)
    union: Any = Field(..., description="v_k(a u b)")
    convolution: Any = Field(..., description="sum_i v_i(a) v_(k-i)(b)")

    @property
    def matches(self) -> bool:
        return self.union == self.convolution


class DisjointUnionReport(BaseModel):
    """Multiplicativity and convolution check for a separated union."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    left: str = Field(..., description="First diagram")
    right: str = Field(..., description="Second diagram")
    left_components: int = Field(..., ge=0)
    right_components: int = Field(..., ge=0)
    union_components: int = Field(..., ge=0)
    union_value: InstanceOf[TruncatedScalar] = Field(...)
    product_value: InstanceOf[TruncatedScalar] = Field(...)
    rows: List[ConvolutionRow] = Field(default_factory=list)

    @property
    def multiplicative(self) -> bool:
        return self.union_value == self.product_value

    @property
    def passed(self) -> bool:
        return (self.multiplicative and all(row.matches for row in self.rows)
                and self.union_components == self.left_components + self.right_components)


class CohomologyRow(BaseModel):
    """Ranks of the complex at one degree."""
    model_config = ConfigDict(frozen=True)

    degree: int = Field(..., ge=1)
    kernel_dim: int = Field(..., ge=0, description="dim ker delta_n")
    image_rank: int = Field(..., ge=0, description="rank delta_(n-1); zero at n = 1")
    proper: bool = Field(False)

    @property
    def cohomology_dim(self) -> int:
        return self.kernel_dim - self.image_rank


class UnitTriviality(BaseModel):
    """Whether the induced deformations along both unit inclusions are coboundaries."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    left: bool = Field(..., description="Phi'(I, -) trivial")
    right: bool = Field(..., description="Phi'(-, I) trivial")
    left_witness: Optional[Any] = Field(None, description="Trivializing 1-cochain for the left restriction")
    right_witness: Optional[Any] = Field(None, description="Trivializing 1-cochain for the right restriction")
