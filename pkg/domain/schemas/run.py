# domain/schemas/run.py
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.algebra.scalars import BaseField
from core.errors import ConfigMismatchError


class RunConfig(BaseModel):
    """One command invocation with the field and order every artifact must agree on."""
    model_config = ConfigDict(frozen=True)

    command: str = Field(..., description="Command name")
    inputs: Dict[str, str] = Field(default_factory=dict, description="Input role -> path or builtin name")
    field: Optional[str] = Field(None, description="Field header Q or Fp:<p>; fixed by the first artifact if absent")
    order: Optional[int] = Field(None, ge=0, description="Truncation order; fixed by the first artifact if absent")
    output_mode: Literal["human", "machine"] = Field("human", description="Aligned tables or line records")

    @field_validator("field")
    def validate_field(cls, value):
        if value is not None:
            BaseField.parse(value)
        return value

    @property
    def base_field(self) -> Optional[BaseField]:
        return BaseField.parse(self.field) if self.field is not None else None

    @property
    def machine(self) -> bool:
        return self.output_mode == "machine"

    def bind(self, artifact: str, field: Optional[BaseField] = None, order: Optional[int] = None) -> "RunConfig":
        """Adopt the artifact's field and order, or reject it when it disagrees with what is already fixed.

        Raises:
            ConfigMismatchError: If the field or order differs from the configured one.
        """
        update = {}
        if field is not None:
            if self.field is None:
                update["field"] = field.header
            elif self.base_field != field:
                raise ConfigMismatchError(f"{artifact}: field {field.header} differs from configured {self.field}")
        if order is not None:
            if self.order is None:
                update["order"] = order
            elif self.order != order:
                raise ConfigMismatchError(f"{artifact}: order {order} differs from configured {self.order}")
        return self.model_copy(update=update) if update else self

    def header(self) -> str:
        return f"# field={self.field or 'Q'} order={self.order if self.order is not None else '-'}"


class CoefficientRow(BaseModel):
    diagram: str = Field(..., description="Diagram identifier")
    k: int = Field(..., ge=0, description="Power of eps")
    coefficient: str = Field(..., description="Formatted coefficient")


class AxiomRow(BaseModel):
    axiom: str
    passed: bool
    witness: Optional[str] = Field(None, description="First differing (row, col) entry")
    detail: str = ""


class CohomologyTableRow(BaseModel):
    degree: int = Field(..., ge=1)
    kernel_dim: int = Field(..., ge=0)
    image_rank: int = Field(..., ge=0)
    cohomology_dim: int = Field(..., ge=0)


class TypeBoundRow(BaseModel):
    diagram: str
    singular: int = Field(..., ge=0, description="Singular slice count")
    applicable: bool
    passed: bool
    value: str = Field(..., description="Formatted evaluation")


class ConvolutionTableRow(BaseModel):
    k: int = Field(..., ge=0)
    union: str
    convolution: str
    matches: bool


class BraidingRow(BaseModel):
    pair: str = Field(..., description="Objects (a,b)")
    sigma: str = Field(..., description="Braiding value")
    recovered: str = Field(..., description="Value read back from the multiplication functor")
    matches: bool


def rows_to_records(rows: List[BaseModel]) -> List[dict]:
    return [row.model_dump() for row in rows]
