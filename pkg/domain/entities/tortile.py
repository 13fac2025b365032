# domain/entities/tortile.py
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, PrivateAttr, model_validator

from core.algebra.linalg import MatrixR
from core.algebra.scalars import TruncatedRing

MATRIX_NAMES = ("c_plus", "theta", "ev_r", "coev_r", "ev_l", "coev_l")


class TortileObjectData(BaseModel):
    """Braiding, twist and both duality pairs at one object X over R_n."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(..., ge=1, description="Dimension d of X (and of X*)")
    ring: InstanceOf[TruncatedRing] = Field(..., description="Scalar ring R_n")
    c_plus: InstanceOf[MatrixR] = Field(..., description="sigma_{X,X}, d^2 x d^2")
    theta: InstanceOf[MatrixR] = Field(..., description="theta_X, d x d")
    ev_r: InstanceOf[MatrixR] = Field(..., description="X (x) X* -> I, 1 x d^2")
    coev_r: InstanceOf[MatrixR] = Field(..., description="I -> X* (x) X, d^2 x 1")
    ev_l: InstanceOf[MatrixR] = Field(..., description="X* (x) X -> I, 1 x d^2")
    coev_l: InstanceOf[MatrixR] = Field(..., description="I -> X (x) X*, d^2 x 1")
    name: str = Field("X", description="Label used in reports")

    _inverses: Dict[str, Any] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def validate_shapes(self):
        """Ensure every structure matrix has the shape its signature demands and lives over the ring."""
        d = self.dim
        expected = {
            "c_plus": (d * d, d * d),
            "theta": (d, d),
            "ev_r": (1, d * d),
            "coev_r": (d * d, 1),
            "ev_l": (1, d * d),
            "coev_l": (d * d, 1),
        }
        for name, shape in expected.items():
            matrix = getattr(self, name)
            if matrix.shape != shape:
                raise ValueError(f"{name} has shape {matrix.shape}, expected {shape}")
            if matrix.ring != self.ring:
                raise ValueError(f"{name} lives over {matrix.ring}, expected {self.ring}")
        return self

    @property
    def order(self) -> int:
        return self.ring.order

    @property
    def field(self):
        return self.ring.field

    def matrices(self) -> Dict[str, MatrixR]:
        return {name: getattr(self, name) for name in MATRIX_NAMES}


class AxiomCheck(BaseModel):
    """Outcome of one tortile axiom; ``witness`` is the first differing (row, col) entry."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Axiom name")
    passed: bool = Field(..., description="Whether the identity holds exactly")
    witness: Optional[Tuple[int, int]] = Field(None, description="First counterexample entry")
    detail: str = Field("", description="Extra context for failures")

    @model_validator(mode="after")
    def validate_consistency(self):
        """A failing check carries a witness or a detail; a passing one carries neither witness."""
        if self.passed and self.witness is not None:
            raise ValueError(f"Passing check '{self.name}' cannot carry a witness")
        if not self.passed and self.witness is None and not self.detail:
            raise ValueError(f"Failing check '{self.name}' needs a witness or detail")
        return self


class AxiomReport(BaseModel):
    """All axiom checks for one datum."""
    model_config = ConfigDict(frozen=True)

    checks: List[AxiomCheck] = Field(default_factory=list, description="Checks in evaluation order")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[AxiomCheck]:
        return [check for check in self.checks if not check.passed]

    def get(self, name: str) -> AxiomCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)
