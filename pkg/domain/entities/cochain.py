# domain/entities/cochain.py
from typing import Any, Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.algebra.scalars import FieldElem
from domain.entities.presentation import FunctorPresentation

ObjTuple = Tuple[str, ...]


class Cochain(BaseModel):
    """Element of X^n(F): one scalar per n-tuple of source objects, zero when absent."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    degree: int = Field(..., ge=1, description="Cochain degree n")
    functor: FunctorPresentation = Field(..., description="Functor whose complex this cochain lives in")
    components: Dict[ObjTuple, Any] = Field(default_factory=dict, description="Sparse tuple -> scalar map")
    proper: bool = Field(False, description="Flagged as a proper cochain (vanishes on unit indices)")

    @field_validator("components")
    def drop_zero_components(cls, value):
        """Keep only nonzero components."""
        return {tuple(key): scalar for key, scalar in value.items() if scalar}

    @model_validator(mode="after")
    def validate_indices(self):
        """Ensure every component is indexed by a degree-length tuple of source objects."""
        objects = set(self.functor.source.objects)
        for key in self.components:
            if len(key) != self.degree:
                raise ValueError(f"Component {key} does not have {self.degree} indices")
            if any(name not in objects for name in key):
                raise ValueError(f"Component {key} uses unknown objects")
            if self.proper and self.functor.source.unit in key:
                raise ValueError(f"Cochain flagged proper has a nonzero component at {key}")
        return self

    @property
    def field(self):
        return self.functor.field

    def value(self, key: ObjTuple) -> FieldElem:
        return self.components.get(tuple(key), self.field.zero)

    def is_zero(self) -> bool:
        return not self.components

    def with_components(self, components: Dict[ObjTuple, Any], proper: bool = None) -> "Cochain":
        return Cochain(degree=self.degree, functor=self.functor, components=components,
                       proper=self.proper if proper is None else proper)

    def __add__(self, other: "Cochain") -> "Cochain":
        keys = set(self.components) | set(other.components)
        return self.with_components({k: self.value(k) + other.value(k) for k in keys},
                                    proper=self.proper and other.proper)

    def __neg__(self) -> "Cochain":
        return self.with_components({k: -v for k, v in self.components.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, s: FieldElem) -> "Cochain":
        return self.with_components({k: s * v for k, v in self.components.items()})

    def same_values(self, other: "Cochain") -> bool:
        return self.degree == other.degree and self.components == other.components


class DeformationSeries(BaseModel):
    """F~' = F~ + F1 eps + ... + Fn eps^n, each Fk a degree-2 cochain."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    functor: FunctorPresentation = Field(..., description="The functor being deformed")
    terms: Tuple[Cochain, ...] = Field(default_factory=tuple, description="F^(1) .. F^(n)")
    proper: bool = Field(False, description="Restrict extension to proper cochains")

    @model_validator(mode="after")
    def validate_terms(self):
        """Ensure each term is a degree-2 cochain of the same functor."""
        for k, term in enumerate(self.terms, start=1):
            if term.degree != 2:
                raise ValueError(f"Term {k} has degree {term.degree}, expected 2")
            if not term.functor.same_as(self.functor):
                raise ValueError(f"Term {k} belongs to a different functor")
            if self.proper and self.functor.source.unit in {x for key in term.components for x in key}:
                raise ValueError(f"Term {k} is not proper")
        return self

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, k: int) -> Cochain:
        """F^(k); F^(0) is not a cochain and is read from the functor's coherence."""
        return self.terms[k - 1]

    def component(self, k: int, a: str, b: str) -> FieldElem:
        if k == 0:
            return self.functor.ftilde(a, b)
        if k > self.order:
            return self.functor.field.zero
        return self.terms[k - 1].value((a, b))

    def extended(self, term: Cochain) -> "DeformationSeries":
        return DeformationSeries(functor=self.functor, terms=self.terms + (term,), proper=self.proper)


class ObstructionClass(BaseModel):
    """Failure to extend: the obstruction cocycle with the ranks that locate its class."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    representative: Cochain = Field(..., description="Degree-3 obstruction cocycle")
    failed_order: int = Field(..., ge=2, description="Order that could not be reached")
    partial: DeformationSeries = Field(..., description="The longest series that was built")
    kernel_dim: int = Field(..., ge=0, description="dim ker delta_3")
    image_rank: int = Field(..., ge=0, description="rank delta_2")

    @property
    def h3_dim(self) -> int:
        return self.kernel_dim - self.image_rank
