# domain/entities/presentation.py
from itertools import product
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, PrivateAttr, field_validator, model_validator

from core.algebra.scalars import BaseField, FieldElem

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]


class SkeletalPresentation(BaseModel):
    """Finite pointed skeletal monoidal category: a monoid of objects with scalar coherence data.

    Hom spaces are K on the diagonal and 0 elsewhere, so every structure map is a
    nonzero scalar. Absent ``assoc``/``braiding``/unit entries default to 1.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    field: InstanceOf[BaseField] = Field(..., description="Ground field K")
    objects: Tuple[str, ...] = Field(..., description="Object names; order fixes all enumerations")
    unit: str = Field(..., description="Distinguished unit object e")
    tensor_table: Dict[Pair, str] = Field(..., description="Monoid product S x S -> S")
    assoc: Dict[Triple, Any] = Field(default_factory=dict, description="alpha(a,b,c): (ab)c -> a(bc)")
    braiding: Optional[Dict[Pair, Any]] = Field(None, description="sigma(a,b): ab -> ba, if braided")
    runit: Dict[str, Any] = Field(default_factory=dict, description="rho(a): a e -> a")
    lunit: Dict[str, Any] = Field(default_factory=dict, description="lambda(a): e a -> a")
    pairs: Optional[Dict[str, Pair]] = Field(None, description="Factor pair of each object of a product presentation")
    factors: Optional[Tuple[Any, Any]] = Field(None, description="The two factor presentations of a product")
    name: str = Field("C", description="Label used in reports")

    @field_validator("objects")
    def validate_objects(cls, value):
        """Ensure object names are unique and non-empty."""
        if not value:
            raise ValueError("A presentation needs at least the unit object")
        if len(set(value)) != len(value):
            raise ValueError(f"Duplicate object names in {value}")
        return tuple(value)

    @model_validator(mode="after")
    def validate_monoid(self):
        """Check that the tensor table is a monoid with unit e and that all data is indexed by objects."""
        objects = set(self.objects)
        if self.unit not in objects:
            raise ValueError(f"Unit '{self.unit}' is not an object")
        for a, b in product(self.objects, repeat=2):
            value = self.tensor_table.get((a, b))
            if value not in objects:
                raise ValueError(f"Tensor table entry ({a},{b}) is missing or not an object: {value}")
        for a in self.objects:
            if self.tensor_table[(self.unit, a)] != a or self.tensor_table[(a, self.unit)] != a:
                raise ValueError(f"'{self.unit}' is not a two-sided unit for '{a}'")
        for a, b, c in product(self.objects, repeat=3):
            if self.tensor(self.tensor(a, b), c) != self.tensor(a, self.tensor(b, c)):
                raise ValueError(f"Tensor table is not associative at ({a},{b},{c})")
        data = [self.assoc, self.braiding or {}, self.runit, self.lunit]
        for table in data:
            for key, scalar in table.items():
                names = key if isinstance(key, tuple) else (key,)
                if any(name not in objects for name in names):
                    raise ValueError(f"Structure data indexed by unknown object: {key}")
                if not scalar:
                    raise ValueError(f"Structure scalar at {key} must be nonzero")
        if self.braiding is not None and not self.is_commutative():
            raise ValueError("A braiding needs a commutative tensor monoid")
        return self

    def tensor(self, a: str, b: str) -> str:
        return self.tensor_table[(a, b)]

    def product_of(self, names) -> str:
        result = self.unit
        for name in names:
            result = self.tensor(result, name)
        return result

    def alpha(self, a: str, b: str, c: str) -> FieldElem:
        return self.assoc.get((a, b, c), self.field.one)

    def sigma(self, a: str, b: str) -> FieldElem:
        if self.braiding is None:
            return self.field.one
        return self.braiding.get((a, b), self.field.one)

    def rho(self, a: str) -> FieldElem:
        return self.runit.get(a, self.field.one)

    def lam(self, a: str) -> FieldElem:
        return self.lunit.get(a, self.field.one)

    def is_commutative(self) -> bool:
        return all(self.tensor(a, b) == self.tensor(b, a) for a, b in product(self.objects, repeat=2))

    @property
    def is_braided(self) -> bool:
        return self.braiding is not None

    @property
    def non_unit_objects(self) -> Tuple[str, ...]:
        return tuple(a for a in self.objects if a != self.unit)

    def with_braiding(self, braiding: Optional[Dict[Pair, Any]]) -> "SkeletalPresentation":
        return SkeletalPresentation(
            field=self.field, objects=self.objects, unit=self.unit, tensor_table=self.tensor_table,
            assoc=self.assoc, braiding=None if braiding is None else dict(braiding),
            runit=self.runit, lunit=self.lunit, pairs=self.pairs, factors=self.factors, name=self.name,
        )


class FunctorPresentation(BaseModel):
    """Monoidal functor between skeletal presentations, strict on objects.

    ``coherence[(a,b)]`` is F~(a,b): F(ab) -> F(a)F(b); ``unit_scalar`` is F0: F(e) -> e'.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: SkeletalPresentation = Field(..., description="Source presentation")
    target: SkeletalPresentation = Field(..., description="Target presentation")
    object_map: Dict[str, str] = Field(..., description="Monoid homomorphism on objects")
    coherence: Dict[Pair, Any] = Field(default_factory=dict, description="F~ components, default 1")
    unit_scalar: Any = Field(None, description="F0, default 1")
    name: str = Field("F", description="Label used in reports")

    _padding_cache: Dict[Tuple[str, ...], Any] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def validate_object_map(self):
        """Ensure the object map is a unit-preserving monoid homomorphism over a common field."""
        if self.source.field != self.target.field:
            raise ValueError(f"Source field {self.source.field} differs from target field {self.target.field}")
        for a in self.source.objects:
            if self.object_map.get(a) not in self.target.objects:
                raise ValueError(f"Object '{a}' has no image in the target")
        if self.object_map[self.source.unit] != self.target.unit:
            raise ValueError("Object map does not preserve the unit")
        for a, b in product(self.source.objects, repeat=2):
            image = self.object_map[self.source.tensor(a, b)]
            if image != self.target.tensor(self.object_map[a], self.object_map[b]):
                raise ValueError(f"Object map is not multiplicative at ({a},{b})")
        for key, scalar in self.coherence.items():
            if any(name not in self.source.objects for name in key):
                raise ValueError(f"Coherence indexed by unknown objects: {key}")
            if not scalar:
                raise ValueError(f"Coherence scalar at {key} must be nonzero")
        if self.unit_scalar is not None and not self.unit_scalar:
            raise ValueError("Unit scalar must be nonzero")
        return self

    @property
    def field(self) -> BaseField:
        return self.source.field

    def obj(self, a: str) -> str:
        return self.object_map[a]

    def ftilde(self, a: str, b: str) -> FieldElem:
        return self.coherence.get((a, b), self.field.one)

    @property
    def f0(self) -> FieldElem:
        return self.field.one if self.unit_scalar is None else self.unit_scalar

    def same_as(self, other: "FunctorPresentation") -> bool:
        """Structural equality ignoring cached padding values."""
        if self is other:
            return True
        return (self.source == other.source and self.target == other.target
                and self.object_map == other.object_map and self.f0 == other.f0
                and all(self.ftilde(a, b) == other.ftilde(a, b)
                        for a, b in product(self.source.objects, repeat=2)))
