# domain/entities/diagram.py
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Orientation(str, Enum):
    """Boundary point label: Up carries X, Down carries X*."""
    UP = "Up"
    DOWN = "Down"


class SliceKind(str, Enum):
    ID_UP = "IdUp"
    ID_DOWN = "IdDown"
    CUP_R = "CupR"
    CUP_L = "CupL"
    CAP_R = "CapR"
    CAP_L = "CapL"
    CR_POS = "CrPos"
    CR_NEG = "CrNeg"
    CR_SING = "CrSing"
    TW_POS = "TwPos"
    TW_NEG = "TwNeg"
    TW_SING = "TwSing"


UP, DOWN = Orientation.UP, Orientation.DOWN

SIGNATURES: Dict[SliceKind, Tuple[Tuple[Orientation, ...], Tuple[Orientation, ...]]] = {
    SliceKind.ID_UP: ((UP,), (UP,)),
    SliceKind.ID_DOWN: ((DOWN,), (DOWN,)),
    SliceKind.CUP_R: ((), (DOWN, UP)),
    SliceKind.CUP_L: ((), (UP, DOWN)),
    SliceKind.CAP_R: ((UP, DOWN), ()),
    SliceKind.CAP_L: ((DOWN, UP), ()),
    SliceKind.CR_POS: ((UP, UP), (UP, UP)),
    SliceKind.CR_NEG: ((UP, UP), (UP, UP)),
    SliceKind.CR_SING: ((UP, UP), (UP, UP)),
    SliceKind.TW_POS: ((UP,), (UP,)),
    SliceKind.TW_NEG: ((UP,), (UP,)),
    SliceKind.TW_SING: ((UP,), (UP,)),
}

# singular kind -> (positive resolution, negative resolution)
RESOLUTIONS: Dict[SliceKind, Tuple[SliceKind, SliceKind]] = {
    SliceKind.CR_SING: (SliceKind.CR_POS, SliceKind.CR_NEG),
    SliceKind.TW_SING: (SliceKind.TW_POS, SliceKind.TW_NEG),
}

SINGULARIZATIONS: Dict[SliceKind, SliceKind] = {
    SliceKind.CR_POS: SliceKind.CR_SING,
    SliceKind.CR_NEG: SliceKind.CR_SING,
    SliceKind.TW_POS: SliceKind.TW_SING,
    SliceKind.TW_NEG: SliceKind.TW_SING,
}


class Slice(BaseModel):
    """One horizontal generator acting at ``offset`` within the ambient strand list."""
    model_config = ConfigDict(frozen=True)

    kind: SliceKind = Field(..., description="Generator")
    offset: int = Field(0, ge=0, description="Position of the leftmost strand the slice touches")

    @property
    def inputs(self) -> Tuple[Orientation, ...]:
        return SIGNATURES[self.kind][0]

    @property
    def outputs(self) -> Tuple[Orientation, ...]:
        return SIGNATURES[self.kind][1]

    @property
    def is_singular(self) -> bool:
        return self.kind in RESOLUTIONS

    @property
    def is_resolvable(self) -> bool:
        return self.kind in SINGULARIZATIONS

    def __str__(self) -> str:
        return f"{self.kind.value} {self.offset}"


class MorseDiagram(BaseModel):
    """Word of slices read bottom to top, starting from ``source``.

    Construction does not check that slices chain; ``services.tangles.validate`` does.
    """
    model_config = ConfigDict(frozen=True)

    slices: Tuple[Slice, ...] = Field(default_factory=tuple, description="Slices, bottom first")
    source: Tuple[Orientation, ...] = Field(default_factory=tuple, description="Bottom boundary signature")
    name: str = Field("diagram", description="Identifier used in reports")

    def with_slices(self, slices, name: Optional[str] = None) -> "MorseDiagram":
        return MorseDiagram(slices=tuple(slices), source=self.source, name=name or self.name)

    def __len__(self) -> int:
        return len(self.slices)


class BraidWord(BaseModel):
    """Framed braid with singular markers; generators, strands and letter positions are 1-based."""
    model_config = ConfigDict(frozen=True)

    strands: int = Field(..., ge=1, description="Number of strands k")
    letters: Tuple[int, ...] = Field(default_factory=tuple, description="+-i for sigma_i^(+-1)")
    framings: Tuple[int, ...] = Field(default_factory=tuple, description="Framing integer per strand")
    singular_letters: Tuple[int, ...] = Field(default_factory=tuple, description="Letter positions made singular")
    singular_framing_points: Tuple[Tuple[int, int], ...] = Field(
        default_factory=tuple, description="(strand, count) singular framing points")
    name: str = Field("braid", description="Identifier used in reports")

    @field_validator("framings", mode="before")
    def default_framings(cls, value):
        """Accept an empty framing list as all zero; padding happens at model level."""
        return tuple(value or ())

    @model_validator(mode="after")
    def validate_indices(self):
        """Ensure letters, framings and singular markers refer to existing generators and strands."""
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise ValueError(f"Generator {letter} out of range for {self.strands} strands")
        if self.framings and len(self.framings) != self.strands:
            raise ValueError(f"Expected {self.strands} framings, got {len(self.framings)}")
        for position in self.singular_letters:
            if not 1 <= position <= len(self.letters):
                raise ValueError(f"Singular letter position {position} out of range")
        if len(set(self.singular_letters)) != len(self.singular_letters):
            raise ValueError("Singular letter positions repeat")
        for strand, count in self.singular_framing_points:
            if not 1 <= strand <= self.strands or count < 0:
                raise ValueError(f"Invalid singular framing point ({strand},{count})")
        return self

    def framing(self, strand: int) -> int:
        return self.framings[strand - 1] if self.framings else 0

    def permutation(self) -> List[int]:
        """Image position of each starting strand after reading all letters."""
        positions = list(range(self.strands))
        for letter in self.letters:
            i = abs(letter) - 1
            positions[i], positions[i + 1] = positions[i + 1], positions[i]
        return positions
