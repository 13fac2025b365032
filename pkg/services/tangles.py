# services/tangles.py
"""Combinatorial framed singular tangles: validation, closures and placements."""
import logging
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from core.errors import BoundaryError, DiagramValidationError
from domain.entities.diagram import (
    SINGULARIZATIONS,
    BraidWord,
    MorseDiagram,
    Orientation,
    Slice,
    SliceKind,
)

logger = logging.getLogger(__name__)

Signature = Tuple[Orientation, ...]

_CUPS = {SliceKind.CUP_R, SliceKind.CUP_L}
_CAPS = {SliceKind.CAP_R, SliceKind.CAP_L}
_CROSSINGS = {SliceKind.CR_POS, SliceKind.CR_NEG, SliceKind.CR_SING}


def validate(d: MorseDiagram) -> Tuple[Signature, Signature]:
    """Check that each slice's inputs match the ambient strands at its offset.

    Returns:
        The (source, target) signatures.

    Raises:
        DiagramValidationError: At the first slice (1-based) whose inputs do not match.
    """
    ambient = list(d.source)
    for position, piece in enumerate(d.slices, start=1):
        width = len(piece.inputs)
        window = tuple(ambient[piece.offset: piece.offset + width])
        if piece.offset > len(ambient) or len(window) != width:
            raise DiagramValidationError(
                position, f"{piece.kind.value} at offset {piece.offset} exceeds {len(ambient)} strands")
        if window != piece.inputs:
            found = " ".join(o.value for o in window)
            wanted = " ".join(o.value for o in piece.inputs)
            raise DiagramValidationError(position, f"{piece.kind.value} expects [{wanted}], found [{found}]")
        ambient[piece.offset: piece.offset + width] = piece.outputs
    return tuple(d.source), tuple(ambient)


def target(d: MorseDiagram) -> Signature:
    return validate(d)[1]


def is_closed(d: MorseDiagram) -> bool:
    source, top = validate(d)
    return not source and not top


def trace_closure(b: BraidWord) -> MorseDiagram:
    """Close a framed braid: cups, twists, crossings, then caps, all crossings on Up strands."""
    k = b.strands
    slices: List[Slice] = [Slice(kind=SliceKind.CUP_L, offset=i) for i in range(k)]
    for strand in range(1, k + 1):
        framing = b.framing(strand)
        kind = SliceKind.TW_POS if framing > 0 else SliceKind.TW_NEG
        slices += [Slice(kind=kind, offset=strand - 1)] * abs(framing)
    for strand, count in b.singular_framing_points:
        slices += [Slice(kind=SliceKind.TW_SING, offset=strand - 1)] * count
    singular = set(b.singular_letters)
    for position, letter in enumerate(b.letters, start=1):
        if position in singular:
            kind = SliceKind.CR_SING
        else:
            kind = SliceKind.CR_POS if letter > 0 else SliceKind.CR_NEG
        slices.append(Slice(kind=kind, offset=abs(letter) - 1))
    slices += [Slice(kind=SliceKind.CAP_R, offset=i) for i in reversed(range(k))]
    return MorseDiagram(slices=tuple(slices), name=b.name)


def juxtapose(a: MorseDiagram, b: MorseDiagram) -> MorseDiagram:
    """a (x) b: b's strands sit to the right of a's, its slices shifted past a's top boundary."""
    _, a_top = validate(a)
    validate(b)
    shift = len(a_top)
    shifted = tuple(Slice(kind=s.kind, offset=s.offset + shift) for s in b.slices)
    return MorseDiagram(slices=a.slices + shifted, source=a.source + b.source, name=f"{a.name}*{b.name}")


def compose(a: MorseDiagram, b: MorseDiagram) -> MorseDiagram:
    """b stacked on top of a.

    Raises:
        BoundaryError: If a's target differs from b's source.
    """
    _, a_top = validate(a)
    if a_top != tuple(b.source):
        raise BoundaryError(f"Cannot stack {b.name} on {a.name}: boundaries differ")
    return MorseDiagram(slices=a.slices + b.slices, source=a.source, name=f"{b.name}.{a.name}")


def disjoint_union(a: MorseDiagram, b: MorseDiagram) -> MorseDiagram:
    """Separated union of two closed diagrams.

    Raises:
        BoundaryError: If either diagram has boundary.
    """
    for d in (a, b):
        if not is_closed(d):
            raise BoundaryError(f"Disjoint union needs closed diagrams; {d.name} has boundary")
    return MorseDiagram(slices=a.slices + b.slices, name=f"{a.name}+{b.name}")


def singular_count(d: MorseDiagram) -> int:
    return sum(1 for s in d.slices if s.is_singular)


def writhe(d: MorseDiagram) -> int:
    return (sum(1 for s in d.slices if s.kind == SliceKind.CR_POS)
            - sum(1 for s in d.slices if s.kind == SliceKind.CR_NEG))


def resolvable_positions(d: MorseDiagram) -> List[int]:
    return [i for i, s in enumerate(d.slices) if s.is_resolvable]


def singularize(d: MorseDiagram, positions: Sequence[int]) -> MorseDiagram:
    """Replace the crossings/twists at the given 0-based slice indices by singular slices.

    Raises:
        DiagramValidationError: If a position is out of range or not a crossing or twist.
    """
    slices = list(d.slices)
    for position in positions:
        if not 0 <= position < len(slices):
            raise DiagramValidationError(position + 1, f"no slice at index {position}")
        piece = slices[position]
        if not piece.is_resolvable:
            raise DiagramValidationError(position + 1, f"{piece.kind.value} cannot be made singular")
        slices[position] = Slice(kind=SINGULARIZATIONS[piece.kind], offset=piece.offset)
    suffix = ",".join(str(p) for p in sorted(positions))
    return d.with_slices(slices, name=f"{d.name}@{suffix}" if suffix else d.name)


def singularization_patterns(d: MorseDiagram, s: int) -> Iterator[MorseDiagram]:
    """Every way to make exactly s resolvable slices singular, in lexicographic order."""
    for positions in combinations(resolvable_positions(d), s):
        yield singularize(d, positions)


def component_count(d: MorseDiagram) -> int:
    """Number of connected strands, tracked with a union-find over arc labels."""
    validate(d)
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def fresh() -> int:
        label = len(parent)
        parent[label] = label
        return label

    strands = [fresh() for _ in d.source]
    for piece in d.slices:
        o = piece.offset
        if piece.kind in _CUPS:
            label = fresh()
            strands[o:o] = [label, label]
        elif piece.kind in _CAPS:
            left, right = find(strands[o]), find(strands[o + 1])
            parent[left] = right
            del strands[o:o + 2]
        elif piece.kind in _CROSSINGS:
            strands[o], strands[o + 1] = strands[o + 1], strands[o]
    return len({find(x) for x in parent})


def braid_cycle_count(b: BraidWord) -> int:
    """Cycles of the braid's permutation, i.e. components of its closure."""
    permutation = b.permutation()
    seen = set()
    cycles = 0
    for start in range(b.strands):
        if start in seen:
            continue
        cycles += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = permutation[x]
    return cycles
