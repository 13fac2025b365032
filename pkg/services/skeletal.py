# services/skeletal.py
import logging
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.algebra.scalars import FieldElem
from core.errors import (
    BaseError,
    BoundaryError,
    CoherenceError,
    FunctorMismatchError,
    InternalError,
    ShapeError,
    UnsupportedModelError,
)
from domain.entities.presentation import FunctorPresentation, Pair, SkeletalPresentation
from domain.entities.trees import Apply, Leaf, Node, ParenTree, left_comb, render, right_comb

logger = logging.getLogger(__name__)

Atom = Tuple[bool, str]


def check_pentagon(p: SkeletalPresentation) -> List[Tuple[str, str, str, str]]:
    """Every quadruple where alpha(a,b,cd) alpha(ab,c,d) != alpha(b,c,d) alpha(a,bc,d) alpha(a,b,c)."""
    t, alpha = p.tensor, p.alpha
    violations = []
    for a, b, c, d in product(p.objects, repeat=4):
        lhs = alpha(a, b, t(c, d)) * alpha(t(a, b), c, d)
        rhs = alpha(b, c, d) * alpha(a, t(b, c), d) * alpha(a, b, c)
        if lhs != rhs:
            violations.append((a, b, c, d))
    logger.debug(f"Pentagon on {p.name}: {len(violations)} violations")
    return violations


def check_units(p: SkeletalPresentation) -> List[Tuple[str, ...]]:
    """Triangle alpha(a,e,b) lambda(b) = rho(a) for all pairs, and the bigon rho(e) = lambda(e)."""
    e = p.unit
    violations = [(a, e, b) for a, b in product(p.objects, repeat=2)
                  if p.alpha(a, e, b) * p.lam(b) != p.rho(a)]
    if p.rho(e) != p.lam(e):
        violations.append((e,))
    return violations


def _hexagon_violations(p: SkeletalPresentation, sigma: Callable[[str, str], FieldElem]) -> List[Tuple[str, str, str]]:
    t, alpha = p.tensor, p.alpha
    violations = []
    for a, b, c in product(p.objects, repeat=3):
        first = (alpha(b, c, a) * sigma(a, t(b, c)) * alpha(a, b, c)
                 == sigma(a, c) * alpha(b, a, c) * sigma(a, b))
        second = (alpha(b, c, a) * alpha(a, b, c) * sigma(c, a) * sigma(b, a)
                  == alpha(b, a, c) * sigma(t(b, c), a))
        if not (first and second):
            violations.append((a, b, c))
    return violations


def check_hexagons(p: SkeletalPresentation) -> List[Tuple[str, str, str]]:
    """Both braiding hexagons over all triples; an unbraided presentation passes vacuously."""
    if not p.is_braided:
        return []
    violations = _hexagon_violations(p, p.sigma)
    logger.debug(f"Hexagons on {p.name}: {len(violations)} violations")
    return violations


def check_functor_hexagon(f: FunctorPresentation) -> List[Tuple[str, str, str]]:
    """Triples where alpha'(fa,fb,fc) F~(a,b) F~(ab,c) != alpha(a,b,c) F~(a,bc) F~(b,c)."""
    src, tgt = f.source, f.target
    violations = []
    for a, b, c in product(src.objects, repeat=3):
        lhs = tgt.alpha(f.obj(a), f.obj(b), f.obj(c)) * f.ftilde(a, b) * f.ftilde(src.tensor(a, b), c)
        rhs = src.alpha(a, b, c) * f.ftilde(a, src.tensor(b, c)) * f.ftilde(b, c)
        if lhs != rhs:
            violations.append((a, b, c))
    logger.debug(f"Functor hexagon on {f.name}: {len(violations)} violations")
    return violations


def check_functor_units(f: FunctorPresentation) -> List[Tuple[str, str]]:
    """Both unit squares: F~(e,a) F0 lambda'(fa) = lambda(a) and F~(a,e) F0 rho'(fa) = rho(a)."""
    src, tgt, e = f.source, f.target, f.source.unit
    violations = []
    for a in src.objects:
        if f.ftilde(e, a) * f.f0 * tgt.lam(f.obj(a)) != src.lam(a):
            violations.append(("left", a))
        if f.ftilde(a, e) * f.f0 * tgt.rho(f.obj(a)) != src.rho(a):
            violations.append(("right", a))
    return violations


def validate_presentation(p: SkeletalPresentation) -> SkeletalPresentation:
    """Run pentagon, unit and hexagon checks.

    Raises:
        CoherenceError: Listing the violating tuples of the first failing check.
    """
    for name, check in (("pentagon", check_pentagon), ("triangle/bigon", check_units), ("hexagon", check_hexagons)):
        violations = check(p)
        if violations:
            raise CoherenceError(f"{name} fails for {p.name} at {violations[0]} ({len(violations)} cases)",
                                 witnesses=violations)
    logger.info(f"Presentation {p.name} validated: {len(p.objects)} objects, braided={p.is_braided}")
    return p


def validate_functor(f: FunctorPresentation, units: bool = True) -> FunctorPresentation:
    """Run the functor hexagon and, optionally, both unit squares.

    Raises:
        CoherenceError: Listing the violating tuples.
    """
    violations = check_functor_hexagon(f)
    if violations:
        raise CoherenceError(f"functor hexagon fails for {f.name} at {violations[0]} ({len(violations)} cases)",
                             witnesses=violations)
    if units:
        violations = check_functor_units(f)
        if violations:
            raise CoherenceError(f"unit square fails for {f.name} at {violations[0]}", witnesses=violations)
    logger.info(f"Functor {f.name} validated")
    return f


def _tree_value(tree: ParenTree, outer: SkeletalPresentation,
                functor: Optional[FunctorPresentation]) -> Tuple[Tuple[Atom, ...], FieldElem]:
    """Atoms of a tree with the scalar of its canonical map to the right comb on those atoms."""
    if isinstance(tree, Leaf):
        return ((False, tree.obj),), outer.field.one
    if isinstance(tree, Apply):
        if functor is None:
            raise BoundaryError(f"Tree {render(tree)} applies a functor but none was given")
        inner_atoms, scalar = _tree_value(tree.tree, functor.source, None)
        names = [name for applied, name in inner_atoms]
        if any(applied for applied, _ in inner_atoms):
            raise BoundaryError(f"Nested functor application in {render(tree)}")
        src = functor.source
        for i in range(len(names) - 1):
            scalar = scalar * functor.ftilde(names[i], src.product_of(names[i + 1:]))
        return tuple((True, name) for name in names), scalar
    left_atoms, left_scalar = _tree_value(tree.left, outer, functor)
    right_atoms, right_scalar = _tree_value(tree.right, outer, functor)
    objs = [functor.obj(name) if applied else name for applied, name in left_atoms]
    rest = outer.product_of(functor.obj(name) if applied else name for applied, name in right_atoms)
    scalar = left_scalar * right_scalar
    for i in range(len(objs) - 1):
        scalar = scalar * outer.alpha(objs[i], outer.product_of(objs[i + 1:]), rest)
    return left_atoms + right_atoms, scalar


def coherence_scalar(src: ParenTree, dst: ParenTree, presentation: Optional[SkeletalPresentation] = None,
                     functor: Optional[FunctorPresentation] = None) -> FieldElem:
    """Scalar of the unique coherence isomorphism src -> dst.

    Both trees are rewritten to the right comb; with a functor, ``Apply`` markers
    contribute F~ factors and outer nodes use the target's associator.

    Raises:
        BoundaryError: If the leaf tuples differ.
    """
    outer = functor.target if functor is not None else presentation
    if outer is None:
        raise BoundaryError("coherence_scalar needs a presentation or a functor")
    src_atoms, src_scalar = _tree_value(src, outer, functor)
    dst_atoms, dst_scalar = _tree_value(dst, outer, functor)
    if src_atoms != dst_atoms:
        raise BoundaryError(f"Leaves differ: {render(src)} vs {render(dst)}")
    return src_scalar / dst_scalar


def functor_padding(f: FunctorPresentation, objs: Sequence[str]) -> FieldElem:
    """Scalar of F(left comb of objs) -> right comb of the F(obj), cached per functor."""
    key = tuple(objs)
    cached = f._padding_cache.get(key)
    if cached is None:
        if len(key) == 1:
            cached = f.field.one
        else:
            cached = coherence_scalar(Apply(left_comb(key)), right_comb([Apply(Leaf(x)) for x in key]), functor=f)
        f._padding_cache[key] = cached
    return cached


def identity_functor(p: SkeletalPresentation, coherence: Optional[Dict[Pair, FieldElem]] = None,
                     unit_scalar: Optional[FieldElem] = None, name: str = "id") -> FunctorPresentation:
    return FunctorPresentation(source=p, target=p, object_map={a: a for a in p.objects},
                               coherence=coherence or {}, unit_scalar=unit_scalar, name=name)


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def product_presentation(c: SkeletalPresentation, d: SkeletalPresentation) -> SkeletalPresentation:
    """Materialized C x D with componentwise tensor and structure scalars.

    Raises:
        UnsupportedModelError: If the factors use different fields.
    """
    if c.field != d.field:
        raise UnsupportedModelError(f"Cannot form {c.name} x {d.name} over different fields")
    pairs = {pair_name(a, b): (a, b) for a, b in product(c.objects, d.objects)}
    tensor = {}
    for x, (a, b) in pairs.items():
        for y, (a2, b2) in pairs.items():
            tensor[(x, y)] = pair_name(c.tensor(a, a2), d.tensor(b, b2))
    one = c.field.one
    assoc = {}
    for x, y, z in product(pairs, repeat=3):
        value = c.alpha(pairs[x][0], pairs[y][0], pairs[z][0]) * d.alpha(pairs[x][1], pairs[y][1], pairs[z][1])
        if value != one:
            assoc[(x, y, z)] = value
    runit = {x: c.rho(a) * d.rho(b) for x, (a, b) in pairs.items() if c.rho(a) * d.rho(b) != one}
    lunit = {x: c.lam(a) * d.lam(b) for x, (a, b) in pairs.items() if c.lam(a) * d.lam(b) != one}
    return SkeletalPresentation(
        field=c.field, objects=tuple(pairs), unit=pair_name(c.unit, d.unit), tensor_table=tensor,
        assoc=assoc, runit=runit, lunit=lunit, pairs=pairs, factors=(c, d), name=f"{c.name}x{d.name}",
    )


def mult_functor(c: SkeletalPresentation) -> FunctorPresentation:
    """The multiplication functor C x C -> C, (a,b) -> ab, built from the braiding.

    Its coherence at ((a,a'),(b,b')) re-brackets (ab)(a'b') to a((ba')b'), unbraids
    b a' to a' b with sigma(a',b)^-1, and re-brackets to (aa')(bb'). F0: ee -> e is rho(e).

    Raises:
        UnsupportedModelError: If c has no braiding or its monoid is not commutative.
    """
    try:
        if not c.is_braided:
            raise UnsupportedModelError(f"{c.name} has no braiding")
        if not c.is_commutative():
            raise UnsupportedModelError(f"{c.name} has a non-commutative tensor monoid")
        source = product_presentation(c, c)
        coherence = {}
        for x, y in product(source.objects, repeat=2):
            (a, a2), (b, b2) = source.pairs[x], source.pairs[y]
            first = coherence_scalar(Node(Node(Leaf(a), Leaf(b)), Node(Leaf(a2), Leaf(b2))),
                                     Node(Leaf(a), Node(Node(Leaf(b), Leaf(a2)), Leaf(b2))), c)
            last = coherence_scalar(Node(Leaf(a), Node(Node(Leaf(a2), Leaf(b)), Leaf(b2))),
                                    Node(Node(Leaf(a), Leaf(a2)), Node(Leaf(b), Leaf(b2))), c)
            value = first * last / c.sigma(a2, b)
            if value != c.field.one:
                coherence[(x, y)] = value
        functor = FunctorPresentation(
            source=source, target=c, object_map={x: c.tensor(*source.pairs[x]) for x in source.objects},
            coherence=coherence, unit_scalar=c.rho(c.unit), name=f"mult({c.name})",
        )
        logger.info(f"Built multiplication functor on {c.name}: {len(coherence)} nontrivial components")
        return functor
    except BaseError:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in mult_functor: {str(e)}", exc_info=True)
        raise InternalError(f"Failed to build multiplication functor: {str(e)}")


def _pair_lookup(m: FunctorPresentation) -> Dict[Pair, str]:
    src = m.source
    if not src.pairs or not src.factors or src.factors[0] != m.target or src.factors[1] != m.target:
        raise ShapeError(f"{m.name} is not a functor C x C -> C")
    return {pair: name for name, pair in src.pairs.items()}


def braiding_from_mult(m: FunctorPresentation) -> Dict[Pair, FieldElem]:
    """Recover sigma(a,b) = Phi~((b,e),(e,a)) / Phi~((e,a),(b,e)) * lambda(b) rho(a) / (rho(b) lambda(a)).

    Raises:
        ShapeError: If m is not shaped like a multiplication.
    """
    names = _pair_lookup(m)
    c = m.target
    e = c.unit
    braiding = {}
    for a, b in product(c.objects, repeat=2):
        value = (m.ftilde(names[(b, e)], names[(e, a)]) / m.ftilde(names[(e, a)], names[(b, e)])
                 * c.lam(b) * c.rho(a) / (c.rho(b) * c.lam(a)))
        braiding[(a, b)] = value
    return braiding


def enumerate_braidings(p: SkeletalPresentation) -> List[Dict[Pair, FieldElem]]:
    """All braidings satisfying both hexagons.

    Unit components are fixed by the unit constraints; every other component ranges
    over F_p^x (or +-1 over Q).

    Raises:
        UnsupportedModelError: If the monoid is not commutative.
    """
    if not p.is_commutative():
        raise UnsupportedModelError(f"{p.name} has a non-commutative tensor monoid")
    e = p.unit
    free = list(product(p.non_unit_objects, repeat=2))
    fixed = {}
    for a in p.objects:
        fixed[(e, a)] = p.lam(a) / p.rho(a)
        fixed[(a, e)] = p.rho(a) / p.lam(a)
    found = []
    for values in product(p.field.units(), repeat=len(free)):
        candidate = dict(fixed)
        candidate.update(zip(free, values))
        if not _hexagon_violations(p, lambda a, b: candidate[(a, b)]):
            found.append(candidate)
    logger.info(f"Found {len(found)} braidings on {p.name}")
    return found


def compose_functors(outer: FunctorPresentation, inner: FunctorPresentation) -> FunctorPresentation:
    """outer o inner, with coherence outer~(ga,gb) * inner~(a,b) and unit scalar outer0 * inner0.

    Raises:
        FunctorMismatchError: If inner's target is not outer's source.
    """
    if inner.target != outer.source:
        raise FunctorMismatchError(f"Cannot compose {outer.name} after {inner.name}")
    one = inner.field.one
    coherence = {}
    for a, b in product(inner.source.objects, repeat=2):
        value = outer.ftilde(inner.obj(a), inner.obj(b)) * inner.ftilde(a, b)
        if value != one:
            coherence[(a, b)] = value
    return FunctorPresentation(
        source=inner.source, target=outer.target,
        object_map={a: outer.obj(inner.obj(a)) for a in inner.source.objects},
        coherence=coherence, unit_scalar=outer.f0 * inner.f0, name=f"{outer.name}.{inner.name}",
    )


def unit_inclusion(c: SkeletalPresentation, side: str,
                   product_pres: Optional[SkeletalPresentation] = None) -> FunctorPresentation:
    """Strict inclusion C -> C x C: a -> (a,e) for side "right", a -> (e,a) for side "left"."""
    target = product_pres or product_presentation(c, c)
    if side == "right":
        object_map = {a: pair_name(a, c.unit) for a in c.objects}
    elif side == "left":
        object_map = {a: pair_name(c.unit, a) for a in c.objects}
    else:
        raise ShapeError(f"Unknown side '{side}', expected left or right")
    return FunctorPresentation(source=c, target=target, object_map=object_map, name=f"incl_{side}")
