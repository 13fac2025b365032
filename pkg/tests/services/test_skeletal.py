import random

import pytest

from core.algebra.scalars import BaseField
from core.errors import (
    BoundaryError,
    CoherenceError,
    FunctorMismatchError,
    ShapeError,
    UnsupportedModelError,
)
from domain.entities.presentation import FunctorPresentation, SkeletalPresentation
from domain.entities.trees import Leaf, Node, left_comb, leaves, right_comb
from services.skeletal import (
    braiding_from_mult,
    check_functor_hexagon,
    check_hexagons,
    check_pentagon,
    coherence_scalar,
    compose_functors,
    enumerate_braidings,
    functor_padding,
    identity_functor,
    mult_functor,
    product_presentation,
    unit_inclusion,
    validate_functor,
    validate_presentation,
)
from tests.corpus import bicharacter, cyclic_presentation
from tests.oracles import random_rewrite_scalar, random_tree


def test_sign_associator_is_coherent(z2_sign_f5):
    assert validate_presentation(z2_sign_f5) is z2_sign_f5


def test_broken_pentagon_lists_witnesses():
    p = cyclic_presentation(3, BaseField(7), assoc={(1, 1, 1): 2})
    assert ("g", "g", "g", "g") in check_pentagon(p)
    with pytest.raises(CoherenceError) as info:
        validate_presentation(p)
    assert info.value.witnesses


def test_bicharacter_braiding_satisfies_hexagons(z3_braided_f7):
    assert check_hexagons(z3_braided_f7) == []


def test_non_multiplicative_braiding_fails_hexagons():
    p = cyclic_presentation(3, BaseField(7), braiding={(1, 1): 3})
    assert ("g", "g", "g") in check_hexagons(p)
    with pytest.raises(CoherenceError):
        validate_presentation(p)


def test_braidings_of_z3_over_f7_are_the_bicharacters():
    p = cyclic_presentation(3, BaseField(7))
    found = enumerate_braidings(p)
    assert len(found) == 3
    f7 = p.field
    names = p.objects
    expected = []
    for zeta in (1, 2, 4):
        table = bicharacter(3, zeta)
        expected.append({(names[i], names[j]): f7(v) for (i, j), v in table.items()})
    for braiding in found:
        assert braiding in expected


def test_sign_associator_forces_square_roots_of_minus_one(z2_sign_f5):
    found = enumerate_braidings(z2_sign_f5)
    values = sorted(z2_sign_f5.field.format_elem(b[("g", "g")]) for b in found)
    assert values == ["2", "3"]


@pytest.mark.parametrize("seed", range(5))
def test_coherence_scalar_matches_any_rewrite_path(z2_sign_f5, seed):
    rng = random.Random(seed)
    objects = [rng.choice(z2_sign_f5.objects) for _ in range(5)]
    tree = random_tree(objects, rng)
    target = right_comb(list(leaves(tree)))
    expected = coherence_scalar(tree, target, presentation=z2_sign_f5)
    for _ in range(3):
        assert random_rewrite_scalar(tree, z2_sign_f5, rng) == expected


def test_coherence_scalar_on_three_leaves_is_the_associator(z2_sign_f5):
    src = left_comb(["g", "g", "g"])
    dst = right_comb(["g", "g", "g"])
    assert coherence_scalar(src, dst, presentation=z2_sign_f5) == z2_sign_f5.field(-1)
    assert coherence_scalar(dst, src, presentation=z2_sign_f5) == z2_sign_f5.field(-1)
    assert coherence_scalar(src, src, presentation=z2_sign_f5) == z2_sign_f5.field.one


def test_coherence_scalar_needs_equal_leaves(z2_sign_f5):
    with pytest.raises(BoundaryError):
        coherence_scalar(Node(Leaf("g"), Leaf("e")), Node(Leaf("e"), Leaf("g")), presentation=z2_sign_f5)


def test_functor_hexagon_accepts_coboundary_twists(z3_f3):
    psi = {"e": 1, "g": 2, "g2": 2}
    field = z3_f3.field
    coherence = {(a, b): field(psi[a]) * field(psi[b]) / field(psi[z3_f3.tensor(a, b)])
                 for a in z3_f3.objects for b in z3_f3.objects}
    f = identity_functor(z3_f3, coherence=coherence)
    assert check_functor_hexagon(f) == []


def test_functor_hexagon_rejects_non_cocycles(z3_f3):
    f = identity_functor(z3_f3, coherence={("g", "g"): z3_f3.field(2)})
    assert check_functor_hexagon(f)
    with pytest.raises(CoherenceError):
        validate_functor(f)


def test_padding_of_identity_functor(z2_sign_f5):
    f = identity_functor(z2_sign_f5)
    assert functor_padding(f, ("g",)) == z2_sign_f5.field.one
    assert functor_padding(f, ("g", "g", "g")) == z2_sign_f5.field(-1)
    assert ("g", "g", "g") in f._padding_cache


def test_product_presentation_is_componentwise(z2_sign_f5):
    product = product_presentation(z2_sign_f5, z2_sign_f5)
    assert len(product.objects) == 4
    assert product.unit == "(e,e)"
    assert product.tensor("(g,e)", "(e,g)") == "(g,g)"
    assert product.alpha("(g,e)", "(g,e)", "(g,e)") == z2_sign_f5.field(-1)
    assert product.alpha("(g,g)", "(g,g)", "(g,g)") == z2_sign_f5.field.one
    validate_presentation(product)


def test_product_needs_a_common_field(z2_f2, z2_q):
    with pytest.raises(UnsupportedModelError):
        product_presentation(z2_f2, z2_q)


def test_multiplication_functor_is_monoidal(z3_braided_f7):
    m = mult_functor(z3_braided_f7)
    assert m.obj("(g,g2)") == "e"
    assert validate_functor(m) is m


def test_multiplication_unit_scalar_is_the_unit_constraint():
    base = cyclic_presentation(2, BaseField(0))
    r = base.field(3)
    p = SkeletalPresentation(field=base.field, objects=base.objects, unit="e", tensor_table=base.tensor_table,
                             braiding={}, runit={a: r for a in base.objects}, lunit={a: r for a in base.objects},
                             name="Z2scaled")
    validate_presentation(p)
    m = mult_functor(p)
    assert m.f0 == r
    assert validate_functor(m) is m
    assert braiding_from_mult(m) == {key: p.field.one for key in braiding_from_mult(m)}
    unitless = FunctorPresentation(source=m.source, target=p, object_map=m.object_map, coherence=m.coherence,
                                   name="unitless")
    with pytest.raises(CoherenceError):
        validate_functor(unitless)


@pytest.mark.parametrize("zeta", [1, 2, 4])
def test_braiding_is_recovered_from_multiplication(zeta):
    p = cyclic_presentation(3, BaseField(7), braiding=bicharacter(3, zeta))
    recovered = braiding_from_mult(mult_functor(p))
    assert all(recovered[(a, b)] == p.sigma(a, b) for a in p.objects for b in p.objects)


def test_braiding_is_recovered_under_a_sign_associator(z2_sign_f5):
    for braiding in enumerate_braidings(z2_sign_f5):
        braided = z2_sign_f5.with_braiding(braiding)
        recovered = braiding_from_mult(mult_functor(braided))
        assert recovered == {key: braided.sigma(*key) for key in recovered}


def test_multiplication_needs_a_braiding(z2_q):
    with pytest.raises(UnsupportedModelError):
        mult_functor(z2_q)


def test_braiding_from_non_multiplication_is_a_shape_error(id_z2_q):
    with pytest.raises(ShapeError):
        braiding_from_mult(id_z2_q)


def test_compose_functors_multiplies_coherence(z3_f3):
    field = z3_f3.field
    f = identity_functor(z3_f3, coherence={("g", "g"): field(2)}, name="f")
    g = identity_functor(z3_f3, coherence={("g", "g"): field(2), ("g", "g2"): field(2)}, name="g")
    composite = compose_functors(g, f)
    assert composite.ftilde("g", "g") == field(1)
    assert composite.ftilde("g", "g2") == field(2)
    assert composite.name == "g.f"


def test_compose_functors_checks_boundaries(z3_f3, z2_f2):
    with pytest.raises(FunctorMismatchError):
        compose_functors(identity_functor(z3_f3), identity_functor(z2_f2))


def test_unit_inclusions(z2_q):
    right = unit_inclusion(z2_q, "right")
    left = unit_inclusion(z2_q, "left")
    assert isinstance(right, FunctorPresentation)
    assert right.obj("g") == "(g,e)"
    assert left.obj("g") == "(e,g)"
    with pytest.raises(ShapeError):
        unit_inclusion(z2_q, "up")
