import random

import pytest

from core.algebra.scalars import (
    RATIONALS,
    BaseField,
    TruncatedRing,
    reduce_order,
    ring_add,
    ring_inverse,
    ring_mul,
    series_sum,
    truncated_exp,
)
from core.errors import (
    NonUnitError,
    NoninvertibleFactorialError,
    OrderError,
    OrderMismatchError,
    ParseError,
    ValidationError,
)


def test_field_headers_parse_and_print():
    assert BaseField.parse("Q") == RATIONALS
    assert BaseField.parse("Fp:7").characteristic == 7
    assert BaseField(5).header == "Fp:5"
    assert str(RATIONALS) == "Q"


@pytest.mark.parametrize("header", ["R", "Fp:", "Fp:x", ""])
def test_malformed_field_header_is_a_parse_error(header):
    with pytest.raises(ParseError):
        BaseField.parse(header)


def test_composite_characteristic_is_rejected():
    with pytest.raises(ValidationError):
        BaseField.parse("Fp:4")


def test_element_literals():
    f5 = BaseField(5)
    assert RATIONALS.format_elem(RATIONALS.parse_elem("-6/4")) == "-3/2"
    assert f5.format_elem(f5.parse_elem("3/4")) == "2"
    assert f5.format_elem(f5(-1)) == "4"
    with pytest.raises(ParseError):
        f5.parse_elem("1/5")
    with pytest.raises(ParseError):
        RATIONALS.parse_elem("one")


def test_units_and_elements():
    f3 = BaseField(3)
    assert [f3.format_elem(x) for x in f3.elements()] == ["0", "1", "2"]
    assert len(f3.units()) == 2
    assert len(RATIONALS.units()) == 2
    with pytest.raises(ValidationError):
        RATIONALS.elements()


def test_epsilon_is_nilpotent_of_the_right_index():
    ring = TruncatedRing(RATIONALS, 3)
    assert not (ring.eps ** 3).is_zero()
    assert (ring.eps ** 4).is_zero()
    assert TruncatedRing(RATIONALS, 0).eps.is_zero()


def test_cauchy_product_truncates():
    ring = TruncatedRing(RATIONALS, 2)
    a = ring.from_coeffs([1, 2, 3])
    b = ring.from_coeffs([4, 5, 6])
    assert ring_mul(a, b).format() == "[4, 13, 28]"
    assert ring_add(a, b).format() == "[5, 7, 9]"


@pytest.mark.parametrize("characteristic", [0, 2, 7])
def test_inverse_is_two_sided(characteristic):
    rng = random.Random(characteristic)
    ring = TruncatedRing(BaseField(characteristic), 4)
    for _ in range(10):
        a = ring.random_element(rng, unit=True)
        assert a * ring_inverse(a) == ring.one
        assert ring_inverse(a) * a == ring.one


def test_non_unit_has_no_inverse():
    ring = TruncatedRing(RATIONALS, 2)
    with pytest.raises(NonUnitError):
        ring_inverse(ring.eps)
    with pytest.raises(NonUnitError):
        ring.eps ** -1


def test_mixed_orders_are_rejected():
    a = TruncatedRing(RATIONALS, 2).one
    b = TruncatedRing(RATIONALS, 3).one
    with pytest.raises(OrderMismatchError):
        ring_add(a, b)
    with pytest.raises(OrderMismatchError):
        a * b


def test_mixed_fields_are_rejected():
    a = TruncatedRing(RATIONALS, 1).one
    b = TruncatedRing(BaseField(3), 1).one
    with pytest.raises(OrderMismatchError):
        ring_mul(a, b)


def test_truncated_exp_coefficients():
    assert truncated_exp(1, 3).format() == "[1, 1, 1/2, 1/6]"
    assert truncated_exp(-2, 2).format() == "[1, -2, 2]"
    assert truncated_exp(3, 0).format() == "[1]"


def test_truncated_exp_is_a_homomorphism():
    for a, b in [(1, 2), (-1, 1), (3, -5)]:
        assert truncated_exp(a, 4) * truncated_exp(b, 4) == truncated_exp(a + b, 4)


def test_truncated_exp_needs_invertible_factorials():
    f3 = BaseField(3)
    assert truncated_exp(1, 2, f3).format() == "[1, 1, 2]"
    with pytest.raises(NoninvertibleFactorialError):
        truncated_exp(1, 3, f3)


def test_unknot_bracket_value_at_order_two():
    a = truncated_exp(1, 2)
    assert (-(a ** 2) - a ** -2).format() == "[-2, 0, -4]"


def test_reduction_is_a_ring_map():
    rng = random.Random(11)
    ring = TruncatedRing(BaseField(5), 4)
    for _ in range(10):
        a, b = ring.random_element(rng), ring.random_element(rng)
        for k in range(5):
            assert reduce_order(a * b, k) == reduce_order(a, k) * reduce_order(b, k)
            assert reduce_order(a + b, k) == reduce_order(a, k) + reduce_order(b, k)
    with pytest.raises(OrderError):
        reduce_order(ring.one, 5)


def test_coefficient_index_is_checked():
    value = TruncatedRing(RATIONALS, 1).one
    with pytest.raises(OrderError):
        value.coefficient(2)


def test_coefficient_array_literals():
    ring = TruncatedRing(RATIONALS, 2)
    assert ring.parse("[1, -1/2, 0]") == ring.from_coeffs([1, RATIONALS(-1, 2), 0])
    assert ring.parse("3") == ring.constant(3)
    with pytest.raises(ParseError):
        ring.parse("[1, 2]")
    with pytest.raises(ParseError):
        ring.parse("[1, 2, 3")


def test_series_sum():
    ring = TruncatedRing(RATIONALS, 1)
    assert series_sum([ring.one, ring.eps, ring.one], ring).format() == "[2, 1]"
    assert series_sum([], ring) == ring.zero
