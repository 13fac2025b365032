# tests/conftest.py
import pytest

from core.algebra.scalars import BaseField, RATIONALS
from services.skeletal import identity_functor, product_presentation
from services.tortile import kauffman_data
from tests.corpus import bicharacter, cyclic_presentation


@pytest.fixture
def q():
    """The rationals."""
    return RATIONALS


@pytest.fixture
def f2():
    """F_2."""
    return BaseField(2)


@pytest.fixture
def z2_q():
    """Z/2 with trivial associator over Q."""
    return cyclic_presentation(2, RATIONALS)


@pytest.fixture
def z2_f2():
    """Z/2 with trivial associator over F_2."""
    return cyclic_presentation(2, BaseField(2))


@pytest.fixture
def z3_f3():
    """Z/3 with trivial associator over F_3."""
    return cyclic_presentation(3, BaseField(3))


@pytest.fixture
def z2_sign_f5():
    """Z/2 over F_5 whose associator is -1 on (g, g, g)."""
    return cyclic_presentation(2, BaseField(5), assoc={(1, 1, 1): -1}, name="Z2sign")


@pytest.fixture
def z3_braided_f7():
    """Z/3 over F_7 braided by the bicharacter with zeta = 2."""
    return cyclic_presentation(3, BaseField(7), braiding=bicharacter(3, 2))


@pytest.fixture
def klein_f2():
    """Z/2 x Z/2 over F_2 as a materialized product."""
    z2 = cyclic_presentation(2, BaseField(2))
    return product_presentation(z2, z2)


@pytest.fixture
def id_z2_q(z2_q):
    """Identity functor of Z/2 over Q."""
    return identity_functor(z2_q)


@pytest.fixture
def id_z2_f2(z2_f2):
    """Identity functor of Z/2 over F_2."""
    return identity_functor(z2_f2)


@pytest.fixture
def kauffman2():
    """Kauffman bracket data at order 2."""
    return kauffman_data(2)


@pytest.fixture
def kauffman3():
    """Kauffman bracket data at order 3."""
    return kauffman_data(3)


@pytest.fixture
def kauffman4():
    """Kauffman bracket data at order 4."""
    return kauffman_data(4)
