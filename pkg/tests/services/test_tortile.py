import pytest

from core.algebra.linalg import MatrixR, mat_invert
from core.algebra.scalars import RATIONALS, BaseField, TruncatedRing
from core.errors import OrderError, UnsupportedModelError
from domain.entities.tortile import TortileObjectData
from services.tortile import (
    check_axioms,
    check_twist_curl,
    check_ybe,
    identity,
    infinitesimally_symmetric,
    inverse_braiding,
    inverse_twist,
    kauffman_data,
    reduce_data,
    symmetric_data,
    whisker,
)


def _replace(t: TortileObjectData, **matrices) -> TortileObjectData:
    values = t.matrices()
    values.update(matrices)
    return TortileObjectData(dim=t.dim, ring=t.ring, name="modified", **values)


def _unit_matrix(ring, size, i, j):
    rows = [[ring.zero] * size for _ in range(size)]
    rows[i][j] = ring.one
    return MatrixR.from_scalars(ring, rows, size)


def test_kauffman_data_passes_every_axiom(kauffman2):
    report = check_axioms(kauffman2)
    assert report.passed, [c.name for c in report.failures]
    names = [c.name for c in report.checks]
    assert names[0] == "ybe"
    assert {"twist_curl", "twist_curl_inverse", "twist_tensor", "dual_twist", "infinitesimal_symmetry"} <= set(names)


@pytest.mark.parametrize("order", [0, 1, 2, 4, 8])
def test_kauffman_data_passes_every_axiom_at_each_order(order):
    data = kauffman_data(order)
    report = check_axioms(data)
    assert report.passed, [c.name for c in report.failures]
    assert data.ring.order == order


def test_kauffman_braiding_is_an_involution_at_order_zero():
    data = kauffman_data(0)
    assert data.c_plus @ data.c_plus == identity(data, 2)
    assert infinitesimally_symmetric(data)


def test_kauffman_twist_is_minus_a_cubed(kauffman2):
    assert kauffman2.theta.entry(0, 0).format() == "[-1, -3, -9/2]"
    assert kauffman2.name == "kauffman:2"


def test_kauffman_needs_characteristic_zero():
    with pytest.raises(UnsupportedModelError):
        kauffman_data(2, BaseField(3))


def test_cached_inverses_are_inverses(kauffman3):
    assert inverse_braiding(kauffman3) @ kauffman3.c_plus == identity(kauffman3, 2)
    assert inverse_twist(kauffman3) @ kauffman3.theta == identity(kauffman3)
    assert inverse_braiding(kauffman3) == mat_invert(kauffman3.c_plus)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_symmetric_data_passes_every_axiom(dim):
    data = symmetric_data(dim, TruncatedRing(BaseField(5), 2))
    assert check_axioms(data).passed
    assert infinitesimally_symmetric(data)


def test_kauffman_data_is_infinitesimally_symmetric(kauffman2):
    assert infinitesimally_symmetric(kauffman2)


def test_ybe_failure_has_a_witness():
    ring = TruncatedRing(RATIONALS, 1)
    base = symmetric_data(2, ring)
    broken = _replace(base, c_plus=identity(base, 2) + _unit_matrix(ring, 4, 0, 3))
    check = check_ybe(broken)
    assert not check.passed
    assert check.witness is not None
    assert not check_axioms(broken).get("ybe").passed


def test_deformed_flip_breaks_the_curl():
    ring = TruncatedRing(RATIONALS, 1)
    base = symmetric_data(2, ring)
    c_plus = base.c_plus + _unit_matrix(ring, 4, 0, 0).scale(ring.eps)
    broken = _replace(base, c_plus=c_plus)
    curl = check_twist_curl(broken)[0]
    assert not curl.passed
    assert curl.witness == (0, 0)
    report = check_axioms(broken)
    assert report.get("infinitesimal_symmetry").passed
    assert "twist_curl" in [c.name for c in report.failures]


def test_singular_twist_skips_dependent_checks(kauffman2):
    ring = kauffman2.ring
    broken = _replace(kauffman2, theta=identity(kauffman2).scale(ring.eps))
    report = check_axioms(broken)
    assert not report.get("invertible").passed
    assert report.get("twist_curl").detail.startswith("skipped")
    assert not report.get("infinitesimal_symmetry").passed


def test_whisker_shapes(kauffman2):
    assert whisker(kauffman2, kauffman2.c_plus, 1, 1).shape == (16, 16)
    assert whisker(kauffman2, kauffman2.ev_r, 0, 2).shape == (4, 16)
    assert whisker(kauffman2, kauffman2.theta, 0, 0) == kauffman2.theta


def test_reduction_matches_lower_order_data(kauffman3):
    reduced = reduce_data(kauffman3, 1)
    lower = kauffman_data(1)
    assert reduced.matrices() == lower.matrices()
    assert reduced.order == 1
    assert check_axioms(reduced).passed


def test_reduction_above_order_is_rejected(kauffman2):
    with pytest.raises(OrderError):
        reduce_data(kauffman2, 3)


def test_shapes_are_validated():
    ring = TruncatedRing(RATIONALS, 0)
    base = symmetric_data(2, ring)
    with pytest.raises(ValueError):
        _replace(base, theta=identity(base, 2))
